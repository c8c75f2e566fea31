"""The bundled corpus: every fixture loads, is primitive, and satisfies all
of its recorded expected facts."""

import pytest

from colsub import fixtures


def test_registry_size_and_metadata():
    names = fixtures.names()
    assert len(names) >= 14
    for name in names:
        fx = fixtures.REGISTRY[name]
        assert fx.filename.endswith(".sub")
        assert fx.description


@pytest.mark.parametrize("name", fixtures.names())
def test_fixture_checks(name):
    results = fixtures.run_checks(name)
    failed = [label for label, ok in results if not ok]
    assert not failed, "failed checks: %s" % ", ".join(failed)


def test_unknown_fixture():
    with pytest.raises(KeyError):
        fixtures.load("no-such-fixture")
