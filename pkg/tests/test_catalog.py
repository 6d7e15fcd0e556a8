import pytest

from reflecto import catalog
from reflecto.complexity import PrefixBudget, profile
from reflecto.errors import SpecError
from reflecto.seqgen import BUILTINS, Builtin

N = 40


def _prof(name):
    return profile(catalog.entry(name).spec, PrefixBudget(8192), N + 1)


def test_every_builtin_is_catalogued():
    listed = {e.spec for e in catalog.ENTRIES.values()}
    assert {Builtin(name) for name in BUILTINS} <= listed


def test_lookup():
    assert catalog.resolve("fibonacci") == Builtin("fibonacci")
    assert catalog.resolve({"kind": "builtin", "name": "t3"}) == Builtin("t3")
    with pytest.raises(SpecError):
        catalog.entry("nope")
    assert catalog.names(catalog.EPISTURMIAN) == ["tribonacci"]


@pytest.mark.parametrize("name", catalog.names(catalog.REVERSAL_CLOSED))
def test_reversal_closed_tag(name):
    prof = _prof(name)
    assert set(prof.unr) == {0}


@pytest.mark.parametrize("name", catalog.names(catalog.RICH))
def test_rich_tag(name):
    prof = _prof(name)
    assert all(prof.r[n + 1] + prof.r[n] == prof.rho[n + 1] + 1 for n in range(N))


@pytest.mark.parametrize("name", catalog.names(catalog.NO_LONG_PALINDROMES))
def test_no_long_palindromes_tag(name):
    e = catalog.entry(name)
    prof = _prof(name)
    n0 = e.params["n0"]
    assert all(p == 0 for p in prof.pal[n0:])
    assert prof.pal[n0 - 1] > 0


@pytest.mark.parametrize("name", catalog.names(catalog.NO_LONG_REFLECTED))
def test_no_long_reflected_tag(name):
    e = catalog.entry(name)
    prof = _prof(name)
    n0 = e.params["n0"]
    assert all(r == 0 for r in prof.refl[n0:])
    assert prof.refl[n0 - 1] > 0


@pytest.mark.parametrize("name", catalog.names(catalog.BINARY))
def test_binary_tag(name):
    assert _prof(name).rho[1] == 2


@pytest.mark.parametrize("name", catalog.names(catalog.STURMIAN))
def test_sturmian_tag(name):
    prof = _prof(name)
    assert list(prof.rho) == [n + 1 for n in range(N + 2)]


def test_periodic_tag_matches_bounded_rho():
    for name in catalog.names():
        rho = _prof(name).rho
        bounded = rho[N] == rho[N - 10]
        assert bounded == catalog.entry(name).has(catalog.EVENTUALLY_PERIODIC), name
