import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from reflecto import _window
from reflecto.complexity import (
    ComplexityProfile, PrefixBudget, canonical_class, classify_factors, count_table, factor_set,
    periodicity_witness, profile, reflection_classes, sturmian_test,
)
from reflecto.errors import BudgetError
from reflecto.seqgen import Builtin, Periodic, prefix
from reflecto.words import word

TM_R = [1, 2, 3, 4, 6, 6, 10, 10, 13, 12, 16, 16, 20, 20, 22]


def brute(p, n):
    """Independent count: group factors into {u, u^R} pairs by hand."""
    fac = {p[i:i + n] for i in range(len(p) - n + 1)}
    classes = {frozenset((u, u[::-1])) & fac for u in fac}
    pal = sum(1 for u in fac if u == u[::-1])
    refl = sum(1 for u in fac if u[::-1] in fac)
    return len(fac), pal, refl, len(fac) - refl, len(classes)


small_words = st.lists(st.integers(0, 2), min_size=1, max_size=60).map(bytes)


@given(small_words, st.integers(0, 12))
def test_engines_agree_with_brute_force(p, n_max):
    n_max = min(n_max, len(p))
    want = np.array([brute(p, n) for n in range(n_max + 1)])
    want[0] = (1, 1, 1, 0, 1)
    for engine in ("direct", "window", "suffix"):
        assert (count_table(p, n_max, engine) == want).all(), engine


@given(st.lists(st.integers(0, 1), min_size=1, max_size=400).map(bytes), st.integers(1, 40))
def test_window_engines_agree(p, n_max):
    n_max = min(n_max, len(p))
    a = _window.window_counts(p, n_max)
    b = _window.compressed_counts(p, n_max)
    for x, y in zip(a, b):
        assert (x == y).all()


@pytest.mark.parametrize("name", ["thue_morse", "fibonacci", "tribonacci", "baum_sweet", "chacon", "t3"])
def test_engines_agree_on_sequences(name):
    p = prefix(Builtin(name), 3000)
    ref = count_table(p, 40, "direct")
    assert (count_table(p, 40, "window") == ref).all()
    assert (count_table(p, 40, "suffix") == ref).all()


def test_long_range_uses_suffix_engine_consistently():
    p = prefix(Builtin("thue_morse"), 8192)
    assert (count_table(p, 90) == count_table(p, 90, "window")).all()


@given(small_words, st.integers(0, 15))
def test_count_identities(p, n_max):
    n_max = min(n_max, len(p))
    for rho, pal, refl, unr, r in count_table(p, n_max).tolist():
        assert rho == unr + refl
        assert 2 * r == 2 * unr + refl - pal + 2 * pal
        assert rho <= rho + pal <= 2 * r <= 2 * rho
        assert pal <= refl


def test_thue_morse_values():
    prof = profile(Builtin("thue_morse"), PrefixBudget(4096), 14)
    assert list(prof.r) == TM_R
    assert prof.all_stable


def test_fibonacci_small_values():
    prof = profile(Builtin("fibonacci"), PrefixBudget(4096), 10)
    assert prof.r[6] == 4
    assert prof.rho[6] == 7
    assert sturmian_test(prof)


def test_factor_set_and_classes():
    fs = factor_set(word("0110100110010110"), 3)
    assert sorted(fs.words) == [word(w) for w in ("001", "010", "011", "100", "101", "110")]
    unr, refl, pal = classify_factors(fs)
    assert (unr, refl, pal) == (0, 6, 2)
    assert len(reflection_classes(fs)) == 4
    assert canonical_class(word("110")) == word("011")
    with pytest.raises(ValueError):
        factor_set(word("01"), 3)


def test_unstable_rows_are_flagged():
    prof = profile(Builtin("thue_morse"), PrefixBudget(40), 20)
    assert not prof.all_stable
    assert prof.stable[1]
    assert not prof.stable[20]


def test_certified_rows_skip_recheck():
    prof = profile(Builtin("thue_morse"), PrefixBudget(40), 20, certified_upto=20)
    assert prof.all_stable


def test_stability_one_means_unchecked():
    prof = profile(Builtin("thue_morse"), PrefixBudget(40, stability=1), 20)
    assert prof.all_stable


def test_budget_errors(monkeypatch):
    with pytest.raises(BudgetError):
        profile(Builtin("thue_morse"), PrefixBudget(10), 30)
    with pytest.raises(BudgetError):
        PrefixBudget(0)
    with pytest.raises(BudgetError):
        PrefixBudget(10, stability=0)
    monkeypatch.setenv("REFLECTO_MAX_PREFIX", "5000")
    with pytest.raises(BudgetError):
        profile(Builtin("thue_morse"), PrefixBudget(4096), 5)
    assert profile(Builtin("thue_morse"), PrefixBudget(2048), 5).r[5] == 6


def test_default_budget_scales():
    assert PrefixBudget.default(10).length == 4096
    assert PrefixBudget.default(100).length == 6400


def test_profile_serialization_round_trip():
    prof = profile(Builtin("fibonacci"), PrefixBudget(2048), 12)
    assert ComplexityProfile.from_json(json.loads(prof.dumps())) == prof
    lines = prof.to_csv().splitlines()
    assert lines[0] == "n,rho,pal,refl,unr,r,stable"
    assert lines[7] == "6,7,1,7,0,4,true"
    assert len(lines) == 14


def test_periodicity_witness():
    per = profile(Periodic(b"", word("01")), PrefixBudget(4096), 10)
    assert periodicity_witness(per) == 2
    tm = profile(Builtin("thue_morse"), PrefixBudget(4096), 30)
    assert periodicity_witness(tm) is None


def test_unknown_engine():
    with pytest.raises(ValueError):
        count_table(word("0110"), 2, "magic")


@given(st.lists(st.integers(0, 300), max_size=80))
def test_suffix_array_sorts_suffixes(xs):
    from reflecto._suffix import lcp_array, suffix_array

    s = np.asarray(xs, dtype=np.int64)
    sa = suffix_array(s).tolist()
    assert sa == sorted(range(len(xs)), key=lambda i: xs[i:])
    lcp = lcp_array(s, np.asarray(sa)).tolist() if xs else []
    for i in range(1, len(sa)):
        a, b = xs[sa[i - 1]:], xs[sa[i]:]
        k = 0
        while k < min(len(a), len(b)) and a[k] == b[k]:
            k += 1
        assert lcp[i] == k


def test_small_examples():
    assert set(factor_set(word("0110"), 2).words) == {word("01"), word("11"), word("10")}
    assert factor_set(word("0110"), 0).words == {b""}
    assert canonical_class(word("reward")) == word("drawer")
    assert canonical_class(word("010")) == word("010")
    fib5 = factor_set(prefix(Builtin("fibonacci"), 200), 5)
    assert classify_factors(fib5) == (0, 6, 2)
    from reflecto.complexity import FactorSet
    assert classify_factors(FactorSet(2, frozenset({word("01")}))) == (1, 0, 0)


def test_baum_sweet_profile():
    prof = profile(Builtin("baum_sweet"), PrefixBudget(8192), 15)
    assert list(prof.r) == [1, 2, 3, 5, 8, 11, 13, 17, 21, 25, 30, 35, 40, 46, 50, 56]


def test_periodic_profile_tails():
    prof = profile(Periodic(b"", word("01")), PrefixBudget(64), 10)
    assert [prof.r[n] for n in range(2, 11, 2)] == [1] * 5
    assert [prof.r[n] for n in range(1, 11, 2)] == [2] * 5
    assert not sturmian_test(prof)


@pytest.mark.parametrize("name", ["thue_morse", "fibonacci", "baum_sweet", "chacon"])
def test_million_symbol_prefix_is_fast(name):
    import time

    p = prefix(Builtin(name), 10 ** 6)
    start = time.perf_counter()
    t = count_table(p, 64)
    elapsed = time.perf_counter() - start
    assert t.shape == (65, 5)
    assert elapsed < 3.0  # typically about 0.2 s
