import mpmath
import pytest
from hypothesis import given, strategies as st

from reflecto.automata import load_dfao
from reflecto.catalog import ENTRIES
from reflecto.errors import SpecError
from reflecto.seqgen import (
    BUILTINS, Automatic, Builtin, GolayShapiro, HalfFactor, MorphicFixedPoint, MorphicImage,
    Morphism, Paperfolding, Periodic, RoteFromSturmian, SturmianDirective, UnfoldingInstructions,
    apply_morphism, delta, delta_inverse, fixed_point_prefix, prefix, spec_from_json, spec_to_json,
)
from reflecto.words import show, word


@pytest.mark.parametrize("name, start", [
    ("thue_morse", "0110100110010110"),
    ("fibonacci", "0100101001001010"),
    ("tribonacci", "0102010010201"),
    ("period_doubling", "0100010101000100"),
    ("chacon", "00100010100100010"),
    ("baum_sweet", "1101100101001001"),
    ("t3", "0112122012202001"),
    ("example_pal_one", "0123452344444523"),
])
def test_builtin_prefixes(name, start):
    assert show(prefix(Builtin(name), len(start))) == start


def test_regular_paperfolding():
    p = prefix(Paperfolding(UnfoldingInstructions(b"", b"\x00")), 31)
    assert show(p) == "0010011000110110001001110011011"


def test_rudin_shapiro_matches_pair_count_parity():
    # position i holds the parity of the number of 11 blocks in the binary expansion of i+1
    def pairs(n):
        return sum(1 for i in range(n.bit_length()) if (n >> i) & 3 == 3) % 2

    p = prefix(Builtin("rs_classic"), 4096)
    assert p == bytes(pairs(n) for n in range(1, 4097))


def test_golay_shapiro_is_running_xor_of_paperfolding():
    instr = UnfoldingInstructions(word("1"), word("01"))
    pf = prefix(Paperfolding(instr), 200)
    gs = prefix(GolayShapiro(instr), 200)
    acc = 0
    for a, b in zip(pf, gs):
        acc ^= a
        assert acc == b


def _mechanical(directive, count):
    # characteristic word of slope [0; d1+1, d2, d3, ...]
    mpmath.mp.dps = 120
    x = mpmath.mpf(0)
    terms = [directive[0] + 1] + list(directive[1:])
    for d in reversed(terms):
        x = 1 / (d + x)
    return bytes(int(mpmath.floor((n + 1) * x) - mpmath.floor(n * x)) for n in range(1, count + 1))


@pytest.mark.parametrize("pre, per", [((), (1,)), ((2,), (1,)), ((1,), (2,)), ((3, 1), (1, 2))])
def test_sturmian_matches_mechanical_word(pre, per):
    directive = list(pre) + list(per) * 200
    assert prefix(SturmianDirective(pre, per), 1500) == _mechanical(directive[:300], 1500)


def test_rote_word_differences_to_inner():
    rote = prefix(RoteFromSturmian(SturmianDirective(), 1), 500)
    assert rote[0] == 1
    assert delta(rote) == prefix(SturmianDirective(), 499)


@given(st.binary(min_size=1, max_size=50).map(lambda b: bytes(x & 1 for x in b)), st.integers(0, 1))
def test_delta_inverse_round_trip(u, a):
    x = delta_inverse(u, a)
    assert len(x) == len(u) + 1 and x[0] == a
    assert delta(x) == u


def test_halffactor_recursion():
    x = word("01")
    for _ in range(5):
        x = x + word("01") + x[::-1]
    assert prefix(HalfFactor(), len(x)) == x


def test_periodic_and_image():
    assert show(prefix(Periodic(word("2"), word("01")), 7)) == "2010101"
    img = MorphicImage(SturmianDirective(), Morphism.of("01", "011"))
    fib = prefix(SturmianDirective(), 100)
    assert prefix(img, 150) == apply_morphism(Morphism.of("01", "011"), fib)[:150]


def test_automatic_matches_dfao_terms():
    a = load_dfao("thue_morse")
    assert prefix(Automatic(a), 1024) == prefix(Builtin("thue_morse"), 1024)


def test_coded_fixed_point():
    # a->ab, b->cd, c->cd, d->bb, then a,b,d -> 1 and c -> 0
    raw = fixed_point_prefix(Morphism.of("01", "23", "23", "11"), 0, 16)
    assert show(raw) == "0123231123112323"
    assert show(prefix(Builtin("a039982"), 16)) == "1101011101110101"


@pytest.mark.parametrize("spec", [
    MorphicFixedPoint(Morphism.of("1", "0")),
    MorphicFixedPoint(Morphism.of("0", "1")),
    MorphicFixedPoint(Morphism.of("01", "0"), seed=1),
    Periodic(b"", b""),
    SturmianDirective((), ()),
    SturmianDirective((0,), (1,)),
    MorphicImage(SturmianDirective(), Morphism.of("", "1")),
    Builtin("no_such_sequence"),
])
def test_bad_specs(spec):
    with pytest.raises(SpecError):
        prefix(spec, 10)


def test_bad_instructions():
    with pytest.raises(SpecError):
        UnfoldingInstructions(b"", b"")
    with pytest.raises(SpecError):
        UnfoldingInstructions(b"\x02", b"\x00")


def test_every_builtin_generates():
    for name in BUILTINS:
        assert len(prefix(Builtin(name), 300)) == 300


@pytest.mark.parametrize("name", sorted(ENTRIES))
def test_catalog_specs_round_trip_json(name):
    spec = ENTRIES[name].spec
    assert spec_from_json(spec_to_json(spec)) == spec


def test_automatic_spec_round_trip():
    spec = Automatic(load_dfao("baum_sweet"))
    back = spec_from_json(spec_to_json(spec))
    assert prefix(back, 200) == prefix(spec, 200)


bits = st.binary(max_size=4).map(lambda b: bytes(x & 1 for x in b))
directives = st.lists(st.integers(1, 4), max_size=3).map(tuple)
specs = st.one_of(
    st.builds(Periodic, bits, bits.filter(bool)),
    st.builds(lambda a, b: Paperfolding(UnfoldingInstructions(a, b)), bits, bits.filter(bool)),
    st.builds(lambda a, b: GolayShapiro(UnfoldingInstructions(a, b)), bits, bits.filter(bool)),
    st.builds(SturmianDirective, directives, directives.filter(bool)),
    st.builds(lambda d, a: RoteFromSturmian(SturmianDirective((), d), a), directives.filter(bool), st.integers(0, 1)),
)


@given(specs)
def test_json_round_trip_property(spec):
    back = spec_from_json(spec_to_json(spec))
    assert back == spec
    assert prefix(back, 64) == prefix(spec, 64)


@pytest.mark.parametrize("obj", [
    {"kind": "warp"},
    {"kind": "periodic"},
    {"kind": "morphic", "images": ["01", "1x?"]},
    {"kind": "rote", "inner": {"kind": "halffactor"}},
    {"kind": "builtin", "name": "nope"},
])
def test_malformed_json_specs(obj):
    with pytest.raises(SpecError):
        spec_from_json(obj)
