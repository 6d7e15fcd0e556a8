"""Named sequences with the structural properties the checks rely on.

Tags are known facts about the infinite sequence, not things measured on a
prefix.  Checks select entries by tag (for example every ``rich`` entry is
tested against the rich characterization).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import SpecError
from .seqgen import (
    Builtin, HalfFactor, MorphicImage, Morphism, Paperfolding, Periodic,
    RoteFromSturmian, SequenceSpec, SturmianDirective, UnfoldingInstructions,
    spec_from_json,
)
from .words import word

REVERSAL_CLOSED = "reversal_closed"
UNIFORMLY_RECURRENT = "uniformly_recurrent"
EVENTUALLY_PERIODIC = "eventually_periodic"
RICH = "rich"
BINARY = "binary"
STURMIAN = "sturmian"
EPISTURMIAN = "episturmian"
QUASI_STURMIAN = "quasi_sturmian"
ROTE = "rote"
NO_LONG_PALINDROMES = "no_long_palindromes"  # params["n0"]: no palindrome of length >= n0
NO_LONG_REFLECTED = "no_long_reflected"      # params["n0"]: no reflected factor of length >= n0
PAL_ONE = "pal_one"                          # one palindrome per length > 1, r = rho


@dataclass(frozen=True)
class Entry:
    name: str
    spec: SequenceSpec
    tags: frozenset
    params: dict = field(default_factory=dict, hash=False, compare=False)
    note: str = ""

    def has(self, tag: str) -> bool:
        return tag in self.tags


def _e(name, spec, tags, note="", **params) -> Entry:
    return Entry(name, spec, frozenset(tags.split()), params, note)


FIBONACCI = SturmianDirective()
ZERO_FOLDS = UnfoldingInstructions(b"", b"\x00")

ENTRIES: dict[str, Entry] = {e.name: e for e in [
    _e("thue_morse", Builtin("thue_morse"),
       "binary uniformly_recurrent reversal_closed", "fixed point of 0->01, 1->10"),
    _e("fibonacci", Builtin("fibonacci"),
       "binary uniformly_recurrent reversal_closed rich sturmian quasi_sturmian",
       "fixed point of 0->01, 1->0"),
    _e("tribonacci", Builtin("tribonacci"),
       "uniformly_recurrent reversal_closed rich episturmian",
       "fixed point of 0->01, 1->02, 2->0", ell=3),
    _e("period_doubling", Builtin("period_doubling"),
       "binary uniformly_recurrent reversal_closed", "fixed point of 0->01, 1->00"),
    _e("baum_sweet", Builtin("baum_sweet"), "binary",
       "1 iff base-2 digits have no odd block of zeros (4-state DFAO)"),
    _e("chacon", Builtin("chacon"),
       "binary uniformly_recurrent no_long_palindromes",
       "fixed point of 0->0010, 1->1", n0=13),
    _e("a039982", Builtin("a039982"), "binary",
       "a->ab, b->cd, c->cd, d->bb coded by a,b,d->1, c->0"),
    _e("t3", Builtin("t3"), "uniformly_recurrent",
       "number of 1s in base 2, mod 3 (3-state DFAO)"),
    _e("rs_classic", Builtin("rs_classic"),
       "binary uniformly_recurrent no_long_palindromes no_long_reflected",
       "running XOR of the paperfolding word with instructions 0(01)^w", n0=15),
    _e("example_pal_one", Builtin("example_pal_one"), "pal_one",
       "fixed point of 0->01, 1->23, 2->45, 3->23, 4->44, 5->44"),
    _e("example_unref_linear", Builtin("example_unref_linear"), "binary",
       "fixed point of 0->01, 1->23, 2->32, 3->42, 4->43 coded by 0,1,2->0, 3,4->1"),
    _e("example_pal_len_one", Builtin("example_pal_len_one"), "no_long_palindromes",
       "3 g1 4 5 g2^R 6 3 g3 4 ..., g_i the length 2^i-2 prefix of (012)^w", n0=2),
    _e("periodic_01", Periodic(b"", word("01")),
       "binary eventually_periodic reversal_closed", "(01)^w"),
    _e("periodic_011", Periodic(b"", word("011")),
       "binary eventually_periodic reversal_closed", "(011)^w"),
    _e("paperfolding", Paperfolding(ZERO_FOLDS),
       "binary uniformly_recurrent no_long_palindromes no_long_reflected",
       "regular paperfolding word, all instructions 0", n0=14),
    _e("rote_fibonacci", RoteFromSturmian(FIBONACCI, 0),
       "binary uniformly_recurrent reversal_closed rote",
       "partial sums mod 2 of the Fibonacci word"),
    _e("quasi_sturmian", MorphicImage(FIBONACCI, Morphism.of("01", "011")),
       "binary uniformly_recurrent reversal_closed quasi_sturmian",
       "image of the Fibonacci word under 0->01, 1->011"),
    _e("quasi_sturmian_0_011", MorphicImage(FIBONACCI, Morphism.of("0", "011")),
       "binary uniformly_recurrent reversal_closed quasi_sturmian",
       "image of the Fibonacci word under 0->0, 1->011 (rho = n+2)"),
    _e("quasi_sturmian_012", MorphicImage(FIBONACCI, Morphism.of("012", "01")),
       "uniformly_recurrent quasi_sturmian",
       "image of the Fibonacci word under 0->012, 1->01 (not reversal-closed)"),
    _e("halffactor", HalfFactor(), "binary uniformly_recurrent reversal_closed",
       "limit of x0 = 01, x_{k+1} = x_k 01 x_k^R"),
    _e("sturmian_211", SturmianDirective((2,), (1,)),
       "binary uniformly_recurrent reversal_closed rich sturmian quasi_sturmian",
       "standard Sturmian word with directive 2,1,1,1,..."),
]}


def names(tag: str | None = None) -> list[str]:
    return sorted(n for n, e in ENTRIES.items() if tag is None or tag in e.tags)


def entry(name: str) -> Entry:
    try:
        return ENTRIES[name]
    except KeyError:
        raise SpecError(f"unknown sequence {name!r}; try one of: {', '.join(sorted(ENTRIES))}") from None


def resolve(name_or_spec) -> SequenceSpec:
    """Catalog name, JSON object, or an existing spec."""
    if isinstance(name_or_spec, str):
        return entry(name_or_spec).spec
    if isinstance(name_or_spec, dict):
        return spec_from_json(name_or_spec)
    return name_or_spec
