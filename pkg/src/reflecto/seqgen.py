"""Prefixes of infinite sequences from declarative descriptions.

Every spec is a frozen dataclass; ``prefix(spec, L)`` returns the first ``L``
symbols as a ``bytes`` word.  Specs round-trip through JSON objects carrying a
``"kind"`` discriminator (see ``spec_to_json`` / ``spec_from_json``).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import accumulate
from operator import xor
from typing import Callable, Union

from .automata import Dfao, load_dfao
from .errors import SpecError
from .words import Word, exchange, show, word


@dataclass(frozen=True)
class Morphism:
    images: tuple[Word, ...]

    @classmethod
    def of(cls, *images: str) -> "Morphism":
        return cls(tuple(word(im) for im in images))

    @property
    def size(self) -> int:
        return len(self.images)

    @property
    def is_coding(self) -> bool:
        return all(len(im) == 1 for im in self.images)

    def __call__(self, w: Word) -> Word:
        return apply_morphism(self, w)


def apply_morphism(m: Morphism, w: Word) -> Word:
    if w and max(w) >= m.size:
        raise SpecError(f"symbol {max(w)} outside the morphism's domain of size {m.size}")
    if m.is_coding:
        return w.translate(_coding_table(m))
    images = m.images
    return b"".join([images[s] for s in w])


def _coding_table(m: Morphism) -> bytes:
    table = bytearray(range(256))
    for a, im in enumerate(m.images):
        table[a] = im[0]
    return bytes(table)


def fixed_point_prefix(m: Morphism, seed: int, L: int) -> Word:
    if not 0 <= seed < m.size:
        raise SpecError("seed outside the morphism's domain")
    image = m.images[seed]
    if len(image) == 1 and image[0] == seed:
        raise SpecError("growth stalls: the seed is a fixed letter")
    if not image or image[0] != seed or len(image) < 2:
        raise SpecError(f"seed {seed} is not prolongable")
    w = image
    done = 1  # w == f(w[:done])
    while len(w) < L:
        grown = w + apply_morphism(m, w[done:])
        if len(grown) == len(w):
            raise SpecError("growth stalls: iterates stopped lengthening")
        done = len(w)
        w = grown
    return w[:L]


def delta(w: Word) -> Word:
    """First differences modulo 2; a single letter maps to itself."""
    if not w:
        raise SpecError("delta needs a nonempty word")
    if any(s > 1 for s in w):
        raise SpecError("delta is defined on binary words only")
    if len(w) == 1:
        return w
    return bytes(a ^ b for a, b in zip(w, w[1:]))


def delta_inverse(u: Word, initial: int) -> Word:
    """The preimage of u under delta (length |u|+1) that starts with `initial`."""
    if initial not in (0, 1) or any(s > 1 for s in u):
        raise SpecError("delta_inverse is defined on binary words only")
    return bytes(accumulate(u, xor, initial=initial))


@dataclass(frozen=True)
class UnfoldingInstructions:
    preperiod: Word = b""
    period: Word = b"\x00"

    def __post_init__(self):
        if not self.period:
            raise SpecError("unfolding instructions need a nonempty period")
        if any(s > 1 for s in self.preperiod + self.period):
            raise SpecError("unfolding instructions are bits")

    def __getitem__(self, i: int) -> int:
        if i < len(self.preperiod):
            return self.preperiod[i]
        return self.period[(i - len(self.preperiod)) % len(self.period)]


def paperfolding_prefix(instr: UnfoldingInstructions, L: int) -> Word:
    p = b""
    i = 0
    while len(p) < L:
        p = p + bytes([instr[i]]) + exchange(p[::-1])
        i += 1
    return p[:L]


def golay_shapiro_prefix(instr: UnfoldingInstructions, L: int) -> Word:
    return bytes(accumulate(paperfolding_prefix(instr, L), xor))


def _directive(preperiod: tuple[int, ...], period: tuple[int, ...]) -> Callable[[int], int]:
    def d(k: int) -> int:  # k >= 1
        i = k - 1
        if i < len(preperiod):
            return preperiod[i]
        return period[(i - len(preperiod)) % len(period)]
    return d


def sturmian_prefix(preperiod: tuple[int, ...], period: tuple[int, ...], L: int) -> Word:
    """Characteristic Sturmian word from standard words s_k = s_{k-1}^{d_k} s_{k-2}.

    With s_{-1} = 1 and s_0 = 0, the directive (1, 1, 1, ...) gives Fibonacci.
    """
    if not period:
        raise SpecError("directive period must be nonempty")
    if any(x < 1 for x in preperiod + period):
        raise SpecError("directive entries must be positive")
    d = _directive(preperiod, period)
    older, s = b"\x01", b"\x00"
    k = 1
    while len(s) < L:
        older, s = s, s * d(k) + older
        k += 1
    return s[:L]


def halffactor_prefix(L: int) -> Word:
    x = b"\x00\x01"
    while len(x) < L:
        x = x + b"\x00\x01" + x[::-1]
    return x[:L]


# --------------------------------------------------------------------------
# Spec variants


@dataclass(frozen=True)
class MorphicFixedPoint:
    morphism: Morphism
    seed: int = 0
    coding: Morphism | None = None

    def generate(self, L: int) -> Word:
        w = fixed_point_prefix(self.morphism, self.seed, L)
        if self.coding is not None:
            if not self.coding.is_coding:
                raise SpecError("coding images must have length 1")
            w = apply_morphism(self.coding, w)
        return w


@dataclass(frozen=True)
class Periodic:
    preperiod: Word
    period: Word

    def generate(self, L: int) -> Word:
        if not self.period:
            raise SpecError("periodic spec needs a nonempty period")
        u, v = self.preperiod, self.period
        reps = max(0, L - len(u)) // len(v) + 1
        return (u + v * reps)[:L]


@dataclass(frozen=True)
class Paperfolding:
    instructions: UnfoldingInstructions

    def generate(self, L: int) -> Word:
        return paperfolding_prefix(self.instructions, L)


@dataclass(frozen=True)
class GolayShapiro:
    instructions: UnfoldingInstructions

    def generate(self, L: int) -> Word:
        return golay_shapiro_prefix(self.instructions, L)


@dataclass(frozen=True)
class SturmianDirective:
    preperiod: tuple[int, ...] = ()
    period: tuple[int, ...] = (1,)

    def generate(self, L: int) -> Word:
        return sturmian_prefix(self.preperiod, self.period, L)


@dataclass(frozen=True)
class RoteFromSturmian:
    inner: SturmianDirective
    initial: int = 0

    def generate(self, L: int) -> Word:
        return delta_inverse(self.inner.generate(L - 1), self.initial)


@dataclass(frozen=True)
class HalfFactor:
    def generate(self, L: int) -> Word:
        return halffactor_prefix(L)


@dataclass(frozen=True)
class Automatic:
    dfao: Dfao

    def generate(self, L: int) -> Word:
        return bytes(self.dfao.terms(L).tolist())


@dataclass(frozen=True)
class MorphicImage:
    """A non-erasing morphism applied to another sequence."""
    inner: "SequenceSpec"
    morphism: Morphism

    def generate(self, L: int) -> Word:
        if any(not im for im in self.morphism.images):
            raise SpecError("image morphism must be non-erasing")
        shortest = min(len(im) for im in self.morphism.images)
        return apply_morphism(self.morphism, prefix(self.inner, -(-L // shortest)))[:L]


@dataclass(frozen=True)
class Builtin:
    name: str

    def generate(self, L: int) -> Word:
        try:
            maker = BUILTINS[self.name].generate
        except KeyError:
            raise SpecError(f"unknown builtin sequence {self.name!r}") from None
        return maker(L)


SequenceSpec = Union[
    MorphicFixedPoint, Periodic, Paperfolding, GolayShapiro, SturmianDirective,
    RoteFromSturmian, HalfFactor, Automatic, MorphicImage, Builtin,
]


def _pal_len_one_prefix(L: int) -> Word:
    # 3 g1 4 5 g2^R 6 3 g3 4 5 g4^R 6 ..., g_i the length-(2^i - 2) prefix of (012)^omega
    out = bytearray()
    i = 1
    while len(out) < L:
        g = bytes((j % 3) for j in range(2 ** i - 2))
        if i % 2:
            out += b"\x03" + g + b"\x04"
        else:
            out += b"\x05" + g[::-1] + b"\x06"
        i += 1
    return bytes(out[:L])


@dataclass(frozen=True)
class _Custom:
    fn: Callable[[int], Word]

    def generate(self, L: int) -> Word:
        return self.fn(L)


BUILTINS: dict[str, object] = {
    "thue_morse": MorphicFixedPoint(Morphism.of("01", "10")),
    "fibonacci": MorphicFixedPoint(Morphism.of("01", "0")),
    "tribonacci": MorphicFixedPoint(Morphism.of("01", "02", "0")),
    "period_doubling": MorphicFixedPoint(Morphism.of("01", "00")),
    "baum_sweet": Automatic(load_dfao("baum_sweet")),
    "chacon": MorphicFixedPoint(Morphism.of("0010", "1")),
    # a->ab, b->cd, c->cd, d->bb with a,b,d -> 1 and c -> 0
    "a039982": MorphicFixedPoint(Morphism.of("01", "23", "23", "11"), 0, Morphism.of("1", "1", "0", "1")),
    "t3": Automatic(load_dfao("t3")),
    "rs_classic": GolayShapiro(UnfoldingInstructions(word("0"), word("01"))),
    "example_pal_one": MorphicFixedPoint(Morphism.of("01", "23", "45", "23", "44", "44")),
    "example_unref_linear": MorphicFixedPoint(
        Morphism.of("01", "23", "32", "42", "43"), 0, Morphism.of("0", "0", "0", "1", "1")
    ),
    "example_pal_len_one": _Custom(_pal_len_one_prefix),
}


@lru_cache(maxsize=64)
def _prefix(spec, L: int) -> Word:
    w = spec.generate(L)
    if len(w) != L:
        raise SpecError(f"generator produced {len(w)} symbols, wanted {L}")
    return w


def prefix(spec: SequenceSpec, L: int) -> Word:
    if L < 1:
        raise SpecError("prefix length must be positive")
    return _prefix(spec, L)


# --------------------------------------------------------------------------
# JSON


def _instr_json(i: UnfoldingInstructions) -> dict:
    return {"preperiod": show(i.preperiod), "period": show(i.period)}


def _instr_from(obj: dict) -> UnfoldingInstructions:
    return UnfoldingInstructions(word(obj.get("preperiod", "")), word(obj["period"]))


def _morph_json(m: Morphism) -> list[str]:
    return [show(im) for im in m.images]


def spec_to_json(spec: SequenceSpec) -> dict:
    if isinstance(spec, MorphicFixedPoint):
        out = {"kind": "morphic", "images": _morph_json(spec.morphism), "seed": spec.seed}
        if spec.coding is not None:
            out["coding"] = _morph_json(spec.coding)
        return out
    if isinstance(spec, Periodic):
        return {"kind": "periodic", "preperiod": show(spec.preperiod), "period": show(spec.period)}
    if isinstance(spec, Paperfolding):
        return {"kind": "paperfolding", "instructions": _instr_json(spec.instructions)}
    if isinstance(spec, GolayShapiro):
        return {"kind": "golay_shapiro", "instructions": _instr_json(spec.instructions)}
    if isinstance(spec, SturmianDirective):
        return {"kind": "sturmian", "preperiod": list(spec.preperiod), "period": list(spec.period)}
    if isinstance(spec, RoteFromSturmian):
        return {"kind": "rote", "inner": spec_to_json(spec.inner), "initial": spec.initial}
    if isinstance(spec, HalfFactor):
        return {"kind": "halffactor"}
    if isinstance(spec, Automatic):
        a = spec.dfao
        return {
            "kind": "automatic", "base": a.base, "initial": a.initial,
            "transitions": [list(r) for r in a.transitions], "outputs": list(a.outputs),
        }
    if isinstance(spec, MorphicImage):
        return {"kind": "image", "inner": spec_to_json(spec.inner), "images": _morph_json(spec.morphism)}
    if isinstance(spec, Builtin):
        return {"kind": "builtin", "name": spec.name}
    raise SpecError(f"cannot serialize {type(spec).__name__}")


def spec_from_json(obj: dict) -> SequenceSpec:
    try:
        kind = obj["kind"]
        if kind == "morphic":
            coding = obj.get("coding")
            return MorphicFixedPoint(
                Morphism.of(*obj["images"]), int(obj.get("seed", 0)),
                Morphism.of(*coding) if coding is not None else None,
            )
        if kind == "periodic":
            return Periodic(word(obj.get("preperiod", "")), word(obj["period"]))
        if kind == "paperfolding":
            return Paperfolding(_instr_from(obj["instructions"]))
        if kind == "golay_shapiro":
            return GolayShapiro(_instr_from(obj["instructions"]))
        if kind == "sturmian":
            return SturmianDirective(tuple(obj.get("preperiod", ())), tuple(obj["period"]))
        if kind == "rote":
            inner = spec_from_json(obj["inner"])
            if not isinstance(inner, SturmianDirective):
                raise SpecError("rote inner spec must be a sturmian directive")
            return RoteFromSturmian(inner, int(obj.get("initial", 0)))
        if kind == "halffactor":
            return HalfFactor()
        if kind == "automatic":
            return Automatic(Dfao(
                int(obj["base"]), int(obj.get("initial", 0)),
                tuple(tuple(r) for r in obj["transitions"]), tuple(obj["outputs"]),
            ))
        if kind == "image":
            return MorphicImage(spec_from_json(obj["inner"]), Morphism.of(*obj["images"]))
        if kind == "builtin":
            if obj["name"] not in BUILTINS:
                raise SpecError(f"unknown builtin sequence {obj['name']!r}")
            return Builtin(obj["name"])
    except SpecError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecError(f"malformed spec object: {exc}") from None
    raise SpecError(f"unknown spec kind {obj.get('kind')!r}")
