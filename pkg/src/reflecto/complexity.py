"""Factor, palindrome and reflection complexity of prefixes.

Counts taken from a finite prefix are lower bounds for the true complexities
of the infinite sequence.  ``profile`` recomputes on a longer prefix and flags
every length whose counts moved.
"""
from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from . import _suffix, _window
from .errors import BudgetError, CorruptionError
from .seqgen import SequenceSpec, prefix as seq_prefix
from .words import Word

FIELDS = ("rho", "pal", "refl", "unr", "r")
WINDOW_MAX_N = 64


@dataclass(frozen=True)
class FactorSet:
    n: int
    words: frozenset

    def __len__(self):
        return len(self.words)

    def __contains__(self, w):
        return w in self.words

    def __iter__(self) -> Iterator[Word]:
        return iter(sorted(self.words))


@dataclass(frozen=True)
class ReflectionClassSet:
    n: int
    representatives: frozenset

    def __len__(self):
        return len(self.representatives)


def factor_set(p: Word, n: int) -> FactorSet:
    if not 0 <= n <= len(p):
        raise ValueError(f"factor length {n} outside 0..{len(p)}")
    return FactorSet(n, frozenset(p[i:i + n] for i in range(len(p) - n + 1)))


def canonical_class(w: Word) -> Word:
    """Lexicographically smaller of w and its reversal."""
    return min(w, w[::-1])


def reflection_classes(fs: FactorSet) -> ReflectionClassSet:
    return ReflectionClassSet(fs.n, frozenset(canonical_class(w) for w in fs.words))


def classify_factors(fs: FactorSet) -> tuple[int, int, int]:
    """(unreflected, reflected, palindromic) counts of a factor set."""
    refl = sum(1 for w in fs.words if w[::-1] in fs.words)
    pal = sum(1 for w in fs.words if w == w[::-1])
    return len(fs) - refl, refl, pal


def _derive_r(rho, refl, pal):
    unr = rho - refl
    odd = (refl - pal) % 2
    if np.any(odd):
        bad = int(np.flatnonzero(odd)[0])
        raise CorruptionError(f"refl - pal is odd at n={bad}")
    return unr, unr + (refl - pal) // 2 + pal


def _direct_table(p: Word, n_max: int) -> np.ndarray:
    rows = []
    for n in range(n_max + 1):
        fs = factor_set(p, n)
        unr, refl, pal = classify_factors(fs)
        r = len(reflection_classes(fs))
        if r != unr + (refl - pal) // 2 + pal or (refl - pal) % 2:
            raise CorruptionError(f"class count disagrees with the decomposition at n={n}")
        rows.append((len(fs), pal, refl, unr, r))
    return np.asarray(rows, dtype=np.int64).reshape(-1, 5)


def _suffix_table(p: Word, n_max: int) -> np.ndarray:
    rho, refl, pal = _suffix.bulk_counts(p, n_max)
    unr, r = _derive_r(rho, refl, pal)
    return np.stack([rho, pal, refl, unr, r], axis=1)


def _window_table(p: Word, n_max: int) -> np.ndarray:
    rho, refl, pal = _window.compressed_counts(p, n_max)
    unr, r = _derive_r(rho, refl, pal)
    return np.stack([rho, pal, refl, unr, r], axis=1)


ENGINES = {"direct": _direct_table, "window": _window_table, "suffix": _suffix_table}


def count_table(p: Word, n_max: int, engine: str = "auto") -> np.ndarray:
    """Array of shape (n_max+1, 5) with columns rho, pal, refl, unr, r.

    Engines: ``direct`` builds explicit factor and class sets (r is the number
    of classes); ``window`` hashes the distinct length-n_max windows once and
    reads shorter lengths off their prefixes; ``suffix``
    reads every length off one suffix array.  ``auto`` picks ``window`` for
    short ranges and ``suffix`` otherwise.
    """
    if n_max > len(p):
        raise BudgetError(f"prefix of length {len(p)} cannot see factors of length {n_max}")
    if engine == "auto":
        engine = "window" if n_max <= WINDOW_MAX_N else "suffix"
    try:
        build = ENGINES[engine]
    except KeyError:
        raise ValueError(f"unknown engine {engine!r}") from None
    t = build(p, n_max)
    t[0] = (1, 1, 1, 0, 1)
    return t


@lru_cache(maxsize=256)
def _spec_table(spec, L: int, n_max: int, engine: str) -> np.ndarray:
    t = count_table(seq_prefix(spec, L), n_max, engine)
    t.flags.writeable = False
    return t


def max_prefix() -> int | None:
    cap = os.environ.get("REFLECTO_MAX_PREFIX")
    return int(cap) if cap else None


@dataclass(frozen=True)
class PrefixBudget:
    length: int
    stability: int = 2

    def __post_init__(self):
        if self.length < 1:
            raise BudgetError("prefix length must be positive")
        if self.stability < 1:
            raise BudgetError("stability factor must be at least 1")

    @classmethod
    def default(cls, n_max: int, stability: int = 2) -> "PrefixBudget":
        return cls(max(4096, 64 * n_max), stability)


@dataclass(frozen=True)
class ComplexityProfile:
    prefix_length: int
    stability: int
    rho: tuple[int, ...]
    pal: tuple[int, ...]
    refl: tuple[int, ...]
    unr: tuple[int, ...]
    r: tuple[int, ...]
    stable: tuple[bool, ...]

    @property
    def n_max(self) -> int:
        return len(self.r) - 1

    @property
    def all_stable(self) -> bool:
        return all(self.stable)

    def row(self, n: int) -> dict:
        return {
            "n": n, "rho": self.rho[n], "pal": self.pal[n], "refl": self.refl[n],
            "unr": self.unr[n], "r": self.r[n], "stable": self.stable[n],
        }

    def rows(self) -> list[dict]:
        return [self.row(n) for n in range(self.n_max + 1)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("n",) + FIELDS + ("stable",))
        for row in self.rows():
            writer.writerow([row["n"]] + [row[f] for f in FIELDS] + [str(row["stable"]).lower()])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {"prefix_length": self.prefix_length, "stability": self.stability, "rows": self.rows()}

    @classmethod
    def from_json(cls, obj: dict) -> "ComplexityProfile":
        rows = sorted(obj["rows"], key=lambda r: r["n"])
        cols = {f: tuple(int(r[f]) for r in rows) for f in FIELDS}
        return cls(obj["prefix_length"], obj["stability"], stable=tuple(bool(r["stable"]) for r in rows), **cols)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def profile(
    spec: SequenceSpec,
    budget: PrefixBudget,
    n_max: int,
    engine: str = "auto",
    certified_upto: int = -1,
) -> ComplexityProfile:
    """Complexity counts for n = 0..n_max.

    Lengths n <= certified_upto are taken as complete without a re-check (use
    this when a known appearance bound guarantees the prefix is long enough).
    """
    if n_max < 0:
        raise BudgetError("n_max must be nonnegative")
    if budget.length < n_max + 1:
        raise BudgetError(f"prefix length {budget.length} too small for n_max={n_max}")
    cap = max_prefix()
    recheck = budget.stability > 1 and certified_upto < n_max
    longest = budget.length * (budget.stability if recheck else 1)
    if cap is not None and longest > cap:
        raise BudgetError(f"prefix length {longest} exceeds REFLECTO_MAX_PREFIX={cap}")
    base = _spec_table(spec, budget.length, n_max, engine)
    if recheck:
        bigger = _spec_table(spec, longest, n_max, engine)
        stable = np.all(base == bigger, axis=1)
    else:
        stable = np.ones(n_max + 1, dtype=bool)
    stable[: max(certified_upto, -1) + 1] = True
    cols = {f: tuple(int(x) for x in base[:, i]) for i, f in enumerate(FIELDS)}
    return ComplexityProfile(budget.length, budget.stability, stable=tuple(bool(s) for s in stable), **cols)


def periodicity_witness(p: ComplexityProfile) -> int | None:
    """Smallest n >= 1 with r(n) <= floor((n+1)/2), if any in range."""
    for n in range(1, p.n_max + 1):
        if p.r[n] <= (n + 1) // 2:
            return n
    return None


def sturmian_test(p: ComplexityProfile) -> bool:
    """r(n) == 1 + floor((n+1)/2) on 1..n_max (necessary condition only)."""
    return all(p.r[n] == 1 + (n + 1) // 2 for n in range(1, p.n_max + 1))
