"""Base-k automata with output and exact-rational linear representations.

Digits are read most-significant first everywhere.  The representation of 0
is the empty digit string.  All linear-representation arithmetic is done with
``fractions.Fraction``; floating point never enters this module.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Iterable, Sequence

import numpy as np

from .errors import ParseError


def digits(n: int, k: int) -> list[int]:
    """Canonical base-k digits of n, msd first; [] for n == 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = []
    while n:
        n, d = divmod(n, k)
        out.append(d)
    out.reverse()
    return out


# --------------------------------------------------------------------------
# DFAO


@dataclass(frozen=True)
class Dfao:
    base: int
    initial: int
    transitions: tuple[tuple[int, ...], ...]  # transitions[state][digit]
    outputs: tuple[int, ...]

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("base must be at least 2")
        m = len(self.outputs)
        if len(self.transitions) != m:
            raise ValueError("one transition row and one output per state")
        if not 0 <= self.initial < m:
            raise ValueError("initial state out of range")
        for row in self.transitions:
            if len(row) != self.base:
                raise ValueError("transition table is not total")
            if any(not 0 <= t < m for t in row):
                raise ValueError("transition target out of range")

    @property
    def states(self) -> int:
        return len(self.outputs)

    def run(self, word: Iterable[int]) -> int:
        q = self.initial
        for d in word:
            q = self.transitions[q][d]
        return q

    def term(self, n: int) -> int:
        return self.outputs[self.run(digits(n, self.base))]

    def terms(self, count: int) -> np.ndarray:
        """Outputs for n = 0 .. count-1, computed level by level."""
        k = self.base
        trans = np.asarray(self.transitions, dtype=np.int64)
        states = np.empty(count, dtype=np.int64)
        if count:
            states[0] = self.initial
        lo = 1
        while lo < count:
            hi = min(lo * k, count)
            idx = np.arange(lo, hi)
            # rep(n) = rep(n // k) . (n % k); rep(0) is empty
            states[lo:hi] = trans[states[idx // k], idx % k]
            lo = hi
        return np.asarray(self.outputs, dtype=np.int64)[states]


def dfao_term(a: Dfao, n: int) -> int:
    return a.term(n)


# --------------------------------------------------------------------------
# Linear representations


def _frac_tuple(xs) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in xs)


@dataclass(frozen=True)
class LinearRepresentation:
    base: int
    v: tuple[Fraction, ...]
    mu: tuple[tuple[tuple[Fraction, ...], ...], ...]  # mu[digit][row][col]
    w: tuple[Fraction, ...]

    def __post_init__(self):
        d = len(self.v)
        object.__setattr__(self, "v", _frac_tuple(self.v))
        object.__setattr__(self, "w", _frac_tuple(self.w))
        object.__setattr__(
            self, "mu", tuple(tuple(_frac_tuple(row) for row in m) for m in self.mu)
        )
        if self.base < 2:
            raise ValueError("base must be at least 2")
        if len(self.w) != d:
            raise ValueError("v and w must have the same dimension")
        if len(self.mu) != self.base:
            raise ValueError("need one matrix per digit")
        for m in self.mu:
            if len(m) != d or any(len(row) != d for row in m):
                raise ValueError("matrices must be dim x dim")

    @property
    def dim(self) -> int:
        return len(self.v)

    def row_after(self, word: Iterable[int]) -> list[Fraction]:
        x = list(self.v)
        for a in word:
            x = _vecmat(x, self.mu[a])
        return x

    def evaluate_word(self, word: Iterable[int]) -> Fraction:
        return _dot(self.row_after(word), self.w)


def _vecmat(x: Sequence[Fraction], m) -> list[Fraction]:
    d = len(m[0]) if m else 0
    out = [Fraction(0)] * d
    for xi, row in zip(x, m):
        if xi:
            for j, mij in enumerate(row):
                if mij:
                    out[j] += xi * mij
    return out


def _matvec(m, y: Sequence[Fraction]) -> list[Fraction]:
    return [_dot(row, y) for row in m]


def _dot(x, y) -> Fraction:
    return sum((a * b for a, b in zip(x, y) if a and b), Fraction(0))


def linrep_eval(rep: LinearRepresentation, n: int) -> Fraction:
    return rep.evaluate_word(digits(n, rep.base))


def linrep_values(rep: LinearRepresentation, count: int) -> list[Fraction]:
    """Values for n = 0 .. count-1, sharing prefix products between n."""
    k = rep.base
    rows: list[list[Fraction]] = [list(rep.v)]
    for n in range(1, count):
        rows.append(_vecmat(rows[n // k], rep.mu[n % k]))
    return [_dot(r, rep.w) for r in rows[:count]]


def with_final(rep: LinearRepresentation, w: Sequence) -> LinearRepresentation:
    return LinearRepresentation(rep.base, rep.v, rep.mu, tuple(w))


def append_digit(rep: LinearRepresentation, digit: int) -> LinearRepresentation:
    """Representation of n -> s(k*n + digit).

    For digit 0 the value at n = 0 is that of the string "0", which equals
    s(0) only when ``rep`` is zero-robust.
    """
    return with_final(rep, _matvec(rep.mu[digit], rep.w))


def difference(a: LinearRepresentation, b: LinearRepresentation) -> LinearRepresentation:
    """Block representation of the series a - b."""
    if a.base != b.base:
        raise ValueError("base mismatch")
    da, db = a.dim, b.dim
    zero = Fraction(0)
    mu = []
    for ma, mb in zip(a.mu, b.mu):
        rows = [tuple(r) + (zero,) * db for r in ma]
        rows += [(zero,) * da + tuple(r) for r in mb]
        mu.append(tuple(rows))
    v = tuple(a.v) + tuple(-x for x in b.v)
    w = tuple(a.w) + tuple(b.w)
    return LinearRepresentation(a.base, v, tuple(mu), w)


def _reduce(vec, basis):
    vec = list(vec)
    for b, p in basis:
        if vec[p]:
            c = vec[p] / b[p]
            vec = [x - c * y for x, y in zip(vec, b)]
    return vec


def reachable_basis(rep: LinearRepresentation) -> list[list[Fraction]]:
    """A basis of span{ v mu(x) : x digit string }, in echelon form."""
    basis: list[tuple[list[Fraction], int]] = []
    queue = deque([list(rep.v)])
    while queue:
        vec = _reduce(queue.popleft(), basis)
        pivot = next((i for i, x in enumerate(vec) if x), None)
        if pivot is None:
            continue
        basis.append((vec, pivot))
        for m in rep.mu:
            queue.append(_vecmat(vec, m))
    return [b for b, _ in basis]


def linrep_equal(a: LinearRepresentation, b: LinearRepresentation) -> bool:
    """True iff the two series agree on every digit string.

    Works on the difference representation: the series vanishes everywhere
    iff every vector reachable from its initial row is orthogonal to its final
    column.  The reachable space is spanned by words shorter than the
    dimension, so this is the same test as comparing all strings of length
    < a.dim + b.dim.
    """
    if a.base != b.base:
        raise ValueError("base mismatch")
    diff = difference(a, b)
    return all(_dot(vec, diff.w) == 0 for vec in reachable_basis(diff))


def linrep_equal_exhaustive(a: LinearRepresentation, b: LinearRepresentation) -> bool:
    """Compare the two series on every string of length < a.dim + b.dim."""
    if a.base != b.base:
        raise ValueError("base mismatch")
    limit = a.dim + b.dim
    stack = [(list(a.v), list(b.v), 0)]
    while stack:
        xa, xb, depth = stack.pop()
        if _dot(xa, a.w) != _dot(xb, b.w):
            return False
        if depth + 1 < limit:
            for d in range(a.base):
                stack.append((_vecmat(xa, a.mu[d]), _vecmat(xb, b.mu[d]), depth + 1))
    return True


def is_zero_robust(rep: LinearRepresentation) -> bool:
    """v mu(0) == v, so leading zeros never change a value."""
    return _vecmat(rep.v, rep.mu[0]) == list(rep.v)


# --------------------------------------------------------------------------
# Guessing a representation from data


def _solve(columns: list[list[Fraction]], target: list[Fraction]) -> list[Fraction] | None:
    """Exact c with sum_j c_j columns[j] == target, or None if no solution."""
    m = len(columns)
    rows = len(target)
    aug = [[columns[j][i] for j in range(m)] + [target[i]] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(m):
        p = next((i for i in range(r, rows) if aug[i][c]), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(aug[i][m] for i in range(r, rows)):
        return None
    sol = [Fraction(0)] * m
    for i, c in enumerate(pivots):
        sol[c] = aug[i][m]
    return sol


def fit_linrep(values: Sequence, k: int = 2, window: int = 32, max_dim: int = 40) -> LinearRepresentation:
    """Guess a linear representation for n -> values[n] from its k-kernel.

    Kernel subsequences s(k^e n + r) are compared on their first ``window``
    terms; a new one joins the basis when it is not a rational combination of
    the current basis.  The result is checked against every supplied value
    and ValueError is raised if it disagrees or if the data runs out.
    """
    data = [Fraction(x) for x in values]
    N = len(data)

    def sub(e, r):
        step = k ** e
        if step * (window - 1) + r >= N:
            raise ValueError(f"not enough data to probe kernel element ({e}, {r})")
        return [data[step * n + r] for n in range(window)]

    basis = [(0, 0)]
    vecs = [sub(0, 0)]
    rows: list[list[list[Fraction]]] = [[] for _ in range(k)]
    i = 0
    while i < len(basis):
        e, r = basis[i]
        for a in range(k):
            child = (e + 1, k ** e * a + r)
            cvec = sub(*child)
            coeffs = _solve(vecs, cvec)
            if coeffs is None:
                if len(basis) >= max_dim:
                    raise ValueError("kernel basis exceeds max_dim")
                basis.append(child)
                vecs.append(cvec)
                coeffs = [Fraction(0)] * (len(basis) - 1) + [Fraction(1)]
            rows[a].append(coeffs)
        i += 1
    d = len(basis)
    mats = []
    for a in range(k):
        m = [list(row) + [Fraction(0)] * (d - len(row)) for row in rows[a]]
        # f_i(k n + a) = sum_j m[i][j] f_j(n); msd-first evaluation needs the transpose
        mats.append(tuple(tuple(m[j][i] for j in range(d)) for i in range(d)))
    v = tuple(data[r] for _, r in basis)
    w = (Fraction(1),) + (Fraction(0),) * (d - 1)
    rep = LinearRepresentation(k, v, tuple(mats), w)
    if linrep_values(rep, N) != data:
        raise ValueError("fitted representation disagrees with the data; enlarge window")
    return rep


# --------------------------------------------------------------------------
# k-kernel probe


@dataclass(frozen=True)
class KernelProbe:
    base: int
    depth: int
    length: int
    subsequences: frozenset = field(repr=False)

    @property
    def count(self) -> int:
        return len(self.subsequences)


def kernel_probe(prefix: Sequence[int], k: int, depth: int, length: int) -> KernelProbe:
    """Distinct truncated kernel subsequences (x(k^e n + r))_{n < length}.

    Residues run over 0 .. k^e - 1 (0-based sequence indexing), which is the
    1-based residue set {1..k^e} shifted by one.
    """
    if len(prefix) < k ** depth * length:
        raise ValueError(f"prefix too short: need {k ** depth * length} terms")
    seen = set()
    for e in range(depth + 1):
        step = k ** e
        for r in range(step):
            seen.add(tuple(prefix[step * n + r] for n in range(length)))
    return KernelProbe(k, depth, length, frozenset(seen))


# --------------------------------------------------------------------------
# Text formats


_RATIONAL = re.compile(r"^-?\d+(/-?\d+)?$")


def _tokens(text: str):
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0]
        for m in re.finditer(r"\S+", body):
            yield m.group(), lineno, m.start() + 1


def _int_token(tok, line, col, what="integer") -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected {what}, got {tok!r}", line, col) from None


def parse_dfao(text: str) -> Dfao:
    lines = [
        (i, line.split("#", 1)[0]) for i, line in enumerate(text.splitlines(), 1)
    ]
    lines = [(i, l) for i, l in lines if l.strip()]
    if not lines:
        raise ParseError("empty DFAO file", 1, 1)
    hline, header = lines[0]
    hp = list(re.finditer(r"\S+", header))
    toks = [p.group() for p in hp]
    if len(toks) != 6 or toks[0] != "base" or toks[2] != "states" or toks[4] != "initial":
        raise ParseError("header must read 'base k states m initial q0'", hline, 1)
    k = _int_token(toks[1], hline, hp[1].start() + 1)
    m = _int_token(toks[3], hline, hp[3].start() + 1)
    q0 = _int_token(toks[5], hline, hp[5].start() + 1)
    if k < 2:
        raise ParseError("base must be at least 2", hline, None)
    if not 0 <= q0 < m:
        raise ParseError("initial state out of range", hline, None)
    trans: dict[int, tuple[int, ...]] = {}
    outs: dict[int, int] = {}
    for lineno, body in lines[1:]:
        parts = list(re.finditer(r"\S+", body))
        if len(parts) < 2:
            raise ParseError("state line needs 'state output d:target ...'", lineno, 1)
        q = _int_token(parts[0].group(), lineno, parts[0].start() + 1, "state")
        if not 0 <= q < m:
            raise ParseError(f"state {q} out of range", lineno, parts[0].start() + 1)
        if q in trans:
            raise ParseError(f"state {q} defined twice", lineno, parts[0].start() + 1)
        out = _int_token(parts[1].group(), lineno, parts[1].start() + 1, "output")
        row: dict[int, int] = {}
        for p in parts[2:]:
            tok, col = p.group(), p.start() + 1
            if tok.count(":") != 1:
                raise ParseError(f"expected digit:target, got {tok!r}", lineno, col)
            ds, ts = tok.split(":")
            d = _int_token(ds, lineno, col, "digit")
            t = _int_token(ts, lineno, col, "target")
            if not 0 <= d < k:
                raise ParseError(f"digit {d} not in base {k}", lineno, col)
            if not 0 <= t < m:
                raise ParseError(f"target {t} out of range", lineno, col)
            if d in row:
                raise ParseError(f"digit {d} given twice", lineno, col)
            row[d] = t
        if len(row) != k:
            missing = sorted(set(range(k)) - set(row))
            raise ParseError(f"transition table not total; missing digits {missing}", lineno, None)
        trans[q] = tuple(row[d] for d in range(k))
        outs[q] = out
    if len(trans) != m:
        missing = sorted(set(range(m)) - set(trans))
        raise ParseError(f"missing state lines for {missing}", lines[-1][0], None)
    return Dfao(k, q0, tuple(trans[q] for q in range(m)), tuple(outs[q] for q in range(m)))


def serialize_dfao(a: Dfao) -> str:
    lines = [f"base {a.base} states {a.states} initial {a.initial}"]
    for q in range(a.states):
        arcs = " ".join(f"{d}:{t}" for d, t in enumerate(a.transitions[q]))
        lines.append(f"{q} {a.outputs[q]} {arcs}")
    return "\n".join(lines) + "\n"


def _rational(tok, line, col) -> Fraction:
    if not _RATIONAL.match(tok):
        raise ParseError(f"expected rational p/q or p, got {tok!r}", line, col)
    if "/" in tok:
        p, q = tok.split("/")
        if int(q) == 0:
            raise ParseError("zero denominator", line, col)
        return Fraction(int(p), int(q))
    return Fraction(int(tok))


def parse_linrep(text: str) -> LinearRepresentation:
    toks = list(_tokens(text))
    if len(toks) < 4:
        raise ParseError("header must read 'base k dim d'", 1, 1)
    (t0, l0, c0), (t1, l1, c1), (t2, l2, c2), (t3, l3, c3) = toks[:4]
    if t0 != "base" or t2 != "dim":
        raise ParseError("header must read 'base k dim d'", l0, c0)
    k = _int_token(t1, l1, c1)
    d = _int_token(t3, l3, c3)
    if k < 2 or d < 1:
        raise ParseError("need base >= 2 and dim >= 1", l0, c0)
    body = toks[4:]
    need = d + k * d * d + d
    if len(body) != need:
        tok = body[need] if len(body) > need else (toks[-1])
        raise ParseError(
            f"dimension mismatch: expected {need} entries after header, found {len(body)}",
            tok[1], tok[2],
        )
    vals = [_rational(*t) for t in body]
    v = tuple(vals[:d])
    pos = d
    mats = []
    for _ in range(k):
        rows = []
        for _ in range(d):
            rows.append(tuple(vals[pos:pos + d]))
            pos += d
        mats.append(tuple(rows))
    w = tuple(vals[pos:pos + d])
    return LinearRepresentation(k, v, tuple(mats), w)


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def serialize_linrep(rep: LinearRepresentation) -> str:
    lines = [f"base {rep.base} dim {rep.dim}", " ".join(map(_fmt, rep.v))]
    for m in rep.mu:
        lines.append("")
        lines.extend(" ".join(map(_fmt, row)) for row in m)
    lines.append("")
    lines.append(" ".join(map(_fmt, rep.w)))
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# Shipped fixtures

FIXTURES = {
    "tm_reflection": "tm_reflection.linrep",
    "thue_morse": "thue_morse.dfao",
    "baum_sweet": "baum_sweet.dfao",
    "t3": "t3.dfao",
}


def fixture_text(name: str) -> str:
    return resources.files("reflecto.data").joinpath(FIXTURES[name]).read_text()


def load_dfao(name: str) -> Dfao:
    return parse_dfao(fixture_text(name))


def load_linrep(name: str) -> LinearRepresentation:
    return parse_linrep(fixture_text(name))
