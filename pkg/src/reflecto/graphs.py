"""Rauzy graphs of factors and of reflection classes.

Gamma(n) has the length-n factors as vertices and one edge per length-(n+1)
factor e, from its length-n prefix to its length-n suffix.  Lambda(n) merges
each vertex u with u^R.  K(n) also merges each edge with its reversal: a
two-word edge class {u, u^R} keeps the direction of its lexicographically
smaller member.  All three are multigraphs (parallel edges and loops allowed).
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .complexity import FactorSet, canonical_class, factor_set
from .errors import GraphStructureError
from .words import Word, show, word

Edge = tuple[Word, Word, Word]  # (from, to, label)


@dataclass(frozen=True)
class _Graph:
    n: int
    vertices: tuple[Word, ...]
    edges: tuple[Edge, ...]

    kind = "graph"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "vertices": [show(v) for v in self.vertices],
            "edges": [{"from": show(a), "to": show(b), "label": show(e)} for a, b, e in self.edges],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, obj: dict):
        return cls(
            int(obj["n"]),
            tuple(word(v) for v in obj["vertices"]),
            tuple((word(e["from"]), word(e["to"]), word(e["label"])) for e in obj["edges"]),
        )


class RauzyGraph(_Graph):
    kind = "gamma"


class LambdaGraph(_Graph):
    kind = "lambda"


class ReflectionRauzyGraph(_Graph):
    kind = "k"


def _sorted_edges(edges) -> tuple[Edge, ...]:
    return tuple(sorted(edges, key=lambda e: (e[2], e[0], e[1])))


def build_gamma(fs_n: FactorSet, fs_n1: FactorSet) -> RauzyGraph:
    if fs_n1.n != fs_n.n + 1:
        raise ValueError(f"need factor sets of lengths n and n+1, got {fs_n.n} and {fs_n1.n}")
    edges = []
    for e in fs_n1.words:
        u, v = e[:-1], e[1:]
        if u not in fs_n or v not in fs_n:
            raise GraphStructureError(f"edge {show(e)} has an endpoint outside the length-{fs_n.n} factors")
        edges.append((u, v, e))
    return RauzyGraph(fs_n.n, tuple(sorted(fs_n.words)), _sorted_edges(edges))


def build_lambda(g: RauzyGraph) -> LambdaGraph:
    vertices = tuple(sorted({canonical_class(v) for v in g.vertices}))
    edges = [(canonical_class(a), canonical_class(b), e) for a, b, e in g.edges]
    return LambdaGraph(g.n, vertices, _sorted_edges(edges))


def build_k(g: LambdaGraph) -> ReflectionRauzyGraph:
    """One edge per reflection class of length-(n+1) factors.

    Raises GraphStructureError when a two-word class {u, u^R} is not an
    antiparallel pair between two distinct vertices.
    """
    by_label = {e: (a, b) for a, b, e in g.edges}
    edges = []
    for e, (a, b) in by_label.items():
        rev = e[::-1]
        if rev == e or rev not in by_label:
            edges.append((a, b, canonical_class(e)))
            continue
        if rev < e:
            continue  # handled from the smaller word
        ra, rb = by_label[rev]
        if a == b or (ra, rb) != (b, a):
            raise GraphStructureError(
                f"{show(e)} and its reversal do not run in opposite directions between two classes"
            )
        edges.append((a, b, e))
    return ReflectionRauzyGraph(g.n, g.vertices, _sorted_edges(edges))


def graphs_from_prefix(p: Word, n: int) -> tuple[RauzyGraph, LambdaGraph, ReflectionRauzyGraph]:
    gamma = build_gamma(factor_set(p, n), factor_set(p, n + 1))
    lam = build_lambda(gamma)
    return gamma, lam, build_k(lam)


def is_connected(graph: _Graph) -> bool:
    """Weak connectivity by union-find; edge directions are ignored."""
    if not graph.vertices:
        raise ValueError("connectivity of an empty graph is undefined")
    parent = {v: v for v in graph.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    components = len(parent)
    for a, b, _ in graph.edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            components -= 1
    return components == 1


def _quote(w: Word) -> str:
    return '"' + show(w) + '"'


def export_dot(graph: _Graph) -> str:
    name = f"{graph.kind}_{graph.n}"
    lines = [f"digraph {name} {{"]
    lines += [f"  {_quote(v)};" for v in graph.vertices]
    lines += [f"  {_quote(a)} -> {_quote(b)} [label={_quote(e)}];" for a, b, e in graph.edges]
    lines.append("}")
    return "\n".join(lines) + "\n"
