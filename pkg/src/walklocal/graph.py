"""Undirected graphs with mandatory self-loops, and edge-picking for lazy walks.

Vertices are labelled ``1..n`` in every public interface. Internally, matrix
rows and columns use 0-based indices ``vertex - 1``.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .errors import GraphFormatError, TreeComponent


@dataclass(frozen=True)
class Graph:
    """Graph on vertices ``1..n``; every vertex carries a self-loop.

    ``edges`` holds unordered pairs normalised to ``(min, max)`` and always
    includes ``(j, j)`` for each vertex.
    """

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 1:
            raise GraphFormatError(f"graph needs at least one vertex, got n={self.n}")
        normalised = set()
        for j, k in self.edges:
            j, k = int(j), int(k)
            for v in (j, k):
                if not 1 <= v <= self.n:
                    raise GraphFormatError(f"vertex {v} out of range 1..{self.n}")
            normalised.add((min(j, k), max(j, k)))
        normalised.update((j, j) for j in range(1, self.n + 1))
        object.__setattr__(self, "edges", frozenset(normalised))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]] = ()) -> "Graph":
        return cls(n, frozenset(tuple(e) for e in edges))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def non_loop_edges(self) -> list[tuple[int, int]]:
        return sorted(e for e in self.edges if e[0] != e[1])

    def neighbors(self, j: int) -> list[int]:
        """Adjacent vertices of ``j``, excluding ``j`` itself, ascending."""
        _check_vertex(self, j)
        out = [k if a == j else a for a, k in self.edges if j in (a, k) and a != k]
        return sorted(out)

    def adjacency(self) -> np.ndarray:
        """Boolean ``n x n`` adjacency matrix (0-based), diagonal set."""
        a = np.zeros((self.n, self.n), dtype=bool)
        for j, k in self.edges:
            a[j - 1, k - 1] = a[k - 1, j - 1] = True
        return a

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists, ordered by smallest vertex."""
        seen: set[int] = set()
        comps = []
        for s in self.vertices:
            if s in seen:
                continue
            comp, queue = [], deque([s])
            seen.add(s)
            while queue:
                v = queue.popleft()
                comp.append(v)
                for w in self.neighbors(v):
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.non_loop_edges()]}

    def to_text(self) -> str:
        lines = [f"N={self.n}"] + [f"{j} {k}" for j, k in self.non_loop_edges()]
        return "\n".join(lines) + "\n"


def _check_vertex(g: Graph, j: int) -> None:
    if not 1 <= j <= g.n:
        raise IndexError(f"vertex {j} out of range 1..{g.n}")


def is_edge(g: Graph, j: int, k: int) -> bool:
    """True iff ``(j, k)`` is an edge of ``g``; always true for ``j == k``."""
    _check_vertex(g, j)
    _check_vertex(g, k)
    return (min(j, k), max(j, k)) in g.edges


_HEADER = re.compile(r"^N\s*=\s*(-?\d+)$", re.IGNORECASE)


def parse_graph(text: str) -> Graph:
    """Parse the plain-text edge-list format.

    The first record is ``N=<count>``; each further record is a pair ``j k``
    of 1-based vertices. Records are separated by newlines or semicolons and
    ``#`` starts a comment. Self-loops are implicit and duplicates collapse.

    >>> sorted(parse_graph("N=2; 1 2").edges)
    [(1, 1), (1, 2), (2, 2)]
    """
    records = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        records.extend(r.strip() for r in line.split(";"))
    records = [r for r in records if r]
    if not records:
        raise GraphFormatError("empty graph document")
    m = _HEADER.match(records[0])
    if m is None:
        raise GraphFormatError(f"expected 'N=<count>' header, got {records[0]!r}")
    n = int(m.group(1))
    if n < 1:
        raise GraphFormatError(f"N must be >= 1, got {n}")
    edges = []
    for rec in records[1:]:
        parts = rec.split()
        if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
            raise GraphFormatError(f"malformed edge line {rec!r}")
        j, k = int(parts[0]), int(parts[1])
        for v in (j, k):
            if not 1 <= v <= n:
                raise GraphFormatError(f"vertex {v} out of range 1..{n} in {rec!r}")
        edges.append((j, k))
    return Graph.from_edges(n, edges)


def graph_from_json(doc: Mapping | str) -> Graph:
    if isinstance(doc, str):
        doc = json.loads(doc)
    try:
        n = int(doc["n"])
        edges = [(int(j), int(k)) for j, k in doc.get("edges", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphFormatError(f"bad graph JSON: {exc}") from exc
    if n < 1:
        raise GraphFormatError(f"n must be >= 1, got {n}")
    return Graph.from_edges(n, edges)


def load_graph(path: str | Path) -> Graph:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return graph_from_json(text)
    return parse_graph(text)


@dataclass(frozen=True)
class PerpAssignment:
    """Each vertex ``j`` picks a neighbour ``pick[j] != j``; no edge is used twice."""

    pick: Mapping[int, int]

    def __getitem__(self, j: int) -> int:
        return self.pick[j]

    def edges_used(self) -> list[tuple[int, int]]:
        return [(min(j, m), max(j, m)) for j, m in sorted(self.pick.items())]


def validate_perp(g: Graph, perp: PerpAssignment) -> list[str]:
    """Return a list of invariant violations (empty when valid)."""
    problems = []
    if set(perp.pick) != set(g.vertices):
        problems.append("pick map does not cover exactly the vertices of g")
    for j, m in perp.pick.items():
        if m == j:
            problems.append(f"vertex {j} picks its own self-loop")
        elif not (1 <= m <= g.n and is_edge(g, j, m)):
            problems.append(f"vertex {j} picks non-neighbour {m}")
    used = perp.edges_used()
    if len(set(used)) != len(used):
        problems.append("some edge is picked twice")
    return problems


def _find_cycle(g: Graph, component: list[int]) -> list[int] | None:
    """First cycle met by a DFS from the smallest vertex, neighbours ascending."""
    root = component[0]
    parent = {root: None}
    depth = {root: 0}
    stack = [(root, iter(g.neighbors(root)))]
    while stack:
        v, it = stack[-1]
        w = next(it, None)
        if w is None:
            stack.pop()
            continue
        if w == parent[v]:
            continue
        if w in parent:
            if depth[w] < depth[v]:
                # back edge v -> w closes the tree path w ... v
                path = [v]
                while path[-1] != w:
                    path.append(parent[path[-1]])
                return path[::-1]
            continue
        parent[w] = v
        depth[w] = depth[v] + 1
        stack.append((w, iter(g.neighbors(w))))
    return None


def perp_assignment(g: Graph) -> PerpAssignment:
    """Assign every vertex a distinct non-loop edge.

    In each component a cycle is oriented so every cycle vertex picks its
    cyclic successor; the remaining vertices pick their parent on a BFS tree
    grown outward from the cycle.

    Raises
    ------
    TreeComponent
        If some component (ignoring self-loops) has no cycle.
    """
    pick: dict[int, int] = {}
    for comp in g.components():
        cycle = _find_cycle(g, comp)
        if cycle is None:
            raise TreeComponent(comp)
        for i, v in enumerate(cycle):
            pick[v] = cycle[(i + 1) % len(cycle)]
        queue = deque(cycle)
        reached = set(cycle)
        while queue:
            v = queue.popleft()
            for w in g.neighbors(v):
                if w not in reached:
                    reached.add(w)
                    pick[w] = v
                    queue.append(w)
    return PerpAssignment(dict(sorted(pick.items())))
