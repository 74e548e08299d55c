"""Random graphs, Hamiltonians and states for tests, demos and sweeps."""

from __future__ import annotations

import math

import numpy as np

from .graph import Graph


def rng_for(seed, *path: int) -> np.random.Generator:
    """Generator for a deterministic child stream of ``seed``.

    ``rng_for(7, 2)`` is the third child of ``SeedSequence(7)``, so one
    integer seed fans out reproducibly over a grid of runs.
    """
    ss = np.random.SeedSequence(seed)
    for p in path:
        ss = ss.spawn(p + 1)[p]
    return np.random.default_rng(ss)


def random_cyclic_graph(n: int, rng: np.random.Generator, extra_edges: int = 1) -> Graph:
    """Connected graph with at least one cycle: random spanning tree plus extras."""
    if n < 3:
        raise ValueError("a simple graph needs n >= 3 for a cycle")
    order = rng.permutation(n) + 1
    edges = {tuple(sorted((int(order[i]), int(order[rng.integers(0, i)])))) for i in range(1, n)}
    candidates = [(j, k) for j in range(1, n + 1) for k in range(j + 1, n + 1)
                  if (j, k) not in edges]
    want = min(len(candidates), max(1, extra_edges))
    for idx in rng.choice(len(candidates), size=want, replace=False):
        edges.add(candidates[idx])
    return Graph.from_edges(n, edges)


def random_z_local_hermitian(g: Graph, rng: np.random.Generator, *,
                             nonneg_diagonal: bool = True,
                             radius: float | None = None) -> np.ndarray:
    """Complex Gaussian entries on every edge, zero elsewhere.

    With ``radius`` set, the matrix is rescaled to that spectral radius.
    """
    n = g.n
    h = np.zeros((n, n), dtype=complex)
    for j, k in g.non_loop_edges():
        v = rng.normal() + 1j * rng.normal()
        h[j - 1, k - 1] = v
        h[k - 1, j - 1] = np.conj(v)
    diag = rng.random(n) if nonneg_diagonal else rng.normal(size=n)
    h[np.diag_indices(n)] = diag
    if radius is not None:
        h *= radius / np.abs(np.linalg.eigvalsh(h)).max()
    return h


def random_state(n: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return v / np.linalg.norm(v)


def hadamard_hamiltonian(n: int) -> np.ndarray:
    """Normalised Sylvester Hadamard matrix; Hermitian, unitary, ``||abs|| = sqrt(n)``."""
    k = int(round(math.log2(n)))
    if 2**k != n:
        raise ValueError(f"n must be a power of two, got {n}")
    h = np.array([[1.0]])
    for _ in range(k):
        h = np.block([[h, h], [h, -h]])
    return (h / math.sqrt(n)).astype(complex)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(j, k) for j in range(1, n + 1) for k in range(j + 1, n + 1)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(j, j + 1) for j in range(1, n)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(j, j % n + 1) for j in range(1, n + 1)])
