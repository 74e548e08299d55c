"""Decision procedures for Z-, C- and H-locality of operators on a graph.

Operators act on the space spanned by basis labels ``|j, z>`` with vertex
``j`` and internal index ``z``. Label ``(j, z)`` sits at flat index
``(j - 1) * Z + z``; the vertex register is always the slowest index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components
from scipy.stats import unitary_group

from .config import DEFAULT, Tolerances
from .errors import BlockViolatesGraph, NonCommuting
from .graph import Graph, is_edge
from .spectral import matrix_exponential, matrix_to_json, operator_norm, principal_log


@dataclass(frozen=True)
class LocalityVerdict:
    """Outcome of one locality check.

    ``witness`` is a JSON-ready dict whose keys depend on ``kind``:

    * ``"Z"``: ``violations``, a list of ``{j, z, k, z_star, magnitude}``.
    * ``"C"``: ``partition`` (lists of flat labels) and ``block_vertices``,
      or ``offending`` components on failure.
    * ``"H"``: ``generator``, ``spectral_radius``, ``z_verdict`` and
      ``reconstruction_error``.
    """

    kind: str
    passed: bool
    witness: dict = field(default_factory=dict)
    notes: tuple = ()
    subject: str = ""

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "subject": self.subject,
            "pass": bool(self.passed),
            "notes": list(self.notes),
            "witness": self.witness,
        }

    def summary(self) -> str:
        status = "pass" if self.passed else "FAIL"
        head = f"{self.kind}-local{' [' + self.subject + ']' if self.subject else ''}: {status}"
        if self.passed:
            return head
        if self.kind == "Z":
            v = self.witness["violations"][0]
            return head + (
                f" (largest violation |<{v['j']},{v['z']}|U|{v['k']},{v['z_star']}>|"
                f" = {v['magnitude']:.3e})"
            )
        if self.kind == "C" and self.witness.get("offending"):
            return head + f" (block spans vertices {self.witness['offending'][0]['vertices']})"
        return head


def _internal_size(dim: int, n: int, what: str = "operator") -> int:
    if dim % n:
        raise ValueError(f"{what} dimension {dim} is not a multiple of N={n}")
    return dim // n


def vertex_of(labels, z: int) -> np.ndarray:
    """1-based vertex of each flat label."""
    return np.asarray(labels) // z + 1


def check_z_local(u, g: Graph, tol: float | None = None) -> LocalityVerdict:
    """Entry test: no amplitude between basis states of non-adjacent vertices.

    ``u`` may be rectangular, with row space ``N * Z_out`` and column space
    ``N * Z_in``; this covers isometries into a larger walk space.
    """
    tol = DEFAULT.eq if tol is None else tol
    u = np.asarray(u)
    zr = _internal_size(u.shape[0], g.n, "row")
    zc = _internal_size(u.shape[1], g.n, "column")
    adj = g.adjacency()
    rv = np.arange(u.shape[0]) // zr
    cv = np.arange(u.shape[1]) // zc
    bad = (~adj[np.ix_(rv, cv)]) & (np.abs(u) > tol)
    rows, cols = np.nonzero(bad)
    mags = np.abs(u[rows, cols])
    order = np.argsort(-mags, kind="stable")
    violations = [
        {
            "j": int(rv[r] + 1),
            "z": int(r % zr),
            "k": int(cv[c] + 1),
            "z_star": int(c % zc),
            "magnitude": float(m),
        }
        for r, c, m in zip(rows[order], cols[order], mags[order])
    ]
    return LocalityVerdict("Z", not violations, {"violations": violations})


def _block_ok(g: Graph, verts: Sequence[int]) -> bool:
    verts = sorted(set(int(v) for v in verts))
    return len(verts) == 1 or (len(verts) == 2 and is_edge(g, verts[0], verts[1]))


def find_c_local_partition(u, g: Graph, tol: float | None = None) -> LocalityVerdict:
    """Decide C-locality from the finest block-diagonal partition of ``u``.

    Labels are linked when either ``|u_ab|`` or ``|u_ba|`` exceeds ``tol``;
    connected components of that support graph are the finest admissible
    blocks. Any valid partition is a coarsening of these, and merging blocks
    can only enlarge their vertex sets, so checking the finest one is exact.
    """
    tol = DEFAULT.eq if tol is None else tol
    u = np.asarray(u)
    if u.shape[0] != u.shape[1]:
        raise ValueError(f"expected a square operator, got shape {u.shape}")
    z = _internal_size(u.shape[0], g.n)
    support = np.abs(u) > tol
    ncomp, comp = connected_components(csr_matrix(support | support.T), directed=False)
    blocks = [np.flatnonzero(comp == c) for c in range(ncomp)]
    blocks.sort(key=lambda b: b[0])
    partition, block_vertices, offending = [], [], []
    for b in blocks:
        verts = sorted(set(vertex_of(b, z).tolist()))
        partition.append(b.tolist())
        block_vertices.append(verts)
        if not _block_ok(g, verts):
            offending.append({"labels": b.tolist(), "vertices": verts})
    offending.sort(key=lambda o: -len(o["vertices"]))
    witness = {"partition": partition, "block_vertices": block_vertices}
    if offending:
        witness["offending"] = offending
    return LocalityVerdict("C", not offending, witness)


def verify_partition(u, g: Graph, partition, tol: float | None = None) -> LocalityVerdict:
    """Re-check a proposed C-local partition without searching for one.

    Confirms that ``partition`` covers every label once, that ``u`` has no
    entry above ``tol`` between distinct blocks, and that every block lives
    on a single vertex or on two adjacent vertices.
    """
    tol = DEFAULT.eq if tol is None else tol
    u = np.asarray(u)
    dim = u.shape[0]
    z = _internal_size(dim, g.n)
    block_id = np.full(dim, -1)
    problems = []
    for m, block in enumerate(partition):
        for label in block:
            if block_id[label] != -1:
                problems.append(f"label {label} appears in two blocks")
            block_id[label] = m
    if (block_id == -1).any():
        problems.append(f"labels {np.flatnonzero(block_id == -1).tolist()} not covered")
    leak = (block_id[:, None] != block_id[None, :]) & (np.abs(u) > tol)
    if leak.any():
        r, c = np.argwhere(leak)[0]
        problems.append(f"entry ({r}, {c}) couples distinct blocks, |u|={abs(u[r, c]):.3e}")
    block_vertices = []
    for block in partition:
        verts = sorted(set(vertex_of(block, z).tolist()))
        block_vertices.append(verts)
        if not _block_ok(g, verts):
            problems.append(f"block on vertices {verts} is neither a vertex nor an edge")
    witness = {
        "partition": [list(map(int, b)) for b in partition],
        "block_vertices": block_vertices,
    }
    if problems:
        witness["problems"] = problems
    return LocalityVerdict("C", not problems, witness, notes=("re-checked",))


def check_h_local(u, g: Graph, tol: float | None = None,
                  tolerances: Tolerances = DEFAULT) -> LocalityVerdict:
    """Sufficient test for H-locality using the principal logarithm.

    Takes ``H`` with ``exp(-iH) = u`` and eigenphases in ``(-pi, pi]`` (so
    ``t = 1``) and passes iff ``H`` is Z-local on ``g``. A failure does not
    rule out some other generator, so the verdict is noted sufficient-only.
    """
    tol = tolerances.eq if tol is None else tol
    u = np.asarray(u, dtype=complex)
    if u.shape[0] != u.shape[1]:
        raise ValueError(f"expected a square operator, got shape {u.shape}")
    _internal_size(u.shape[0], g.n)
    h, phases = principal_log(u, tolerances)
    radius = float(np.abs(phases).max(initial=0.0))
    zv = check_z_local(h, g, tol)
    recon = operator_norm(matrix_exponential(h, 1.0) - u)
    notes = ["sufficient-only"]
    if np.any(np.abs(np.abs(phases) - np.pi) < tolerances.branch_cut):
        notes.append("branch-cut")
    passed = (
        zv.passed
        and radius <= np.pi + tolerances.spectral_radius
        and recon <= 100 * tolerances.eq
    )
    witness = {
        "generator": matrix_to_json(h),
        "t": 1.0,
        "spectral_radius": radius,
        "z_verdict": zv.to_json(),
        "reconstruction_error": recon,
    }
    return LocalityVerdict("H", passed, witness, notes=tuple(notes))


@dataclass(frozen=True)
class BlockFactor:
    """A unitary acting on the flat basis labels ``labels`` and trivially elsewhere."""

    labels: tuple
    matrix: np.ndarray

    def embed(self, dim: int) -> np.ndarray:
        full = np.eye(dim, dtype=complex)
        idx = np.asarray(self.labels)
        full[np.ix_(idx, idx)] = self.matrix
        return full


def block_factors(u, partition) -> list[BlockFactor]:
    """Split a block-diagonal ``u`` into per-block factors."""
    u = np.asarray(u)
    return [BlockFactor(tuple(b), u[np.ix_(b, b)].copy()) for b in partition]


def h_from_c_local(factors: Sequence[BlockFactor], g: Graph, z: int,
                   tol: Tolerances = DEFAULT) -> np.ndarray:
    """Hermitian ``H`` with ``exp(-iH)`` equal to the product of commuting factors.

    Each block's principal log is embedded and summed. Principal logs are
    functions of their unitaries, so they inherit pairwise commutation and
    the exponential of the sum factorises.

    Raises
    ------
    BlockViolatesGraph
        A block touches non-adjacent vertices, or more than two vertices.
    NonCommuting
        Two embedded factors have commutator norm above ``tol.commute``.
    """
    dim = g.n * z
    for f in factors:
        verts = sorted(set(vertex_of(f.labels, z).tolist()))
        if not _block_ok(g, verts):
            raise BlockViolatesGraph(f"block {list(f.labels)} spans vertices {verts}")
    full = [f.embed(dim) for f in factors]
    for a in range(len(full)):
        for b in range(a + 1, len(full)):
            if set(factors[a].labels).isdisjoint(factors[b].labels):
                continue
            c = operator_norm(full[a] @ full[b] - full[b] @ full[a])
            if c > tol.commute:
                raise NonCommuting(f"factors {a} and {b} have ||[U_a, U_b]|| = {c:.3e}")
    h = np.zeros((dim, dim), dtype=complex)
    for f in factors:
        idx = np.asarray(f.labels)
        h[np.ix_(idx, idx)] += principal_log(f.matrix, tol)[0]
    return h


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    if dim == 1:
        return np.exp(2j * np.pi * rng.random()).reshape(1, 1)
    return unitary_group.rvs(dim, random_state=rng)


def sample_c_local(g: Graph, z: int, seed: int) -> tuple[np.ndarray, list[list[int]]]:
    """Random C-local unitary on ``g`` with ``z`` internal states per vertex.

    A random matching of non-loop edges is drawn; each matched edge and each
    unmatched vertex receives an independent Haar-random block.

    Returns
    -------
    u : ndarray
    partition : list of lists of flat labels
    """
    rng = np.random.default_rng(seed)
    edges = g.non_loop_edges()
    rng.shuffle(edges)
    used: set[int] = set()
    groups = []
    for j, k in edges:
        if j not in used and k not in used and rng.random() < 0.75:
            used.update((j, k))
            groups.append((j, k))
    groups += [(j,) for j in g.vertices if j not in used]
    groups.sort()
    dim = g.n * z
    u = np.zeros((dim, dim), dtype=complex)
    partition = []
    for verts in groups:
        labels = [(v - 1) * z + s for v in verts for s in range(z)]
        u[np.ix_(labels, labels)] = haar_unitary(len(labels), rng)
        partition.append(labels)
    return u, partition
