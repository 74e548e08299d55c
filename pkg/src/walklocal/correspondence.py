"""Continuous-to-discrete quantum walk correspondence that respects locality.

The walk space is ``C^N (x) C^N`` (plain) or ``C^N (x) C^N (x) C^2``
(lazy-local, with a flag register). Basis state ``|j, k, f>`` with 0-based
``j, k`` sits at flat index ``(j * N + k) * F + f`` where ``F`` is 1 or 2,
so the first vertex register is the slowest index, matching the label
convention of :mod:`walklocal.locality`.

Conventions
-----------
``T^dagger S T = H / ||abs(H)||`` is the identity the construction rests on.
With that normalisation the boundary factors that make the walk track
``exp(-iHt)`` are ``(1 - iQ)/sqrt(2)`` applied right after ``T`` and
``(1 + iQ)/sqrt(2)`` applied right before ``T^dagger``; the opposite order
tracks ``exp(+iHt)``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT, Tolerances
from .errors import (
    MissingPerp,
    NegativeDiagonal,
    NotZLocal,
    OddTau,
    OrthogonalityViolation,
    SpectralRadiusExceeded,
    TreeComponent,
)
from .graph import Graph, PerpAssignment, perp_assignment
from .locality import check_z_local
from .spectral import (
    PerronData,
    abs_operator,
    as_hermitian,
    matrix_exponential,
    operator_norm,
    principal_eigvec,
    spectral_radius,
    vector_to_json,
)

log = logging.getLogger(__name__)

HALF_PI_MINUS_ONE = math.pi / 2 - 1


@dataclass(frozen=True)
class WalkSpace:
    n: int
    lazy: bool = False

    @property
    def flags(self) -> int:
        return 2 if self.lazy else 1

    @property
    def dim(self) -> int:
        return self.n * self.n * self.flags

    @property
    def internal(self) -> int:
        """Internal states per vertex of the first register."""
        return self.n * self.flags

    def index(self, j: int, k: int, f: int = 0) -> int:
        """Flat index of ``|j, k, f>`` for 0-based vertices."""
        return (j * self.n + k) * self.flags + f


@dataclass(frozen=True)
class PsiFamily:
    """Columns ``states[:, j]`` are the orthonormal states psi_j."""

    space: WalkSpace
    states: np.ndarray

    @property
    def n(self) -> int:
        return self.space.n


@dataclass(frozen=True)
class Isometry:
    space: WalkSpace
    matrix: np.ndarray
    epsilon: float = 1.0
    perp: PerpAssignment | None = None

    @property
    def projector(self) -> np.ndarray:
        return self.matrix @ self.matrix.conj().T

    def reflection(self) -> np.ndarray:
        return 2 * self.projector - np.eye(self.space.dim)


def build_psi_states(h, perron: PerronData, g: Graph, lazy_local: bool = False,
                     tol: Tolerances = DEFAULT) -> PsiFamily:
    """States psi_j supported on ``|j, k(, 0)>`` for edges ``(j, k)``.

    Amplitude moduli are ``sqrt(|H_jk| d_k / d_j / ||abs(H)||)``. For
    ``j < k`` with ``phi = arg H_jk``, amplitude ``(j, k)`` carries phase
    ``exp(-i phi/2)`` and ``(k, j)`` carries ``exp(+i phi/2)``, which makes
    ``<psi_j|S|psi_k> = H_jk / ||abs(H)||`` exactly, negative reals included.

    A zero ``H`` has no normalisation; psi_j = ``|j, j>`` is used, which is
    the limit of the construction for ``H = c I``.
    """
    h = as_hermitian(h, tol)
    n = h.shape[0]
    if g.n != n:
        raise ValueError(f"H is {n}x{n} but graph has {g.n} vertices")
    diag = h.diagonal().real
    if diag.min() < -tol.zero:
        j = int(np.argmin(diag))
        raise NegativeDiagonal(f"H[{j + 1},{j + 1}] = {diag[j]:.3e} < 0; shift H first")
    zv = check_z_local(h, g, tol.zero)
    if not zv.passed:
        raise NotZLocal("H is not Z-local on the graph: " + zv.summary())

    space = WalkSpace(n, lazy_local)
    states = np.zeros((space.dim, n), dtype=complex)
    if perron.norm_abs <= tol.zero:
        for j in range(n):
            states[space.index(j, j), j] = 1.0
        return PsiFamily(space, states)

    d = perron.d
    mod = np.abs(h)
    for j in range(n):
        for k in range(n):
            if mod[j, k] <= tol.zero:
                continue
            if j == k:
                phase = 1.0
            elif j < k:
                phase = np.exp(-0.5j * np.angle(h[j, k]))
            else:
                phase = np.exp(0.5j * np.angle(h[k, j]))
            amp = math.sqrt(mod[j, k] * d[k] / d[j] / perron.norm_abs)
            states[space.index(j, k), j] = amp * phase
    return PsiFamily(space, states)


def perp_states(space: WalkSpace, perp: PerpAssignment) -> np.ndarray:
    """Columns ``|j, m(j), 1>`` for the flag-register lazy states."""
    if not space.lazy:
        raise ValueError("perp states need the lazy-local walk space")
    out = np.zeros((space.dim, space.n), dtype=complex)
    for j in range(space.n):
        out[space.index(j, perp[j + 1] - 1, 1), j] = 1.0
    return out


def full_swap(space: WalkSpace) -> np.ndarray:
    """``S |j, k, f> = |k, j, f>``."""
    return _permutation_matrix(_swap_permutation(space, None))


def conditional_swap(g: Graph, lazy_local: bool = False) -> np.ndarray:
    """``Q |j, k, f> = |k, j, f>`` on edges, identity on non-edges."""
    return _permutation_matrix(_swap_permutation(WalkSpace(g.n, lazy_local), g.adjacency()))


def _swap_permutation(space: WalkSpace, adjacency) -> np.ndarray:
    """``perm[a]`` is the image of basis state ``a``."""
    n, fl = space.n, space.flags
    j, k, f = np.unravel_index(np.arange(space.dim), (n, n, fl))
    swapped = (k * n + j) * fl + f
    if adjacency is None:
        return swapped
    return np.where(adjacency[j, k], swapped, np.arange(space.dim))


def _permutation_matrix(perm) -> np.ndarray:
    m = np.zeros((len(perm), len(perm)))
    m[perm, np.arange(len(perm))] = 1.0
    return m


def build_isometry(psi: PsiFamily, perp: PerpAssignment | None = None, eps: float = 1.0,
                   tol: Tolerances = DEFAULT) -> Isometry:
    """``T_eps`` with columns ``sqrt(eps) psi_j + sqrt(1 - eps) |j, m(j), 1>``.

    The three orthogonality conditions between the psi and perp families
    (directly and through the swap) are verified before assembly.

    Raises
    ------
    MissingPerp
        ``eps < 1`` without a perp assignment, or without the flag register.
    OrthogonalityViolation
        One of the orthogonality conditions fails.
    """
    if not 0 < eps <= 1:
        raise ValueError(f"eps must lie in (0, 1], got {eps}")
    space = psi.space
    if perp is None:
        if eps < 1:
            raise MissingPerp("eps < 1 requires a perp assignment")
        return Isometry(space, psi.states.copy(), 1.0, None)
    if not space.lazy:
        raise MissingPerp("perp states need psi built with lazy_local=True")

    bot = perp_states(space, perp)
    swap = full_swap(space)
    checks = (
        ("<psi_j|perp_k>", psi.states.conj().T @ bot),
        ("<psi_j|S|perp_k>", psi.states.conj().T @ swap @ bot),
        ("<perp_j|S|perp_k>", bot.conj().T @ swap @ bot),
    )
    for name, gram in checks:
        bad = np.abs(gram) > tol.zero
        if bad.any():
            j, k = np.argwhere(bad)[0]
            raise OrthogonalityViolation(name, int(j) + 1, int(k) + 1, float(abs(gram[j, k])))
    t = math.sqrt(eps) * psi.states + math.sqrt(1 - eps) * bot
    return Isometry(space, t, float(eps), perp)


def error_bound(h_ratio: float, tau: int, eps: float = 1.0) -> float:
    """``(eps h)^2 (1 + (pi/2 - 1) eps h tau)``."""
    eh = eps * h_ratio
    return eh * eh * (1 + HALF_PI_MINUS_ONE * eh * tau)


def required_steps(norm_h_t: float, norm_abs_t: float, delta: float) -> float:
    """Real-valued lower bound on the number of walk steps for error ``delta``."""
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    first = norm_h_t * math.sqrt((1 + HALF_PI_MINUS_ONE * norm_h_t) / delta)
    return max(first, norm_abs_t)


def even_ceiling(x: float) -> int:
    """Smallest even integer ``>= x``; 0 only for ``x <= 0``."""
    if x <= 0:
        return 0
    # guard against 2.0000000000000004-style round-up
    return 2 * math.ceil(x / 2 - 1e-12)


def select_parameters(h, t: float, delta: float, perron: PerronData) -> tuple[int, float]:
    """Even step count ``tau`` and laziness ``eps = ||abs(H)|| t / tau``.

    A zero generator needs no steps and yields ``(0, 1.0)``.
    """
    if t <= 0:
        raise ValueError(f"t must be positive, got {t}")
    raw = required_steps(operator_norm(h) * t, perron.norm_abs * t, delta)
    tau = even_ceiling(raw)
    if tau == 0:
        return 0, 1.0
    return tau, min(1.0, perron.norm_abs * t / tau)


@dataclass
class Preparation:
    """Everything needed to run or compile the walk for one ``(H, t, g)``.

    ``shift`` is the multiple of the identity added to ``H`` (removed later
    as the global phase ``exp(i shift t)``); ``h_walk`` is the shifted
    generator the walk actually encodes.
    """

    hamiltonian: np.ndarray
    t: float
    graph: Graph
    shift: float
    h_walk: np.ndarray
    perron: PerronData
    isometry: Isometry
    tau: int
    eps: float
    h_ratio: float
    eq5_bound: float
    claimed_error: float
    no_lazy: bool = False
    theorem: str = "lazy-local"
    warnings: list = field(default_factory=list)

    @property
    def space(self) -> WalkSpace:
        return self.isometry.space


def _shifted(h, c: float) -> np.ndarray:
    return h + c * np.eye(h.shape[0])


def prepare_walk(h, t: float, g: Graph, delta: float | None = None, *,
                 tau: int | None = None, eps: float | None = None,
                 allow_odd_tau: bool = False, require_h_local: bool = False,
                 tol: Tolerances = DEFAULT) -> Preparation:
    """Choose the diagonal shift, walk space, ``(tau, eps)`` and build ``T``.

    Exactly one of ``delta`` (automatic parameters) or ``tau`` (explicit,
    with ``eps`` defaulting to 1) must be given.

    In automatic mode a graph with a tree component cannot host the local
    lazy walk; the preparation then falls back to ``eps = 1`` and raises the
    diagonal shift until ``||abs(H)|| t`` equals the even step count, so the
    walk still lands on time ``t``. Such preparations carry ``no_lazy``.
    """
    h = as_hermitian(h, tol)
    if g.n != h.shape[0]:
        raise ValueError(f"H is {h.shape[0]}x{h.shape[0]} but graph has {g.n} vertices")
    zv = check_z_local(h, g, tol.zero)
    if not zv.passed:
        raise NotZLocal("H is not Z-local on the graph: " + zv.summary())
    if require_h_local:
        rad = spectral_radius(h)
        if rad > math.pi + tol.spectral_radius:
            raise SpectralRadiusExceeded(f"spectral radius {rad:.6f} exceeds pi")
    if (delta is None) == (tau is None):
        raise ValueError("give exactly one of delta or tau")

    shift = max(0.0, -float(h.diagonal().real.min()))
    hw = _shifted(h, shift)
    perron = principal_eigvec(abs_operator(hw), g, tol)
    notes: list[str] = []

    if tau is not None:
        eps = 1.0 if eps is None else float(eps)
        if tau < 0:
            raise ValueError(f"tau must be nonnegative, got {tau}")
        if tau % 2 and not allow_odd_tau:
            raise OddTau(f"tau={tau} is odd; the S/Q walk equivalence needs even tau")
        if tau % 2:
            notes.append("odd tau: S/Q equivalence not guaranteed")
        lazy = eps < 1
        perp = perp_assignment(g) if lazy else None
        psi = build_psi_states(hw, perron, g, lazy_local=lazy, tol=tol)
        iso = build_isometry(psi, perp, eps, tol)
        h_ratio = _h_ratio(hw, perron)
        bound = error_bound(h_ratio, tau, eps)
        return Preparation(h, t, g, shift, hw, perron, iso, int(tau), eps, h_ratio,
                           bound, bound, theorem="explicit", warnings=notes)

    if perron.norm_abs <= tol.zero:
        psi = build_psi_states(hw, perron, g, tol=tol)
        iso = build_isometry(psi, None, 1.0, tol)
        return Preparation(h, t, g, shift, hw, perron, iso, 0, 1.0, 0.0, 0.0, 0.0,
                           theorem="zero-generator")

    try:
        perp = perp_assignment(g)
    except TreeComponent as exc:
        if t <= 0:
            raise ValueError(f"t must be positive, got {t}") from exc
        steps = max(2, even_ceiling(perron.norm_abs * t))
        shift += steps / t - perron.norm_abs
        hw = _shifted(h, shift)
        perron = principal_eigvec(abs_operator(hw), g, tol)
        psi = build_psi_states(hw, perron, g, tol=tol)
        iso = build_isometry(psi, None, 1.0, tol)
        h_ratio = _h_ratio(hw, perron)
        bound = error_bound(h_ratio, steps, 1.0)
        msg = f"no_lazy: {exc}; falling back to eps=1 with error bound {bound:.4g}"
        log.warning(msg)
        return Preparation(h, t, g, shift, hw, perron, iso, steps, 1.0, h_ratio, bound,
                           bound, no_lazy=True, theorem="plain", warnings=[msg])

    steps, eps = select_parameters(hw, t, delta, perron)
    psi = build_psi_states(hw, perron, g, lazy_local=True, tol=tol)
    iso = build_isometry(psi, perp, eps, tol)
    h_ratio = _h_ratio(hw, perron)
    return Preparation(h, t, g, shift, hw, perron, iso, steps, eps, h_ratio,
                       error_bound(h_ratio, steps, eps), float(delta))


def _h_ratio(hw, perron: PerronData) -> float:
    if perron.norm_abs == 0:
        return 0.0
    return operator_norm(hw) / perron.norm_abs


@dataclass
class SimulationResult:
    output_state: np.ndarray
    success_prob: float
    oracle_state: np.ndarray
    error: float
    bound: float
    tau: int
    eps: float
    shift: float
    no_lazy: bool = False
    eq5_bound: float = float("nan")
    warnings: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "output_state": vector_to_json(self.output_state),
            "oracle_state": vector_to_json(self.oracle_state),
            "success_prob": float(self.success_prob),
            "error": float(self.error),
            "bound": float(self.bound),
            "eq5_bound": float(self.eq5_bound),
            "tau": int(self.tau),
            "eps": float(self.eps),
            "shift": float(self.shift),
            "no_lazy": bool(self.no_lazy),
            "warnings": list(self.warnings),
        }


def finish_simulation(prep, phi, walked) -> SimulationResult:
    """Undo the shift phase and compare a projected output with the oracle.

    ``prep`` is a :class:`Preparation` or anything with the same parameter
    attributes, such as a compiled plan.
    """
    phi = np.asarray(phi, dtype=complex)
    out = np.exp(1j * prep.shift * prep.t) * walked
    oracle = matrix_exponential(prep.hamiltonian, prep.t) @ phi
    return SimulationResult(
        output_state=out,
        success_prob=float(np.vdot(walked, walked).real),
        oracle_state=oracle,
        error=float(np.linalg.norm(out - oracle)),
        bound=prep.claimed_error,
        tau=prep.tau,
        eps=prep.eps,
        shift=prep.shift,
        no_lazy=prep.no_lazy,
        eq5_bound=prep.eq5_bound,
        warnings=list(prep.warnings),
    )


def _check_state(phi, n: int) -> np.ndarray:
    phi = np.asarray(phi, dtype=complex)
    if phi.shape != (n,):
        raise ValueError(f"initial state must have shape ({n},), got {phi.shape}")
    if abs(np.linalg.norm(phi) - 1) > 1e-9:
        raise ValueError("initial state must be unit-norm")
    return phi


def run_walk(prep: Preparation, phi) -> np.ndarray:
    """Walk ``phi`` through the Q-walk using permutations and ``T`` products.

    Deliberately avoids materialising the per-step operators so it can serve
    as an independent cross-check of compiled plans.
    """
    t_mat = prep.isometry.matrix
    perm = _swap_permutation(prep.space, prep.graph.adjacency())

    def q(v):
        out = np.empty_like(v)
        out[perm] = v
        return out

    v = t_mat @ phi
    v = (v - 1j * q(v)) / math.sqrt(2)
    for _ in range(prep.tau):
        v = 2 * (t_mat @ (t_mat.conj().T @ v)) - v
        v = 1j * q(v)
    v = (v + 1j * q(v)) / math.sqrt(2)
    return t_mat.conj().T @ v


def simulate_correspondence(h, t: float, g: Graph, phi, delta: float | None = None, *,
                            tau: int | None = None, eps: float | None = None,
                            allow_odd_tau: bool = False,
                            tol: Tolerances = DEFAULT) -> SimulationResult:
    """Approximate ``exp(-iHt) phi`` with the local discrete-time walk.

    With ``delta`` the step count and laziness are chosen automatically and
    the reported bound is ``delta`` (or, for ``no_lazy`` runs, the plain
    bound). With explicit ``tau``/``eps`` the walk runs as given and the
    reported bound is ``error_bound(h, tau, eps)``, which assumes
    ``eps * tau = ||abs(H)|| t``.

    Examples
    --------
    >>> import numpy as np
    >>> from walklocal.graph import Graph
    >>> g = Graph.from_edges(3, [(1, 2), (2, 3), (1, 3)])
    >>> h = np.array([[0.5, 1, 0], [1, 0, 1], [0, 1, 0.2]], dtype=complex)
    >>> r = simulate_correspondence(h, 1.0, g, np.array([1, 0, 0]), delta=0.05)
    >>> r.error <= 0.05
    True
    """
    prep = prepare_walk(h, t, g, delta, tau=tau, eps=eps,
                        allow_odd_tau=allow_odd_tau, tol=tol)
    phi = _check_state(phi, g.n)
    return finish_simulation(prep, phi, run_walk(prep, phi))
