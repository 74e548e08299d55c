"""Lower ``exp(-iHt)`` to an explicit, certified sequence of C-local factors.

A plan applies, right to left in operator order,

    f = T,  e = (1 - iQ)/sqrt2,  (d = 2TT^dag - 1, c = iQ) x tau,
    b = (1 + iQ)/sqrt2,  a = T^dag

so it has exactly ``2 tau + 4`` factors. Factors are dense matrices; a plan
is data that can be re-certified without trusting the code that built it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT, Tolerances
from .correspondence import (
    Isometry,
    Preparation,
    WalkSpace,
    _check_state,
    build_isometry,
    build_psi_states,
    conditional_swap,
    finish_simulation,
    full_swap,
    prepare_walk,
)
from .graph import Graph
from .locality import (
    LocalityVerdict,
    check_z_local,
    find_c_local_partition,
    verify_partition,
)
from .spectral import abs_operator, as_hermitian, matrix_to_json, operator_norm, principal_eigvec

LABEL_NAMES = {
    "a": "T^dag",
    "b": "(1+iQ)/sqrt2",
    "c": "iQ",
    "d": "2TT^dag-1",
    "e": "(1-iQ)/sqrt2",
    "f": "T",
}


@dataclass(frozen=True)
class CLocalFactor:
    label: str
    operator: np.ndarray
    certificate: LocalityVerdict | None = None

    @property
    def shape(self) -> tuple:
        return self.operator.shape


@dataclass
class WalkPlan:
    """Ordered factor list (application order) plus the parameters behind it."""

    factors: list
    tau: int
    eps: float
    shift: float
    claimed_error: float
    hamiltonian: np.ndarray
    t: float
    n: int
    lazy: bool
    no_lazy: bool = False
    theorem: str = "lazy-local"
    eq5_bound: float = float("nan")
    warnings: list = field(default_factory=list)

    def distinct(self) -> dict:
        """One factor per label, in first-application order."""
        out = {}
        for f in self.factors:
            out.setdefault(f.label, f)
        return out

    def to_json(self) -> dict:
        distinct = self.distinct()
        return {
            "tau": int(self.tau),
            "eps": float(self.eps),
            "shift": float(self.shift),
            "t": float(self.t),
            "n": int(self.n),
            "walk_space": "C^N x C^N x C^2" if self.lazy else "C^N x C^N",
            "claimed_error": float(self.claimed_error),
            "eq5_bound": float(self.eq5_bound),
            "backed_by": self.theorem,
            "no_lazy": bool(self.no_lazy),
            "warnings": list(self.warnings),
            "factor_count": len(self.factors),
            "sequence": [f.label for f in self.factors],
            "factors": {
                label: {
                    "label": label,
                    "name": LABEL_NAMES.get(label, label),
                    "dims": list(f.shape),
                    "matrix": matrix_to_json(f.operator),
                    "certificate": f.certificate.to_json() if f.certificate else None,
                }
                for label, f in distinct.items()
            },
        }


def _factor_ops(iso: Isometry, swap: np.ndarray) -> dict:
    eye = np.eye(iso.space.dim)
    t = iso.matrix
    return {
        "f": t,
        "e": (eye - 1j * swap) / math.sqrt(2),
        "d": iso.reflection(),
        "c": 1j * swap,
        "b": (eye + 1j * swap) / math.sqrt(2),
        "a": t.conj().T,
    }


def certify_factor(label: str, op, g: Graph, space: WalkSpace,
                   tol: Tolerances = DEFAULT) -> LocalityVerdict:
    """C-locality certificate for one factor kind."""
    if label in ("a", "f"):
        v = check_z_local(op, g, tol.eq)
        verdict = LocalityVerdict("C", v.passed, v.witness, notes=("isometry entry test",))
    elif label == "d":
        z = space.internal
        blocks = [list(range(j * z, (j + 1) * z)) for j in range(g.n)]
        verdict = verify_partition(op, g, blocks, tol.eq)
    else:
        verdict = find_c_local_partition(op, g, tol.eq)
    return LocalityVerdict(verdict.kind, verdict.passed, verdict.witness,
                           verdict.notes, subject=label)


def assemble_plan(prep: Preparation, swap: np.ndarray | None = None,
                  tol: Tolerances = DEFAULT) -> WalkPlan:
    """Materialise and certify the factors for a prepared walk.

    ``swap`` defaults to the conditional swap; passing the full swap builds
    the non-local reference walk, which is useful as a negative control.
    """
    g = prep.graph
    if swap is None:
        swap = conditional_swap(g, prep.space.lazy)
    ops = _factor_ops(prep.isometry, swap)
    made = {
        label: CLocalFactor(label, op, certify_factor(label, op, g, prep.space, tol))
        for label, op in ops.items()
    }
    seq = [made["f"], made["e"]]
    for _ in range(prep.tau):
        seq += [made["d"], made["c"]]
    seq += [made["b"], made["a"]]
    return WalkPlan(
        factors=seq,
        tau=prep.tau,
        eps=prep.eps,
        shift=prep.shift,
        claimed_error=prep.claimed_error,
        hamiltonian=prep.hamiltonian,
        t=prep.t,
        n=g.n,
        lazy=prep.space.lazy,
        no_lazy=prep.no_lazy,
        theorem=prep.theorem,
        eq5_bound=prep.eq5_bound,
        warnings=list(prep.warnings),
    )


def compile_plan(h, t: float, g: Graph, delta: float, tol: Tolerances = DEFAULT) -> WalkPlan:
    """Compile ``exp(-iHt)`` on ``g`` to within ``delta``.

    ``h`` must be Z-local on ``g`` with spectral radius at most ``pi``. On a
    graph with a tree component the plan is still emitted, with ``eps = 1``,
    the flag ``no_lazy`` and the plain walk's error bound as its claim.
    """
    prep = prepare_walk(h, t, g, delta, require_h_local=True, tol=tol)
    return assemble_plan(prep, tol=tol)


def execute_plan(plan: WalkPlan, phi):
    """Apply the factors in order to ``phi`` and compare with ``exp(-iHt) phi``."""
    phi = _check_state(phi, plan.n)
    v = phi
    for f in plan.factors:
        v = f.operator @ v
    return finish_simulation(plan, phi, v)


def certify_plan(plan: WalkPlan, g: Graph, tol: Tolerances = DEFAULT) -> list[LocalityVerdict]:
    """Fresh certificates for every distinct factor kind of ``plan``.

    The reflection ``d`` is checked against the single-vertex partition
    ``P_j = {|j, k, f> : all k, f}``; ``b``, ``c``, ``e`` go through the
    partition finder and ``a``, ``f`` through the entry test.
    """
    space = WalkSpace(plan.n, plan.lazy)
    return [certify_factor(label, f.operator, g, space, tol)
            for label, f in sorted(plan.distinct().items())]


@dataclass
class LemmaReport:
    v2_minus_w2: float
    powered: dict
    unsquared: dict
    qt_minus_st: float
    nonedge_reflection: float
    tt_verdict: LocalityVerdict
    equivalence: dict

    def passed(self, tol: float = 1e-8) -> bool:
        """Lemma claims only, so odd ``tau`` in ``equivalence`` is skipped."""
        even = [v for k, v in self.equivalence.items() if k % 2 == 0]
        return (
            self.v2_minus_w2 <= tol
            and all(v <= tol for v in self.powered.values())
            and self.qt_minus_st <= tol
            and self.nonedge_reflection <= tol
            and self.tt_verdict.passed
            and all(v <= tol for v in even)
        )

    def to_json(self) -> dict:
        return {
            "v2_minus_w2": self.v2_minus_w2,
            "v_pow_2tau_minus_w_pow_2tau": {str(k): v for k, v in self.powered.items()},
            "v_pow_tau_minus_w_pow_tau": {str(k): v for k, v in self.unsquared.items()},
            "max_qt_minus_st": self.qt_minus_st,
            "nonedge_reflection_residual": self.nonedge_reflection,
            "tt_dagger_c_local": self.tt_verdict.to_json(),
            "s_walk_vs_q_walk": {str(k): v for k, v in self.equivalence.items()},
        }


def check_appendix_lemmas(h, g: Graph, tau_list, tol: Tolerances = DEFAULT) -> LemmaReport:
    """Numerical residuals for the S-walk / Q-walk equivalence.

    Uses the plain isometry ``T`` (after the diagonal shift that makes the
    construction valid). Reports ``||V^2 - W^2||``, ``||V^(2 tau) -
    W^(2 tau)||`` and ``||V^tau - W^tau||`` per ``tau``, ``max_j ||(Q - S)
    T|j>||``, the reflection acting as ``-1`` on non-edge pairs, the
    C-locality of ``T T^dag`` over the single-vertex partition, and the gap
    between the S- and Q-walk conjugated maps per ``tau``.
    """
    h = as_hermitian(h, tol)
    shift = max(0.0, -float(h.diagonal().real.min()))
    hw = h + shift * np.eye(h.shape[0])
    perron = principal_eigvec(abs_operator(hw), g, tol)
    iso = build_isometry(build_psi_states(hw, perron, g, tol=tol), None, 1.0, tol)
    space = iso.space
    t = iso.matrix
    refl = iso.reflection()
    s = full_swap(space)
    q = conditional_swap(g)
    v = 1j * q @ refl
    w = 1j * s @ refl
    eye = np.eye(space.dim)

    powered, unsquared, equivalence = {}, {}, {}
    for tau in tau_list:
        tau = int(tau)
        powered[tau] = operator_norm(
            np.linalg.matrix_power(v, 2 * tau) - np.linalg.matrix_power(w, 2 * tau))
        unsquared[tau] = operator_norm(
            np.linalg.matrix_power(v, tau) - np.linalg.matrix_power(w, tau))
        s_map = (t.conj().T @ ((eye + 1j * s) / math.sqrt(2))
                 @ np.linalg.matrix_power(w, tau) @ ((eye - 1j * s) / math.sqrt(2)) @ t)
        q_map = (t.conj().T @ ((eye + 1j * q) / math.sqrt(2))
                 @ np.linalg.matrix_power(v, tau) @ ((eye - 1j * q) / math.sqrt(2)) @ t)
        equivalence[tau] = operator_norm(s_map - q_map)

    adj = g.adjacency()
    nonedge = [space.index(j, k) for j in range(g.n) for k in range(g.n) if not adj[j, k]]
    if nonedge:
        cols = refl[:, nonedge] + eye[:, nonedge]
        nonedge_res = float(np.linalg.norm(cols, axis=0).max())
    else:
        nonedge_res = 0.0

    z = space.internal
    blocks = [list(range(j * z, (j + 1) * z)) for j in range(g.n)]
    tt = verify_partition(iso.projector, g, blocks, tol.eq)
    return LemmaReport(
        v2_minus_w2=operator_norm(v @ v - w @ w),
        powered=powered,
        unsquared=unsquared,
        qt_minus_st=float(np.linalg.norm((q - s) @ t, axis=0).max()),
        nonedge_reflection=nonedge_res,
        tt_verdict=LocalityVerdict("C", tt.passed, tt.witness, tt.notes, subject="TT^dag"),
        equivalence=equivalence,
    )
