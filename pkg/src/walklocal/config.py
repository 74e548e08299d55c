"""Numerical tolerances shared by every checker in the package."""

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    """Absolute tolerances for the certification chain.

    Attributes
    ----------
    eq : float
        Equality of matrices and vectors (residuals, reconstructions).
    zero : float
        Threshold below which an entry counts as structurally zero.
    hermitian : float
        Per-entry slack when validating ``H == H^dagger``.
    commute : float
        Operator-norm bound on commutators of block factors.
    spectral_radius : float
        Slack on the ``|lambda| <= pi`` bound of H-local generators.
    branch_cut : float
        Eigenphases closer than this to ``pi`` trigger a branch-cut note.
    degenerate : float
        Relative gap below which two eigenvalues are treated as equal.
    """

    eq: float = 1e-10
    zero: float = 1e-12
    hermitian: float = 1e-12
    commute: float = 1e-10
    spectral_radius: float = 1e-9
    branch_cut: float = 1e-6
    degenerate: float = 1e-9

    def with_overrides(self, **kwargs) -> "Tolerances":
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


DEFAULT = Tolerances()
