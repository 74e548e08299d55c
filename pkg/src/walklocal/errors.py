"""Exception types raised by walklocal."""


class WalkLocalError(ValueError):
    """Base class for all input and contract errors."""


class GraphFormatError(WalkLocalError):
    pass


class MatrixFormatError(WalkLocalError):
    pass


class NotHermitian(WalkLocalError):
    pass


class TreeComponent(WalkLocalError):
    """A connected component has no cycle, so no local lazy walk exists."""

    def __init__(self, component):
        self.component = tuple(component)
        super().__init__(
            f"component {sorted(self.component)} is acyclic; "
            "cannot assign distinct non-loop edges to its vertices"
        )


class DegenerateSupport(WalkLocalError):
    """The Perron vector of abs(H) has a (numerically) zero entry."""


class NonCommuting(WalkLocalError):
    pass


class BlockViolatesGraph(WalkLocalError):
    pass


class NegativeDiagonal(WalkLocalError):
    pass


class NotZLocal(WalkLocalError):
    pass


class OrthogonalityViolation(WalkLocalError):
    def __init__(self, condition, j, k, value):
        self.condition, self.j, self.k, self.value = condition, j, k, value
        super().__init__(f"{condition} fails at (j={j}, k={k}): |value|={value:.3e}")


class MissingPerp(WalkLocalError):
    pass


class OddTau(WalkLocalError):
    pass


class SpectralRadiusExceeded(WalkLocalError):
    pass
