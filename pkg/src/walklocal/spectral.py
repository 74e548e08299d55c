"""Dense Hermitian linear algebra: abs(H), Perron data, norms, exponentials.

Matrices are plain ``numpy`` arrays. A Hermitian operator is any square
complex array that passes :func:`as_hermitian`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

import numpy as np
import scipy.linalg

from .config import DEFAULT, Tolerances
from .errors import DegenerateSupport, MatrixFormatError, NotHermitian


def as_hermitian(m, tol: Tolerances = DEFAULT) -> np.ndarray:
    """Validate and return ``m`` as a complex Hermitian array."""
    h = np.asarray(m, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise NotHermitian(f"expected a square matrix, got shape {h.shape}")
    dev = np.abs(h - h.conj().T).max(initial=0.0)
    if dev > tol.hermitian:
        raise NotHermitian(f"matrix is not Hermitian (max |H - H^dag| = {dev:.3e})")
    return h


def abs_operator(h) -> np.ndarray:
    """Entrywise modulus of ``h`` as a real nonnegative matrix."""
    return np.abs(np.asarray(h))


def operator_norm(m) -> float:
    """Largest singular value."""
    m = np.asarray(m)
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


def spectral_radius(h) -> float:
    h = np.asarray(h)
    if h.size == 0:
        return 0.0
    return float(np.abs(np.linalg.eigvalsh(h)).max())


@dataclass(frozen=True)
class PerronData:
    """Top eigenpair of ``abs(H)`` with a strictly positive unit eigenvector."""

    norm_abs: float
    d: np.ndarray

    def residual(self, a) -> float:
        return float(np.linalg.norm(np.asarray(a) @ self.d - self.norm_abs * self.d))


def principal_eigvec(a, g=None, tol: Tolerances = DEFAULT) -> PerronData:
    """Perron eigenpair of a nonnegative symmetric matrix.

    A simple top eigenvalue gives the eigenvector with its largest entry made
    positive. A degenerate top eigenvalue is resolved by projecting the
    all-ones vector onto the top eigenspace, which is the symmetric choice and
    is positive whenever any positive eigenvector exists among the
    per-component Perron vectors.

    Parameters
    ----------
    a : array_like
        Nonnegative symmetric ``n x n`` matrix, usually ``abs_operator(h)``.
    g : Graph, optional
        Only used to check the dimension.

    Raises
    ------
    DegenerateSupport
        If the resulting vector has an entry ``<= tol.zero``.
    """
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    if g is not None and g.n != n:
        raise ValueError(f"matrix is {n}x{n} but graph has {g.n} vertices")
    w, v = np.linalg.eigh(a)
    top = w[-1]
    in_top = np.abs(w - top) <= tol.degenerate * max(1.0, abs(top))
    basis = v[:, in_top]
    if basis.shape[1] == 1:
        d = basis[:, 0]
        d = d * np.sign(d[np.argmax(np.abs(d))])
    else:
        d = basis @ (basis.T @ np.ones(n))
        nrm = np.linalg.norm(d)
        if nrm <= tol.zero:
            raise DegenerateSupport("top eigenspace is orthogonal to the all-ones vector")
        d = d / nrm
    if d.min() <= tol.zero:
        raise DegenerateSupport(
            f"Perron vector has a nonpositive entry (min d = {d.min():.3e}); "
            "abs(H) is reducible or has a zero row"
        )
    return PerronData(norm_abs=float(max(top, 0.0)), d=d)


def matrix_exponential(h, t: float) -> np.ndarray:
    """``exp(-i H t)`` through the eigendecomposition of Hermitian ``h``."""
    w, v = np.linalg.eigh(np.asarray(h, dtype=complex))
    return (v * np.exp(-1j * w * t)) @ v.conj().T


def principal_log(u, tol: Tolerances = DEFAULT) -> tuple[np.ndarray, np.ndarray]:
    """Hermitian ``H`` with ``exp(-i H) = u`` and eigenphases in ``(-pi, pi]``.

    Uses the complex Schur form, which is diagonal for normal matrices and
    keeps an orthonormal eigenbasis through degenerate eigenvalues.

    Returns
    -------
    h : ndarray
        The generator.
    phases : ndarray
        Its eigenvalues.
    """
    u = np.asarray(u, dtype=complex)
    tri, z = scipy.linalg.schur(u, output="complex")
    theta = -np.angle(np.diag(tri))
    # np.angle lives in (-pi, pi], so -angle can land exactly on -pi
    theta[theta <= -np.pi + tol.zero] = np.pi
    h = (z * theta) @ z.conj().T
    return 0.5 * (h + h.conj().T), theta


# --- JSON payloads -------------------------------------------------------


def matrix_to_json(m) -> dict:
    """Row-major ``[re, im]`` pairs; square matrices carry ``n``."""
    m = np.asarray(m, dtype=complex)
    entries = [[float(x.real), float(x.imag)] for x in m.ravel()]
    if m.shape[0] == m.shape[1]:
        return {"n": int(m.shape[0]), "entries": entries}
    return {"rows": int(m.shape[0]), "cols": int(m.shape[1]), "entries": entries}


def matrix_from_json(doc: Mapping | str) -> np.ndarray:
    """Inverse of :func:`matrix_to_json`; also accepts 1-based sparse triplets.

    ``{"n": 2, "triplets": [[1, 2, 0.0, -1.0], [2, 1, 0.0, 1.0]]}`` lists
    ``[row, col, re, im]``; unlisted entries are zero.
    """
    if isinstance(doc, str):
        doc = json.loads(doc)
    try:
        if "n" in doc:
            rows = cols = int(doc["n"])
        else:
            rows, cols = int(doc["rows"]), int(doc["cols"])
        m = np.zeros((rows, cols), dtype=complex)
        if "entries" in doc:
            flat = np.asarray(doc["entries"], dtype=float)
            if flat.shape != (rows * cols, 2):
                raise MatrixFormatError(
                    f"expected {rows * cols} [re, im] pairs, got shape {flat.shape}"
                )
            m[:] = (flat[:, 0] + 1j * flat[:, 1]).reshape(rows, cols)
        elif "triplets" in doc:
            for j, k, re, im in doc["triplets"]:
                j, k = int(j), int(k)
                if not (1 <= j <= rows and 1 <= k <= cols):
                    raise MatrixFormatError(f"triplet index ({j}, {k}) out of range")
                m[j - 1, k - 1] = complex(float(re), float(im))
        else:
            raise MatrixFormatError("matrix JSON needs 'entries' or 'triplets'")
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, MatrixFormatError):
            raise
        raise MatrixFormatError(f"bad matrix JSON: {exc}") from exc
    return m


def load_matrix(path: str | Path) -> np.ndarray:
    return matrix_from_json(Path(path).read_text())


def vector_to_json(v) -> list:
    return [[float(x.real), float(x.imag)] for x in np.asarray(v, dtype=complex)]
