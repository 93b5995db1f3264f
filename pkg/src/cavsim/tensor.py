"""Dense linear algebra over finite tensor-product spaces.

Subsystems are ordered atom, cavity A, cavity B, and the atomic basis is
{|e>, |g>}; index 0 of an atom axis is always the excited state.
"""
from dataclasses import dataclass
from functools import reduce
from typing import Sequence, Union

import numpy as np

from .errors import InvariantViolation

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
POSITIVITY_TOL = 1e-10


@dataclass(frozen=True)
class HilbertLayout:
    """Ordered subsystem dimensions of a composite space."""

    dims: tuple

    def __post_init__(self):
        dims = tuple(int(d) for d in np.atleast_1d(self.dims))
        if not dims or any(d < 1 for d in dims):
            raise ValueError(f"subsystem dimensions must be >= 1, got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def size(self) -> int:
        return int(np.prod(self.dims))

    def __len__(self):
        return len(self.dims)

    def check_index(self, index: int) -> int:
        if not -len(self.dims) <= index < len(self.dims):
            raise IndexError(f"subsystem {index} out of range for layout {self.dims}")
        return index % len(self.dims)


def _as_layout(dims) -> HilbertLayout:
    return dims if isinstance(dims, HilbertLayout) else HilbertLayout(tuple(dims))


def dag(m: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(m, -1, -2))


def is_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    m = np.asarray(m)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and bool(np.max(np.abs(m - dag(m)), initial=0.0) <= tol)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace matrix with its layout.

    The stored matrix is a read-only copy. Construction raises
    :class:`InvariantViolation` if any invariant fails at the module tolerances.
    """

    matrix: np.ndarray
    layout: HilbertLayout

    def __post_init__(self):
        layout = _as_layout(self.layout)
        m = np.array(self.matrix, dtype=np.complex128)
        if m.shape != (layout.size, layout.size):
            raise ValueError(f"matrix shape {m.shape} does not match layout {layout.dims}")
        if not is_hermitian(m):
            raise InvariantViolation("density matrix is not Hermitian")
        tr = np.trace(m)
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvariantViolation(f"density matrix trace {tr.real:.3e} != 1")
        evals = np.linalg.eigvalsh(m)
        if evals[0] < -POSITIVITY_TOL:
            raise InvariantViolation(f"density matrix has eigenvalue {evals[0]:.3e} < 0")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "layout", layout)

    @classmethod
    def from_unnormalized(cls, m, dims) -> "DensityMatrix":
        """Divide ``m`` by its trace; symmetrises away rounding-level asymmetry."""
        m = np.asarray(m, dtype=np.complex128)
        tr = np.trace(m).real
        if tr <= 0:
            raise InvariantViolation("cannot normalise a matrix with nonpositive trace")
        m = 0.5 * (m + dag(m)) / tr
        return cls(m, dims)

    @classmethod
    def from_vector(cls, psi, dims) -> "DensityMatrix":
        psi = np.asarray(psi, dtype=np.complex128).ravel()
        norm = np.vdot(psi, psi).real
        return cls.from_unnormalized(np.outer(psi, psi.conj()) / norm, dims)

    @property
    def dims(self) -> tuple:
        return self.layout.dims

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)

    def expect(self, op) -> float:
        return float(np.trace(self.matrix @ op).real)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


MatrixLike = Union[np.ndarray, DensityMatrix]


def _unpack(rho: MatrixLike, dims):
    if isinstance(rho, DensityMatrix):
        return rho.matrix, rho.layout
    if dims is None:
        raise TypeError("dims is required when passing a bare array")
    layout = _as_layout(dims)
    m = np.asarray(rho)
    if m.shape != (layout.size, layout.size):
        raise ValueError(f"matrix shape {m.shape} does not match layout {layout.dims}")
    return m, layout


def kron(*ops) -> np.ndarray:
    """Kronecker product of any number of operators or vectors, left to right."""
    if not ops:
        raise TypeError("kron needs at least one operand")
    return reduce(np.kron, (np.asarray(o) for o in ops))


def partial_trace(rho: MatrixLike, keep: Union[int, Sequence[int]], dims=None):
    """Trace out every subsystem not listed in ``keep``.

    Returns a :class:`DensityMatrix` when given one, else a bare array (which
    may be unnormalised).
    """
    m, layout = _unpack(rho, dims)
    keep_list = [keep] if np.isscalar(keep) else list(keep)
    keep_list = sorted({layout.check_index(k) for k in keep_list})
    k = len(layout)
    t = m.reshape(layout.dims + layout.dims)
    letters = "abcdefghijklmnopqrstuvwxyz"
    row = list(letters[:k])
    col = list(letters[k:2 * k])
    for i in range(k):
        if i not in keep_list:
            col[i] = row[i]
    out = "".join(row[i] for i in keep_list) + "".join(col[i] for i in keep_list)
    reduced = np.einsum("".join(row) + "".join(col) + "->" + out, t)
    kept_dims = tuple(layout.dims[i] for i in keep_list)
    d = int(np.prod(kept_dims))
    reduced = reduced.reshape(d, d)
    if isinstance(rho, DensityMatrix):
        return DensityMatrix.from_unnormalized(reduced, kept_dims)
    return reduced


def partial_transpose(rho: MatrixLike, sub: int, dims=None) -> np.ndarray:
    """Transpose the row and column indices of subsystem ``sub`` only."""
    m, layout = _unpack(rho, dims)
    sub = layout.check_index(sub)
    k = len(layout)
    t = m.reshape(layout.dims + layout.dims)
    t = np.swapaxes(t, sub, sub + k)
    return t.reshape(layout.size, layout.size)


def herm_eig(m, tol: float = HERMITIAN_TOL):
    """Eigen-decomposition of a Hermitian matrix.

    Returns ascending real eigenvalues and the unitary whose columns are the
    eigenvectors. Raises ``ValueError`` when ``m`` is not Hermitian within
    ``tol``.
    """
    m = np.asarray(m, dtype=np.complex128)
    if not is_hermitian(m, tol):
        raise ValueError("herm_eig requires a Hermitian matrix")
    return np.linalg.eigh(0.5 * (m + dag(m)))


def clamp_eigenvalues(evals, tol: float = POSITIVITY_TOL) -> np.ndarray:
    """Zero out eigenvalues in [-tol, 0); anything more negative is an error."""
    evals = np.asarray(evals, dtype=float)
    if evals.size and evals.min() < -tol:
        raise InvariantViolation(f"eigenvalue {evals.min():.3e} below -{tol:g}")
    return np.where(evals < 0.0, 0.0, evals)


def expm_hermitian(h, t: float) -> np.ndarray:
    """exp(-i h t) for Hermitian ``h`` via its eigen-decomposition."""
    evals, vecs = herm_eig(h)
    return (vecs * np.exp(-1j * evals * t)) @ dag(vecs)
