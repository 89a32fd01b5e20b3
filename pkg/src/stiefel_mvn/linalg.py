"""Dense symmetric-matrix kernels: PSD square roots, Helmert complement,
polar decomposition.

All operations are pure functions of their arguments and hold no state, so
they are safe to call concurrently.
"""

import numpy as np

from .errors import (
    InvalidSizeError,
    NotPSDError,
    NotSymmetricError,
    RankDeficientError,
    SingularMatrixError,
)

__all__ = [
    "sym_sqrt",
    "sym_inv_sqrt",
    "helmert_complement",
    "helmert_apply",
    "polar_decompose",
]

# Eigenvalues below -PSD_TOL * trace flag a non-PSD matrix; below
# PD_TOL * trace the matrix is treated as singular.
PSD_TOL = 1e-12
PD_TOL = 1e-10

_ASYM_TOL = 1e-10


def _check_square_symmetric(m: np.ndarray, name: str = "matrix") -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotSymmetricError(f"{name} must be square, got shape {m.shape}")
    asym = np.abs(m - m.T).max(initial=0.0)
    if asym > _ASYM_TOL * (1.0 + np.abs(m).max(initial=0.0)):
        raise NotSymmetricError(f"{name} asymmetry {asym:.3e} exceeds tolerance")
    # Work on the exactly symmetric average so eigh sees a clean input.
    return 0.5 * (m + m.T)


def sym_sqrt(m: np.ndarray) -> np.ndarray:
    """Unique symmetric PSD square root, via eigendecomposition.

    Eigenvalues in [-PSD_TOL * trace, 0) are clipped to zero; anything more
    negative raises :class:`NotPSDError`.
    """
    m = _check_square_symmetric(m)
    w, v = np.linalg.eigh(m)
    floor = -PSD_TOL * max(float(np.trace(m)), 0.0)
    if w[0] < floor:
        raise NotPSDError(f"smallest eigenvalue {w[0]:.3e} below PSD tolerance")
    root = v * np.sqrt(np.clip(w, 0.0, None)) @ v.T
    return 0.5 * (root + root.T)


def _sym_sqrt_trusted(m: np.ndarray) -> np.ndarray:
    # Hot-path variant for matrices symmetric PSD by construction (Wishart
    # draws); skips the validation that sym_sqrt performs.  Accepts a single
    # matrix or a stack (..., p, p); the stacked result is bit-identical to
    # mapping over slices.
    w, v = np.linalg.eigh(m)
    return (v * np.sqrt(np.clip(w, 0.0, None))[..., None, :]) @ np.swapaxes(v, -1, -2)


def sym_inv_sqrt(m: np.ndarray) -> np.ndarray:
    """Symmetric PD inverse square root: R with R @ m @ R = I.

    Raises :class:`SingularMatrixError` when the smallest eigenvalue falls at
    or below ``PD_TOL * trace``, signalling a degenerate matrix rather than
    silently regularizing it.
    """
    m = _check_square_symmetric(m)
    w, v = np.linalg.eigh(m)
    if w[0] <= PD_TOL * max(float(np.trace(m)), 0.0):
        raise SingularMatrixError(
            f"smallest eigenvalue {w[0]:.3e} too small relative to trace; "
            "matrix is singular within tolerance"
        )
    root = v * (1.0 / np.sqrt(w)) @ v.T
    return 0.5 * (root + root.T)


def helmert_complement(n_rows: int) -> np.ndarray:
    """N x (N-1) Helmert submatrix K with orthonormal columns orthogonal to 1.

    Column j (1-based) has j leading entries 1/sqrt(j(j+1)), entry j+1 equal
    to -j/sqrt(j(j+1)) and zeros below, so K'K = I, K'1 = 0 and
    KK' = I - (1/N) 11'.  The construction is deterministic: identical N
    gives bit-identical output.
    """
    if n_rows < 2:
        raise InvalidSizeError(f"need at least 2 rows, got {n_rows}")
    n = n_rows - 1
    k = np.zeros((n_rows, n))
    j = np.arange(1, n + 1)
    scale = 1.0 / np.sqrt(j * (j + 1.0))
    for col in range(n):
        k[: col + 1, col] = scale[col]
        k[col + 1, col] = -(col + 1) * scale[col]
    return k


def helmert_apply(x: np.ndarray) -> np.ndarray:
    """Compute K' @ x for the Helmert complement K without forming K.

    Row j of the result is (sum of the first j rows of x minus j times row
    j+1) / sqrt(j(j+1)).  Runs in O(N p) time and memory, which matters for
    large N; agrees with ``helmert_complement(N).T @ x`` to rounding.

    Accepts a single N x p matrix or a stack (..., N, p); the stacked result
    is bit-identical to mapping over slices.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim < 2:
        raise InvalidSizeError(f"expected a matrix, got shape {x.shape}")
    if x.shape[-2] < 2:
        raise InvalidSizeError(f"need at least 2 rows, got {x.shape[-2]}")
    partial = np.cumsum(x[..., :-1, :], axis=-2)
    j = np.arange(1, x.shape[-2], dtype=float)[:, None]
    return (partial - j * x[..., 1:, :]) / np.sqrt(j * (j + 1.0))


def polar_decompose(z0: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Polar factors (H, T) of a full-column-rank n x p matrix.

    H = z0 (z0'z0)^{-1/2} has orthonormal columns and T = z0'z0 is symmetric
    PD, so that H @ sym_sqrt(T) reconstructs z0.
    """
    z0 = np.asarray(z0, dtype=float)
    if z0.ndim != 2:
        raise InvalidSizeError(f"expected a 2-d matrix, got shape {z0.shape}")
    t = z0.T @ z0
    t = 0.5 * (t + t.T)
    w = np.linalg.eigvalsh(t)
    if w[0] <= PSD_TOL * max(float(np.trace(t)), 0.0):
        raise RankDeficientError(
            f"column Gram matrix is singular (min eigenvalue {w[0]:.3e}); "
            "input does not have full column rank"
        )
    h = z0 @ sym_inv_sqrt(t)
    return h, t
