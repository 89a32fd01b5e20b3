"""Scaled residuals: centering, whitening, and the orthonormal residual
matrix that is uniform on the Stiefel manifold when the data are Gaussian.

For an N x p data matrix X with sample covariance S (divisor n = N-1), the
residual matrix is Z = K' X S^{-1/2} where K is the Helmert complement, and
U = Z / sqrt(n) has exactly orthonormal columns because Z'Z = n S^{-1/2} S
S^{-1/2} = n I.  U is invariant to translations of X (K'1 = 0) and to
positive scalar rescaling.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidSizeError, SingularCovarianceError, SingularMatrixError
from .linalg import helmert_apply, sym_inv_sqrt

__all__ = ["Sample", "StiefelResidual", "sample_mean_cov", "stiefel_residual"]

# Orthonormality defect above this threshold means S was too ill-conditioned
# for the whitening to be trusted; fail loudly instead of re-orthonormalizing.
ORTHONORMALITY_TOL = 1e-6


@dataclass(frozen=True)
class Sample:
    """N x p data matrix, one observation per row."""

    rows: np.ndarray

    def __post_init__(self) -> None:
        rows = np.asarray(self.rows, dtype=float)
        if rows.ndim == 1:
            rows = rows[:, None]
        if rows.ndim != 2:
            raise InvalidSizeError(f"sample must be 2-d, got shape {rows.shape}")
        if rows.shape[0] < 2 or rows.shape[1] < 1:
            raise InvalidSizeError(f"need at least 2 rows and 1 column, got {rows.shape}")
        if not np.isfinite(rows).all():
            raise InvalidSizeError("sample contains non-finite values")
        object.__setattr__(self, "rows", rows)

    @property
    def n_obs(self) -> int:
        return self.rows.shape[0]

    @property
    def dim(self) -> int:
        return self.rows.shape[1]


@dataclass(frozen=True)
class StiefelResidual:
    """Orthonormal residual matrix U (n x p) with n = N - 1.

    ``defect`` is the Frobenius norm of U'U - I, recorded as a numerical
    health figure; it does not participate in equality.
    """

    entries: np.ndarray
    defect: float = field(default=0.0, compare=False)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def dim(self) -> int:
        return self.entries.shape[1]

    @property
    def z_entries(self) -> np.ndarray:
        """The unnormalized residual matrix Z = sqrt(n) U, with Z'Z = n I."""
        return np.sqrt(self.n) * self.entries


def sample_mean_cov(x: Sample) -> tuple[np.ndarray, np.ndarray]:
    """Column means and sample covariance with divisor n = N - 1."""
    rows = x.rows
    mean = rows.mean(axis=0)
    centered = rows - mean
    cov = centered.T @ centered / (rows.shape[0] - 1)
    return mean, 0.5 * (cov + cov.T)


def stiefel_residual(x: Sample) -> StiefelResidual:
    """Orthonormal residual matrix U = K' X S^{-1/2} / sqrt(n).

    Requires N >= p + 1 so the sample covariance can be positive definite;
    degenerate data raise :class:`SingularCovarianceError`.
    """
    n = x.n_obs - 1
    if n < x.dim:
        raise SingularCovarianceError(
            f"need at least p + 1 = {x.dim + 1} observations for a "
            f"nonsingular covariance, got {x.n_obs}"
        )
    _, cov = sample_mean_cov(x)
    try:
        whitener = sym_inv_sqrt(cov)
    except SingularMatrixError as exc:
        raise SingularCovarianceError(str(exc)) from exc
    u = helmert_apply(x.rows) @ whitener / np.sqrt(n)
    gram = u.T @ u
    defect = float(np.linalg.norm(gram - np.eye(x.dim)))
    if defect > ORTHONORMALITY_TOL:
        raise SingularCovarianceError(
            f"orthonormality defect {defect:.3e} exceeds {ORTHONORMALITY_TOL:.0e}; "
            "sample covariance is too ill-conditioned"
        )
    return StiefelResidual(entries=u, defect=defect)
