"""Reproducible random sampling: seed streams, Gaussian matrices, Wishart
draws via Bartlett's decomposition, and the alternative distributions used
in the power studies.

Randomness is organized around :class:`RngSeedSpec`: a (root_seed,
stream_id) pair that maps deterministically onto a numpy ``SeedSequence``.
Substreams are derived by hashing an integer path into a fresh stream id,
so parallel replications stay reproducible regardless of scheduling.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConfigError, InvalidDofError, InvalidSizeError

__all__ = [
    "RngSeedSpec",
    "AlternativeModel",
    "sample_std_normal_matrix",
    "sample_wishart_identity",
    "sample_alternative",
]

_U64 = 2**64


@dataclass(frozen=True)
class RngSeedSpec:
    """Seed specification: a root seed plus a stream id, both u64.

    Identical specs yield identical sample sequences; distinct stream ids
    under one root produce statistically independent streams.
    """

    root_seed: int = 0
    stream_id: int = 0

    def __post_init__(self) -> None:
        for name in ("root_seed", "stream_id"):
            v = getattr(self, name)
            if not (0 <= int(v) < _U64):
                raise ConfigError(f"{name} must be an unsigned 64-bit integer, got {v!r}")

    def seed_sequence(self, *path: int) -> np.random.SeedSequence:
        return np.random.SeedSequence([self.root_seed, self.stream_id, *path])

    def generator(self, *path: int) -> np.random.Generator:
        """PCG64 generator for this spec, optionally keyed by an index path."""
        return np.random.default_rng(self.seed_sequence(*path))

    def child(self, *path: int) -> "RngSeedSpec":
        """Derived spec whose stream id hashes (root, stream, \\*path)."""
        state = self.seed_sequence(*path).generate_state(2, np.uint32)
        return RngSeedSpec(self.root_seed, int(state[0]) << 32 | int(state[1]))


@dataclass(frozen=True)
class AlternativeModel:
    """Tagged sampling model: the null Gaussian or one of four alternatives.

    Tags and defaults: ``student_t`` with df=3, ``pearson_type2`` with
    shape=0 (uniform on the unit ball), ``lognormal`` (entrywise exp of a
    standard normal vector), ``normal_mixture`` with weight=1/2, scale=8,
    rho=1/2, and ``null_mvn``.
    """

    tag: str
    df: float = 3.0
    shape: float = 0.0
    weight: float = 0.5
    scale: float = 8.0
    rho: float = 0.5

    _TAGS = ("null_mvn", "student_t", "pearson_type2", "lognormal", "normal_mixture")

    def __post_init__(self) -> None:
        if self.tag not in self._TAGS:
            raise ConfigError(f"unknown model tag {self.tag!r}; expected one of {self._TAGS}")
        if self.df <= 0:
            raise ConfigError("student_t df must be positive")
        if self.shape < 0:
            raise ConfigError("pearson_type2 shape must be >= 0")
        if not 0 < self.weight < 1:
            raise ConfigError("mixture weight must lie in (0, 1)")
        if self.scale <= 0:
            raise ConfigError("mixture scale must be positive")
        if not 0 < self.rho <= 1:
            raise ConfigError("mixture rho must lie in (0, 1]")

    @classmethod
    def null_mvn(cls) -> "AlternativeModel":
        return cls("null_mvn")

    @classmethod
    def student_t(cls, df: float = 3.0) -> "AlternativeModel":
        return cls("student_t", df=df)

    @classmethod
    def pearson_type2(cls, shape: float = 0.0) -> "AlternativeModel":
        return cls("pearson_type2", shape=shape)

    @classmethod
    def lognormal(cls) -> "AlternativeModel":
        return cls("lognormal")

    @classmethod
    def normal_mixture(
        cls, weight: float = 0.5, scale: float = 8.0, rho: float = 0.5
    ) -> "AlternativeModel":
        return cls("normal_mixture", weight=weight, scale=scale, rho=rho)

    def label(self) -> str:
        """Compact descriptor used in table output."""
        if self.tag == "student_t":
            return f"student_t(df={self.df:g})"
        if self.tag == "pearson_type2":
            return f"pearson_type2(shape={self.shape:g})"
        if self.tag == "normal_mixture":
            return f"normal_mixture(weight={self.weight:g},scale={self.scale:g},rho={self.rho:g})"
        return self.tag

    def mixture_cov(self, p: int) -> np.ndarray:
        """Covariance of the wide mixture component: scale * (rho I + (1-rho) 11')."""
        return self.scale * (self.rho * np.eye(p) + (1.0 - self.rho) * np.ones((p, p)))


def _check_size(rows: int, cols: int) -> None:
    if rows < 1 or cols < 1:
        raise InvalidSizeError(f"matrix dimensions must be >= 1, got {rows}x{cols}")


def sample_std_normal_matrix(rows: int, cols: int, rng: RngSeedSpec) -> np.ndarray:
    """rows x cols matrix of iid standard normals, deterministic given rng."""
    _check_size(rows, cols)
    return rng.generator().standard_normal((rows, cols))


def sample_wishart_identity(dof: int, dim: int, rng: RngSeedSpec) -> np.ndarray:
    """Draw from the Wishart distribution with identity scale, W_p(dof, I).

    Uses Bartlett's decomposition A = L L' with L lower triangular:
    L[i, i]^2 ~ chi2(dof - i) (0-indexed) and strict-lower entries iid
    standard normal.  Requires dof >= dim; every draw is symmetric PD.
    """
    if dim < 1:
        raise InvalidSizeError(f"dimension must be >= 1, got {dim}")
    if dof < dim:
        raise InvalidDofError(f"need dof >= dim, got dof={dof}, dim={dim}")
    gen = rng.generator()
    return _wishart_from_generator(dof, dim, gen)


@lru_cache(maxsize=None)
def _tri_indices(dim: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    strict_r, strict_c = np.tril_indices(dim, k=-1)
    return strict_r, strict_c, np.arange(dim)


def _wishart_from_generator(dof: int, dim: int, gen: np.random.Generator) -> np.ndarray:
    # Draw order fixed for reproducibility: diagonal chi-squares, then the
    # strict lower triangle row-major.
    diag = np.sqrt(gen.chisquare(dof - np.arange(dim)))
    if dim == 1:
        return np.array([[diag[0] * diag[0]]])
    strict_r, strict_c, rng_idx = _tri_indices(dim)
    lower = np.zeros((dim, dim))
    lower[strict_r, strict_c] = gen.standard_normal(strict_r.size)
    lower[rng_idx, rng_idx] = diag
    a = lower @ lower.T
    return 0.5 * (a + a.T)


def sample_alternative(model: AlternativeModel, n_obs: int, dim: int, rng: RngSeedSpec) -> np.ndarray:
    """N x p matrix of iid rows from the given model.

    Constructions: student_t rows are z / sqrt(w / df) with a single
    chi-square w per row; pearson_type2 rows are a uniform sphere direction
    times a radius with radius^2 ~ Beta(p/2, shape+1) (shape=0 is the
    uniform unit ball); lognormal rows are entrywise exp of standard
    normals; normal_mixture rows come from N(0, I) with the given weight and
    otherwise from N(0, mixture_cov).
    """
    if n_obs < 2:
        raise InvalidSizeError(f"need at least 2 observations, got {n_obs}")
    if dim < 1:
        raise InvalidSizeError(f"dimension must be >= 1, got {dim}")
    gen = rng.generator()
    return _alternative_from_generator(model, n_obs, dim, gen)


def _alternative_from_generator(
    model: AlternativeModel, n_obs: int, dim: int, gen: np.random.Generator
) -> np.ndarray:
    tag = model.tag
    if tag == "null_mvn":
        return gen.standard_normal((n_obs, dim))
    if tag == "student_t":
        z = gen.standard_normal((n_obs, dim))
        w = gen.chisquare(model.df, n_obs)
        return z / np.sqrt(w / model.df)[:, None]
    if tag == "pearson_type2":
        g = gen.standard_normal((n_obs, dim))
        direction = g / np.linalg.norm(g, axis=1, keepdims=True)
        radius = np.sqrt(gen.beta(dim / 2.0, model.shape + 1.0, n_obs))
        return direction * radius[:, None]
    if tag == "lognormal":
        return np.exp(gen.standard_normal((n_obs, dim)))
    # normal_mixture
    z = gen.standard_normal((n_obs, dim))
    wide = gen.random(n_obs) >= model.weight
    if wide.any():
        chol = np.linalg.cholesky(model.mixture_cov(dim))
        z[wide] = z[wide] @ chol.T
    return z
