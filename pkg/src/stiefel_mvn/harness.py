"""Monte Carlo harness: Type I error and power experiments, table assembly,
and repeated-execution stability for the randomized test.

Replications are split into fixed-size chunks; chunk c draws its data from
the stream (DATA, c) of the experiment seed and its per-replication test
seeds from the stream (TEST, c), so results are bit-identical for any
worker count and any chunk execution order.  Chunks run through the batched
kernel in :mod:`stiefel_mvn.procedure`, which is itself bit-identical to
per-replication ``mvn_test`` calls; replications that trip a degeneracy
guard re-run through the scalar path so singular-covariance events are
counted rather than fatal.
"""

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigError, SingularCovarianceError
from .procedure import TestConfig, _mvn_test_batch, mvn_test
from .residuals import Sample
from .sampling import AlternativeModel, RngSeedSpec, _alternative_from_generator
from .univariate import method_size_range, resolve_method

__all__ = [
    "SimConfig",
    "SimResult",
    "SimTable",
    "run_experiment",
    "run_table",
    "repeat_stability",
    "table1_configs",
    "table2_configs",
    "table3_configs",
]

# Fixed chunk size: part of the reproducibility contract (results depend on
# it, so it must never vary with worker count or machine).
CHUNK_SIZE = 256

# Stream domains under an experiment seed.
_DATA, _TEST, _REPEAT = 0, 1, 2

CSV_HEADER = (
    "model,N,p,m,alpha,method,replications,"
    "rejection_rate,std_error,singular_count,seed"
)


@dataclass(frozen=True)
class SimConfig:
    """One Monte Carlo cell: a model, a shape, a test, a replication count."""

    model: AlternativeModel
    n_obs: int
    dim: int
    m: int = 1
    alpha: float = 0.05
    method: str = "shapiro_wilk"
    replications: int = 10_000
    seed: RngSeedSpec = RngSeedSpec()
    workers: int = 1

    def __post_init__(self) -> None:
        if isinstance(self.model, str):
            object.__setattr__(self, "model", AlternativeModel(self.model))
        if self.replications < 100:
            raise ConfigError(
                f"replications must be >= 100, got {self.replications}"
            )
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")
        if self.n_obs < self.dim + 2:
            raise ConfigError(
                f"need N >= p + 2 for a nonsingular covariance, got "
                f"N={self.n_obs}, p={self.dim}"
            )
        object.__setattr__(self, "method", resolve_method(self.method))
        k = (self.n_obs - 1) * self.dim
        lo, hi = method_size_range(self.method)
        if k < lo or (hi is not None and k > hi):
            raise ConfigError(
                f"{self.method} requires {lo} <= n*p <= {hi or 'inf'}, "
                f"got {k} from N={self.n_obs}, p={self.dim}"
            )
        # Validates m and alpha.
        self.test_config()

    def test_config(self, seed: RngSeedSpec | None = None) -> TestConfig:
        return TestConfig(
            m=self.m, alpha=self.alpha, method=self.method,
            seed=seed if seed is not None else self.seed,
        )


@dataclass(frozen=True)
class SimResult:
    """Estimated rejection rate for one cell.

    ``completed`` excludes singular-covariance replications from the
    denominator; counting them as rejections (or acceptances) would bias
    the rate.
    """

    rejection_rate: float
    replications: int
    completed: int
    singular_count: int
    std_error: float
    wall_time_seconds: float
    config: SimConfig

    def __post_init__(self) -> None:
        if not 0.0 <= self.rejection_rate <= 1.0:
            raise ConfigError(
                f"rejection rate {self.rejection_rate} outside [0, 1]"
            )
        expect = _std_error(self.rejection_rate, self.completed)
        if abs(self.std_error - expect) > 1e-12:
            raise ConfigError(
                f"std_error {self.std_error} inconsistent with rate and count"
            )


def _std_error(rate: float, count: int) -> float:
    if count <= 0:
        return float("nan")
    return float(np.sqrt(rate * (1.0 - rate) / count))


def _seed_str(seed: RngSeedSpec) -> str:
    if seed.stream_id == 0:
        return str(seed.root_seed)
    return f"{seed.root_seed}:{seed.stream_id}"


def _chunk_counts(replications: int) -> list[int]:
    full, rest = divmod(replications, CHUNK_SIZE)
    return [CHUNK_SIZE] * full + ([rest] if rest else [])


def _chunk_seeds(cfg: SimConfig, chunk: int, count: int) -> list[RngSeedSpec]:
    """Per-replication test seeds for one chunk, derived in bulk."""
    words = cfg.seed.seed_sequence(_TEST, chunk).generate_state(
        2 * count, np.uint32
    )
    ids = (words[0::2].astype(np.uint64) << np.uint64(32)) | words[1::2]
    return [RngSeedSpec(cfg.seed.root_seed, int(i)) for i in ids]


def _run_chunk(cfg: SimConfig, chunk: int, count: int) -> tuple[int, int]:
    """(rejections, singular events) for one chunk of replications."""
    gen = cfg.seed.generator(_DATA, chunk)
    stack = np.empty((count, cfg.n_obs, cfg.dim))
    for r in range(count):
        stack[r] = _alternative_from_generator(
            cfg.model, cfg.n_obs, cfg.dim, gen
        )
    seeds = _chunk_seeds(cfg, chunk, count)
    template = cfg.test_config()
    reject, fall = _mvn_test_batch(stack, seeds, template)
    rejected = int(reject[~fall].sum())
    singular = 0
    for i in np.flatnonzero(fall):
        try:
            report = mvn_test(stack[i], cfg.test_config(seeds[i]))
        except SingularCovarianceError:
            singular += 1
        else:
            rejected += int(report.reject)
    return rejected, singular


def _run_chunk_args(args: tuple[SimConfig, int, int]) -> tuple[int, int]:
    return _run_chunk(*args)


def run_experiment(cfg: SimConfig) -> SimResult:
    """Estimate the rejection rate of one cell by Monte Carlo.

    Deterministic given ``cfg.seed`` regardless of ``cfg.workers``: the
    chunk layout is fixed and aggregation is commutative counting.
    """
    start = time.perf_counter()
    counts = _chunk_counts(cfg.replications)
    jobs = [(cfg, chunk, count) for chunk, count in enumerate(counts)]
    if cfg.workers == 1 or len(jobs) == 1:
        outcomes = [_run_chunk(*job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            outcomes = list(pool.map(_run_chunk_args, jobs))
    rejected = sum(r for r, _ in outcomes)
    singular = sum(s for _, s in outcomes)
    completed = cfg.replications - singular
    rate = rejected / completed if completed else float("nan")
    return SimResult(
        rejection_rate=rate,
        replications=cfg.replications,
        completed=completed,
        singular_count=singular,
        std_error=_std_error(rate, completed),
        wall_time_seconds=time.perf_counter() - start,
        config=cfg,
    )


def repeat_stability(x: Sample, cfg: TestConfig, repeats: int) -> float:
    """Proportion of rejections of the fixed sample over fresh seeds.

    The test is randomized, so a single run's decision depends on the
    seed; this is the honest summary of that dependence.
    """
    if repeats < 1:
        raise ConfigError(f"repeats must be >= 1, got {repeats}")
    rejected = 0
    for j in range(repeats):
        report = mvn_test(x, replace(cfg, seed=cfg.seed.child(_REPEAT, j)))
        rejected += int(report.reject)
    return rejected / repeats


# ---------------------------------------------------------------------------
# Tables


@dataclass(frozen=True)
class SimTable:
    """Results of a batch of cells plus serializers for the table layouts."""

    results: tuple[SimResult, ...]

    def to_csv(self) -> str:
        lines = [CSV_HEADER]
        for res in self.results:
            cfg = res.config
            lines.append(
                f"{cfg.model.label()},{cfg.n_obs},{cfg.dim},{cfg.m},"
                f"{cfg.alpha},{cfg.method},{res.replications},"
                f"{res.rejection_rate},{res.std_error},"
                f"{res.singular_count},{_seed_str(cfg.seed)}"
            )
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        rows = []
        for res in self.results:
            cfg = res.config
            rows.append({
                "model": cfg.model.label(),
                "N": cfg.n_obs,
                "p": cfg.dim,
                "m": cfg.m,
                "alpha": cfg.alpha,
                "method": cfg.method,
                "replications": res.replications,
                "rejection_rate": res.rejection_rate,
                "std_error": res.std_error,
                "singular_count": res.singular_count,
                "wall_time_seconds": res.wall_time_seconds,
                "seed": _seed_str(cfg.seed),
            })
        return json.dumps(rows, indent=2)

    def to_text(self) -> str:
        """Aligned grid: one row per (model, p, N), one column per test.

        Mirrors the article-style layout with AD_m / SW_m columns; cells
        are rejection percentages.
        """
        columns: list[tuple[str, int]] = []
        rows: dict[tuple[str, int, int], dict[tuple[str, int], SimResult]] = {}
        for res in self.results:
            cfg = res.config
            col = (cfg.method, cfg.m)
            if col not in columns:
                columns.append(col)
            rows.setdefault((cfg.model.label(), cfg.dim, cfg.n_obs), {})[col] = res
        abbrev = {"anderson_darling": "AD", "shapiro_wilk": "SW"}
        headers = [f"{abbrev[meth]}_{m}" for meth, m in columns]
        key_width = max(len(_row_label(k)) for k in rows)
        widths = [max(len(h), 6) for h in headers]
        out = [
            " ".join(
                [f"{'model/p/N':<{key_width}}"]
                + [f"{h:>{w}}" for h, w in zip(headers, widths)]
            )
        ]
        for key in rows:
            cells = []
            for col, w in zip(columns, widths):
                res = rows[key].get(col)
                cells.append(
                    f"{100.0 * res.rejection_rate:>{w}.2f}" if res else " " * w
                )
            out.append(" ".join([f"{_row_label(key):<{key_width}}"] + cells))
        return "\n".join(out) + "\n"


def _row_label(key: tuple[str, int, int]) -> str:
    model, dim, n_obs = key
    return f"{model} p={dim} N={n_obs}"


def run_table(configs: list[SimConfig]) -> SimTable:
    """Run every cell of a table specification, in order."""
    if not configs:
        raise ConfigError("table specification is empty")
    return SimTable(results=tuple(run_experiment(cfg) for cfg in configs))


# ---------------------------------------------------------------------------
# Study presets: the three article-style grids.

_POWER_MODELS = (
    AlternativeModel.student_t(),
    AlternativeModel.normal_mixture(),
    AlternativeModel.lognormal(),
    AlternativeModel.pearson_type2(),
)
_SIZES = (10, 20, 30)
_METHODS = ("anderson_darling", "shapiro_wilk")
_MS = (1, 3, 5)


def table1_configs(
    replications: int = 100_000,
    seed: RngSeedSpec = RngSeedSpec(1),
    workers: int = 1,
    dims: tuple[int, ...] = (2, 3),
    sizes: tuple[int, ...] = _SIZES,
) -> list[SimConfig]:
    """Type I error grid: null model, p x N x (AD, SW) x m."""
    configs = []
    null = AlternativeModel.null_mvn()
    for dim_i, dim in enumerate(dims):
        for size in sizes:
            for meth_i, method in enumerate(_METHODS):
                for m in _MS:
                    configs.append(SimConfig(
                        model=null, n_obs=size, dim=dim, m=m,
                        method=method, replications=replications,
                        seed=seed.child(1, dim_i, size, meth_i, m),
                        workers=workers,
                    ))
    return configs


def _power_configs(
    table: int,
    dim: int,
    replications: int,
    seed: RngSeedSpec,
    workers: int,
    sizes: tuple[int, ...],
) -> list[SimConfig]:
    configs = []
    for model_i, model in enumerate(_POWER_MODELS):
        for size in sizes:
            for meth_i, method in enumerate(_METHODS):
                for m in _MS:
                    configs.append(SimConfig(
                        model=model, n_obs=size, dim=dim, m=m,
                        method=method, replications=replications,
                        seed=seed.child(table, model_i, size, meth_i, m),
                        workers=workers,
                    ))
    return configs


def table2_configs(
    replications: int = 10_000,
    seed: RngSeedSpec = RngSeedSpec(2),
    workers: int = 1,
    sizes: tuple[int, ...] = _SIZES,
) -> list[SimConfig]:
    """Power grid at p=2: four alternatives x N x (AD, SW) x m."""
    return _power_configs(2, 2, replications, seed, workers, sizes)


def table3_configs(
    replications: int = 10_000,
    seed: RngSeedSpec = RngSeedSpec(3),
    workers: int = 1,
    sizes: tuple[int, ...] = _SIZES,
) -> list[SimConfig]:
    """Power grid at p=3: four alternatives x N x (AD, SW) x m."""
    return _power_configs(3, 3, replications, seed, workers, sizes)
