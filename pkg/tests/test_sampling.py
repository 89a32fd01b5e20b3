"""Seeded sampling: RNG streams, Wishart draws, alternative models."""

import numpy as np
import pytest
from scipy import stats

from stiefel_mvn.errors import ConfigError, InvalidDofError, InvalidSizeError
from stiefel_mvn.sampling import (
    AlternativeModel,
    RngSeedSpec,
    sample_alternative,
    sample_std_normal_matrix,
    sample_wishart_identity,
)

KS_CRIT_1PCT = 1.628  # asymptotic 1% one-sample Kolmogorov-Smirnov quantile


class TestRngSeedSpec:
    def test_same_spec_bit_identical(self):
        a = sample_std_normal_matrix(8, 3, RngSeedSpec(4, 2))
        b = sample_std_normal_matrix(8, 3, RngSeedSpec(4, 2))
        assert a.tobytes() == b.tobytes()

    def test_distinct_streams_differ(self):
        a = sample_std_normal_matrix(8, 3, RngSeedSpec(4, 0))
        b = sample_std_normal_matrix(8, 3, RngSeedSpec(4, 1))
        assert not np.array_equal(a, b)

    def test_child_path_deterministic(self):
        spec = RngSeedSpec(11)
        assert spec.child(3, 1) == spec.child(3, 1)
        assert spec.child(3, 1) != spec.child(3, 2)
        assert spec.child(3, 1).root_seed == 11

    def test_generator_path_matches_seed_sequence(self):
        spec = RngSeedSpec(5, 9)
        direct = np.random.default_rng(
            np.random.SeedSequence([5, 9, 2, 0])
        ).standard_normal(4)
        assert np.array_equal(spec.generator(2, 0).standard_normal(4), direct)

    @pytest.mark.parametrize("bad", [-1, 2**64])
    def test_rejects_out_of_range_seed(self, bad):
        with pytest.raises(ConfigError):
            RngSeedSpec(bad)

    def test_rejects_bad_matrix_size(self):
        with pytest.raises(InvalidSizeError):
            sample_std_normal_matrix(0, 3, RngSeedSpec(1))


class TestWishart:
    @pytest.mark.parametrize("dof,dim", [(9, 2), (19, 3), (29, 3)])
    def test_all_draws_symmetric_pd(self, dof, dim):
        """10^4 draws per shape: every draw symmetric positive definite."""
        spec = RngSeedSpec(21, dof)
        worst = np.inf
        for i in range(10_000):
            a = sample_wishart_identity(dof, dim, spec.child(i))
            assert np.array_equal(a, a.T)
            worst = min(worst, np.linalg.eigvalsh(a)[0])
        assert worst > 0, f"non-PD draw, smallest eigenvalue {worst}"

    def test_first_diagonal_is_chisquare_dof(self):
        """A[0,0] ~ chi2(dof) exactly under Bartlett's construction."""
        spec = RngSeedSpec(22)
        draws = np.array([
            sample_wishart_identity(9, 2, spec.child(i))[0, 0]
            for i in range(4000)
        ])
        ks = stats.kstest(draws, "chi2", args=(9,))
        crit = KS_CRIT_1PCT / np.sqrt(draws.size)
        assert ks.statistic < crit, f"KS {ks.statistic:.4f} >= {crit:.4f}"

    def test_mean_near_dof_times_identity(self):
        spec = RngSeedSpec(23)
        total = np.zeros((3, 3))
        reps = 20_000
        for i in range(reps):
            total += sample_wishart_identity(19, 3, spec.child(i))
        avg = total / reps
        # Var(A_ii) = 2*dof so the diagonal SE at 2e4 reps is ~0.044.
        assert np.abs(avg - 19 * np.eye(3)).max() < 0.3

    def test_deterministic(self):
        a = sample_wishart_identity(19, 3, RngSeedSpec(3, 14))
        b = sample_wishart_identity(19, 3, RngSeedSpec(3, 14))
        assert a.tobytes() == b.tobytes()

    def test_dof_below_dim_rejected(self):
        with pytest.raises(InvalidDofError):
            sample_wishart_identity(2, 3, RngSeedSpec(1))

    def test_dim_one(self):
        a = sample_wishart_identity(5, 1, RngSeedSpec(2))
        assert a.shape == (1, 1) and a[0, 0] > 0


class TestAlternativeModel:
    def test_unknown_tag_rejected(self):
        with pytest.raises(ConfigError):
            AlternativeModel("cauchy")

    @pytest.mark.parametrize("kwargs", [
        {"df": 0.0}, {"shape": -1.0}, {"weight": 0.0}, {"weight": 1.0},
        {"scale": -2.0}, {"rho": 0.0},
    ])
    def test_bad_parameters_rejected(self, kwargs):
        with pytest.raises(ConfigError):
            AlternativeModel("student_t", **kwargs)

    def test_labels_are_distinct(self):
        labels = {
            AlternativeModel(tag).label() for tag in AlternativeModel._TAGS
        }
        assert len(labels) == 5

    def test_mixture_cov_structure(self):
        cov = AlternativeModel.normal_mixture().mixture_cov(3)
        assert np.allclose(np.diag(cov), 8.0)
        assert np.allclose(cov[np.triu_indices(3, 1)], 4.0)


class TestAlternativeSampling:
    def test_deterministic(self):
        m = AlternativeModel.lognormal()
        a = sample_alternative(m, 30, 3, RngSeedSpec(8, 1))
        b = sample_alternative(m, 30, 3, RngSeedSpec(8, 1))
        assert a.tobytes() == b.tobytes()

    def test_student_t_marginal_law(self):
        """Each coordinate of the p=2 t3 model is marginally t(3)."""
        x = sample_alternative(AlternativeModel.student_t(), 20_000, 2,
                               RngSeedSpec(81))
        ks = stats.kstest(x[:, 0], "t", args=(3,))
        assert ks.statistic < KS_CRIT_1PCT / np.sqrt(20_000)

    def test_student_t_large_df_bridges_to_normal(self):
        """df=1e6 proxy: moments match the standard normal to MC tolerance."""
        x = sample_alternative(AlternativeModel.student_t(df=1e6), 50_000, 2,
                               RngSeedSpec(82)).ravel()
        assert abs(x.mean()) < 0.02
        assert abs(x.std() - 1.0) < 0.02
        assert abs(stats.skew(x)) < 0.05
        assert abs(stats.kurtosis(x)) < 0.1

    def test_pearson_type2_radius_law(self):
        """shape=0: radius^2 ~ Beta(p/2, 1), support inside the unit ball."""
        x = sample_alternative(AlternativeModel.pearson_type2(), 20_000, 3,
                               RngSeedSpec(83))
        r2 = np.einsum("ij,ij->i", x, x)
        assert r2.max() <= 1.0 + 1e-12
        ks = stats.kstest(r2, "beta", args=(1.5, 1.0))
        assert ks.statistic < KS_CRIT_1PCT / np.sqrt(20_000)

    def test_pearson_type2_general_shape(self):
        """General shape parameter: radius^2 ~ Beta(p/2, shape+1)."""
        x = sample_alternative(AlternativeModel.pearson_type2(shape=2.0),
                               20_000, 2, RngSeedSpec(84))
        r2 = np.einsum("ij,ij->i", x, x)
        ks = stats.kstest(r2, "beta", args=(1.0, 3.0))
        assert ks.statistic < KS_CRIT_1PCT / np.sqrt(20_000)

    def test_lognormal_log_is_standard_normal(self):
        x = sample_alternative(AlternativeModel.lognormal(), 20_000, 2,
                               RngSeedSpec(85))
        assert x.min() > 0
        ks = stats.kstest(np.log(x).ravel(), "norm")
        assert ks.statistic < KS_CRIT_1PCT / np.sqrt(40_000)

    def test_mixture_covariance(self):
        """Sample covariance approaches (I + mixture_cov)/2."""
        model = AlternativeModel.normal_mixture()
        x = sample_alternative(model, 200_000, 2, RngSeedSpec(86))
        expect = 0.5 * (np.eye(2) + model.mixture_cov(2))
        observed = np.cov(x, rowvar=False)
        assert np.abs(observed - expect).max() < 0.15
        assert np.abs(x.mean(axis=0)).max() < 0.05

    def test_null_is_plain_gaussian(self):
        spec = RngSeedSpec(87)
        x = sample_alternative(AlternativeModel.null_mvn(), 10, 2, spec)
        assert np.array_equal(x, spec.generator().standard_normal((10, 2)))

    def test_rejects_degenerate_shapes(self):
        with pytest.raises(InvalidSizeError):
            sample_alternative(AlternativeModel.null_mvn(), 1, 2,
                               RngSeedSpec(1))
        with pytest.raises(InvalidSizeError):
            sample_alternative(AlternativeModel.null_mvn(), 5, 0,
                               RngSeedSpec(1))
