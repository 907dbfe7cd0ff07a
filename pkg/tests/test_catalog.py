import numpy as np
import pytest

from matsusy.core.catalog import (
    FAMILIES,
    ParamSet,
    build_generic,
    catalog_document,
    decompose,
    domain,
    eval_W,
    eval_W_prime,
    family_tags,
    is_scalar_q,
    make_spec,
)
from matsusy.core.errors import DimensionError, DomainError, ParameterGuardError
from matsusy.core.matrix_core import is_hermitian
from matsusy.core.riccati import RiccatiKind
from matsusy.core.verifier import sample_grid


class TestCatalog:

    def test_family_counts(self):
        assert len(family_tags()) == 24
        assert len(family_tags(dim=2)) == 17
        assert family_tags(dim=3) == ["T1", "T2", "T3", "T4", "T5", "T6", "T7"]

    def test_document(self):
        doc = catalog_document()
        assert [f["tag"] for f in doc["families"]] == list(FAMILIES)
        assert doc["generic"]["tag"] == "GEN"
        for entry in doc["families"]:
            assert entry["parameters"] and entry["domain_rule"]

    def test_unknown_family(self):
        with pytest.raises(ParameterGuardError, match="unknown family"):
            make_spec("W99")

    def test_unknown_parameter(self):
        with pytest.raises(ParameterGuardError, match="unknown parameter"):
            make_spec("W7", {"zeta": 1.0})

    def test_param_names(self):
        assert "omega" in ParamSet.names()
        assert ParamSet.from_dict({"mu": "0.5"}).mu == 0.5


class TestEvaluation:

    def test_w7_example(self):
        spec = make_spec("W7", c=0.0, mu=0.0, r3=0.0, r2=1.0, omega=1.0)
        expected = np.array([[-1, -1j], [1j, -1]])
        assert np.allclose(eval_W(spec, 1.0, 1.0), expected)

    def test_w8_example(self):
        spec = make_spec("W8", mu=0.0, r3=0.0, r2=1.0, omega=1.0)
        expected = np.array([[-1, -1j], [1j, 0]])
        assert np.allclose(eval_W(spec, 1.0, 1.0), expected)

    def test_w9_degenerate_is_constant(self):
        spec = make_spec("W9", lam=1.5, mu=0.0, omega=0.0)
        for x in (-2.0, 0.3, 4.0):
            assert np.allclose(eval_W(spec, 2.0, x), -3.0 * np.eye(2))

    def test_w17_closed_form(self):
        omega, mu, c, kappa, x = 1.5, 0.4, 0.3, 2.0, 1.7
        spec = make_spec("W17", omega=omega, mu=mu, c=c)
        expected = np.array([
            [-((2 * kappa + 1) / (2 * x) - omega * x / 4), -mu / np.sqrt(x)],
            [-mu / np.sqrt(x), omega * x / 2 + c],
        ])
        assert np.allclose(eval_W(spec, kappa, x), expected)

    def test_w16_closed_form(self):
        c, delta, omega, mu, kappa, x = 0.4, 0.3, -0.7, 0.5, 1.5, 2.0
        spec = make_spec("W16", c=c, delta=delta, omega=omega, mu=mu)
        expected = np.array([
            [-((kappa + delta) / (x + c) + omega * (x + c) / 2), mu / np.sqrt(x * x - c * c)],
            [mu / np.sqrt(x * x - c * c), -((kappa - delta) / (x - c) + omega * (x - c) / 2)],
        ])
        assert np.allclose(eval_W(spec, kappa, x), expected)

    def test_t2_closed_form(self):
        c, mu1, mu2, omega, kappa, x = 0.6, 0.4, -0.3, 1.2, 1.8, 1.3
        spec = make_spec("T2", c=c, mu1=mu1, mu2=mu2, omega=omega)
        from matsusy.core.matrix_core import spin1

        S1, S2, S3 = spin1(1), spin1(2), spin1(3)
        I3 = np.eye(3)
        expected = (
            (S2 @ S2 - I3) * kappa / x
            + (S1 @ S1 - I3) * kappa / (x + c)
            + S1 * mu1 / np.sqrt(x)
            + S2 * mu2 / np.sqrt(x + c)
            + omega / kappa * (2 * S3 @ S3 - I3)
        )
        assert np.allclose(eval_W(spec, kappa, x), expected)

    @pytest.mark.parametrize("tag", list(FAMILIES))
    def test_derivative_matches_finite_difference(self, tag, rng, family_params):
        spec = make_spec(tag, family_params(tag, rng))
        kappa, h = 1.7, 1e-6
        for x in sample_grid(spec, count=5):
            fd = (eval_W(spec, kappa, x + h) - eval_W(spec, kappa, x - h)) / (2 * h)
            assert np.allclose(fd, eval_W_prime(spec, kappa, x), rtol=1e-6, atol=1e-6)

    @pytest.mark.parametrize("tag", list(FAMILIES))
    def test_values_are_hermitian(self, tag, rng, family_params):
        spec = make_spec(tag, family_params(tag, rng))
        for W in spec.values(2.3, sample_grid(spec, count=7)):
            assert is_hermitian(W, 1e-12)

    def test_outside_domain(self):
        spec = make_spec("W7", c=0.5)
        with pytest.raises(DomainError) as info:
            eval_W(spec, 1.0, 0.2)
        assert info.value.x == pytest.approx(0.2)

    def test_vectorized_shape(self):
        spec = make_spec("T1", c1=0.5, c2=1.0, mu1=0.2, mu2=0.1, omega=1.0)
        assert spec.values(1.5, np.linspace(1, 2, 4)).shape == (4, 3, 3)


class TestDomains:

    def test_radial(self):
        assert domain(make_spec("W2", lam=1.0, c=0.3)) == [(0.3, np.inf)]
        assert domain(make_spec("W7", c=-0.4))[0][0] == pytest.approx(0.4)
        assert domain(make_spec("T5", c1=0.5, c2=0.2)) == [(0.0, np.inf)]

    def test_tan_interval_contains_zero(self):
        lo, hi = domain(make_spec("W1", lam=2.0, c=0.3))[0]
        assert lo < 0 < hi
        assert lo == pytest.approx((-np.pi / 2 + 0.3) / 2)
        assert hi == pytest.approx((np.pi / 2 - 0.3) / 2)

    def test_whole_line(self):
        assert domain(make_spec("W9", lam=1.0)) == [(-np.inf, np.inf)]


class TestGuards:

    def test_r_constraint_violation(self):
        with pytest.raises(ParameterGuardError, match="omega"):
            make_spec("W7", r2=3.0, r3=4.0, omega=6.0)

    def test_r_constraint_accepted(self):
        spec = make_spec("W7", r2=3.0, r3=4.0, omega=5.0)
        assert decompose(spec).omega == pytest.approx(5.0)

    def test_lambda_positive(self):
        with pytest.raises(ParameterGuardError, match="lambda"):
            make_spec("W3", lam=-1.0)

    def test_kappa_zero_with_r(self):
        spec = make_spec("W8", omega=1.0)
        with pytest.raises(ParameterGuardError):
            eval_W(spec, 0.0, 1.0)

    def test_ignored_parameters_warn_only(self):
        spec = make_spec("W9", lam=1.0, c=0.5)
        assert "c" not in spec.params


class TestScalarQ:

    def test_w7_centered_is_scalar(self):
        assert is_scalar_q(make_spec("W7", c=0.0), np.linspace(1, 3, 5)) == pytest.approx(0.0, abs=1e-15)

    def test_mixed_channels_not_scalar(self):
        assert is_scalar_q(make_spec("W4", lam=1.0, c=0.2), np.linspace(1, 3, 5)) > 1e-3


class TestGeneric:

    def test_builds_block_superpotential(self):
        kinds = [RiccatiKind("inverse", c=0.2), RiccatiKind("inverse"), RiccatiKind("zero")]
        mu = np.zeros((3, 3), dtype=complex)
        mu[0, 2] = mu[2, 0] = 0.5
        mu[1, 2], mu[2, 1] = 0.3j, -0.3j
        spec = build_generic(2, 1, kinds, mu, omega=1.5)
        assert spec.dim == 3
        assert decompose(spec).omega == pytest.approx(1.5)
        W = eval_W(spec, 2.0, 1.0)
        assert is_hermitian(W, 1e-12)
        assert W[1, 2] == pytest.approx(0.3j / np.sqrt(1.0))

    def test_mixed_nu(self):
        kinds = [RiccatiKind("tan"), RiccatiKind("inverse")]
        with pytest.raises(ParameterGuardError, match="mixed nu"):
            build_generic(1, 1, kinds, np.zeros((2, 2)))

    def test_with_r_requires_off_diagonal(self):
        kinds = [RiccatiKind("inverse"), RiccatiKind("inverse")]
        with pytest.raises(ParameterGuardError, match="off-diagonal"):
            build_generic(1, 1, kinds, np.eye(2))

    def test_shape_mismatch(self):
        kinds = [RiccatiKind("inverse"), RiccatiKind("inverse")]
        with pytest.raises(DimensionError):
            build_generic(1, 1, kinds, np.zeros((3, 3)))

    def test_without_r_allows_diagonal(self):
        kinds = [RiccatiKind("tanh"), RiccatiKind("tanh")]
        spec = build_generic(1, 1, kinds, np.array([[0.5, 0.2], [0.2, -0.1]]), with_R=False)
        assert not spec.has_R
