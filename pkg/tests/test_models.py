import numpy as np
import pytest

from matsusy.core.errors import DomainError, NoSuchBoundStateError, ParameterGuardError
from matsusy.core.models import (
    MODELS,
    check_reduction,
    default_grid,
    get_model,
    model_gap_formula,
    model_partner,
    model_potential,
    model_spectrum_check,
    model_superpotential,
    models_document,
)
from matsusy.core.spectral import GridSpec
from matsusy.core.verifier import determining_residuals, sample_grid, shape_residual


class TestRegistry:

    def test_models(self):
        assert set(MODELS) == {
            "hydrogenlike", "oscillatorA", "oscillatorB", "scarf", "tanhexp",
            "spinor3d", "ps_radial", "vector2d", "vector3d",
        }
        doc = models_document()
        assert {m["tag"] for m in doc["models"]} == set(MODELS)

    def test_unknown_model(self):
        with pytest.raises(ParameterGuardError, match="unknown model"):
            get_model("morse")

    def test_unknown_parameter(self):
        with pytest.raises(ParameterGuardError):
            model_potential("scarf", {"nu": 1.0}, 0.0)


class TestPotentials:

    def test_hydrogen_value(self):
        V = model_potential("hydrogenlike", {"kappa": 1.0, "omega": 1.0}, 2.0)
        assert V.shape == (2, 2)
        assert np.allclose(V, [[1.0, 0.5], [0.5, 1.0]])

    def test_ps_radial_value(self):
        V = model_potential("ps_radial", {"m": 1.0}, 1.0)
        assert np.allclose(V, [[0, 1], [1, 2]])

    def test_vector3d_shape(self):
        V = model_potential("vector3d", {"j": 1.0, "omega": 1.0}, np.array([1.0, 2.0]))
        assert V.shape == (2, 3, 3)
        assert np.allclose(V, np.conj(np.swapaxes(V, 1, 2)))

    def test_outside_domain(self):
        with pytest.raises(DomainError):
            model_potential("oscillatorB", {"c": 1.0}, 0.5)

    def test_partner_plus(self):
        x = np.linspace(1, 3, 4)
        ms = model_superpotential("oscillatorA")
        vm = model_partner("oscillatorA", None, x, "minus")
        vp = model_partner("oscillatorA", None, x, "plus")
        assert np.allclose(vp - vm, 2 * ms.derivatives(ms.kappa, x))

    @pytest.mark.parametrize("model_id", sorted(MODELS))
    def test_potentials_hermitian(self, model_id):
        ms = model_superpotential(model_id)
        xs = sample_grid(ms, count=9)
        V = model_potential(model_id, None, xs)
        assert np.allclose(V, np.conj(np.swapaxes(V, 1, 2)), atol=1e-12)


class TestReduction:

    @pytest.mark.parametrize("model_id", sorted(MODELS))
    def test_defaults(self, model_id):
        report = check_reduction(model_id)
        assert report.deviation < 1e-10
        assert report.offset == pytest.approx(report.expected_offset, abs=1e-10)
        assert report.passed(1e-10)

    @pytest.mark.parametrize("j", [0.5, 1.5, 2.5])
    def test_spinor_labels(self, j):
        assert check_reduction("spinor3d", {"j": j, "omega": 1.3}).passed(1e-10)

    @pytest.mark.parametrize("m", [0.0, 1.0, 2.0, 1.5])
    def test_vector2d_labels(self, m):
        assert check_reduction("vector2d", {"m": m, "omega": 0.8}).passed(1e-10)

    @pytest.mark.parametrize("j", [1.0, 2.0])
    def test_vector3d_labels(self, j):
        report = check_reduction("vector3d", {"j": j, "omega": 1.5})
        assert report.passed(1e-10)
        assert report.offset == pytest.approx(1.5 ** 2 / (2 * j + 2) ** 2)

    @pytest.mark.parametrize("m", [1.0, 2.0, 0.5])
    def test_ps_radial_labels(self, m):
        report = check_reduction("ps_radial", {"m": m})
        assert report.passed(1e-10)
        assert report.offset == pytest.approx(1 / (4 * (m + 0.5) ** 2))

    def test_random_oscillator_parameters(self, rng):
        for _ in range(5):
            params = {"kappa": rng.uniform(0.5, 3), "omega": rng.uniform(0.5, 3), "mu": rng.uniform(-1, 1)}
            assert check_reduction("oscillatorA", params).passed(1e-10)
            params["c"] = rng.uniform(0, 2)
            assert check_reduction("oscillatorB", params).passed(1e-10)

    def test_random_line_parameters(self, rng):
        for _ in range(5):
            kappa = -rng.uniform(1.5, 4)
            lam = rng.uniform(0.5, 2)
            assert check_reduction("scarf", {"lam": lam, "kappa": kappa, "omega": rng.uniform(0.2, 2)}).passed(1e-10)
            assert check_reduction("tanhexp", {"lam": lam, "kappa": kappa, "mu": rng.uniform(-1, 1)}).passed(1e-10)

    def test_plus_convention_differs(self):
        report = check_reduction("vector2d", {"m": 1.0, "omega": 1.0}, convention="plus")
        assert not report.passed(1e-6)
        assert report.to_dict()["convention"] == "plus"

    @pytest.mark.parametrize("model_id", sorted(MODELS))
    def test_model_superpotential_is_shape_invariant(self, model_id):
        ms = model_superpotential(model_id)
        xs = sample_grid(ms)
        report = shape_residual(ms, ms.kappa, xs)
        assert report.residuals["shape"] <= 1e-9 * report.scale
        assert determining_residuals(ms.decompose(), xs).max_residual < 1e-9


class TestGapFormulas:

    def test_hydrogen(self):
        assert model_gap_formula("hydrogenlike", {"kappa": 1.0, "omega": 1.0}, 1) == pytest.approx(0.75)

    def test_oscillator(self):
        assert model_gap_formula("oscillatorA", {"omega": 2.0}, 3) == pytest.approx(6.0)
        assert model_gap_formula("oscillatorB", {"omega": 1.5}, 2) == pytest.approx(3.0)

    def test_scarf_guard(self):
        p = {"lam": 1.0, "kappa": -3.0, "omega": 2.0}
        assert model_gap_formula("scarf", p, 1) == pytest.approx(9 + 4 / 9 - 4 / 4 - 4)
        with pytest.raises(NoSuchBoundStateError):
            model_gap_formula("scarf", p, 2)
        assert get_model("scarf").bound_count(get_model("scarf").resolve(p)) == 2

    def test_tanhexp_guard(self):
        p = {"lam": 1.0, "kappa": -2.5}
        assert model_gap_formula("tanhexp", p, 2) == pytest.approx(6.25 - 0.25)
        with pytest.raises(NoSuchBoundStateError):
            model_gap_formula("tanhexp", p, 3)

    def test_spinor(self):
        assert model_gap_formula("spinor3d", {"j": 0.5, "omega": 2.0}, 1) == pytest.approx(1 / 2.25 - 1 / 6.25)

    def test_ps_radial_needs_positive_m(self):
        with pytest.raises(NoSuchBoundStateError):
            model_gap_formula("ps_radial", {"m": 0.0}, 0)

    def test_label_guard(self):
        with pytest.raises(ParameterGuardError, match="half-integer"):
            model_gap_formula("spinor3d", {"j": 0.7}, 0)


class TestDefaultGrid:

    def test_radial(self):
        g = default_grid("oscillatorB", {"c": 1.0}, levels=3, N=500, epsilon_ratio=0.001)
        assert g.xmin > 1.0 and g.channels == 2 and g.N == 500

    def test_line(self):
        g = default_grid("scarf", None, levels=2, length=25.0)
        assert (g.xmin, g.xmax) == (-25.0, 25.0)

    def test_hydrogen_length(self):
        assert default_grid("hydrogenlike").xmax == pytest.approx(90.0)

    def test_radial_wall_default(self):
        g = default_grid("hydrogenlike")
        assert g.xmin == pytest.approx(1e-3 * 90.0)
        assert default_grid("hydrogenlike", epsilon_ratio=0.0).xmin == 0.0


class TestSpectrum:

    @pytest.mark.slow
    def test_oscillator_a(self):
        report = model_spectrum_check("oscillatorA", {"kappa": 1.0, "omega": 2.0, "mu": 0.5}, levels=4)
        assert report.passed
        assert report.gaps == pytest.approx([0, 2, 4, 6], abs=2e-3)
        assert report.extra["annihilation_residual"] < 1e-2
        assert report.bound_count == 4

    def test_oscillator_a_skips_wall_level(self):
        # the Dirichlet wall adds a level near gap 2.28 that no ladder state reaches
        grid = default_grid("oscillatorA", None, 3, N=1000)
        report = model_spectrum_check("oscillatorA", None, levels=3, grid=grid)
        for key in ("solver_levels", "coarse_solver_levels"):
            assert report.extra[key][:2] == [0, 1]
            assert 2 not in report.extra[key]
        assert report.gaps == pytest.approx([0, 2, 4], abs=2e-3)
        assert any("not ladder states" in note for note in report.notes)

    @pytest.mark.slow
    def test_oscillator_b(self):
        report = model_spectrum_check("oscillatorB", None, levels=3)
        assert report.passed
        assert report.analytic_gaps == pytest.approx([0, 2, 4])

    @pytest.mark.slow
    def test_scarf(self):
        report = model_spectrum_check("scarf", {"lam": 1.0, "kappa": -3.0, "omega": 2.0}, levels=3)
        assert report.passed
        assert report.analytic_gaps == pytest.approx([0, 40 / 9])
        assert report.threshold == pytest.approx(9 + 4 / 9 - 4, abs=1e-6)
        assert report.bound_count == 2
        assert any("only 2 bound levels" in note for note in report.notes)

    @pytest.mark.slow
    def test_tanhexp(self):
        report = model_spectrum_check("tanhexp", {"lam": 1.0, "kappa": -3.0, "mu": 1.0}, levels=3)
        assert report.passed
        assert report.gaps == pytest.approx([0, 5, 8], abs=2e-3)
        assert report.bound_count == 3

    @pytest.mark.slow
    def test_vector2d(self):
        # m = 1 puts one channel at the critical −1/(4r²) coupling; m = 2 stays clear of it
        report = model_spectrum_check("vector2d", {"m": 2.0, "omega": 2.0}, levels=2)
        assert max(report.deviations) < 5e-3

    @pytest.mark.slow
    def test_hydrogen_dirichlet_levels(self):
        p = {"kappa": 1.0, "omega": 1.0}
        grid = default_grid("hydrogenlike", p, 3, epsilon_ratio=0.0)
        report = model_spectrum_check("hydrogenlike", p, levels=3, grid=grid)
        assert not report.passed
        assert report.gaps == pytest.approx([0, 0.1875, 1 / 4 - 1 / 36], abs=2e-3)
        assert report.extra["annihilation_residual"] > 0.5
        assert any("breaks supersymmetry" in note for note in report.notes)
        assert any("energy order" in note for note in report.notes)

    def test_no_bound_states(self):
        with pytest.raises(NoSuchBoundStateError):
            model_spectrum_check("tanhexp", {"kappa": 1.0})

    def test_explicit_grid(self):
        grid = GridSpec(0.0, 18.0, 800)
        report = model_spectrum_check("oscillatorA", None, levels=2, grid=grid)
        assert report.grid.channels == 2
        assert report.extra["coarse_grid"]["N"] == 800
