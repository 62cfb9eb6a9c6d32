"""State, observables, probabilities, and the rule comparison."""

import numpy as np
import pytest

from bstghz.errors import NotEigenstate
from bstghz.ghz import ALL_CONTEXTS, OMEGA_CONSTRAINTS, context_vectors
from bstghz.quantum import (
    EIGEN_TOLERANCE,
    ObservableSpec,
    compare_with_stipulation,
    context_distribution,
    eigenvalue_for,
    ghz_state,
    omega_eigencheck,
    outcome_probability,
)

OMEGA_CONTEXTS = tuple(ctx for ctx, _ in OMEGA_CONSTRAINTS)
OTHER_CONTEXTS = tuple(
    ctx for ctx in ALL_CONTEXTS if ctx not in OMEGA_CONTEXTS
)


def reference_probability(context, signs):
    """Closed form: p = |1 - s1 s2 s3 (-i)^(#y)| ** 2 / 16."""
    ny = sum(1 for a in context if a == "y")
    phase = np.prod(signs) * (-1j) ** ny
    return abs(1 - phase) ** 2 / 16


class TestState:
    def test_amplitudes(self):
        psi = ghz_state()
        assert psi.shape == (8,)
        assert abs(psi[0] - 1 / np.sqrt(2)) < 1e-15
        assert abs(psi[7] + 1 / np.sqrt(2)) < 1e-15
        assert np.all(psi[1:7] == 0)
        assert abs(np.vdot(psi, psi) - 1) < 1e-15


class TestObservables:
    def test_matrix_shape_hermitian_involutive(self):
        for ctx in ALL_CONTEXTS:
            m = ObservableSpec(axes=ctx).matrix()
            assert m.shape == (8, 8)
            assert np.allclose(m, m.conj().T)
            assert np.allclose(m @ m, np.eye(8))

    def test_bad_axes_rejected(self):
        with pytest.raises(ValueError):
            ObservableSpec(axes=("x", "z", "y"))

    def test_eigenvalues_on_the_state(self):
        psi = ghz_state()
        expected = {
            ("x", "y", "y"): 1.0,
            ("y", "x", "y"): 1.0,
            ("y", "y", "x"): 1.0,
            ("x", "x", "x"): -1.0,
        }
        for ctx, lam in expected.items():
            got = eigenvalue_for(ObservableSpec(axes=ctx), psi)
            assert abs(got - lam) <= EIGEN_TOLERANCE

    def test_not_an_eigenstate_raises(self):
        basis0 = np.zeros(8, dtype=complex)
        basis0[0] = 1
        with pytest.raises(NotEigenstate):
            eigenvalue_for(ObservableSpec(axes=("x", "x", "x")), basis0)


class TestOmegaCheck:
    def test_eigenvalues_product_and_commutation(self):
        res = omega_eigencheck()
        values = [v for _, v in res.operators]
        for got, want in zip(values, (1.0, 1.0, 1.0, -1.0)):
            assert abs(got - want) <= EIGEN_TOLERANCE
        assert abs(res.product_eigenvalue - (-1.0)) <= EIGEN_TOLERANCE
        assert res.pairwise_commuting

    def test_four_fold_operator_product_is_minus_identity(self):
        product = np.eye(8, dtype=complex)
        for ctx in OMEGA_CONTEXTS:
            product = product @ ObservableSpec(axes=ctx).matrix()
        assert np.allclose(product, -np.eye(8), atol=1e-12)


class TestProbabilities:
    def test_closed_form_agreement_all_64(self):
        for ctx in ALL_CONTEXTS:
            for v in context_vectors(ctx):
                got = outcome_probability(ctx, v.signs)
                want = reference_probability(ctx, v.signs)
                assert abs(got - want) < 1e-12, (ctx, v.signs)

    def test_constrained_contexts_are_quarter_or_zero(self):
        for ctx in OMEGA_CONTEXTS:
            for p in context_distribution(ctx).values():
                assert min(abs(p), abs(p - 0.25)) < 1e-12

    def test_other_contexts_are_uniform(self):
        for ctx in OTHER_CONTEXTS:
            for p in context_distribution(ctx).values():
                assert abs(p - 0.125) < 1e-12

    def test_distributions_normalize(self):
        for ctx in ALL_CONTEXTS:
            assert abs(sum(context_distribution(ctx).values()) - 1) < 1e-12

    def test_bad_arguments_rejected(self):
        with pytest.raises(ValueError):
            outcome_probability(("x", "z", "x"), (1, 1, 1))
        with pytest.raises(ValueError):
            outcome_probability(("x", "x", "x"), (1, 0, 1))


class TestStipulationComparison:
    def test_default_threshold_disagreement_layout(self):
        rep = compare_with_stipulation()
        assert len(rep.disagreements) == 16
        for ctx in OMEGA_CONTEXTS:
            assert rep.count_for(ctx) == 0
        for ctx in OTHER_CONTEXTS:
            assert rep.count_for(ctx) == 4

    def test_disagreements_are_rule_rejections_of_live_outcomes(self):
        rep = compare_with_stipulation()
        for d in rep.disagreements:
            assert d.stipulated_consistent is False
            assert abs(d.probability - 0.125) < 1e-12
            assert not d.threshold_sensitive

    def test_high_threshold_flags_sensitivity(self):
        rep = compare_with_stipulation(threshold=0.5)
        assert len(rep.disagreements) == 32
        assert all(d.threshold_sensitive for d in rep.disagreements)
        assert all(d.stipulated_consistent for d in rep.disagreements)

    def test_threshold_out_of_range_rejected(self):
        for bad in (0.0, 1.0, -0.1, 1.5):
            with pytest.raises(ValueError):
                compare_with_stipulation(threshold=bad)
