import numpy as np
import pytest
from numpy.testing import assert_allclose

import momentkit as mk
from conftest import (
    point_mass_model,
    random_measure,
    random_unitary,
    random_upper_z,
    random_vector,
)


class TestCayleyTransform:
    def test_point_mass_scalar_cayley(self):
        model, _ = point_mass_model(2.0, order=2)
        c = model.cayley
        assert c.defect_dims == (0, 0)
        assert c.V[0, 0] == pytest.approx((2 + 1j) / (2 - 1j), abs=1e-12)

    def test_defect_dims_simple(self, simple_indeterminate_model):
        model = simple_indeterminate_model
        assert model.space.rank == 2
        assert model.shift.domain_dim == 1
        assert model.defect_dims == (1, 1)

    def test_defect_dims_gaussian(self, gaussian_model):
        assert gaussian_model.space.rank == 4
        assert gaussian_model.shift.domain_dim == 3
        assert gaussian_model.defect_dims == (1, 1)

    def test_isometry_on_mi(self, gaussian_model):
        c = gaussian_model.cayley
        rng = np.random.default_rng(0)
        for _ in range(200):
            u = c.P_Mi @ random_vector(rng, c.space_dim)
            assert abs(np.linalg.norm(c.V @ u) - np.linalg.norm(u)) <= 1e-10 * max(
                1.0, np.linalg.norm(u)
            )

    def test_cayley_intertwines_shift(self, gaussian_model):
        a, c = gaussian_model.shift, gaussian_model.cayley
        rng = np.random.default_rng(1)
        eye = np.eye(c.space_dim)
        for _ in range(20):
            x = a.domain_proj @ random_vector(rng, c.space_dim)
            lhs = c.V @ ((a.action - 1j * eye) @ x)
            rhs = (a.action + 1j * eye) @ x
            assert np.linalg.norm(lhs - rhs) <= 1e-10 * max(1.0, np.linalg.norm(rhs))

    def test_projectors_are_complementary(self, gaussian_model):
        c = gaussian_model.cayley
        eye = np.eye(c.space_dim)
        assert_allclose(c.P_Mi + c.P_Ni, eye, atol=1e-12)
        assert_allclose(c.P_Mmi + c.P_Nmi, eye, atol=1e-12)
        # projector eigenvalues cluster at 0 and 1
        assert np.count_nonzero(np.linalg.eigvalsh(c.P_Ni) > 0.5) == c.defect_dims[0]

    def test_inverse_cayley_recovers_shift_action(self, gaussian_model):
        a, c = gaussian_model.shift, gaussian_model.cayley
        eye = np.eye(c.space_dim)
        pencil = c.V - eye
        if np.linalg.cond(pencil) > 1e9:
            pytest.skip("1 is numerically an eigenvalue of V; inverse not defined")
        recovered = 1j * (c.V + eye) @ np.linalg.inv(pencil)
        rng = np.random.default_rng(2)
        for _ in range(20):
            x = a.domain_proj @ random_vector(rng, c.space_dim)
            assert np.linalg.norm(recovered @ x - a.action @ x) <= 1e-9 * max(
                1.0, np.linalg.norm(a.action @ x)
            )

    @pytest.mark.parametrize("seed", range(6))
    def test_equal_defect_numbers(self, seed):
        rng = np.random.default_rng(200 + seed)
        d = int(rng.integers(1, 4))
        m = mk.generate_from_measure(
            random_measure(rng, d, int(rng.integers(1, 5))), 2 * int(rng.integers(1, 4))
        )
        model = mk.build_model(m)
        d_plus, d_minus = model.defect_dims
        assert d_plus == d_minus == model.space.rank - model.shift.domain_dim


class TestSchurParameter:
    def test_rejects_expansion(self):
        with pytest.raises(mk.ParameterError):
            mk.SchurParameter([[1.5]])

    def test_zero_and_scalar_builders(self):
        p = mk.SchurParameter.zero((2, 2))
        assert p.shape == (2, 2) and not np.any(p.matrix)
        q = mk.SchurParameter.scalar_unitary(np.pi / 3, (2, 2))
        assert q.is_unitary
        with pytest.raises(mk.ParameterError):
            mk.SchurParameter.scalar_unitary(0.0, (1, 2))

    def test_empty_parameter_is_unitary(self):
        assert mk.SchurParameter.zero((0, 0)).is_unitary


class TestUnitaryExtension:
    def test_empty_defect_returns_v(self, delta2_model):
        c = delta2_model.cayley
        u = mk.unitary_extension(c, mk.SchurParameter.zero((0, 0)))
        assert_allclose(u, c.V, atol=1e-14)

    def test_simple_extension_is_unitary(self, simple_indeterminate_model):
        c = simple_indeterminate_model.cayley
        u = mk.unitary_extension(c, mk.SchurParameter([[1.0]]))
        assert_allclose(u.conj().T @ u, np.eye(2), atol=1e-10)
        assert_allclose(np.abs(np.linalg.eigvals(u)), 1.0, atol=1e-10)

    def test_rejects_strict_contraction(self, simple_indeterminate_model):
        c = simple_indeterminate_model.cayley
        with pytest.raises(mk.ParameterError):
            mk.unitary_extension(c, mk.SchurParameter([[0.5]]))

    def test_rejects_wrong_shape(self, gaussian_model):
        with pytest.raises(mk.ParameterError):
            mk.unitary_extension(
                gaussian_model.cayley, mk.SchurParameter(np.eye(2))
            )

    @pytest.mark.parametrize("theta", [0.5, 1.7, 2.9, 4.2, 5.6])
    def test_inverse_cayley_hermitian_on_theta_grid(self, gaussian_model, theta):
        # the inverse Cayley transform of the extension must be Hermitian;
        # its Hermiticity is the oracle for unitarity of the extension
        c = gaussian_model.cayley
        u = mk.unitary_extension(
            c, mk.SchurParameter.scalar_unitary(theta, c.defect_dims)
        )
        a_tilde = mk.inverse_cayley(u)
        defect = np.linalg.norm(a_tilde - a_tilde.conj().T, 2)
        assert defect <= 1e-9 * max(1.0, np.linalg.norm(a_tilde, 2))

    def test_inverse_cayley_rejects_eigenvalue_one(self, gaussian_model):
        # theta = 0 puts eigenvalue 1 into the extension for this model
        c = gaussian_model.cayley
        u = mk.unitary_extension(c, mk.SchurParameter.scalar_unitary(0.0, (1, 1)))
        if np.linalg.cond(u - np.eye(4)) > 1e12:
            with pytest.raises(mk.ConditioningError):
                mk.inverse_cayley(u)


class TestResolventLink:
    def test_point_mass(self, delta2_model):
        c = delta2_model.cayley
        residual = mk.resolvent_link_check(c, mk.SchurParameter.zero((0, 0)), 2j)
        assert residual <= 1e-10

    def test_simple_model(self, simple_indeterminate_model):
        # in the canonical defect bases, C = [1] is this model's degenerate
        # parameter (eigenvalue 1 in the extension); the identity is checked
        # at other unitary values and the degenerate one must be reported
        c = simple_indeterminate_model.cayley
        for theta in (np.pi / 2, np.pi, 2.2):
            p = mk.SchurParameter.scalar_unitary(theta, (1, 1))
            assert mk.resolvent_link_check(c, p, 1 + 1j) <= 1e-10
        with pytest.raises(mk.ConditioningError):
            mk.resolvent_link_check(c, mk.SchurParameter([[1.0]]), 1 + 1j)

    def test_empty_defect_any_z(self, delta2_model):
        c = delta2_model.cayley
        p = mk.SchurParameter.zero((0, 0))
        for z in (0.5j, -3 + 0.7j, 4 + 2j):
            assert mk.resolvent_link_check(c, p, z) <= 1e-10

    def test_random_unitary_parameters(self, gaussian_model):
        rng = np.random.default_rng(11)
        c = gaussian_model.cayley
        for _ in range(10):
            p = mk.SchurParameter(random_unitary(rng, 1))
            z = random_upper_z(rng)
            assert mk.resolvent_link_check(c, p, z) <= 1e-8

    def test_rejects_excluded_band(self, gaussian_model):
        c = gaussian_model.cayley
        p = mk.SchurParameter.scalar_unitary(1.0, (1, 1))
        with pytest.raises(mk.DomainError):
            mk.resolvent_link_check(c, p, 1j + 1e-9)
        with pytest.raises(mk.DomainError):
            mk.resolvent_link_check(c, p, 2.0 - 1j)
