"""Unit tests for the low-order quasidiffusion solve."""

import numpy as np
import pytest
from pydantic import ValidationError

from src.core.exceptions import InvalidArgumentError, NegativeFluxError, SingularSystemError
from src.models.iteration import IterationOptions, SchemeKind
from src.models.problem import BoundarySpec, MaterialRegion
from src.models.transport import Closure, CorrectionFields, Moments
from src.services.iteration import solve
from src.services.low_order import (
    assemble_and_solve,
    correction_fields,
    dhat_factors,
    edge_betas,
    eddington_factors,
    low_order_currents,
    tridiagonal_solve,
)
from src.services.mesh import build_mesh
from src.services.sweep import compute_moments, transport_sweep

from ..conftest import REFLECTIVE_BOTH, REFLECTIVE_VACUUM


@pytest.mark.unit
class TestEddingtonFactors:
    """Test cases for eddington_factors."""

    def test_ratios(self):
        """Test E = phi2 / phi for isotropic and anisotropic cells."""
        m = Moments(phi=[1.0, 2.0], phi2=[1.0 / 3.0, 0.5], current_edges=[0.0, 0.0, 0.0])
        np.testing.assert_allclose(eddington_factors(m), [1.0 / 3.0, 0.25], rtol=1e-15)

    def test_nonpositive_flux(self):
        """Test a non-positive scalar flux names its cell."""
        m = Moments(phi=[1.0, -0.1, 0.5], phi2=[0.3, 0.1, 0.2], current_edges=np.zeros(4))
        with pytest.raises(NegativeFluxError) as exc_info:
            eddington_factors(m)
        assert exc_info.value.cell == 1
        assert exc_info.value.error_code == "NEGATIVE_FLUX"

    def test_s2_sweep_is_one_third(self, one_cell_vacuum, s2):
        """Test the S2 Eddington factor is exactly one third."""
        m = compute_moments(transport_sweep(one_cell_vacuum, s2, Closure.DD, np.zeros(1)), s2)
        assert eddington_factors(m)[0] == pytest.approx(1.0 / 3.0, rel=1e-14)


@pytest.mark.unit
class TestDhatFactors:
    """Test cases for dhat_factors."""

    def test_interior_edge(self):
        """Test direct evaluation of the interior consistency factor."""
        region = MaterialRegion(width=2.0, sigma_t=1.0, sigma_s=0.5)
        mesh = build_mesh([region], REFLECTIVE_BOTH, 1.0)
        np.testing.assert_array_equal(edge_betas(mesh), [1.0])
        m = Moments(phi=[1.0, 0.9], phi2=[0.35, 0.30], current_edges=[0.0, 0.1, 0.0])
        corr = dhat_factors(m, mesh, eddington_factors(m))
        assert corr.dhat_interior[0] == pytest.approx(0.05 / 0.95, rel=1e-13)
        assert corr.dhat_boundary_left is None
        assert corr.dhat_boundary_right is None

    def test_flat_isotropic(self, homogeneous_mesh):
        """Test flat isotropic moments need no correction."""
        mesh = homogeneous_mesh(cells=5)
        m = Moments(phi=np.ones(5), phi2=np.full(5, 1.0 / 3.0), current_edges=np.zeros(6))
        corr = correction_fields(m, mesh)
        np.testing.assert_allclose(corr.eddington, 1.0 / 3.0, rtol=1e-15)
        np.testing.assert_allclose(corr.dhat_interior, 0.0, atol=1e-15)
        assert corr.dhat_boundary_right == 0.0

    def test_vacuum_faces_s2(self, one_cell_vacuum, s2):
        """Test the one-cell S2 boundary factors are the outgoing current per unit flux."""
        m = compute_moments(transport_sweep(one_cell_vacuum, s2, Closure.DD, np.zeros(1)), s2)
        corr = correction_fields(m, one_cell_vacuum)
        assert corr.dhat_interior.shape == (0,)
        assert corr.dhat_boundary_right == pytest.approx(1.0 / np.sqrt(3.0), rel=1e-12)
        assert corr.dhat_boundary_left == pytest.approx(-1.0 / np.sqrt(3.0), rel=1e-12)

    def test_manual_boundary_ratio(self):
        """Test D-hat_b = J / phi of the boundary cell."""
        region = MaterialRegion(width=1.0, sigma_t=1.0, sigma_s=0.0, q=1.0)
        mesh = build_mesh([region], REFLECTIVE_VACUUM, 1.0)
        m = Moments(phi=[0.4641], phi2=[0.1547], current_edges=[0.0, 0.23205])
        corr = correction_fields(m, mesh)
        assert corr.dhat_boundary_right == pytest.approx(0.5, rel=1e-12)
        assert corr.dhat_boundary_left is None

    def test_non_finite_rejected(self):
        """Test correction fields refuse NaN entries."""
        with pytest.raises(ValidationError):
            CorrectionFields(eddington=[0.3, 0.3], dhat_interior=[np.nan])


@pytest.mark.unit
class TestTridiagonalSolve:
    """Test cases for tridiagonal_solve."""

    def test_identity(self):
        """Test the identity system returns the right-hand side."""
        rhs = [1.0, -2.0, 3.5, 4.0]
        np.testing.assert_array_equal(tridiagonal_solve([0.0] * 3, [1.0] * 4, [0.0] * 3, rhs), rhs)

    def test_two_by_two(self):
        """Test [[2, 1], [1, 2]] x = [3, 3] gives x = [1, 1]."""
        np.testing.assert_allclose(tridiagonal_solve([1.0], [2.0, 2.0], [1.0], [3.0, 3.0]),
                                   [1.0, 1.0], rtol=1e-15)

    def test_single_row(self):
        """Test a 1x1 system."""
        np.testing.assert_allclose(tridiagonal_solve([], [4.0], [], [2.0]), [0.5])

    def test_random_dominant_system(self):
        """Test the residual of a random diagonally dominant 50x50 system."""
        rng = np.random.default_rng(7)
        n = 50
        sub = rng.uniform(-1.0, 1.0, n - 1)
        sup = rng.uniform(-1.0, 1.0, n - 1)
        diag = 2.5 + rng.uniform(0.0, 1.0, n)
        rhs = rng.uniform(-5.0, 5.0, n)
        x = tridiagonal_solve(sub, diag, sup, rhs)
        matrix = np.diag(diag) + np.diag(sub, -1) + np.diag(sup, 1)
        assert np.max(np.abs(matrix @ x - rhs)) < 1e-12 * np.max(np.abs(rhs))

    def test_zero_leading_pivot(self):
        """Test a zero first pivot is reported at row 0."""
        with pytest.raises(SingularSystemError) as exc_info:
            tridiagonal_solve([1.0], [0.0, 1.0], [1.0], [1.0, 1.0])
        assert exc_info.value.index == 0

    def test_zero_later_pivot(self):
        """Test elimination producing a zero pivot reports its row."""
        with pytest.raises(SingularSystemError) as exc_info:
            tridiagonal_solve([1.0], [1.0, 1.0], [1.0], [1.0, 2.0])
        assert exc_info.value.index == 1

    def test_band_length_mismatch(self):
        """Test inconsistent band lengths are rejected."""
        with pytest.raises(InvalidArgumentError):
            tridiagonal_solve([1.0, 1.0], [2.0, 2.0], [1.0], [1.0, 1.0])


@pytest.mark.unit
class TestAssembleAndSolve:
    """Test cases for the low-order system."""

    def test_plain_diffusion_flat_solution(self, homogeneous_mesh):
        """Test E = 1/3, D-hat = 0 on an infinite medium gives Q / sigma_a."""
        mesh = homogeneous_mesh(c=0.9, cells=5, boundary=REFLECTIVE_BOTH)
        corr = CorrectionFields(eddington=np.full(5, 1.0 / 3.0), dhat_interior=np.zeros(4))
        phi = assemble_and_solve(mesh, corr.eddington, corr, mesh.boundary)
        np.testing.assert_allclose(phi, 10.0, rtol=1e-12)

    def test_missing_boundary_factor(self, homogeneous_mesh):
        """Test a vacuum face without its factor is rejected."""
        mesh = homogeneous_mesh(cells=3)
        corr = CorrectionFields(eddington=np.full(3, 1.0 / 3.0), dhat_interior=np.zeros(2))
        with pytest.raises(InvalidArgumentError):
            assemble_and_solve(mesh, corr.eddington, corr, mesh.boundary)

    def test_mismatched_fields(self, homogeneous_mesh):
        """Test correction fields must match the mesh size."""
        mesh = homogeneous_mesh(cells=4, boundary=REFLECTIVE_BOTH)
        corr = CorrectionFields(eddington=np.full(3, 1.0 / 3.0), dhat_interior=np.zeros(2))
        with pytest.raises(InvalidArgumentError):
            assemble_and_solve(mesh, corr.eddington, corr, mesh.boundary)

    def test_one_cell_low_order_matches_sweep(self, one_cell_vacuum, s2):
        """Test both vacuum faces reproduce the one-cell transport flux."""
        m = compute_moments(transport_sweep(one_cell_vacuum, s2, Closure.DD, np.zeros(1)), s2)
        corr = correction_fields(m, one_cell_vacuum)
        phi = assemble_and_solve(one_cell_vacuum, corr.eddington, corr, one_cell_vacuum.boundary)
        assert phi[0] == pytest.approx(m.phi[0], rel=1e-13)

    def test_one_cell_fixed_point(self, s10):
        """Test a single reflective/vacuum cell reproduces its converged transport flux."""
        region = MaterialRegion(width=2.0, sigma_t=1.0, sigma_s=0.5, q=1.0)
        mesh = build_mesh([region], REFLECTIVE_VACUUM, 2.0)
        converged = solve(SchemeKind.SI, mesh, s10, Closure.DD, IterationOptions(tolerance=1e-14))
        m = compute_moments(transport_sweep(mesh, s10, Closure.DD, converged.phi), s10)
        corr = correction_fields(m, mesh)
        phi = assemble_and_solve(mesh, corr.eddington, corr, mesh.boundary)
        assert abs(phi[0] - m.phi[0]) < 1e-11 * m.phi[0]


@pytest.mark.unit
class TestLowOrderCurrents:
    """Test cases for low_order_currents."""

    @pytest.mark.parametrize("closure", list(Closure))
    def test_reproduces_transport_currents(self, problem_one, s10, closure):
        """Test J_LO = J_HO at every edge when evaluated at the transport flux."""
        sol = transport_sweep(problem_one, s10, closure, np.linspace(2.0, 1.0, 30))
        m = compute_moments(sol, s10)
        corr = correction_fields(m, problem_one)
        current = low_order_currents(m.phi, problem_one, corr.eddington, corr)
        scale = np.max(np.abs(m.current_edges))
        np.testing.assert_allclose(current, m.current_edges, rtol=0, atol=1e-12 * scale)

    def test_reflective_faces_carry_no_current(self, homogeneous_mesh):
        """Test reflective faces are pinned to zero current."""
        mesh = homogeneous_mesh(cells=3, boundary=BoundarySpec(left="reflective", right="reflective"))
        corr = CorrectionFields(eddington=np.full(3, 1.0 / 3.0), dhat_interior=np.zeros(2))
        current = low_order_currents(np.array([1.0, 2.0, 3.0]), mesh, corr.eddington, corr)
        assert current[0] == 0.0
        assert current[-1] == 0.0
        np.testing.assert_allclose(current[1:-1], [-1.0 / 3.0, -1.0 / 3.0], rtol=1e-15)
