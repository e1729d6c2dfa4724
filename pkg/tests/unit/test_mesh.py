"""Unit tests for mesh construction and the benchmark slabs."""

import numpy as np
import pytest
from pydantic import ValidationError

from src.core.exceptions import InvalidArgumentError, MaterialError, MeshAlignmentError
from src.models.problem import BoundarySpec, MaterialRegion, Mesh
from src.services.mesh import build_mesh, build_mesh_nonuniform
from src.services.scenarios import problem_one_regions, problem_two_mesh

from ..conftest import REFLECTIVE_VACUUM


@pytest.mark.unit
class TestBuildMesh:
    """Test cases for uniform mesh construction."""

    def test_problem_one_layout(self, problem_one):
        """Test the three-region slab is cut into 30 unit cells."""
        assert problem_one.cell_count == 30
        np.testing.assert_array_equal(problem_one.sigma_s[:10], 0.9)
        np.testing.assert_array_equal(problem_one.sigma_s[10:20], 0.99)
        np.testing.assert_array_equal(problem_one.sigma_s[20:], 0.9)
        np.testing.assert_array_equal(problem_one.region_index, np.repeat([0, 1, 2], 10))
        assert problem_one.length == pytest.approx(30.0, rel=1e-12)
        assert problem_one.boundary == REFLECTIVE_VACUUM

    def test_single_region(self):
        """Test a width-5 region with unit cells gives five identical cells."""
        region = MaterialRegion(width=5.0, sigma_t=2.0, sigma_s=1.0, q=3.0)
        mesh = build_mesh([region], BoundarySpec(), 1.0)
        assert mesh.cell_count == 5
        np.testing.assert_array_equal(mesh.sigma_t, 2.0)
        np.testing.assert_array_equal(mesh.sigma_a, 1.0)
        np.testing.assert_array_equal(mesh.q, 3.0)
        np.testing.assert_allclose(mesh.centers, [0.5, 1.5, 2.5, 3.5, 4.5])

    def test_decimal_round_off_tolerated(self):
        """Test widths that are multiples up to floating round-off are accepted."""
        region = MaterialRegion(width=0.3, sigma_t=1.0, sigma_s=0.5)
        assert build_mesh([region], BoundarySpec(), 0.1).cell_count == 3

    def test_misaligned_region(self):
        """Test a region that is not a multiple of the cell width names itself."""
        regions = [
            MaterialRegion(width=9.0, sigma_t=1.0, sigma_s=0.5),
            MaterialRegion(width=10.0, sigma_t=1.0, sigma_s=0.5),
        ]
        with pytest.raises(MeshAlignmentError) as exc_info:
            build_mesh(regions, BoundarySpec(), 3.0)
        assert exc_info.value.region == 1
        assert exc_info.value.error_code == "MESH_ALIGNMENT"

    def test_scattering_exceeds_total(self):
        """Test sigma_s > sigma_t is reported with the offending region."""
        regions = problem_one_regions()
        regions[1] = MaterialRegion(width=10.0, sigma_t=1.0, sigma_s=1.5, q=1.0)
        with pytest.raises(MaterialError) as exc_info:
            build_mesh(regions, BoundarySpec(), 1.0)
        assert exc_info.value.region == 1
        assert "Region 1" in exc_info.value.message

    def test_nonpositive_cell_width(self):
        """Test zero cell width is rejected."""
        with pytest.raises(InvalidArgumentError):
            build_mesh(problem_one_regions(), BoundarySpec(), 0.0)

    @pytest.mark.parametrize("cell_width", [float("inf"), float("nan")])
    def test_non_finite_cell_width(self, cell_width):
        """Test infinite or NaN cell widths are argument errors."""
        with pytest.raises(InvalidArgumentError):
            build_mesh(problem_one_regions(), BoundarySpec(), cell_width)

    def test_infinite_region(self):
        """Test an unbounded region cannot be cut into cells."""
        region = MaterialRegion(width=float("inf"), sigma_t=1.0, sigma_s=0.5)
        with pytest.raises(InvalidArgumentError):
            build_mesh([region], BoundarySpec(), 1.0)

    def test_empty_regions(self):
        """Test at least one region is required."""
        with pytest.raises(InvalidArgumentError):
            build_mesh([], BoundarySpec(), 1.0)


@pytest.mark.unit
class TestBuildMeshNonuniform:
    """Test cases for explicit cell widths."""

    def test_two_cells(self):
        """Test widths {1, 2} on a width-3 region."""
        region = MaterialRegion(width=3.0, sigma_t=1.0, sigma_s=0.5)
        mesh = build_mesh_nonuniform([region], BoundarySpec(), [1.0, 2.0])
        assert mesh.cell_count == 2
        np.testing.assert_array_equal(mesh.widths, [1.0, 2.0])
        np.testing.assert_allclose(mesh.edges, [0.0, 1.0, 3.0])

    def test_four_cells(self):
        """Test widths {0.5, 0.5, 1, 1} on a width-3 region."""
        region = MaterialRegion(width=3.0, sigma_t=1.0, sigma_s=0.5)
        mesh = build_mesh_nonuniform([region], BoundarySpec(), [0.5, 0.5, 1.0, 1.0])
        assert mesh.cell_count == 4

    def test_short_widths(self):
        """Test widths summing to 2.9 on a width-3 region fail."""
        region = MaterialRegion(width=3.0, sigma_t=1.0, sigma_s=0.5)
        with pytest.raises(MeshAlignmentError):
            build_mesh_nonuniform([region], BoundarySpec(), [1.0, 1.9])

    def test_widths_past_the_slab(self):
        """Test widths extending beyond the last region fail."""
        region = MaterialRegion(width=3.0, sigma_t=1.0, sigma_s=0.5)
        with pytest.raises(MeshAlignmentError):
            build_mesh_nonuniform([region], BoundarySpec(), [1.0, 2.0, 1.0])

    def test_straddling_cell(self):
        """Test a cell crossing an interior interface fails for that region."""
        regions = [
            MaterialRegion(width=1.0, sigma_t=1.0, sigma_s=0.5),
            MaterialRegion(width=2.0, sigma_t=1.0, sigma_s=0.5),
        ]
        with pytest.raises(MeshAlignmentError) as exc_info:
            build_mesh_nonuniform(regions, BoundarySpec(), [1.5, 1.5])
        assert exc_info.value.region == 0

    def test_matches_uniform_builder(self):
        """Test a constant width sequence reproduces the uniform mesh field for field."""
        regions = problem_one_regions()
        uniform = build_mesh(regions, REFLECTIVE_VACUUM, 1.0)
        explicit = build_mesh_nonuniform(regions, REFLECTIVE_VACUUM, [1.0] * 30)
        for name in ("widths", "sigma_t", "sigma_s", "q", "region_index"):
            np.testing.assert_array_equal(getattr(uniform, name), getattr(explicit, name))
        assert uniform.boundary == explicit.boundary

    def test_nonpositive_width(self):
        """Test a zero width is rejected."""
        region = MaterialRegion(width=1.0, sigma_t=1.0, sigma_s=0.5)
        with pytest.raises(InvalidArgumentError):
            build_mesh_nonuniform([region], BoundarySpec(), [1.0, 0.0])

    def test_non_finite_width(self):
        """Test an infinite width is rejected."""
        region = MaterialRegion(width=1.0, sigma_t=1.0, sigma_s=0.5)
        with pytest.raises(InvalidArgumentError):
            build_mesh_nonuniform([region], BoundarySpec(), [1.0, float("inf")])


@pytest.mark.unit
class TestMeshModel:
    """Test cases for the Mesh model itself."""

    def test_inconsistent_lengths(self):
        """Test per-cell arrays must share one length."""
        with pytest.raises(ValidationError):
            Mesh(widths=[1.0, 1.0], sigma_t=[1.0], sigma_s=[0.5, 0.5], q=[0.0, 0.0],
                 region_index=[0, 0], boundary=BoundarySpec())

    def test_absorption_must_be_nonnegative(self):
        """Test sigma_s > sigma_t is rejected at model level too."""
        with pytest.raises(ValidationError):
            Mesh(widths=[1.0], sigma_t=[1.0], sigma_s=[2.0], q=[0.0],
                 region_index=[0], boundary=BoundarySpec())

    def test_scattering_ratio_in_void(self):
        """Test a void cell reports a zero scattering ratio."""
        mesh = Mesh(widths=[1.0, 1.0], sigma_t=[0.0, 2.0], sigma_s=[0.0, 1.0], q=[0.0, 0.0],
                    region_index=[0, 1], boundary=BoundarySpec())
        np.testing.assert_array_equal(mesh.scattering_ratio, [0.0, 0.5])


@pytest.mark.unit
class TestProblemTwo:
    """Test cases for the variable-width stability slab."""

    def test_layout(self):
        """Test cell count, width and materials."""
        mesh = problem_two_mesh(0.9, 0.5)
        assert mesh.cell_count == 100
        np.testing.assert_allclose(mesh.widths, 0.5)
        np.testing.assert_allclose(mesh.sigma_s, 0.9)
        np.testing.assert_array_equal(mesh.q, 1.0)
        assert mesh.boundary == REFLECTIVE_VACUUM

    def test_fine_cells(self):
        """Test a small optical width still yields exactly the requested cells."""
        assert problem_two_mesh(0.4, 0.1, cells=100).cell_count == 100

    @pytest.mark.parametrize(
        "c,sigma_t_h,cells",
        [(1.5, 1.0, 10), (0.5, 0.0, 10), (0.5, 1.0, 0), (0.5, float("inf"), 10), (0.5, float("nan"), 10)],
    )
    def test_invalid_parameters(self, c, sigma_t_h, cells):
        """Test out-of-range parameters are rejected."""
        with pytest.raises(InvalidArgumentError):
            problem_two_mesh(c, sigma_t_h, cells)
