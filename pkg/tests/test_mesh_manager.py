"""
Tests for grid sampling and the csv/json/obj exporters
"""
import csv
import io
import json

import numpy as np
import pytest

from errors import BadGrid, BadProjection, DomainViolation
from mesh_manager import CSV_HEADER, GridSpec, MeshManager
from profile_curves import builtin_curve, curve_from_expressions
from rotational_surfaces import make_surface_spec


@pytest.fixture(scope="module")
def lin14():
    return make_surface_spec("14", builtin_curve("lin14"), restricted=True)


@pytest.fixture(scope="module")
def still_lin14():
    return make_surface_spec("14", builtin_curve("lin14"), "0", "0", restricted=True)


class TestGridSpec:
    def test_includes_both_endpoints(self):
        grid = GridSpec.from_ranges((-1.0, 1.0), (0.5, 2.0), (2, 2))
        assert list(grid.t_values()) == [-1.0, 1.0]
        assert list(grid.s_values()) == [0.5, 2.0]

    @pytest.mark.parametrize("trange, srange, shape", [
        ((0.0, 1.0), (1.0, 2.0), (1, 3)),
        ((0.0, 1.0), (1.0, 2.0), (3, 0)),
        ((1.0, 1.0), (1.0, 2.0), (3, 3)),
        ((0.0, 1.0), (2.0, 1.0), (3, 3)),
    ])
    def test_rejects_bad_grids(self, trange, srange, shape):
        with pytest.raises(BadGrid):
            GridSpec.from_ranges(trange, srange, shape)


class TestSampling:
    def test_corners_of_a_2x2_grid(self, lin14):
        grid = GridSpec.from_ranges((0.0, 1.0), (1.0, 2.0), (2, 2))
        mesh = MeshManager.sample_grid(lin14, grid, with_curvature=False)
        assert [(v.t, v.s) for v in mesh.flat()] == [(0.0, 1.0), (0.0, 2.0), (1.0, 1.0), (1.0, 2.0)]
        corner = mesh.vertex(1, 1).position
        expected = [2.0 * np.cosh(1.0), 4.0 * np.sinh(1.0), 2.0 * np.sinh(1.0), 4.0 * np.cosh(1.0)]
        assert np.allclose(corner, expected, atol=1e-12)

    def test_cone_is_flat(self, lin14):
        grid = GridSpec.from_ranges((-1.0, 1.0), (0.5, 2.0), (4, 4))
        mesh = MeshManager.sample_grid(lin14, grid)
        assert mesh.degenerate_count == 0
        assert all(abs(v.K) <= 1e-9 and abs(v.H2) <= 1e-9 for v in mesh.flat())

    def test_workers_give_the_same_mesh(self, lin14):
        grid = GridSpec.from_ranges((-1.0, 1.0), (0.5, 2.0), (3, 4))
        serial = MeshManager.sample_grid(lin14, grid, workers=1)
        threaded = MeshManager.sample_grid(lin14, grid, workers=3)
        assert MeshManager.to_csv(serial) == MeshManager.to_csv(threaded)

    def test_vertex_at_the_apex_is_marked_degenerate(self, lin14):
        grid = GridSpec.from_ranges((0.0, 1.0), (-1.0, 1.0), (2, 5))
        mesh = MeshManager.sample_grid(lin14, grid)
        assert mesh.degenerate_count == 2
        apex = mesh.vertex(0, 2)
        assert apex.degenerate and apex.K is None and apex.H2 is None
        faces = [line for line in MeshManager.to_obj(mesh).splitlines() if line.startswith("f ")]
        assert faces == ["f 1 6 7 2", "f 4 9 10 5"]

    def test_s_range_must_stay_in_the_domain(self):
        curve = curve_from_expressions("s,0,0,2*s", domain=(0.5, 3.0))
        spec = make_surface_spec("14", curve)
        grid = GridSpec.from_ranges((0.0, 1.0), (0.1, 1.0), (2, 2))
        with pytest.raises(DomainViolation):
            MeshManager.sample_grid(spec, grid)


class TestExport:
    @pytest.fixture
    def mesh(self, still_lin14):
        grid = GridSpec.from_ranges((0.0, 1.0), (1.0, 2.0), (3, 3))
        return MeshManager.sample_grid(still_lin14, grid, with_curvature=False)

    def test_csv_rows(self, mesh):
        rows = list(csv.reader(io.StringIO(MeshManager.to_csv(mesh))))
        assert rows[0] == CSV_HEADER
        assert len(rows) == 10
        assert rows[2] == ["0", "1.5", "1.5", "0", "0", "3", "", ""]

    def test_csv_is_deterministic(self, mesh, still_lin14):
        again = MeshManager.sample_grid(still_lin14, mesh.grid, with_curvature=False)
        assert MeshManager.to_csv(mesh) == MeshManager.to_csv(again)

    def test_json_keeps_full_precision(self, lin14):
        grid = GridSpec.from_ranges((-0.7, 0.9), (0.3, 1.9), (3, 3))
        mesh = MeshManager.sample_grid(lin14, grid)
        payload = json.loads(MeshManager.to_json(mesh))
        assert payload["provenance"]["pair"] == "14"
        assert payload["provenance"]["grid"]["nt"] == 3
        for vertex, row in zip(mesh.flat(), payload["vertices"]):
            assert row["position"] == [float(x) for x in vertex.position]
            assert row["K"] == vertex.K

    def test_obj_vertices_and_faces(self, mesh):
        lines = MeshManager.to_obj(mesh).splitlines()
        assert sum(1 for line in lines if line.startswith("v ")) == 9
        assert [line for line in lines if line.startswith("f ")] == [
            "f 1 4 5 2", "f 2 5 6 3", "f 4 7 8 5", "f 5 8 9 6"]

    def test_obj_projection_picks_coordinates(self, mesh):
        lines = MeshManager.to_obj(mesh, (4, 2, 1)).splitlines()
        assert lines[0] == "v 2 0 1"
        assert MeshManager.to_obj(mesh).splitlines()[0] == "v 1 0 2"

    @pytest.mark.parametrize("projection", [(1, 2), (1, 1, 2), (0, 1, 2), (1, 2, 5)])
    def test_bad_projection(self, mesh, projection):
        with pytest.raises(BadProjection):
            MeshManager.to_obj(mesh, projection)

    def test_export_dispatches_by_format(self, mesh):
        assert MeshManager.export(mesh, "csv") == MeshManager.to_csv(mesh)
        assert MeshManager.export(mesh, "json") == MeshManager.to_json(mesh)
        assert MeshManager.export(mesh, "obj", (2, 3, 4)) == MeshManager.to_obj(mesh, (2, 3, 4))

    def test_unknown_format(self, mesh):
        with pytest.raises(ValueError):
            MeshManager.export(mesh, "stl")
