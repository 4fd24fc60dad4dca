"""
Grid sampling and mesh export for rotsurf
"""
import csv
import io
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from config import DEFAULT_PROJECTION, GRID_WORKERS
from errors import BadGrid, BadProjection, DegenerateSurface, DomainViolation
from rotational_surfaces import SurfaceSpec, curvature_report, surface_point
from utils import format_number

logger = logging.getLogger(__name__)

EXPORT_FORMATS = ("csv", "json", "obj")
CSV_HEADER = ["t", "s", "x1", "x2", "x3", "x4", "K", "H2"]


@dataclass(frozen=True)
class GridSpec:
    t_min: float
    t_max: float
    s_min: float
    s_max: float
    nt: int
    ns: int

    def __post_init__(self):
        if self.nt < 2 or self.ns < 2:
            raise BadGrid(f"Grid needs nt, ns >= 2, got {self.nt}x{self.ns}")
        if not self.t_min < self.t_max:
            raise BadGrid(f"Empty t range [{self.t_min}, {self.t_max}]")
        if not self.s_min < self.s_max:
            raise BadGrid(f"Empty s range [{self.s_min}, {self.s_max}]")

    @classmethod
    def from_ranges(cls, trange: Tuple[float, float], srange: Tuple[float, float],
                    shape: Tuple[int, int]) -> "GridSpec":
        return cls(trange[0], trange[1], srange[0], srange[1], shape[0], shape[1])

    def t_values(self) -> np.ndarray:
        return np.linspace(self.t_min, self.t_max, self.nt)

    def s_values(self) -> np.ndarray:
        return np.linspace(self.s_min, self.s_max, self.ns)

    def to_dict(self) -> Dict[str, float]:
        return {"t_min": self.t_min, "t_max": self.t_max, "s_min": self.s_min,
                "s_max": self.s_max, "nt": self.nt, "ns": self.ns}


@dataclass(frozen=True)
class Vertex:
    t: float
    s: float
    position: np.ndarray
    K: Optional[float] = None
    H2: Optional[float] = None
    degenerate: bool = False


@dataclass(frozen=True)
class MeshGrid:
    spec: SurfaceSpec
    grid: GridSpec
    vertices: List[List[Vertex]]
    with_curvature: bool

    def vertex(self, i: int, j: int) -> Vertex:
        return self.vertices[i][j]

    def flat(self) -> List[Vertex]:
        """Row-major by (t index, s index)"""
        return [v for row in self.vertices for v in row]

    @property
    def degenerate_count(self) -> int:
        return sum(1 for v in self.flat() if v.degenerate)

    def provenance(self) -> Dict[str, object]:
        info = self.spec.provenance()
        info["grid"] = self.grid.to_dict()
        info["with_curvature"] = self.with_curvature
        return info


def _optional(value: Optional[float]) -> str:
    return "" if value is None else format_number(value)


class MeshManager:
    @staticmethod
    def sample_vertex(spec: SurfaceSpec, t: float, s: float, with_curvature: bool) -> Vertex:
        position = surface_point(spec, t, s)
        if not with_curvature:
            return Vertex(float(t), float(s), position)
        try:
            report = curvature_report(spec, t, s)
        except DegenerateSurface as e:
            logger.warning(f"Degenerate point (t, s) = ({t:.6g}, {s:.6g}): {e}")
            return Vertex(float(t), float(s), position, degenerate=True)
        return Vertex(float(t), float(s), position, report.K_oracle, report.H_normsq)

    @staticmethod
    def sample_grid(spec: SurfaceSpec, grid: GridSpec, with_curvature: bool = True,
                    workers: int = GRID_WORKERS) -> MeshGrid:
        """Uniform sampling including both endpoints of each range"""
        if not (spec.curve.contains(grid.s_min) and spec.curve.contains(grid.s_max)):
            raise DomainViolation(
                f"s range [{grid.s_min}, {grid.s_max}] not inside curve domain {spec.curve.domain}")

        points = [(t, s) for t in grid.t_values() for s in grid.s_values()]

        def evaluate(point):
            return MeshManager.sample_vertex(spec, point[0], point[1], with_curvature)

        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                flat = list(pool.map(evaluate, points))
        else:
            flat = [evaluate(p) for p in points]

        vertices = [flat[i * grid.ns:(i + 1) * grid.ns] for i in range(grid.nt)]
        mesh = MeshGrid(spec, grid, vertices, with_curvature)
        logger.info(f"Sampled {grid.nt}x{grid.ns} grid on pair {spec.pair.value} "
                    f"({mesh.degenerate_count} degenerate)")
        return mesh

    @staticmethod
    def to_csv(mesh: MeshGrid) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for v in mesh.flat():
            writer.writerow([format_number(v.t), format_number(v.s),
                             *(format_number(x) for x in v.position),
                             _optional(v.K), _optional(v.H2)])
        return buffer.getvalue()

    @staticmethod
    def to_json(mesh: MeshGrid) -> str:
        payload = {
            "provenance": mesh.provenance(),
            "vertices": [
                {"t": v.t, "s": v.s, "position": [float(x) for x in v.position],
                 "K": v.K, "H2": v.H2}
                for v in mesh.flat()
            ],
        }
        return json.dumps(payload, indent=2) + "\n"

    @staticmethod
    def validate_projection(projection: Sequence[int]) -> Tuple[int, int, int]:
        projection = tuple(int(i) for i in projection)
        if len(projection) != 3 or len(set(projection)) != 3 or not all(1 <= i <= 4 for i in projection):
            raise BadProjection(f"Projection {projection} must be 3 distinct indices from 1..4")
        return projection

    @staticmethod
    def to_obj(mesh: MeshGrid, projection: Sequence[int] = DEFAULT_PROJECTION) -> str:
        """Vertices projected to 3 coordinates, quads skipping degenerate corners"""
        columns = [i - 1 for i in MeshManager.validate_projection(projection)]
        lines = []
        for v in mesh.flat():
            lines.append("v " + " ".join(format_number(v.position[c]) for c in columns))
        ns = mesh.grid.ns
        for i in range(mesh.grid.nt - 1):
            for j in range(ns - 1):
                corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)]
                if any(mesh.vertex(a, b).degenerate for a, b in corners):
                    continue
                lines.append("f " + " ".join(str(a * ns + b + 1) for a, b in corners))
        return "\n".join(lines) + "\n"

    @staticmethod
    def export(mesh: MeshGrid, fmt: str, projection: Sequence[int] = DEFAULT_PROJECTION) -> str:
        """Render the mesh in one of EXPORT_FORMATS"""
        if fmt == "csv":
            return MeshManager.to_csv(mesh)
        if fmt == "json":
            return MeshManager.to_json(mesh)
        if fmt == "obj":
            return MeshManager.to_obj(mesh, projection)
        raise ValueError(f"Unknown export format {fmt!r}; use one of {', '.join(EXPORT_FORMATS)}")
