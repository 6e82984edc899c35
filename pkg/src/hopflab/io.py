"""File formats: potential CSV, path CSV blocks, deterministic JSON.

Potentials travel as two-column CSV (s, value) at uniform spacing under
the header line

    # L=<L> N=<N> left_slope=<a> right_slope=<b>

Paths use the same rows grouped into t-major blocks, one `# t=<t>` line
per slice.  Solution dumps pair a path CSV with a JSON sidecar carrying
{eps, residual, newton_iters, grid}.

JSON is emitted by a fixed-order serializer: dict insertion order is
kept, floats print with 17 significant digits, and no timestamps or
environment data enter the output, so identical inputs give
byte-identical reports.
"""

from __future__ import annotations

import re

import numpy as np

from .errors import GridMismatch
from .geometry import InvariantPotential, SGrid
from .solver import GeodesicSolution, SpacetimePath

__all__ = [
    "format_float",
    "dump_json",
    "write_json",
    "write_potential",
    "read_potential",
    "write_path",
    "read_path",
    "write_solution_dump",
]


def format_float(x: float) -> str:
    """Render one float with 17 significant digits (round-trip exact)."""
    return "%.17g" % float(x)


def _render(obj, out):
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(format_float(obj))
    elif isinstance(obj, str):
        # minimal escaping: keys and values here are plain ASCII
        out.append('"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"')
    elif isinstance(obj, dict):
        out.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                out.append(", ")
            _render(str(k), out)
            out.append(": ")
            _render(v, out)
        out.append("}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        out.append("[")
        seq = obj.tolist() if isinstance(obj, np.ndarray) else obj
        for i, v in enumerate(seq):
            if i:
                out.append(", ")
            _render(v, out)
        out.append("]")
    else:
        raise TypeError("cannot serialize %r" % type(obj))


def dump_json(obj) -> str:
    """Serialize to JSON text with fixed ordering and float formatting."""
    out = []
    _render(obj, out)
    return "".join(out)


def write_json(path, obj):
    with open(path, "w") as fh:
        fh.write(dump_json(obj))
        fh.write("\n")


_HEADER = re.compile(
    r"#\s*L=(?P<L>[^ ]+)\s+N=(?P<N>\d+)"
    r"\s+left_slope=(?P<a>[^ ]+)\s+right_slope=(?P<b>[^ ]+)\s*$"
)


def write_potential(path, phi: InvariantPotential):
    """Write one potential as two-column CSV with the grid header."""
    g = phi.grid
    with open(path, "w") as fh:
        fh.write("# L=%s N=%d left_slope=%s right_slope=%s\n" % (
            format_float(g.L), g.N,
            format_float(phi.left_slope), format_float(phi.right_slope)))
        for s, v in zip(g.nodes, phi.values):
            fh.write("%s,%s\n" % (format_float(s), format_float(v)))


def read_potential(path) -> InvariantPotential:
    """Read a potential CSV; the header defines the grid.

    Raises
    ------
    ValueError
        On a malformed header or wrong row count.
    GridMismatch
        When the s column disagrees with the header's uniform grid.
    """
    with open(path) as fh:
        header = fh.readline()
        m = _HEADER.match(header.strip())
        if not m:
            raise ValueError("missing or malformed potential header in %s" % path)
        L = float(m.group("L"))
        N = int(m.group("N"))
        a = float(m.group("a"))
        b = float(m.group("b"))
        rows = np.loadtxt(fh, delimiter=",", ndmin=2)
    if rows.shape != (N, 2):
        raise ValueError("expected %d rows of (s, value), got shape %s" % (N, rows.shape))
    grid = SGrid(L=L, N=N)
    if np.max(np.abs(rows[:, 0] - grid.nodes)) > 1e-8 * max(1.0, L):
        raise GridMismatch("s column does not match the header grid")
    return InvariantPotential(grid=grid, values=rows[:, 1],
                              left_slope=a, right_slope=b)


def write_path(path, spath: SpacetimePath):
    """Write a spacetime path as t-major CSV blocks."""
    g = spath.grid
    with open(path, "w") as fh:
        fh.write("# L=%s N=%d tcount=%d\n" % (format_float(g.L), g.N, spath.tcount))
        for j, t in enumerate(spath.times):
            fh.write("# t=%s\n" % format_float(t))
            for s, v in zip(g.nodes, spath.values[j]):
                fh.write("%s,%s\n" % (format_float(s), format_float(v)))


def read_path(path) -> SpacetimePath:
    """Read a t-major path CSV back into a SpacetimePath."""
    with open(path) as fh:
        header = fh.readline().strip()
        m = re.match(r"#\s*L=([^ ]+)\s+N=(\d+)\s+tcount=(\d+)\s*$", header)
        if not m:
            raise ValueError("missing or malformed path header in %s" % path)
        L = float(m.group(1))
        N = int(m.group(2))
        tcount = int(m.group(3))
        values = np.empty((tcount, N))
        for j in range(tcount):
            tline = fh.readline().strip()
            if not tline.startswith("# t="):
                raise ValueError("expected '# t=' block %d in %s" % (j, path))
            block = [fh.readline() for _ in range(N)]
            rows = np.loadtxt(block, delimiter=",", ndmin=2)
            if rows.shape != (N, 2):
                raise ValueError("block %d has shape %s" % (j, rows.shape))
            values[j] = rows[:, 1]
    grid = SGrid(L=L, N=N)
    return SpacetimePath(grid=grid, tcount=tcount, values=values)


def write_solution_dump(csv_path, json_path, sol: GeodesicSolution):
    """Write one continuation stage: path CSV plus its JSON sidecar."""
    write_path(csv_path, sol.path)
    g = sol.path.grid
    write_json(json_path, {
        "eps": sol.eps,
        "residual": sol.residual,
        "newton_iters": sol.newton_iters,
        "grid": {"L": g.L, "N": g.N, "tcount": sol.path.tcount},
    })
