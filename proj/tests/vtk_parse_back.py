#!/usr/bin/env python3
"""Runs a short channel demo and reads every VTK snapshot back.

Usage: vtk_parse_back.py <fpsi executable> <output directory>

Uses meshio when it is importable and a small legacy-ASCII reader otherwise.
"""

import math
import pathlib
import shutil
import subprocess
import sys


def read_legacy(path):
    tokens = path.read_text().split("\n")
    if not tokens[0].startswith("# vtk DataFile Version"):
        raise ValueError(f"{path}: bad header")
    if tokens[2].strip() != "ASCII" or tokens[3].strip() != "DATASET UNSTRUCTURED_GRID":
        raise ValueError(f"{path}: expected an ASCII unstructured grid")
    words = " ".join(tokens[4:]).split()
    pos = 0

    def take(n):
        nonlocal pos
        out = words[pos:pos + n]
        if len(out) != n:
            raise ValueError(f"{path}: truncated")
        pos += n
        return out

    kw, npts, _ = take(3)
    assert kw == "POINTS"
    npts = int(npts)
    points = [float(v) for v in take(3 * npts)]
    kw, ncells, size = take(3)
    assert kw == "CELLS"
    ncells, size = int(ncells), int(size)
    conn = [int(v) for v in take(size)]
    kw, ntypes = take(2)
    assert kw == "CELL_TYPES" and int(ntypes) == ncells
    types = [int(v) for v in take(ncells)]
    fields = {}
    if pos < len(words):
        kw, n = take(2)
        assert kw == "POINT_DATA" and int(n) == npts
        while pos < len(words):
            kind, name, _dtype = take(3)
            if kind == "SCALARS":
                comps = int(take(1)[0])
                kw, _table = take(2)
                assert kw == "LOOKUP_TABLE"
            elif kind == "VECTORS":
                comps = 3
            else:
                raise ValueError(f"{path}: unexpected section {kind}")
            fields[name] = [float(v) for v in take(comps * npts)]
    cells = []
    i = 0
    while i < len(conn):
        k = conn[i]
        cells.append(conn[i + 1:i + 1 + k])
        i += 1 + k
    return points, cells, types, fields


def check(path):
    try:
        import meshio  # noqa: F401
        m = meshio.read(path)
        npts = len(m.points)
        tri = sum(len(b.data) for b in m.cells if b.type == "triangle")
        fields = {k: v.ravel().tolist() for k, v in m.point_data.items()}
        assert tri > 0 and tri == sum(len(b.data) for b in m.cells)
    except ImportError:
        points, cells, types, fields = read_legacy(path)
        npts = len(points) // 3
        assert all(t == 5 for t in types), "non-triangle cell"
        assert all(len(c) == 3 and all(0 <= v < npts for v in c) for c in cells)
        assert all(math.isfinite(v) for v in points)
    for name, values in fields.items():
        assert all(math.isfinite(v) for v in values), f"{path}: non-finite {name}"
    return npts, sorted(fields)


def main():
    cli, out = sys.argv[1], pathlib.Path(sys.argv[2])
    shutil.rmtree(out, ignore_errors=True)
    subprocess.run([cli, "demo-channel", "--T", "0.003", "--snapshot-every", "2", "--out", str(out)],
                   check=True)
    files = sorted(out.glob("*.vtk"))
    # Steps 0, 2 and the final step 3, one fluid and one solid file each.
    expected = {f"{side}_{step:06d}.vtk" for side in ("fluid", "solid") for step in (0, 2, 3)}
    names = {f.name for f in files}
    if names != expected:
        print(f"unexpected snapshot set: {sorted(names)}")
        return 1
    for f in files:
        npts, fields = check(f)
        want = ["displacement", "pressure", "velocity"] if f.name.startswith("fluid") else \
            ["darcy_pressure", "displacement", "velocity"]
        if fields != want:
            print(f"{f.name}: fields {fields}, expected {want}")
            return 1
        print(f"{f.name}: {npts} points, fields {', '.join(fields)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
