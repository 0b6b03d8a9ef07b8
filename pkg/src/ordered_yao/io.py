"""Point-set and graph file formats: JSON, CSV, DOT and SVG."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

from .geometry import PointSet
from .yao import OrderedYaoGraph

POINT_FORMATS = ("json", "csv")
GRAPH_FORMATS = ("json", "dot", "svg")


def pointset_to_dict(ps: PointSet) -> dict:
    data = {"k": ps.k, "rotation": ps.params.rotation,
            "points": [[p.x, p.y] for p in ps]}
    meta = {k: v for k, v in ps.meta.items() if k not in data}
    if meta:
        data["meta"] = meta
    return data


def pointset_from_dict(data: dict) -> PointSet:
    return PointSet.from_coords(data["points"], int(data["k"]),
                                float(data.get("rotation", 0.0)), **data.get("meta", {}))


def dumps_pointset(ps: PointSet, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(pointset_to_dict(ps), indent=1)
    if fmt == "csv":
        buf = io.StringIO()
        buf.write(f"# k={ps.k}\n")
        if ps.params.rotation:
            buf.write(f"# rotation={ps.params.rotation!r}\n")
        for key in ("construction", "seed"):
            if key in ps.meta:
                buf.write(f"# {key}={ps.meta[key]}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "y"])
        for p in ps:
            w.writerow([repr(p.x), repr(p.y)])
        return buf.getvalue()
    raise ValueError(f"unknown point-set format {fmt!r}")


def loads_pointset(text: str, fmt: str | None = None, k: int | None = None) -> PointSet:
    if fmt is None:
        fmt = "json" if text.lstrip().startswith("{") else "csv"
    if fmt == "json":
        data = json.loads(text)
        if k is not None:
            data["k"] = k
        return pointset_from_dict(data)
    if fmt != "csv":
        raise ValueError(f"unknown point-set format {fmt!r}")
    header: dict[str, str] = {}
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, val = line[1:].strip().partition("=")
            header[key.strip()] = val.strip()
            continue
        rows.append(line)
    coords = [(float(r[0]), float(r[1])) for r in csv.reader(rows) if r[0] != "x"]
    kk = k if k is not None else int(header.get("k", 0))
    if not kk:
        raise ValueError("CSV input has no '# k=' header; pass k explicitly")
    meta = {key: header[key] for key in ("construction", "seed") if key in header}
    return PointSet.from_coords(coords, kk, float(header.get("rotation", 0.0)), **meta)


def read_pointset(path: str | Path, k: int | None = None) -> PointSet:
    path = Path(path)
    fmt = "csv" if path.suffix.lower() == ".csv" else None
    return loads_pointset(path.read_text(), fmt, k)


def write_text(path: str | Path | None, text: str) -> None:
    if path is None or str(path) == "-":
        print(text, end="" if text.endswith("\n") else "\n")
    else:
        Path(path).write_text(text)


def svg(ps: PointSet, g: OrderedYaoGraph | None = None, size: int = 480) -> str:
    """Render points (and optionally edges) as a standalone SVG document."""
    xy = ps.coords()
    if len(xy):
        lo, hi = xy.min(axis=0), xy.max(axis=0)
    else:
        lo = hi = [0.0, 0.0]
    span = max(hi[0] - lo[0], hi[1] - lo[1], 1e-12)
    pad = 24
    scale = (size - 2 * pad) / span

    def tx(x, y):
        return pad + (x - lo[0]) * scale, size - pad - (y - lo[1]) * scale

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">',
           '<defs><marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" '
           'markerWidth="6" markerHeight="6" orient="auto-start-reverse">'
           '<path d="M 0 0 L 10 5 L 0 10 z" fill="#555"/></marker></defs>',
           '<rect width="100%" height="100%" fill="white"/>']
    if g is not None:
        for u, v, s in g.edges():
            x1, y1 = tx(*xy[u])
            x2, y2 = tx(*xy[v])
            d = math.hypot(x2 - x1, y2 - y1) or 1.0
            # stop short of the target disc
            x2s, y2s = x2 - 4 * (x2 - x1) / d, y2 - 4 * (y2 - y1) / d
            out.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2s:.2f}" y2="{y2s:.2f}" '
                       f'stroke="#555" stroke-width="1" marker-end="url(#arrow)">'
                       f'<title>{u}-&gt;{v} sector {s}</title></line>')
    for i, (x, y) in enumerate(xy):
        cx, cy = tx(x, y)
        out.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="3" fill="black"/>')
        out.append(f'<text x="{cx + 4:.2f}" y="{cy - 4:.2f}" font-size="10">{i}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
