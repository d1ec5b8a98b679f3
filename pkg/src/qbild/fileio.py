"""Matrix files, CSV/JSON/SVG writers.

Matrix files are JSON::

    {"name": "optional", "n": 2, "entries": [[[1, 0], [0, 1]], [[0, 0], [1, 0]]]}

Each entry is ``[re, im]``, ``[w, x, y, z]`` or a string such as ``"1-2i"``;
the arity must be uniform.  A plain text file with one row per line and
whitespace separated ``a+bi`` entries is accepted too.
"""
from __future__ import annotations

import csv
import io
import json
import os
import re
import tempfile
from dataclasses import dataclass
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from .errors import NotComplex, ParseError
from .geometry import ConvexRegion
from .quat import QMatrix

_COMPLEX_RE = re.compile(
    r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*(?:([+-])\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*[ij])?\s*$"
)


def parse_complex(s: str) -> complex:
    """Parse ``"a+bi"``, ``"-2i"``, ``"3"``, ``"i"``; ``j`` is accepted for ``i``."""
    t = s.strip().replace("−", "-")
    if not t:
        raise ValueError("empty entry")
    # a lone imaginary term such as "2i" or "-i"
    m = re.fullmatch(r"([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?[ij]", t)
    if m:
        sign = -1.0 if m.group(1) == "-" else 1.0
        return complex(0.0, sign * float(m.group(2) or 1.0))
    m = _COMPLEX_RE.match(t)
    if not m or (m.group(1) is None and m.group(2) is None):
        raise ValueError(f"not a complex number: {s!r}")
    re_part = float(m.group(1)) if m.group(1) is not None else 0.0
    im_part = 0.0
    if m.group(2) is not None:
        im_part = float(m.group(3) or 1.0) * (-1.0 if m.group(2) == "-" else 1.0)
    return complex(re_part, im_part)


@dataclass(frozen=True, eq=False)
class MatrixFile:
    n: int
    matrix: QMatrix
    arity: int
    name: str | None = None

    def complex(self) -> np.ndarray:
        """The complex matrix; 4-tuple files must have vanishing ``j, k`` parts."""
        if not self.matrix.is_complex():
            raise NotComplex("matrix file has quaternionic entries with nonzero j/k parts")
        return self.matrix.to_complex()

    def to_dict(self) -> dict:
        d = self.matrix.data
        if self.arity == 2:
            entries = [[[float(d[r, c, 0]), float(d[r, c, 1])] for c in range(self.n)] for r in range(self.n)]
        else:
            entries = [[[float(v) for v in d[r, c]] for c in range(self.n)] for r in range(self.n)]
        out = {"n": self.n, "entries": entries}
        if self.name is not None:
            out["name"] = self.name
        return out


def _locate(text: str, needle: str) -> tuple[int | None, int | None]:
    k = text.find(needle)
    if k < 0:
        return None, None
    line = text.count("\n", 0, k) + 1
    col = k - (text.rfind("\n", 0, k) + 1) + 1
    return line, col


def _entry(v, text: str, r: int, c: int) -> list:
    if isinstance(v, str):
        try:
            z = parse_complex(v)
        except ValueError as exc:
            line, col = _locate(text, json.dumps(v))
            raise ParseError(f"entry ({r}, {c}): {exc}", line, col) from None
        return [z.real, z.imag]
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return [float(v), 0.0]
    if isinstance(v, list) and len(v) in (2, 4) and all(isinstance(t, (int, float)) and not isinstance(t, bool) for t in v):
        return [float(t) for t in v]
    raise ParseError(f"entry ({r}, {c}) must be [re, im], [w, x, y, z] or a string, got {v!r}")


def parse_matrix_json(text: str) -> MatrixFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(doc, dict) or "entries" not in doc:
        raise ParseError("expected an object with an 'entries' field", 1, 1)
    rows = doc["entries"]
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ParseError("'entries' must be a nonempty list of rows")
    n = len(rows)
    if "n" in doc and doc["n"] != n:
        raise ParseError(f"'n' is {doc['n']!r} but entries has {n} rows")
    if any(len(r) != n for r in rows):
        raise ParseError(f"entries must be {n} x {n}")
    vals = [[_entry(v, text, r, c) for c, v in enumerate(row)] for r, row in enumerate(rows)]
    arities = {len(v) for row in vals for v in row}
    if len(arities) != 1:
        raise ParseError("mixed entry arity: use [re, im] or [w, x, y, z] throughout")
    arity = arities.pop()
    data = np.zeros((n, n, 4))
    data[..., :arity] = np.array(vals, dtype=float)
    name = doc.get("name")
    return MatrixFile(n, QMatrix(data), arity, None if name is None else str(name))


def parse_matrix_text(text: str) -> MatrixFile:
    """Rows of whitespace separated complex entries, ``#`` starts a comment."""
    rows = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        row = []
        for m in re.finditer(r"\S+", body):
            try:
                row.append(parse_complex(m.group()))
            except ValueError as exc:
                raise ParseError(str(exc), ln, m.start() + 1) from None
        rows.append((ln, row))
    if not rows:
        raise ParseError("no matrix rows found")
    n = len(rows)
    for ln, row in rows:
        if len(row) != n:
            raise ParseError(f"row has {len(row)} entries, expected {n}", ln, 1)
    A = np.array([row for _, row in rows], dtype=complex)
    return MatrixFile(n, QMatrix.from_complex(A), 2)


def parse_matrix(text: str) -> MatrixFile:
    if text.lstrip().startswith("{"):
        return parse_matrix_json(text)
    return parse_matrix_text(text)


def read_matrix(path) -> MatrixFile:
    return parse_matrix(Path(path).read_text())


def matrix_file(A, name: str | None = None) -> MatrixFile:
    """Wrap a complex array or ``QMatrix`` for writing."""
    if isinstance(A, QMatrix):
        return MatrixFile(A.n, A, 2 if A.is_complex() else 4, name)
    q = QMatrix.from_complex(A)
    return MatrixFile(q.n, q, 2, name)


# --------------------------------------------------------------------------
# writers


def write_atomic(path, text: str) -> Path:
    """Write via a temporary file in the target directory and rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def dumps_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def write_json(path, obj) -> Path:
    return write_atomic(path, dumps_json(obj))


def read_json(path):
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(float(v)) for v in row])
    return buf.getvalue()


def points_csv(points) -> str:
    pts = np.asarray(points, dtype=complex).reshape(-1)
    return csv_text(["re", "im"], zip(pts.real, pts.imag))


def write_points_csv(path, points) -> Path:
    return write_atomic(path, points_csv(points))


def read_points_csv(path) -> np.ndarray:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != ["re", "im"]:
        raise ParseError("expected a 're,im' header", 1, 1)
    vals = np.array([[float(a), float(b)] for a, b in rows[1:]]).reshape(-1, 2)
    return vals[:, 0] + 1j * vals[:, 1]


# --------------------------------------------------------------------------
# SVG


class SvgPlot:
    """Fixed 800x800 canvas; the view box is fitted to given points plus a 10% margin."""

    SIZE = 800

    def __init__(self, frame_points):
        pts = np.asarray(frame_points, dtype=complex).reshape(-1)
        if pts.size == 0:
            pts = np.array([0j])
        lo = complex(pts.real.min(), pts.imag.min())
        hi = complex(pts.real.max(), pts.imag.max())
        span = max(hi.real - lo.real, hi.imag - lo.imag, 1e-9)
        pad = 0.1 * span
        c = 0.5 * (lo + hi)
        half = 0.5 * span + pad
        self.x0, self.y0 = c.real - half, c.imag - half
        self.k = self.SIZE / (2 * half)
        self.items: list[str] = []
        self._axes()

    def xy(self, z: complex) -> tuple[float, float]:
        return (z.real - self.x0) * self.k, self.SIZE - (z.imag - self.y0) * self.k

    def _fmt(self, z: complex) -> str:
        x, y = self.xy(z)
        return f"{x:.2f},{y:.2f}"

    def _axes(self):
        x_axis_y = self.xy(0j)[1]
        y_axis_x = self.xy(0j)[0]
        self.items.append(f'<line x1="0" y1="{x_axis_y:.2f}" x2="{self.SIZE}" y2="{x_axis_y:.2f}" stroke="#999" stroke-width="1"/>')
        self.items.append(f'<line x1="{y_axis_x:.2f}" y1="0" x2="{y_axis_x:.2f}" y2="{self.SIZE}" stroke="#999" stroke-width="1"/>')

    def polygon(self, region: ConvexRegion, fill="none", stroke="#000", width=1.5, dash: str | None = None):
        v = region.vertices
        if len(v) == 0:
            return
        if len(v) == 1:
            self.points(v, r=3.0, fill=stroke)
            return
        d = f' stroke-dasharray="{dash}"' if dash else ""
        pts = " ".join(self._fmt(z) for z in v)
        tag = "polygon" if len(v) > 2 else "polyline"
        self.items.append(f'<{tag} points="{pts}" fill="{fill}" stroke="{stroke}" stroke-width="{width}"{d}/>')

    def points(self, pts, r=1.0, fill="#1f77b4"):
        for z in np.asarray(pts, dtype=complex).reshape(-1):
            x, y = self.xy(z)
            self.items.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{r}" fill="{fill}"/>')

    def tick(self, x: float, label: str, color="#d62728"):
        px, py = self.xy(complex(x, 0.0))
        self.items.append(f'<line x1="{px:.2f}" y1="{py - 8:.2f}" x2="{px:.2f}" y2="{py + 8:.2f}" stroke="{color}" stroke-width="2"/>')
        self.items.append(f'<text x="{px + 3:.2f}" y="{py + 20:.2f}" font-size="12" fill="{color}">{escape(label)}</text>')

    def text(self, s: str, x=10, y=20):
        self.items.append(f'<text x="{x}" y="{y}" font-size="14">{escape(s)}</text>')

    def render(self) -> str:
        body = "\n".join(self.items)
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.SIZE}" height="{self.SIZE}" '
            f'viewBox="0 0 {self.SIZE} {self.SIZE}">\n<rect width="100%" height="100%" fill="white"/>\n{body}\n</svg>\n'
        )


def bild_svg(b, title: str = "") -> str:
    """Inner polygon filled, outer outlined, band ticks, complex-range generators dashed."""
    plot = SvgPlot(np.concatenate([b.upper_outer.vertices, b.upper.vertices, [0j]]))
    for g in b.generators:
        plot.polygon(g, stroke="#2ca02c", width=1.0, dash="6,4")
    plot.polygon(b.upper, fill="#aec7e8", stroke="#1f77b4", width=1.0)
    plot.polygon(b.upper_outer, stroke="#000", width=1.0)
    band = b.v_band
    if band.v_min is not None:
        plot.tick(band.v_min, f"{band.v_min:.6g}")
        plot.tick(band.v_max, f"{band.v_max:.6g}")
    if title:
        plot.text(title)
    return plot.render()


def downsample(points, k: int = 5000) -> np.ndarray:
    pts = np.asarray(points).reshape(-1)
    if len(pts) <= k:
        return pts
    return pts[np.linspace(0, len(pts) - 1, k).astype(int)]
