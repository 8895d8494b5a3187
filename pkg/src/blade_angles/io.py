"""Input documents and deterministic report formatting for the command line.

Input document (JSON)::

    {
      "dim": 4,
      "a": [[1, 0, 0, 0], [0, 1, 0, 0]],
      "b": [[0, 0, 1, 0], [0, 1, 0, 1]],
      "a_scale": 1.0,
      "b_scale": 1.0,
      "options": {"eps": 1e-9, "seed": 0}
    }

Each blade is ``scale`` times the exterior product of its rows, so the rows
need not be orthonormal.  ``dim``, the scales and ``options`` are
optional.  CSV mode takes two files whose rows are the vectors.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .algebra import MAX_DIM, Multivector, algebra, scalar_product, vectors_product, vectors_to_blade
from .blades import Blade, orthonormalize
from .errors import BladeAnglesError, RankDeficientError, ZeroBladeError


class InputError(BladeAnglesError, ValueError):
    """The input document is malformed (maps to exit code 2)."""


@dataclass(frozen=True)
class InputDocument:
    dim: int
    a_frame: tuple[tuple[float, ...], ...]
    b_frame: tuple[tuple[float, ...], ...]
    a_scale: float = 1.0
    b_scale: float = 1.0
    options: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "dim": self.dim,
            "a": [list(v) for v in self.a_frame],
            "b": [list(v) for v in self.b_frame],
            "a_scale": self.a_scale,
            "b_scale": self.b_scale,
        }
        if self.options:
            out["options"] = dict(self.options)
        return out

    def blades(self) -> tuple[Blade, Blade]:
        """Build both blades; raises RankDeficientError for dependent rows."""
        return _blade(self.a_frame, self.dim, self.a_scale), _blade(self.b_frame, self.dim, self.b_scale)


def _blade(rows, n: int, scale: float) -> Blade:
    vecs = np.array(rows, dtype=float).reshape(-1, n)
    if scale == 0.0:
        raise ZeroBladeError("blade scale is zero")
    frame = orthonormalize(vecs)
    alg = algebra(n)
    mv = vectors_to_blade(vecs, alg) * scale
    unit = vectors_product(frame, alg)
    s = scalar_product(~unit, mv)
    if abs(s) == 0.0:
        raise RankDeficientError("blade vanishes")
    return Blade(mv, len(vecs), abs(s), frame, s)


def _number(x, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise InputError(f"{where}: expected a number, got {x!r}")
    v = float(x)
    if not math.isfinite(v):
        raise InputError(f"{where}: non-finite value")
    return v


def _frame(rows, name: str, dim: int | None) -> tuple[tuple[float, ...], ...]:
    if not isinstance(rows, list) or not rows:
        raise InputError(f"'{name}' must be a non-empty list of vectors")
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise InputError(f"{name}[{i}] is not a list")
        out.append(tuple(_number(x, f"{name}[{i}]") for x in row))
    lengths = {len(r) for r in out}
    if len(lengths) != 1:
        raise InputError(f"vectors of '{name}' have different lengths {sorted(lengths)}")
    if dim is not None and lengths != {dim}:
        raise InputError(f"vectors of '{name}' have length {lengths.pop()}, expected dim={dim}")
    return tuple(out)


def parse_document(data: dict) -> InputDocument:
    if not isinstance(data, dict):
        raise InputError("input document must be a JSON object")
    unknown = set(data) - {"dim", "a", "b", "a_scale", "b_scale", "options"}
    if unknown:
        raise InputError(f"unknown keys {sorted(unknown)}")
    dim = data.get("dim")
    if dim is not None and (isinstance(dim, bool) or not isinstance(dim, int)):
        raise InputError("'dim' must be an integer")
    if "a" not in data or "b" not in data:
        raise InputError("document needs both 'a' and 'b'")
    a = _frame(data["a"], "a", dim)
    b = _frame(data["b"], "b", dim)
    n = dim if dim is not None else len(a[0])
    if len(a[0]) != len(b[0]):
        raise InputError("'a' and 'b' vectors have different lengths")
    if not 1 <= n <= MAX_DIM:
        raise InputError(f"dimension {n} outside 1..{MAX_DIM}")
    opts = data.get("options", {})
    if not isinstance(opts, dict):
        raise InputError("'options' must be an object")
    return InputDocument(
        n, a, b,
        _number(data.get("a_scale", 1.0), "a_scale"),
        _number(data.get("b_scale", 1.0), "b_scale"),
        dict(opts),
    )


def load_json(path: str | Path) -> InputDocument:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc
    return parse_document(data)


def _read_csv(path: str | Path) -> list[list[float]]:
    rows = []
    try:
        with open(path, newline="") as fh:
            for lineno, row in enumerate(csv.reader(fh), 1):
                cells = [c.strip() for c in row if c.strip()]
                if not cells or cells[0].startswith("#"):
                    continue
                try:
                    rows.append([float(c) for c in cells])
                except ValueError as exc:
                    raise InputError(f"{path}:{lineno}: {exc}") from exc
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return rows


def load_csv(path_a: str | Path, path_b: str | Path) -> InputDocument:
    return parse_document({"a": _read_csv(path_a), "b": _read_csv(path_b)})


# ------------------------------------------------------------------ output


def fmt_machine(x: float) -> str:
    """Shortest representation that round-trips the double exactly."""
    v = float(x)
    return "0.0" if v == 0.0 else repr(v)


def fmt_human(x: float) -> str:
    v = float(x)
    if abs(v) < 5e-16:
        v = 0.0
    return format(v, ".6g")


def to_json(obj, indent: int = 2, _level: int = 0) -> str:
    """Deterministic JSON; floats are written so that they round-trip exactly."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {to_json(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, str, np.number)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(to_json(v) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + to_json(v, indent, _level + 1) for v in obj) + "\n" + end + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        if not math.isfinite(obj):
            return json.dumps(str(obj))
        return fmt_machine(obj)
    return json.dumps(str(obj))


def mv_terms(m: Multivector, eps: float = 1e-14) -> list[list]:
    """Nonzero coefficients as ``[label, value]`` pairs in basis order."""
    tiny = eps * max(m.norm(), 1e-300)
    return [[label, float(c)] for label, c in m.terms() if abs(c) > tiny]


def mv_human(m: Multivector, eps: float = 1e-12) -> str:
    terms = mv_terms(m, eps)
    if not terms:
        return "0"
    parts = []
    for label, c in terms:
        s = fmt_human(abs(c)) + ("" if label == "1" else " " + label)
        parts.append(("- " if c < 0 else "+ ") + s)
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[1:]
