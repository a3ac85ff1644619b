"""JSON documents for systems and reports."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .ring import RingContext
from .system import FeedbackTransform, LinSys


class DocumentError(ValueError):
    pass


FIELDS = ("modulus", "n", "m", "A", "B", "label")


@dataclass(frozen=True)
class SystemDocument:
    modulus: int
    n: int
    m: int
    A: tuple
    B: tuple
    label: str | None = None

    @classmethod
    def from_dict(cls, raw) -> "SystemDocument":
        """Validate and reduce a parsed document.

        Raises :class:`DocumentError` for shape or type problems and
        ``NotSquarefreeError`` for a bad modulus.
        """
        if not isinstance(raw, dict):
            raise DocumentError("document must be a JSON object")
        missing = [k for k in ("modulus", "n", "m", "A", "B") if k not in raw]
        if missing:
            raise DocumentError(f"missing fields: {', '.join(missing)}")
        modulus, n, m = raw["modulus"], raw["n"], raw["m"]
        for name, v in (("modulus", modulus), ("n", n), ("m", m)):
            if not isinstance(v, int) or isinstance(v, bool):
                raise DocumentError(f"{name} must be an integer")
        if n < 1 or m < 0:
            raise DocumentError("need n >= 1 and m >= 0")
        RingContext(modulus)
        A = _matrix(raw["A"], n, n, "A", modulus)
        B = _matrix(raw["B"], n, m, "B", modulus)
        label = raw.get("label")
        if label is not None and not isinstance(label, str):
            raise DocumentError("label must be a string")
        return cls(modulus, n, m, A, B, label)

    def to_dict(self):
        out = {
            "modulus": self.modulus,
            "n": self.n,
            "m": self.m,
            "A": [list(r) for r in self.A],
            "B": [list(r) for r in self.B],
        }
        if self.label is not None:
            out["label"] = self.label
        return out

    def system(self) -> LinSys:
        ctx = RingContext(self.modulus)
        return LinSys.from_lists(self.A, self.B, ctx, self.m)

    @classmethod
    def from_system(cls, sys: LinSys, label: str | None = None) -> "SystemDocument":
        return cls(
            sys.ctx.modulus, sys.n, sys.m, sys.A.entries, sys.B.entries, label
        )


def _matrix(rows, r, c, name, modulus):
    if not isinstance(rows, list) or len(rows) != r:
        raise DocumentError(f"{name} must have {r} rows")
    out = []
    for row in rows:
        if not isinstance(row, list) or len(row) != c:
            raise DocumentError(f"every row of {name} must have {c} entries")
        for x in row:
            if not isinstance(x, int) or isinstance(x, bool):
                raise DocumentError(f"{name} entries must be integers")
        out.append(tuple(x % modulus for x in row))
    return tuple(out)


def loads(text: str) -> SystemDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from None
    return SystemDocument.from_dict(raw)


def load_example(name: str) -> SystemDocument:
    try:
        text = resources.files("regsys.data").joinpath(f"{name}.json").read_text()
    except FileNotFoundError:
        raise DocumentError(f"no bundled example named {name!r}") from None
    return loads(text)


def transform_dict(t: FeedbackTransform):
    return {"P": t.P.tolist(), "Q": t.Q.tolist(), "K": t.K.tolist()}


def dumps(obj) -> str:
    """JSON with one matrix row per line; key order is preserved."""
    return _render(obj, 0) + "\n"


def _render(obj, level):
    pad = "  " * (level + 1)
    end = "  " * level
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_render(v, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if all(not isinstance(x, (list, tuple, dict)) for x in obj):
            return json.dumps(list(obj))
        if all(isinstance(x, (list, tuple)) and
               all(not isinstance(y, (list, tuple, dict)) for y in x) for x in obj):
            rows = [f"{pad}{json.dumps(list(x))}" for x in obj]
            return "[\n" + ",\n".join(rows) + "\n" + end + "]"
        items = [f"{pad}{_render(x, level + 1)}" for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    return json.dumps(obj)
