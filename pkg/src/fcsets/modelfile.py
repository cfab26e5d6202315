"""Model files: a small JSON dialect for fusion-ring data.

Grammar (``format_version`` 1), a single top-level JSON object:

``format_version``  required, the integer 1
``name``            required, string
``n``               required, number of primaries (>= 1); index 0 is the vacuum
``fusion``          required, list of ``[p, q, r, N]`` with ``N = N_pq^r > 0``;
                    commutativity is implied, so each unordered pair is listed
                    once (``p <= q`` after normalisation); missing entries are 0
``labels``          optional, ``n`` distinct strings
``smatrix``         optional, ``n`` rows of ``n`` ``[re, im]`` pairs
``weights``         optional, ``n`` conformal weights as strings ``"a/b"`` or ints
``metadata``        optional, free-form object

Field order is irrelevant and unknown keys are rejected.  Axioms (unit,
associativity, ...) are not checked here; :func:`ModelFile.to_ring` hands
the data to :func:`fcsets.ring.validate_ring`.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Any, Optional

import numpy as np

from .errors import DuplicateEntry, ModelRangeError, ModelSyntaxError
from .ring import DEFAULT_TOL, FusionRing, validate_ring

FORMAT_VERSION = 1
REQUIRED = ("format_version", "name", "n", "fusion")
OPTIONAL = ("labels", "smatrix", "weights", "metadata")

BUNDLED = (
    "trivial",
    "ising",
    "fibonacci",
    "z2",
    "z3",
    "z4",
    "toric",
    "rep_s3",
    "double_s3_like",
)


@dataclass(frozen=True)
class ModelFile:
    name: str
    n: int
    fusion: tuple[tuple[int, int, int, int], ...]
    labels: Optional[tuple[str, ...]] = None
    smatrix: Optional[tuple[tuple[complex, ...], ...]] = None
    weights: Optional[tuple[Fraction, ...]] = None
    metadata: dict = field(default_factory=dict)
    format_version: int = FORMAT_VERSION

    def fusion_tensor(self) -> np.ndarray:
        N = np.zeros((self.n,) * 3, dtype=np.int64)
        for p, q, r, m in self.fusion:
            N[p, q, r] = m
            N[q, p, r] = m
        return N

    def to_ring(self, *, tol: float = DEFAULT_TOL, seed: int = 0) -> FusionRing:
        return validate_ring(
            self.fusion_tensor(),
            smatrix=None if self.smatrix is None else np.array(self.smatrix, dtype=complex),
            weights=self.weights,
            labels=self.labels,
            name=self.name,
            tol=tol,
            seed=seed,
        )


def _line_of(text: str, key: str) -> int:
    m = re.search(r'"%s"\s*:' % re.escape(key), text)
    return text.count("\n", 0, m.start()) + 1 if m else 0


class _Context:
    def __init__(self, text: str):
        self.text = text

    def fail(self, exc_type, key: str, path: str, msg: str):
        line = _line_of(self.text, key)
        where = f"line {line}, field {path}" if line else f"field {path}"
        return exc_type(f"{where}: {msg}")


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def parse_model(text: str) -> ModelFile:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelSyntaxError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    ctx = _Context(text)
    if not isinstance(raw, dict):
        raise ModelSyntaxError("line 1: top level must be an object")
    for key in raw:
        if key not in REQUIRED + OPTIONAL:
            raise ctx.fail(ModelSyntaxError, key, key, "unknown key")
    for key in REQUIRED:
        if key not in raw:
            raise ModelSyntaxError(f"missing required field {key!r}")

    if raw["format_version"] != FORMAT_VERSION:
        raise ctx.fail(ModelSyntaxError, "format_version", "format_version",
                       f"unsupported version {raw['format_version']!r}")
    name = raw["name"]
    if not isinstance(name, str):
        raise ctx.fail(ModelSyntaxError, "name", "name", "must be a string")
    n = raw["n"]
    if not _is_int(n):
        raise ctx.fail(ModelSyntaxError, "n", "n", "must be an integer")
    if n < 1:
        raise ctx.fail(ModelRangeError, "n", "n", "must be at least 1")

    fusion = _parse_fusion(ctx, raw["fusion"], n)
    labels = _parse_labels(ctx, raw["labels"], n) if "labels" in raw else None
    smatrix = _parse_smatrix(ctx, raw["smatrix"], n) if "smatrix" in raw else None
    weights = _parse_weights(ctx, raw["weights"], n) if "weights" in raw else None
    metadata = raw.get("metadata", {})
    if not isinstance(metadata, dict):
        raise ctx.fail(ModelSyntaxError, "metadata", "metadata", "must be an object")
    return ModelFile(name, n, fusion, labels, smatrix, weights, metadata)


def _parse_fusion(ctx, entries, n):
    if not isinstance(entries, list):
        raise ctx.fail(ModelSyntaxError, "fusion", "fusion", "must be a list")
    seen: dict[tuple[int, int, int], int] = {}
    out = []
    for i, e in enumerate(entries):
        path = f"fusion[{i}]"
        if not (isinstance(e, list) and len(e) == 4 and all(_is_int(x) for x in e)):
            raise ctx.fail(ModelSyntaxError, "fusion", path, f"expected [p, q, r, N], got {e!r}")
        p, q, r, m = e
        for x in (p, q, r):
            if not 0 <= x < n:
                raise ctx.fail(ModelRangeError, "fusion", path, f"index {x} out of range [0, {n})")
        if m <= 0:
            raise ctx.fail(ModelRangeError, "fusion", path, f"multiplicity {m} must be positive")
        key = (min(p, q), max(p, q), r)
        if key in seen:
            raise ctx.fail(DuplicateEntry, "fusion", path,
                           f"N[{key[0]}][{key[1]}][{r}] already given in fusion[{seen[key]}]")
        seen[key] = i
        out.append((*key, m))
    return tuple(sorted(out))


def _parse_labels(ctx, labels, n):
    if not (isinstance(labels, list) and all(isinstance(x, str) for x in labels)):
        raise ctx.fail(ModelSyntaxError, "labels", "labels", "must be a list of strings")
    if len(labels) != n:
        raise ctx.fail(ModelRangeError, "labels", "labels", f"expected {n} labels, got {len(labels)}")
    if len(set(labels)) != n:
        raise ctx.fail(DuplicateEntry, "labels", "labels", "labels must be distinct")
    return tuple(labels)


def _parse_smatrix(ctx, rows, n):
    if not isinstance(rows, list) or len(rows) != n:
        raise ctx.fail(ModelRangeError, "smatrix", "smatrix", f"expected {n} rows")
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ctx.fail(ModelRangeError, "smatrix", f"smatrix[{i}]", f"expected {n} entries")
        vals = []
        for j, z in enumerate(row):
            ok = (isinstance(z, list) and len(z) == 2
                  and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in z))
            if not ok:
                raise ctx.fail(ModelSyntaxError, "smatrix", f"smatrix[{i}][{j}]",
                               f"expected [re, im], got {z!r}")
            vals.append(complex(z[0], z[1]))
        out.append(tuple(vals))
    return tuple(out)


def _parse_weights(ctx, weights, n):
    if not isinstance(weights, list) or len(weights) != n:
        raise ctx.fail(ModelRangeError, "weights", "weights", f"expected {n} weights")
    out = []
    for i, w in enumerate(weights):
        try:
            if _is_int(w):
                out.append(Fraction(w))
            elif isinstance(w, str) and re.fullmatch(r"\s*-?\d+(\s*/\s*\d+)?\s*", w):
                out.append(Fraction(w.replace(" ", "")))
            else:
                raise ValueError
        except (ValueError, ZeroDivisionError):
            raise ctx.fail(ModelSyntaxError, "weights", f"weights[{i}]",
                           f"expected a rational 'a/b', got {w!r}") from None
    return tuple(out)


def _num(x: float) -> str:
    if x == 0:
        return "0.0"
    return repr(float(x))


def serialize_model(model: ModelFile) -> str:
    """Canonical text: fixed key order, one fusion entry per line."""
    lines = ["{"]
    items: list[tuple[str, Any]] = [
        ("format_version", json.dumps(model.format_version)),
        ("name", json.dumps(model.name)),
        ("n", json.dumps(model.n)),
    ]
    if model.labels is not None:
        items.append(("labels", json.dumps(list(model.labels))))
    if model.weights is not None:
        items.append(("weights", json.dumps([str(w) for w in model.weights])))
    entries = ",\n".join(f"    [{p}, {q}, {r}, {m}]" for p, q, r, m in model.fusion)
    items.append(("fusion", "[\n" + entries + "\n  ]" if entries else "[]"))
    if model.smatrix is not None:
        rows = ",\n".join(
            "    [" + ", ".join(f"[{_num(z.real)}, {_num(z.imag)}]" for z in row) + "]"
            for row in model.smatrix)
        items.append(("smatrix", "[\n" + rows + "\n  ]"))
    if model.metadata:
        items.append(("metadata", json.dumps(model.metadata, sort_keys=True)))
    lines.append(",\n".join(f'  "{k}": {v}' for k, v in items))
    lines.append("}")
    return "\n".join(lines) + "\n"


def model_from_ring_data(name, fusion, *, labels=None, smatrix=None, weights=None,
                         metadata=None) -> ModelFile:
    """Build a canonical :class:`ModelFile` from a dense fusion tensor."""
    N = np.asarray(fusion, dtype=np.int64)
    n = N.shape[0]
    entries = tuple(
        (p, q, r, int(N[p, q, r]))
        for p in range(n) for q in range(p, n) for r in range(n) if N[p, q, r])
    S = None
    if smatrix is not None:
        S = tuple(tuple(complex(z) for z in row) for row in np.asarray(smatrix, dtype=complex))
    w = None if weights is None else tuple(Fraction(x) for x in weights)
    return ModelFile(name, n, entries, None if labels is None else tuple(labels), S, w,
                     dict(metadata or {}))


def bundled_text(name: str) -> str:
    if name not in BUNDLED:
        raise KeyError(f"no bundled model named {name!r}; available: {', '.join(BUNDLED)}")
    return resources.files("fcsets").joinpath("models", f"{name}.json").read_text("utf-8")


def load_bundled(name: str) -> ModelFile:
    return parse_model(bundled_text(name))


def bundled_models() -> list[ModelFile]:
    return [load_bundled(name) for name in BUNDLED]


def load_model(spec: str) -> ModelFile:
    """A bundled model name or a path to a model file."""
    if spec in BUNDLED:
        return load_bundled(spec)
    with open(spec, encoding="utf-8") as fh:
        return parse_model(fh.read())
