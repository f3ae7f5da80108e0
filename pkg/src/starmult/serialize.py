"""JSON encodings for every value exchanged on the command line.

Rationals are strings ``"p/q"`` (or ``"p"``) in lowest terms; scalars are
records ``{"re": ..., "im": ...}``. Encoders are deterministic: terms are
emitted in a fixed order so identical values give identical text.
"""

from __future__ import annotations

import json
from typing import Any, Dict, List, Mapping, Sequence, Tuple

from . import linalg
from .complex_case import Eigenvalue, JordanSpecC
from .errors import SchemaError, StarmultError
from .poly import FIELDS, Poly
from .real_case import JordanSpecR
from .scalar import CQ, as_scalar, format_rational, scalar_from_json, scalar_to_json
from .staralg import Modulus, MuPoly, StarSystem


def _require(obj, key, kind):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"{kind}: missing field {key!r}")
    return obj[key]


def _scalar(obj):
    try:
        return scalar_from_json(obj)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad scalar {obj!r}: {exc}") from None


def _rational(obj):
    x = _scalar(obj)
    if isinstance(x, CQ):
        raise SchemaError(f"expected a rational, got {obj!r}")
    return x


# -- polynomials --------------------------------------------------------------


def poly_to_json(p: Poly) -> dict:
    return {
        "vars": list(p.vars),
        "field": p.field,
        "terms": [{"coeff": scalar_to_json(c), "exp": list(e)} for e, c in p.sorted_terms()],
    }


def poly_from_json(obj, field: str | None = None) -> Poly:
    vars = _require(obj, "vars", "polynomial")
    terms = _require(obj, "terms", "polynomial")
    if not isinstance(vars, list) or not all(isinstance(v, str) for v in vars):
        raise SchemaError("polynomial: 'vars' must be a list of strings")
    if not isinstance(terms, list):
        raise SchemaError("polynomial: 'terms' must be a list")
    parsed: Dict[Tuple[int, ...], Any] = {}
    for t in terms:
        c = _scalar(_require(t, "coeff", "term"))
        e = _require(t, "exp", "term")
        if not isinstance(e, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in e):
            raise SchemaError(f"term exponent must be a list of integers, got {e!r}")
        e = tuple(e)
        parsed[e] = parsed.get(e, 0) + c
    declared = obj.get("field")
    if declared is not None and declared not in FIELDS:
        raise SchemaError(f"unknown field {declared!r}")
    want = field or declared
    if want is None:
        want = "complex" if any(isinstance(c, CQ) for c in parsed.values()) else "real"
    try:
        return Poly(vars, parsed, want)
    except StarmultError as exc:
        raise SchemaError(str(exc)) from None
    except ValueError as exc:
        raise SchemaError(f"polynomial: {exc}") from None


def pair_to_json(f: Poly, g: Poly, **extra) -> dict:
    out = {"f": poly_to_json(f), "g": poly_to_json(g)}
    out.update({k: poly_to_json(v) for k, v in extra.items() if v is not None})
    return out


def pair_from_json(obj) -> Tuple[Poly, Poly]:
    return poly_from_json(_require(obj, "f", "pair")), poly_from_json(_require(obj, "g", "pair"))


# -- mu-vectors and systems ---------------------------------------------------


def mupoly_to_json(V: MuPoly) -> dict:
    return {"m": V.m, "coeffs": [poly_to_json(c) for c in V.coeffs]}


def mupoly_from_json(obj, field: str | None = None) -> MuPoly:
    coeffs = _require(obj, "coeffs", "mu-vector")
    if not isinstance(coeffs, list) or not coeffs:
        raise SchemaError("mu-vector: 'coeffs' must be a nonempty list")
    polys = [poly_from_json(c) for c in coeffs]
    if field is None:
        field = "complex" if any(p.field == "complex" for p in polys) else "real"
    polys = [p.as_field(field) for p in polys]
    m = obj.get("m", len(polys))
    if m != len(polys):
        raise SchemaError(f"mu-vector: m={m} but {len(polys)} coefficients")
    try:
        return MuPoly(tuple(polys))
    except StarmultError as exc:
        raise SchemaError(str(exc)) from None


def matrix_to_json(A: linalg.Matrix) -> list:
    return [[scalar_to_json(x) for x in row] for row in A]


def matrix_from_json(obj) -> linalg.Matrix:
    if isinstance(obj, dict):
        obj = _require(obj, "matrix", "matrix")
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise SchemaError("matrix must be a list of rows")
    try:
        return linalg.matrix([[_scalar(x) for x in row] for row in obj])
    except StarmultError as exc:
        raise SchemaError(str(exc)) from None


def modulus_to_json(Z: Modulus) -> list:
    return [format_rational(x) if not isinstance(x, CQ) else scalar_to_json(x) for x in Z.z]


def modulus_from_json(obj) -> Modulus:
    if not isinstance(obj, list) or not obj:
        raise SchemaError("modulus 'Z' must be a nonempty list of non-leading coefficients")
    return Modulus(tuple(_scalar(x) for x in obj))


def system_to_json(sys: StarSystem) -> dict:
    return {"X": matrix_to_json(sys.X), "Z": modulus_to_json(sys.modulus), "vars": list(sys.vars)}


def system_from_json(obj) -> StarSystem:
    X = matrix_from_json(_require(obj, "X", "system"))
    Z = modulus_from_json(_require(obj, "Z", "system"))
    vars = _require(obj, "vars", "system")
    try:
        return StarSystem(X, Z, tuple(vars))
    except StarmultError as exc:
        raise SchemaError(str(exc)) from None


# -- Jordan specs -------------------------------------------------------------


def spec_c_to_json(spec: JordanSpecC) -> dict:
    return {
        "field": "complex",
        "eigenvalues": [{"lambda": scalar_to_json(ev.lam), "blocks": list(ev.blocks)}
                        for ev in spec.eigenvalues],
    }


def spec_r_to_json(spec: JordanSpecR) -> dict:
    return {"field": "real", "alpha": format_rational(spec.alpha), "beta": format_rational(spec.beta),
            "blocks": list(spec.blocks)}


def _blocks(obj):
    blocks = _require(obj, "blocks", "Jordan spec")
    if not isinstance(blocks, list) or not all(isinstance(b, int) and not isinstance(b, bool) for b in blocks):
        raise SchemaError("'blocks' must be a list of integers")
    return tuple(blocks)


def spec_from_json(obj):
    """A :class:`JordanSpecC` or :class:`JordanSpecR` depending on ``"field"``."""
    kind = _require(obj, "field", "Jordan spec")
    try:
        if kind == "complex":
            evs = _require(obj, "eigenvalues", "Jordan spec")
            if not isinstance(evs, list):
                raise SchemaError("'eigenvalues' must be a list")
            return JordanSpecC(tuple(Eigenvalue(_scalar(_require(e, "lambda", "eigenvalue")), _blocks(e))
                                     for e in evs))
        if kind == "real":
            return JordanSpecR(_rational(_require(obj, "alpha", "Jordan spec")),
                               _rational(_require(obj, "beta", "Jordan spec")), _blocks(obj))
    except SchemaError:
        raise
    except StarmultError as exc:
        raise SchemaError(str(exc)) from None
    raise SchemaError(f"unknown Jordan spec field {kind!r}")


def spec_to_json(spec) -> dict:
    return spec_c_to_json(spec) if isinstance(spec, JordanSpecC) else spec_r_to_json(spec)


# -- generating functions and coefficient tables -----------------------------


def genfuncs_to_json(phis: Sequence[Poly]) -> list:
    return [poly_to_json(p) for p in phis]


def genfuncs_from_json(obj) -> List[Poly]:
    if not isinstance(obj, list):
        raise SchemaError("generating functions must be a list of polynomials")
    return [poly_from_json(p, "complex") for p in obj]


def table_to_json(c: Mapping[Tuple[int, ...], Any]) -> dict:
    return {",".join(str(i) for i in key): scalar_to_json(as_scalar(v)) for key, v in sorted(c.items())}


def table_from_json(obj) -> Dict[Tuple[int, ...], Any]:
    """``{"k,j": scalar}``; longer keys ``"k,e1,...,e_nu"`` carry full exponents."""
    if not isinstance(obj, dict):
        raise SchemaError("coefficient table must be an object")
    out = {}
    for key, val in obj.items():
        try:
            idx = tuple(int(p) for p in key.split(","))
        except ValueError:
            raise SchemaError(f"bad coefficient key {key!r}") from None
        if len(idx) < 2 or any(i < 0 for i in idx):
            raise SchemaError(f"bad coefficient key {key!r}")
        out[idx] = _scalar(val)
    return out


# -- files --------------------------------------------------------------------


def load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
