"""JSON form files: loading with validation, canonical saving.

A form file looks like::

    {
      "coeffs": [
        {"key": [0, 0], "part": "plus", "value": [1, 0]}
      ],
      "index_m": 1,
      "kind": "jacobi_skew",
      "weight_twice": 2
    }

``weight_twice`` is twice the weight of the object itself for ``scalar``
and ``vector_valued``, and 2k (the ambient Jacobi weight) for
``jacobi_skew`` and ``theta_components``. Keys are ``[n]`` for scalar
forms, ``[N, l]`` for vector-valued forms and theta components and
``[D, rho]`` (D = r^2 - 4mn) for Jacobi forms.
"""
from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Union

import jsonschema

from .isomorphism import ThetaComponents
from .jacobi_skew import SkewJacobiExpansion
from .metaplectic import VectorValuedExpansion, WeilRepContext
from .scalar_maass import ScalarMaassExpansion
from .special import HalfInteger

__all__ = ["FormSchemaError", "FormInvariantError", "FORM_SCHEMA", "load_form", "save_form", "form_from_dict", "form_to_dict", "dumps_form"]

Form = Union[ScalarMaassExpansion, VectorValuedExpansion, SkewJacobiExpansion, ThetaComponents]

KINDS = ("scalar", "vector_valued", "jacobi_skew", "theta_components")


class FormSchemaError(ValueError):
    """The file is not a well-formed form file (CLI exit code 2)."""

    exit_code = 2


class FormInvariantError(ValueError):
    """The file parses but violates a mathematical invariant (CLI exit code 3)."""

    exit_code = 3


_NUMBER = {"type": "number"}
FORM_SCHEMA = {
    "type": "object",
    "required": ["kind", "weight_twice", "coeffs"],
    "additionalProperties": False,
    "properties": {
        "kind": {"enum": list(KINDS)},
        "weight_twice": {"type": "integer"},
        "index_m": {"type": "integer", "minimum": 1},
        "level": {"type": "integer", "minimum": 1},
        "denom": {"type": "integer", "minimum": 1},
        "dual": {"type": "boolean"},
        "mode": {"enum": ["h", "g"]},
        "truncation": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
        "coeffs": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["part", "key", "value"],
                "additionalProperties": False,
                "properties": {
                    "part": {"enum": ["plus", "minus", "zero"]},
                    "key": {"type": "array", "items": {"type": "integer"}, "minItems": 1, "maxItems": 2},
                    "value": {"type": "array", "items": _NUMBER, "minItems": 2, "maxItems": 2},
                },
            },
        },
    },
    "allOf": [
        {"if": {"properties": {"kind": {"const": "scalar"}}}, "then": {"required": ["level"]}},
        {
            "if": {"properties": {"kind": {"not": {"const": "scalar"}}}},
            "then": {"required": ["index_m"]},
        },
    ],
}


def _reject_constant(token):
    raise FormSchemaError(f"non-finite number {token} in form file")


def _schema_check(data) -> None:
    try:
        jsonschema.validate(data, FORM_SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path)
        raise FormSchemaError(f"schema violation at /{path}: {exc.message}") from None
    kind = data["kind"]
    key_len = 1 if kind == "scalar" else 2
    for i, rec in enumerate(data["coeffs"]):
        if len(rec["key"]) != key_len:
            raise FormSchemaError(f"schema violation at /coeffs/{i}/key: {kind} keys have length {key_len}")


def form_from_dict(data: dict) -> Form:
    """Build a typed form from parsed JSON, validating schema then invariants."""
    _schema_check(data)
    kind = data["kind"]
    seen = set()
    tables = {"plus": {}, "minus": {}, "zero": {}}
    for i, rec in enumerate(data["coeffs"]):
        ident = (rec["part"], tuple(rec["key"]))
        if ident in seen:
            raise FormInvariantError(f"duplicate key at /coeffs/{i}: part={rec['part']} key={rec['key']}")
        seen.add(ident)
        re, im = rec["value"]
        tables[rec["part"]][tuple(rec["key"])] = complex(re, im)
    truncation = tuple(data["truncation"]) if "truncation" in data else None
    try:
        if kind == "scalar":
            zero = tables["zero"]
            if any(key != (0,) for key in zero):
                raise FormInvariantError("scalar zero-part key must be [0]")
            return ScalarMaassExpansion(
                HalfInteger(data["weight_twice"]),
                data["level"],
                data.get("denom", 1),
                {key[0]: c for key, c in tables["plus"].items()},
                {key[0]: c for key, c in tables["minus"].items()},
                zero.get((0,), 0j),
                truncation,
            )
        m = data["index_m"]
        if kind == "jacobi_skew":
            if data["weight_twice"] % 2:
                raise FormInvariantError("jacobi_skew needs integral weight")
            return SkewJacobiExpansion(
                data["weight_twice"] // 2, m, tables["zero"], tables["plus"], tables["minus"], truncation
            )
        comps = _components(tables, m, data, truncation)
        if kind == "vector_valued":
            ctx = WeilRepContext(m, data.get("dual", False))
            return VectorValuedExpansion(HalfInteger(data["weight_twice"]), ctx, comps)
        if data["weight_twice"] % 2:
            raise FormInvariantError("theta_components needs the integral Jacobi weight")
        return ThetaComponents(data["weight_twice"] // 2, m, comps, data.get("mode", "h"))
    except FormInvariantError:
        raise
    except (ValueError, TypeError) as exc:
        raise FormInvariantError(str(exc)) from None


def _components(tables, m, data, truncation):
    kind = data["kind"]
    weight = HalfInteger(data["weight_twice"] - (1 if kind == "theta_components" else 0))
    two_m = 2 * m
    plus = [dict() for _ in range(two_m)]
    gamma = [dict() for _ in range(two_m)]
    const = [0j] * two_m
    for part, dst in (("plus", plus), ("minus", gamma)):
        for (n, ell), c in tables[part].items():
            if not 0 <= ell < two_m:
                raise FormInvariantError(f"{part} key {[n, ell]}: class must lie in [0, {two_m})")
            dst[ell][n] = c
    for (n, ell), c in tables["zero"].items():
        if n != 0 or not 0 <= ell < two_m:
            raise FormInvariantError(f"zero key {[n, ell]} must be [0, l] with 0 <= l < {two_m}")
        const[ell] = c
    return tuple(
        ScalarMaassExpansion(weight, 4 * m, 4 * m, plus[l], gamma[l], const[l], truncation)
        for l in range(two_m)
    )


def _records_scalar_like(comp: ScalarMaassExpansion, suffix: tuple) -> list:
    recs = [("plus", (n,) + suffix, c) for n, c in comp.plus.items()]
    recs += [("minus", (n,) + suffix, c) for n, c in comp.gamma.items()]
    if comp.const != 0:
        recs.append(("zero", (0,) + suffix, comp.const))
    return recs


def form_to_dict(form: Form) -> dict:
    if isinstance(form, ScalarMaassExpansion):
        out = {"kind": "scalar", "weight_twice": form.weight.twice, "level": form.level}
        if form.denom != 1:
            out["denom"] = form.denom
        recs = _records_scalar_like(form, ())
        truncation = form.truncation
    elif isinstance(form, SkewJacobiExpansion):
        out = {"kind": "jacobi_skew", "weight_twice": 2 * form.k, "index_m": form.m}
        recs = [(part, key, c) for part in ("zero", "plus", "minus") for key, c in form.table(part).items()]
        truncation = form.truncation
    else:
        if isinstance(form, VectorValuedExpansion):
            out = {
                "kind": "vector_valued",
                "weight_twice": form.weight.twice,
                "index_m": form.context.m,
                "dual": form.context.dual,
            }
        else:
            out = {"kind": "theta_components", "weight_twice": 2 * form.k, "index_m": form.m, "mode": form.mode}
        recs = []
        for ell, comp in enumerate(form.components):
            recs += _records_scalar_like(comp, (ell,))
        truncation = form.components[0].truncation if form.components else None
    if truncation is not None:
        out["truncation"] = list(truncation)
    recs.sort(key=lambda r: (r[0], r[1]))
    out["coeffs"] = [{"key": list(key), "part": part, "value": [c.real, c.imag]} for part, key, c in recs]
    return out


def _fmt_number(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    x = float(x)
    if not math.isfinite(x):
        raise FormSchemaError("cannot save a non-finite coefficient")
    if x == 0:
        x = 0.0  # drop the sign of -0.0
    return format(x, ".17g")


def _fmt(value) -> str:
    if isinstance(value, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_fmt(value[k])}" for k in sorted(value)) + "}"
    if isinstance(value, list):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    if isinstance(value, str):
        return json.dumps(value)
    return _fmt_number(value)


def dumps_form(form: Form) -> str:
    """Canonical text: sorted keys, one coefficient per line, 17 significant digits."""
    data = form_to_dict(form)
    lines = ["{"]
    keys = sorted(data)
    for i, key in enumerate(keys):
        comma = "," if i < len(keys) - 1 else ""
        if key == "coeffs":
            recs = data["coeffs"]
            if not recs:
                lines.append(f'  "coeffs": []{comma}')
                continue
            lines.append('  "coeffs": [')
            for j, rec in enumerate(recs):
                lines.append("    " + _fmt(rec) + ("," if j < len(recs) - 1 else ""))
            lines.append(f"  ]{comma}")
        else:
            lines.append(f"  {json.dumps(key)}: {_fmt(data[key])}{comma}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def loads_form(text: str) -> Form:
    try:
        data = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise FormSchemaError(f"not valid JSON: {exc}") from None
    return form_from_dict(data)


def load_form(path) -> Form:
    return loads_form(Path(path).read_text(encoding="utf-8"))


def save_form(form: Form, path) -> None:
    Path(path).write_text(dumps_form(form), encoding="utf-8")
