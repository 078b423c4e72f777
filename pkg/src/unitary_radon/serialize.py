"""JSON document formats, validation, digests and report assembly.

Document shapes (bit-exact contract of the CLI):

  polynomial: {"n": 2, "terms": [{"alpha": [..], "beta": [..], "re": 1, "im": 0}]}
  expansion:  {"n": 2, "coeffs": [{"index": [..], "re": 1, "im": 0}]}
  tuple:      {"axis": [i, j]} | {"t": [[re, im], ..], "s": [..]} | {"haar_seed": k}
  clifford:   {"blades": [{"mask": 5, "re": 1, "im": 0}]}

Floats serialize via repr (shortest round trip, <= 17 significant digits);
wherever a value is exact its rational parts are attached as {"num", "den"}
pairs.  Reports are canonical JSON (sorted keys), so identical jobs produce
byte-identical output; wall time lives in a separate "meta" section that the
determinism claim excludes, and verify reports carry none at all.
"""

from __future__ import annotations

import hashlib
import json
import math
from fractions import Fraction

import jsonschema

from . import __version__
from .exact import QC, to_complex
from .core import StiefelTuple, axis_tuple, sample_stiefel, rational_stiefel
from .bipoly import BiPoly
from .realspace import HermiteExpansion
from .clifford import CliffordElement


class SchemaError(ValueError):
    """Input document failed validation; message carries the JSON path."""


_INDEX = {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 1}
_NUM = {"type": "number"}

POLY_SCHEMA = {
    "type": "object", "required": ["n", "terms"], "additionalProperties": False,
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "terms": {"type": "array", "items": {
            "type": "object", "required": ["alpha", "beta", "re", "im"],
            "additionalProperties": False,
            "properties": {"alpha": _INDEX, "beta": _INDEX, "re": _NUM, "im": _NUM}}},
    },
}

HERMITE_SCHEMA = {
    "type": "object", "required": ["n", "coeffs"], "additionalProperties": False,
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "coeffs": {"type": "array", "items": {
            "type": "object", "required": ["index", "re", "im"],
            "additionalProperties": False,
            "properties": {"index": _INDEX, "re": _NUM, "im": _NUM}}},
    },
}

_COMPLEX_PAIR = {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2}

TUPLE_SCHEMA = {
    "oneOf": [
        {"type": "object", "required": ["axis"], "additionalProperties": False,
         "properties": {"axis": {"type": "array", "items": {"type": "integer", "minimum": 0},
                                 "minItems": 2, "maxItems": 2}}},
        {"type": "object", "required": ["t", "s"], "additionalProperties": False,
         "properties": {"t": {"type": "array", "items": _COMPLEX_PAIR, "minItems": 2},
                        "s": {"type": "array", "items": _COMPLEX_PAIR, "minItems": 2}}},
        {"type": "object", "required": ["haar_seed"], "additionalProperties": False,
         "properties": {"haar_seed": {"type": "integer", "minimum": 0}}},
    ],
}

CLIFFORD_SCHEMA = {
    "type": "object", "required": ["blades"], "additionalProperties": False,
    "properties": {"blades": {"type": "array", "items": {
        "type": "object", "required": ["mask", "re", "im"], "additionalProperties": False,
        "properties": {"mask": {"type": "integer", "minimum": 0}, "re": _NUM, "im": _NUM}}}},
}

HERM_POLY_SCHEMA = {
    "type": "object", "required": ["n", "terms"], "additionalProperties": False,
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "terms": {"type": "array", "items": {
            "type": "object", "required": ["alpha", "beta", "clifford"],
            "additionalProperties": False,
            "properties": {"alpha": _INDEX, "beta": _INDEX, "clifford": CLIFFORD_SCHEMA}}},
    },
}

GRID_SCHEMA = {
    "type": "object", "required": ["n", "points", "values"], "additionalProperties": False,
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "points": {"type": "array", "items": {"type": "array", "items": _NUM}},
        "values": {"type": "array", "items": {
            "type": "object", "required": ["re", "im"], "additionalProperties": False,
            "properties": {"re": _NUM, "im": _NUM}}},
    },
}


def validate(doc, schema, label):
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as err:
        path = "$" + "".join(f"[{p!r}]" for p in err.absolute_path)
        raise SchemaError(f"{label} document invalid at {path}: {err.message}") from None


def _finite(x, where):
    if not math.isfinite(x):
        raise SchemaError(f"non-finite number in {where}: {x!r}")
    return x


def _qc(re, im, where):
    return QC(Fraction(_finite(re, where)), Fraction(_finite(im, where)))


# ---------------------------------------------------------------------------
# parsing

def parse_polynomial(doc):
    """Exact parse: float re/im embed as binary rationals, duplicate
    (alpha, beta) keys are summed (canonicalization rule)."""
    validate(doc, POLY_SCHEMA, "polynomial")
    n = doc["n"]
    poly = BiPoly.zero(n)
    for i, term in enumerate(doc["terms"]):
        if len(term["alpha"]) != n or len(term["beta"]) != n:
            raise SchemaError(f"polynomial term {i}: index length != n={n}")
        poly = poly + BiPoly.monomial(n, term["alpha"], term["beta"],
                                      _qc(term["re"], term["im"], f"term {i}"))
    return poly


def parse_hermite(doc):
    validate(doc, HERMITE_SCHEMA, "expansion")
    n = doc["n"]
    out = HermiteExpansion(n, {})
    for i, item in enumerate(doc["coeffs"]):
        if len(item["index"]) != n:
            raise SchemaError(f"expansion coeff {i}: index length != n={n}")
        out = out + HermiteExpansion(n, {tuple(item["index"]):
                                         _qc(item["re"], item["im"], f"coeff {i}")})
    return out


def parse_clifford(doc, n):
    validate(doc, CLIFFORD_SCHEMA, "clifford")
    blades = {}
    for i, item in enumerate(doc["blades"]):
        c = _qc(item["re"], item["im"], f"blade {i}")
        blades[item["mask"]] = blades.get(item["mask"], QC(0)) + c
    return CliffordElement(n, blades)


def parse_herm_polynomial(doc):
    """Polynomial with Clifford coefficients: the scalar polynomial layout
    with a clifford blade table in place of re/im."""
    validate(doc, HERM_POLY_SCHEMA, "clifford polynomial")
    n = doc["n"]
    poly = BiPoly.zero(n)
    for i, term in enumerate(doc["terms"]):
        if len(term["alpha"]) != n or len(term["beta"]) != n:
            raise SchemaError(f"clifford polynomial term {i}: index length != n={n}")
        poly = poly + BiPoly.monomial(n, term["alpha"], term["beta"],
                                      parse_clifford(term["clifford"], n))
    return poly


def parse_tuple(doc, n):
    validate(doc, TUPLE_SCHEMA, "tuple")
    if "axis" in doc:
        return axis_tuple(n, doc["axis"][0], doc["axis"][1])
    if "haar_seed" in doc:
        return sample_stiefel(n, doc["haar_seed"])
    t = [complex(_finite(re, "t"), _finite(im, "t")) for re, im in doc["t"]]
    s = [complex(_finite(re, "s"), _finite(im, "s")) for re, im in doc["s"]]
    if len(t) != n:
        raise SchemaError(f"tuple length {len(t)} != n={n}")
    return StiefelTuple(tuple(t), tuple(s))


def parse_tuple_spec(spec, n):
    """CLI --tuple forms: axis:I,J | haar:SEED | rational:SEED | @file.json."""
    if spec.startswith("@"):
        with open(spec[1:], encoding="utf-8") as fh:
            return parse_tuple(json.load(fh), n)
    kind, _, rest = spec.partition(":")
    if kind == "axis":
        try:
            i, j = (int(x) for x in rest.split(","))
        except ValueError:
            raise SchemaError(f"bad axis tuple spec {spec!r}; want axis:I,J") from None
        return axis_tuple(n, i, j)
    if kind == "haar":
        return sample_stiefel(n, int(rest))
    if kind == "rational":
        return rational_stiefel(n, int(rest))
    raise SchemaError(f"unknown tuple spec {spec!r}")


# ---------------------------------------------------------------------------
# emission

def rational_doc(fr):
    fr = Fraction(fr)
    return {"num": fr.numerator, "den": fr.denominator}


def value_doc(v):
    """Complex scalar as floats, plus exact rational parts when available."""
    z = to_complex(v)
    out = {"re": z.real, "im": z.imag}
    if isinstance(v, QC):
        out["re_exact"] = rational_doc(v.re)
        out["im_exact"] = rational_doc(v.im)
    elif isinstance(v, (int, Fraction)):
        out["re_exact"] = rational_doc(v)
        out["im_exact"] = rational_doc(0)
    return out


def polynomial_doc(P):
    terms = []
    for (a, b), c in sorted(P.terms.items()):
        z = to_complex(c)
        terms.append({"alpha": list(a), "beta": list(b), "re": z.real, "im": z.imag})
    return {"n": P.n, "terms": terms}


def hermite_doc(f):
    coeffs = []
    for a, c in sorted(f.coeffs.items()):
        z = to_complex(c)
        coeffs.append({"index": list(a), "re": z.real, "im": z.imag})
    return {"n": f.n, "coeffs": coeffs}


def clifford_doc(c):
    blades = []
    for mask, v in sorted(c.blades.items()):
        z = to_complex(v)
        blades.append({"mask": mask, "re": z.real, "im": z.imag})
    return {"blades": blades}


def herm_polynomial_doc(P):
    terms = []
    for (a, b), c in sorted(P.terms.items()):
        terms.append({"alpha": list(a), "beta": list(b), "clifford": clifford_doc(c)})
    return {"n": P.n, "terms": terms}


def tuple_doc(tpl):
    return {"t": [[to_complex(x).real, to_complex(x).imag] for x in tpl.t],
            "s": [[to_complex(x).real, to_complex(x).imag] for x in tpl.s]}


def coefficients_doc(coefficients):
    """Projection coordinate table; keys are degree ints or (p, q) pairs and
    values scalars or clifford elements."""
    rows = []
    for key in sorted(coefficients):
        value = coefficients[key]
        row = {"p": key[0], "q": key[1]} if isinstance(key, tuple) else {"degree": key}
        if isinstance(value, CliffordElement):
            row["clifford"] = clifford_doc(value)
        else:
            row["value"] = value_doc(value)
        rows.append(row)
    return rows


def canonical_json(doc):
    return json.dumps(doc, sort_keys=True, indent=2, allow_nan=False) + "\n"


def digest_doc(doc):
    packed = json.dumps(doc, sort_keys=True, separators=(",", ":"), allow_nan=False)
    return hashlib.sha256(packed.encode()).hexdigest()


def build_report(command, space, body, wall_ms=None):
    """Assemble a report; wall time goes in "meta" (excluded from the
    byte-identity claim) and is omitted entirely when None."""
    report = {"schema": "unitary-radon/report-v1",
              "command": command,
              "library_version": __version__}
    if space:
        report["space"] = space
    report.update(body)
    if wall_ms is not None:
        report["meta"] = {"wall_ms": wall_ms}
    return report
