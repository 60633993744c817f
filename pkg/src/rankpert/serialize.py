"""JSON forms of matrices, polynomials and reports.

Matrix documents look like ``{"field": "GF(5)", "rows": [["1", "2"], ["0", "4"]]}``
and polynomial documents like ``{"coeffs": ["1", "0", "1"]}`` (ascending,
leading 1 included).  Scalars are strings: ``"3"``, ``"-1/2"``.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import Field, Poly
from .errors import FieldMismatchError, InputError
from .matrix import Mat

SCHEMA_VERSION = 1


def load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc.msg} (line {exc.lineno})") from None


def _raw_scalar(v) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise InputError(f"scalar must be an integer or a string, got {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    try:
        return Fraction(v.strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot parse scalar {v!r}") from None


def _declared_field(doc: dict) -> Field | None:
    name = doc.get("field")
    return None if name is None else Field.parse(name)


def _resolve_field(declared: Field | None, override: Field | None) -> Field:
    if override is not None:
        return override
    if declared is None:
        raise InputError("no field declared; add a \"field\" key or pass --field")
    return declared


def _convert(values, field: Field, declared: Field | None, override: Field | None):
    raw = [_raw_scalar(v) for v in values]
    if override is not None and declared is not None and override != declared:
        if any(r.denominator != 1 for r in raw):
            raise InputError("--field can only reinterpret integer entries")
    return [field(r) for r in raw]


def matrix_from_doc(doc, override: Field | None = None) -> Mat:
    if not isinstance(doc, dict) or "rows" not in doc:
        raise InputError('matrix document needs a "rows" key')
    declared = _declared_field(doc)
    field = _resolve_field(declared, override)
    rows = doc["rows"]
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise InputError("rows must be a nonempty list of lists")
    if any(len(r) != len(rows[0]) for r in rows):
        raise InputError("matrix rows have different lengths")
    return Mat(field, [_convert(r, field, declared, override) for r in rows], canonical=True)


def poly_from_doc(doc, field: Field, override: Field | None = None) -> Poly:
    if isinstance(doc, list):
        doc = {"coeffs": doc}
    if not isinstance(doc, dict) or "coeffs" not in doc:
        raise InputError('polynomial document needs a "coeffs" key')
    declared = _declared_field(doc)
    if declared is not None and override is None and declared != field:
        raise FieldMismatchError(f"polynomial declared over {declared}, matrix over {field}")
    coeffs = doc["coeffs"]
    if not isinstance(coeffs, list):
        raise InputError("coeffs must be a list")
    return Poly(field, _convert(coeffs, field, declared, override), canonical=True)


def matrix_to_doc(M: Mat) -> dict:
    return {"field": str(M.field), "rows": M.to_strings()}


def poly_json(p: Poly | None):
    return None if p is None else p.to_strings()


def header(command: str, field: Field | None, n: int | None) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "field": None if field is None else str(field),
        "n": n,
    }


def invariants_payload(inv) -> list:
    return [p.to_strings() for p in inv.factors]


def jordan_payload(jd) -> dict:
    return {
        "complete": jd.complete,
        "unfactored": poly_json(jd.unfactored),
        "entries": [
            {"factor": e.factor.to_strings(), "blocks": list(e.blocks), "alg_mult": e.alg_mult}
            for e in jd.entries
        ],
    }


def certificate_payload(cert, q: Poly) -> dict:
    rows = None
    if cert.jordan_report is not None:
        rows = [
            {
                "factor": r.factor.to_strings(),
                "mult_in_q": r.mult_in_q,
                "alg_mult": r.alg_mult,
                "top_m_blocks": r.top_m_blocks,
                "holds": r.holds,
            }
            for r in cert.jordan_report
        ]
    return {
        "feasible": cert.feasible,
        "m_requested": cert.m_requested,
        "m_effective": cert.m_effective,
        "target": q.to_strings(),
        "invariant_factors": invariants_payload(cert.invariants),
        "required_divisor": cert.required_divisor.to_strings(),
        "remainder": cert.remainder.to_strings(),
        "quotient_h": poly_json(cert.quotient_h),
        "jordan_report": {"complete": cert.jordan_complete, "rows": rows},
    }


def verify_payload(rep) -> dict:
    return {
        "rank_B": rep.rank_B,
        "rank_ok": rep.rank_ok,
        "charpoly": rep.charpoly.to_strings(),
        "charpoly_ok": rep.charpoly_ok,
        "pass": rep.passed,
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
