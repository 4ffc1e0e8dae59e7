"""Report envelopes, human rendering helpers, and the machine schema.

Every CLI invocation produces exactly one report.  The machine form is a
single JSON document with a fixed envelope; rationals travel as exact
strings ("a/b" or "a"), never as floats.  The schemas below are published
so downstream tooling can validate round-trips.
"""

from __future__ import annotations

from fractions import Fraction

from .monoids import Monoid, descriptor_to_dict

STATUSES = ("ok", "not_member", "unknown", "unsupported", "error")
VERBS = (
    "classify",
    "generators",
    "decompose",
    "member",
    "divides",
    "factorize",
    "lengths",
    "zlength",
    "atoms",
    "chain",
)

EXIT_CODES = {"ok": 0, "error": 1, "not_member": 2, "unknown": 2, "unsupported": 3}


def describe(desc: Monoid) -> str:
    """One-line text form of a descriptor."""
    bits = []
    if desc.family == "grams":
        bits.append(f"base={desc.base}")
    if desc.family == "power_reciprocal":
        bits.append(f"base={desc.base}")
    if desc.family == "gap":
        bits.append(f"ell={desc.ell}")
    if desc.family == "geometric":
        bits.append(f"q={desc.ratio}")
        bits.append(f"include_unit={'true' if desc.include_unit else 'false'}")
    if desc.family == "mixed_5_2":
        bits.append(f"k={desc.k}")
    if desc.family == "custom":
        bits.append(f"{len(desc.terms)} terms")
    if desc.primes is not None and desc.primes.prefix:
        bits.append("primes=" + ",".join(str(p) for p in desc.primes.prefix))
    if desc.scale != 1:
        bits.append(f"scale={desc.scale}")
    return desc.family + (f"({', '.join(bits)})" if bits else "")


def rational_str(q: Fraction) -> str:
    return str(q)


def coefficient_terms(desc: Monoid, coefficients: dict[int, int]) -> str:
    """"c1*(a1) + c2*(a2)" in index order, using the middle dot."""
    from .monoids import generator_value

    parts = [
        f"{c}·({generator_value(desc, i)})"
        for i, c in sorted(coefficients.items())
        if c
    ]
    return " + ".join(parts)


def render_certificate(desc: Monoid, value: Fraction, coefficients: dict[int, int], eta: int = 0) -> str:
    terms = []
    if eta:
        terms.append(str(eta))
    body = coefficient_terms(desc, coefficients)
    if body:
        terms.append(body)
    if not terms:
        terms.append("0")
    return f"{value} = " + " + ".join(terms)


def pairs_list(mapping: dict[int, int]) -> list[list[int]]:
    return [[i, c] for i, c in sorted(mapping.items())]


def envelope(verb: str, status: str, desc: Monoid | None, bounds: dict, notes: list[str], payload: dict) -> dict:
    return {
        "verb": verb,
        "status": status,
        "descriptor": descriptor_to_dict(desc) if desc is not None else {},
        "bounds": bounds,
        "notes": list(notes),
        "payload": payload,
    }


def table(rows: list[list[str]], header: list[str]) -> list[str]:
    """Left-aligned fixed-width columns; deterministic."""
    widths = [len(h) for h in header]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    def fmt(row):
        return "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip()
    return [fmt(header)] + [fmt(r) for r in rows]


_RATIONAL_PATTERN = r"^[0-9]+(/[0-9]+)?$"

_COMPLETENESS_SCHEMA = {
    "type": "object",
    "properties": {
        "kind": {"enum": ["complete", "complete_up_to_bounds", "unknown"]},
        "max_length": {"type": ["integer", "null"]},
        "max_index": {"type": ["integer", "null"]},
    },
    "required": ["kind"],
    "additionalProperties": False,
}

_PAIRS_SCHEMA = {
    "type": "array",
    "items": {
        "type": "array",
        "items": {"type": "integer"},
        "minItems": 2,
        "maxItems": 2,
    },
}

_FACTORIZATION_SCHEMA = {
    "type": "object",
    "properties": {
        "exponents": _PAIRS_SCHEMA,
        "length": {"type": "integer", "minimum": 1},
    },
    "required": ["exponents", "length"],
    "additionalProperties": False,
}

_RATIONAL_SCHEMA = {"type": "string", "pattern": _RATIONAL_PATTERN}

_FLAG_SCHEMA = {
    "type": "object",
    "properties": {
        "verdict": {"enum": ["yes", "no", "unknown"]},
        "why": {"type": "string"},
    },
    "required": ["verdict", "why"],
    "additionalProperties": False,
}

PAYLOAD_SCHEMAS = {
    "classify": {
        "type": "object",
        "properties": {
            "descriptor_text": {"type": "string"},
            "flags": {
                "type": "object",
                "additionalProperties": _FLAG_SCHEMA,
            },
        },
        "required": ["descriptor_text", "flags"],
        "additionalProperties": False,
    },
    "generators": {
        "type": "object",
        "properties": {
            "items": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {
                        "index": {"type": "integer"},
                        "value": _RATIONAL_SCHEMA,
                        "controlling_prime": {"type": ["integer", "null"]},
                    },
                    "required": ["index", "value", "controlling_prime"],
                    "additionalProperties": False,
                },
            },
        },
        "required": ["items"],
        "additionalProperties": False,
    },
    "decompose": {
        "type": "object",
        "properties": {
            "value": _RATIONAL_SCHEMA,
            "eta": {"type": "integer", "minimum": 0},
            "zeta": _PAIRS_SCHEMA,
            "rendering": {"type": "string"},
            "reason": {"type": "string"},
            "detail": {"type": "string"},
        },
        "required": ["value"],
        "additionalProperties": False,
    },
    "member": {
        "type": "object",
        "properties": {
            "value": _RATIONAL_SCHEMA,
            "verdict": {"enum": ["member", "not_member", "unknown"]},
            "certificate": {"anyOf": [_PAIRS_SCHEMA, {"type": "null"}]},
            "eta": {"type": "integer"},
            "rendering": {"type": "string"},
            "reason": {"type": "string"},
            "detail": {"type": "string"},
        },
        "required": ["value", "verdict"],
        "additionalProperties": False,
    },
    "lengths": {
        "type": "object",
        "properties": {
            "value": _RATIONAL_SCHEMA,
            "window": {"type": "integer"},
            "lengths": {"type": "array", "items": {"type": "integer"}},
            "completeness": _COMPLETENESS_SCHEMA,
        },
        "required": ["value", "window", "lengths", "completeness"],
        "additionalProperties": False,
    },
    "atoms": {
        "type": "object",
        "properties": {
            "items": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {
                        "index": {"type": "integer"},
                        "verdict": {"enum": ["atom", "not_atom", "unknown"]},
                        "why": {"type": "string"},
                        "witness": {"anyOf": [_PAIRS_SCHEMA, {"type": "null"}]},
                    },
                    "required": ["index", "verdict", "why", "witness"],
                    "additionalProperties": False,
                },
            },
        },
        "required": ["items"],
        "additionalProperties": False,
    },
    "chain": {
        "type": "object",
        "properties": {
            "elements": {"type": "array", "items": _RATIONAL_SCHEMA},
            "steps": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {
                        "difference": _RATIONAL_SCHEMA,
                        "certificate": _PAIRS_SCHEMA,
                    },
                    "required": ["difference", "certificate"],
                    "additionalProperties": False,
                },
            },
            "verified": {"type": "boolean"},
        },
        "required": ["elements", "steps", "verified"],
        "additionalProperties": False,
    },
}

_FACTORIZE_PAYLOAD = {
    "type": "object",
    "properties": {
        "value": _RATIONAL_SCHEMA,
        "length": {"type": "integer"},
        "items": {"type": "array", "items": _FACTORIZATION_SCHEMA},
        "completeness": _COMPLETENESS_SCHEMA,
    },
    "required": ["value", "items", "completeness"],
    "additionalProperties": False,
}
PAYLOAD_SCHEMAS["factorize"] = _FACTORIZE_PAYLOAD
PAYLOAD_SCHEMAS["zlength"] = _FACTORIZE_PAYLOAD

_DIVIDES_PAYLOAD = {
    "type": "object",
    "properties": {
        **PAYLOAD_SCHEMAS["member"]["properties"],
        "divisor": _RATIONAL_SCHEMA,
        "dividend": _RATIONAL_SCHEMA,
        "difference": _RATIONAL_SCHEMA,
    },
    "required": ["divisor", "dividend", "verdict"],
    "additionalProperties": False,
}
PAYLOAD_SCHEMAS["divides"] = _DIVIDES_PAYLOAD

ENVELOPE_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "properties": {
        "verb": {"enum": list(VERBS)},
        "status": {"enum": list(STATUSES)},
        "descriptor": {"type": "object"},
        "bounds": {
            "type": "object",
            "properties": {
                "max_index": {"type": "integer"},
                "max_length": {"type": "integer"},
                "max_coeff": {"type": "integer"},
                "max_steps": {"type": "integer"},
            },
            "required": ["max_index", "max_length", "max_coeff", "max_steps"],
            "additionalProperties": False,
        },
        "notes": {"type": "array", "items": {"type": "string"}},
        "payload": {"type": "object"},
    },
    "required": ["verb", "status", "descriptor", "bounds", "notes", "payload"],
    "additionalProperties": False,
}
