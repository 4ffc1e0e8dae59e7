"""Command-line front end.

    puiseux VERB [-d FAMILY [family flags] | --descriptor-file PATH] ...

Verbs: classify, generators, decompose, member, divides, factorize,
lengths, zlength, atoms, chain.  Human tables by default; ``--json`` emits
one machine document per invocation.  All numeric input and output is
exact: rationals are "a/b" strings, never floats.

Exit codes: 0 ok; 2 the query was answered negatively or inconclusively
(not a member / unknown within bounds); 3 the family does not support the
operation; 1 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import chains, decomposition, factorization, monoids, reports
from .decomposition import Bounds, Member, NotMember, Unknown
from .errors import NotInMonoidError, UnsupportedFamilyError
from .rationals import parse_rational

DEFAULT_MAX_LENGTH = 20
DEFAULT_MAX_INDEX = 50
DEFAULT_MAX_STEPS = 16
DEFAULT_MAX_COEFF = 4096


def _descriptor_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("descriptor")
    g.add_argument("-d", "--family", metavar="FAMILY",
                   help="builtin family name (custom lists need a file)")
    g.add_argument("--descriptor-file", metavar="PATH",
                   help="JSON descriptor document")
    g.add_argument("--base", type=int, help="base for grams / power_reciprocal")
    g.add_argument("--ell", type=int, help="gap offset")
    g.add_argument("--q", metavar="A/B", help="geometric ratio")
    g.add_argument("--include-unit", action=argparse.BooleanOptionalAction,
                   default=None, help="include the 0th power (geometric)")
    g.add_argument("--k", type=int, help="mixed_5_2 block length")
    g.add_argument("--primes", metavar="P1,P2,...",
                   help="pin the leading primes of the family's sequence")
    g.add_argument("--scale", metavar="A/B", help="multiply every generator")
    return p


def _bounds_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("bounds")
    g.add_argument("--max-length", type=int, default=DEFAULT_MAX_LENGTH)
    g.add_argument("--max-index", type=int, default=DEFAULT_MAX_INDEX)
    g.add_argument("--max-coeff", type=int, default=DEFAULT_MAX_COEFF)
    g.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    return p


def _output_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="puiseux",
        description="exact factorization theory for rational-generated additive monoids",
    )
    parents = [_descriptor_parent(), _bounds_parent(), _output_parent()]
    sub = parser.add_subparsers(dest="verb", required=True)

    sub.add_parser("classify", parents=parents)
    p = sub.add_parser("generators", parents=parents)
    p.add_argument("--count", type=int, default=8)
    p = sub.add_parser("decompose", parents=parents)
    p.add_argument("value")
    p = sub.add_parser("member", parents=parents)
    p.add_argument("value")
    p = sub.add_parser("divides", parents=parents)
    p.add_argument("divisor")
    p.add_argument("dividend")
    p = sub.add_parser("factorize", parents=parents)
    p.add_argument("value")
    p = sub.add_parser("lengths", parents=parents)
    p.add_argument("value")
    p.add_argument("--up-to", type=int, default=DEFAULT_MAX_LENGTH)
    p = sub.add_parser("zlength", parents=parents)
    p.add_argument("value")
    p.add_argument("length", type=int)
    p = sub.add_parser("atoms", parents=parents)
    p.add_argument("--count", type=int, default=8)
    sub.add_parser("chain", parents=parents)
    return parser


def _build_descriptor(args) -> monoids.Monoid:
    if args.descriptor_file and args.family:
        raise ValueError("give either --family or --descriptor-file, not both")
    if args.descriptor_file:
        with open(args.descriptor_file, "r", encoding="utf-8") as handle:
            try:
                doc = json.load(handle)
            except json.JSONDecodeError as exc:
                raise ValueError(f"descriptor file is not valid JSON: {exc}") from exc
        return monoids.descriptor_from_dict(doc)
    if not args.family:
        raise ValueError("a descriptor is required: -d FAMILY or --descriptor-file PATH")
    if args.family == "custom":
        raise ValueError("custom descriptors must be given as a file")
    doc: dict = {"family": args.family}
    if args.base is not None:
        doc["base"] = args.base
    if args.ell is not None:
        doc["ell"] = args.ell
    if args.q is not None:
        doc["q"] = args.q
    if args.include_unit is not None:
        doc["include_unit"] = args.include_unit
    if args.k is not None:
        doc["k"] = args.k
    if args.primes is not None:
        try:
            doc["primes"] = [int(tok) for tok in args.primes.split(",") if tok]
        except ValueError as exc:
            raise ValueError("--primes expects a comma-separated integer list") from exc
    if args.scale is not None:
        doc["scale"] = args.scale
    return monoids.descriptor_from_dict(doc)


def _bounds_dict(args) -> dict:
    return {
        "max_index": args.max_index,
        "max_length": args.max_length,
        "max_coeff": args.max_coeff,
        "max_steps": args.max_steps,
    }


def _bounds(args) -> Bounds:
    if args.max_index < 1 or args.max_length < 1 or args.max_coeff < 1 or args.max_steps < 0:
        raise ValueError("bounds must be positive")
    return Bounds(max_index=args.max_index, max_coeff=args.max_coeff)


def _completeness_dict(c: factorization.Completeness) -> dict:
    return {"kind": c.kind, "max_length": c.max_length, "max_index": c.max_index}


def _completeness_text(c: factorization.Completeness) -> str:
    if c.kind == "complete":
        return "complete"
    if c.kind == "complete_up_to_bounds":
        bits = []
        if c.max_length is not None:
            bits.append(f"length <= {c.max_length}")
        if c.max_index is not None:
            bits.append(f"index <= {c.max_index}")
        return "complete up to bounds (" + ", ".join(bits) + ")"
    return "unknown"


# ---------------------------------------------------------------------------
# verb handlers: each returns (status, payload, notes, human_lines)

def _run_classify(desc, args, bounds):
    report = monoids.classify(desc)
    flags = {name: {"verdict": f.verdict, "why": f.why} for name, f in report.items()}
    payload = {"descriptor_text": reports.describe(desc), "flags": flags}
    rows = [[name, flag.verdict, flag.why] for name, flag in report.items()]
    lines = [f"descriptor: {reports.describe(desc)}"]
    lines += reports.table(rows, ["flag", "verdict", "justification"])
    return "ok", payload, [], lines


def _run_generators(desc, args, bounds):
    if args.count < 1:
        raise ValueError("--count must be >= 1")
    items = []
    rows = []
    for i in monoids.generator_indices(desc, args.count):
        term = monoids.generator(desc, i)
        items.append({
            "index": term.index,
            "value": str(term.value),
            "controlling_prime": term.controlling_prime,
        })
        rows.append([str(term.index), str(term.value),
                     "-" if term.controlling_prime is None else str(term.controlling_prime)])
    lines = reports.table(rows, ["index", "value", "controlling_prime"])
    return "ok", {"items": items}, [], lines


def _run_decompose(desc, args, bounds):
    value = parse_rational(args.value)
    result = decomposition.atomic_decompose(desc, value)
    if isinstance(result, NotMember):
        payload = {"value": str(value), "reason": result.reason, "detail": result.detail}
        return "not_member", payload, [], [f"not a member ({result.reason}): {result.detail}"]
    rendering = decomposition.render_decomposition(desc, result)
    payload = {
        "value": str(value),
        "eta": result.eta,
        "zeta": reports.pairs_list(result.zeta),
        "rendering": rendering,
    }
    notes = ["closed form: every coefficient is the unique admissible residue "
             "modulo its generator's denominator"]
    return "ok", payload, notes, [rendering]


def _member_payload(desc, value, verdict):
    if isinstance(verdict, Member):
        rendering = reports.render_certificate(desc, value, verdict.coefficients, verdict.eta)
        payload = {
            "value": str(value),
            "verdict": "member",
            "certificate": reports.pairs_list(verdict.coefficients),
            "eta": verdict.eta,
            "rendering": rendering,
        }
        notes = [verdict.note] if verdict.note else []
        return "ok", payload, notes, [f"member: {rendering}"]
    if isinstance(verdict, NotMember):
        payload = {
            "value": str(value),
            "verdict": "not_member",
            "certificate": None,
            "reason": verdict.reason,
            "detail": verdict.detail,
        }
        return "not_member", payload, [], [f"not a member ({verdict.reason}): {verdict.detail}"]
    payload = {
        "value": str(value),
        "verdict": "unknown",
        "certificate": None,
        "detail": verdict.detail,
    }
    return "unknown", payload, [], [f"unknown within bounds ({verdict.bounds.describe()})"]


def _run_member(desc, args, bounds):
    value = parse_rational(args.value)
    verdict = decomposition.member(desc, value, bounds)
    return _member_payload(desc, value, verdict)


def _run_divides(desc, args, bounds):
    divisor = parse_rational(args.divisor)
    dividend = parse_rational(args.dividend)
    verdict = decomposition.divides(desc, divisor, dividend, bounds)
    status, payload, notes, lines = _member_payload(
        desc, max(dividend - divisor, Fraction(0)), verdict
    )
    payload.pop("value", None)
    payload["divisor"] = str(divisor)
    payload["dividend"] = str(dividend)
    if dividend >= divisor:
        payload["difference"] = str(dividend - divisor)
    if status == "ok":
        head = f"{divisor} divides {dividend}"
        detail = [line.removeprefix("member: ") for line in lines]
    elif status == "not_member":
        head = f"{divisor} does not divide {dividend}"
        detail = lines
    else:
        head = f"{divisor} | {dividend} undecided within bounds"
        detail = lines
    return status, payload, notes, [head] + detail


def _run_factorize(desc, args, bounds):
    value = parse_rational(args.value)
    result = factorization.enumerate_factorizations(
        desc, value, args.max_length, args.max_index
    )
    return _factorization_report(desc, value, result, length=None)


def _run_zlength(desc, args, bounds):
    value = parse_rational(args.value)
    if args.length < 1:
        raise ValueError("length must be >= 1")
    result = factorization.factorizations_of_length(desc, value, args.length)
    return _factorization_report(desc, value, result, length=args.length)


def _factorization_report(desc, value, result, length):
    items = [
        {"exponents": reports.pairs_list(f.exponents), "length": f.length}
        for f in result.items
    ]
    payload = {
        "value": str(value),
        "items": items,
        "completeness": _completeness_dict(result.completeness),
    }
    if length is not None:
        payload["length"] = length
    what = f"factorizations of {value}"
    if length is not None:
        what += f" with length {length}"
    lines = [f"{what}: {len(result.items)} ({_completeness_text(result.completeness)})"]
    for f in result.items:
        lines.append(f"  length {f.length}: {reports.coefficient_terms(desc, f.exponents)}")
    return "ok", payload, [], lines


def _run_lengths(desc, args, bounds):
    value = parse_rational(args.value)
    if args.up_to < 1:
        raise ValueError("--up-to must be >= 1")
    result = factorization.length_set(desc, value, args.up_to)
    payload = {
        "value": str(value),
        "window": args.up_to,
        "lengths": list(result.lengths),
        "completeness": _completeness_dict(result.completeness),
    }
    body = "{" + ", ".join(str(x) for x in result.lengths) + "}"
    lines = [
        f"lengths of {value} within [1, {args.up_to}]: {body}",
        f"completeness: {_completeness_text(result.completeness)}",
    ]
    return "ok", payload, [], lines


def _run_atoms(desc, args, bounds):
    if args.count < 1:
        raise ValueError("--count must be >= 1")
    items = []
    rows = []
    for i in monoids.generator_indices(desc, args.count):
        cert = factorization.is_atom(desc, i, bounds)
        witness = None
        witness_text = "-"
        if cert.witness is not None:
            witness = reports.pairs_list(cert.witness.exponents)
            witness_text = reports.coefficient_terms(desc, cert.witness.exponents)
        items.append({
            "index": i,
            "verdict": cert.verdict,
            "why": cert.why,
            "witness": witness,
        })
        rows.append([str(i), str(monoids.generator_value(desc, i)), cert.verdict, witness_text])
    lines = reports.table(rows, ["index", "value", "verdict", "witness"])
    return "ok", {"items": items}, [], lines


def _run_chain(desc, args, bounds):
    if desc.family == "grams":
        witness = chains.grams_chain(desc, args.max_steps)
    elif desc.family == "gap":
        witness = chains.gap_chain(desc, args.max_steps)
    else:
        raise UnsupportedFamilyError(
            "chain witnesses exist for the grams and gap families only"
        )
    verification = chains.verify_chain(desc, witness)
    steps_payload = []
    rows = [["0", str(witness.elements[0]), "-", "-"]]
    for k, cert in enumerate(witness.steps, start=1):
        diff = witness.elements[k - 1] - witness.elements[k]
        steps_payload.append({
            "difference": str(diff),
            "certificate": reports.pairs_list(cert),
        })
        rows.append([
            str(k),
            str(witness.elements[k]),
            str(diff),
            reports.coefficient_terms(desc, cert),
        ])
    payload = {
        "elements": [str(e) for e in witness.elements],
        "steps": steps_payload,
        "verified": verification.ok,
    }
    lines = reports.table(rows, ["step", "element", "difference", "certificate"])
    lines.append(f"verified: {'true' if verification.ok else 'false'}")
    status = "ok" if verification.ok else "error"
    return status, payload, [], lines


_HANDLERS = {
    "classify": _run_classify,
    "generators": _run_generators,
    "decompose": _run_decompose,
    "member": _run_member,
    "divides": _run_divides,
    "factorize": _run_factorize,
    "lengths": _run_lengths,
    "zlength": _run_zlength,
    "atoms": _run_atoms,
    "chain": _run_chain,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    as_json = bool(getattr(args, "json", False))
    desc = None
    try:
        desc = _build_descriptor(args)
        bounds = _bounds(args)
        status, payload, notes, lines = _HANDLERS[args.verb](desc, args, bounds)
    except UnsupportedFamilyError as exc:
        status, payload, notes, lines = "unsupported", {"detail": str(exc)}, [], []
        print(f"unsupported: {exc}", file=sys.stderr)
    except (ValueError, NotInMonoidError, OSError) as exc:
        if as_json:
            doc = reports.envelope(args.verb, "error", desc, _bounds_dict(args),
                                   [], {"detail": str(exc)})
            print(json.dumps(doc, sort_keys=True, indent=2))
        print(f"error: {exc}", file=sys.stderr)
        return 1
    doc = reports.envelope(args.verb, status, desc, _bounds_dict(args), notes, payload)
    if as_json:
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        for line in lines:
            print(line)
    return reports.EXIT_CODES[status]


if __name__ == "__main__":
    raise SystemExit(main())
