"""Command-line front end with stable JSON input and output.

Subcommands: check, decompose, scenario, oracle, table, symbols.  Problems
are read from a file argument or standard input as a single JSON document;
unknown keys are rejected.  Exit codes: 0 verdict produced (simple or not),
1 invalid input, 2 unsupported, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import engine
from . import groups as G
from . import lattices as L
from . import oracle as O
from .arith import (
    Place,
    hilbert_symbol,
    is_sum_of_three_squares,
    ramified_places,
    squarefree_part,
)
from .errors import InvalidInputError, ResourceLimitError, UnsupportedError
from .numberfields import (
    AbelianField,
    AbelianFieldDesc,
    NonGaloisQuarticCM,
    QuadraticField,
    QuaternionAlgebraQ,
    RationalField,
    algebra_dimension,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_UNSUPPORTED = 2
EXIT_RESOURCE = 3

ORACLE_CROSSCHECK_BOUND = 60


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ": "), indent=1) + "\n"


def _as_int(value, what: str) -> int:
    if isinstance(value, bool):
        raise InvalidInputError(f"{what} must be an integer")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        stripped = value.strip()
        sign = stripped[1:] if stripped[:1] in "+-" else stripped
        if sign.isdigit():
            return int(stripped)
    raise InvalidInputError(f"{what} must be an integer or decimal string, got {value!r}")


def _check_keys(doc: dict, allowed: set[str], what: str):
    if not isinstance(doc, dict):
        raise InvalidInputError(f"{what} must be a JSON object")
    unknown = set(doc) - allowed
    if unknown:
        raise InvalidInputError(f"unknown keys in {what}: {sorted(unknown)}")


def parse_group(doc) -> G.GroupSpec:
    _check_keys(doc, {"type", "order", "invariants"}, "group")
    gtype = doc.get("type")
    if gtype == "cyclic":
        return G.Cyclic(_as_int(doc.get("order"), "group.order"))
    if gtype == "dihedral":
        return G.Dihedral(_as_int(doc.get("order"), "group.order"))
    if gtype == "quaternion8":
        return G.Quaternion8()
    if gtype == "abelian":
        invs = doc.get("invariants")
        if not isinstance(invs, list) or not invs:
            raise InvalidInputError("abelian group needs a nonempty invariants list")
        return G.AbelianProduct(tuple(_as_int(x, "invariant") for x in invs))
    raise InvalidInputError(f"unknown group type {gtype!r}")


def parse_lattice(doc, group: G.GroupSpec) -> L.IntegralRep:
    _check_keys(doc, {"name", "p", "matrices"}, "lattice")
    if "matrices" in doc:
        if "name" in doc:
            raise InvalidInputError("lattice takes either a name or explicit matrices")
        mats = doc["matrices"]
        if not isinstance(mats, list):
            raise InvalidInputError("lattice.matrices must be a list of generator matrices")
        parsed = [
            [[_as_int(x, "matrix entry") for x in row] for row in m] for m in mats
        ]
        return L.rep_from_generators(group, parsed, name="explicit")
    name = doc.get("name")
    if not isinstance(name, str):
        raise InvalidInputError("lattice needs a name or matrices")
    p = doc.get("p")
    return L.named_lattice(name, group=group, p=None if p is None else _as_int(p, "lattice.p"))


def parse_end_algebra(doc):
    _check_keys(doc, {"type", "d", "conductor", "subgroup", "d0", "a", "b"}, "endomorphism_algebra")
    atype = doc.get("type")
    if atype == "Q":
        return RationalField()
    if atype == "quadratic":
        return QuadraticField(squarefree_part(_as_int(doc.get("d"), "d")))
    if atype == "abelian_field":
        n = _as_int(doc.get("conductor"), "conductor")
        sub = doc.get("subgroup")
        if not isinstance(sub, list):
            raise InvalidInputError("abelian_field needs a subgroup generator list")
        desc = AbelianFieldDesc.make(n, [_as_int(x, "subgroup generator") for x in sub])
        return RationalField() if desc.degree == 1 else AbelianField(desc)
    if atype == "nongalois_quartic_cm":
        return NonGaloisQuarticCM(_as_int(doc.get("d0"), "d0"))
    if atype == "quaternion":
        return QuaternionAlgebraQ(_as_int(doc.get("a"), "a"), _as_int(doc.get("b"), "b"))
    raise InvalidInputError(f"unknown endomorphism algebra type {atype!r}")


def parse_hypotheses(doc) -> engine.Hypotheses:
    if doc is None:
        return engine.Hypotheses()
    _check_keys(
        doc,
        {"dimension", "absolutely_simple", "principally_polarised", "end_stability"},
        "hypotheses",
    )
    kwargs = {}
    if "dimension" in doc:
        kwargs["dimension"] = _as_int(doc["dimension"], "dimension")
    for key in ("absolutely_simple", "principally_polarised"):
        if key in doc:
            if not isinstance(doc[key], bool):
                raise InvalidInputError(f"hypotheses.{key} must be a boolean")
            kwargs[key] = doc[key]
    if "end_stability" in doc:
        kwargs["end_stability"] = doc["end_stability"]
    return engine.Hypotheses(**kwargs)


def parse_problem(doc) -> engine.TwistProblem:
    _check_keys(doc, {"group", "lattice", "endomorphism_algebra", "hypotheses"}, "problem")
    for key in ("group", "lattice", "endomorphism_algebra"):
        if key not in doc:
            raise InvalidInputError(f"problem is missing {key!r}")
    group = parse_group(doc["group"])
    lattice = parse_lattice(doc["lattice"], group)
    end_algebra = parse_end_algebra(doc["endomorphism_algebra"])
    hyp = parse_hypotheses(doc.get("hypotheses"))
    return engine.TwistProblem(group, lattice, end_algebra, hyp)


def _read_document(path: str | None) -> dict:
    try:
        if path in (None, "-"):
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InvalidInputError(f"cannot read input: {exc}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"malformed JSON: {exc}")


# --- subcommands -------------------------------------------------------------------


def _cmd_check(args) -> tuple[int, dict]:
    problem = parse_problem(_read_document(args.input))
    gate, verdict = engine.check_and_decide(problem)
    out = {"gate": gate.describe(), "verdict": verdict.describe()}
    out["oracle_crosscheck"] = _crosscheck(problem, verdict, args.no_oracle_crosscheck)
    code = EXIT_OK if verdict.outcome in ("simple", "not_simple") else EXIT_UNSUPPORTED
    return code, out


def _crosscheck(problem: engine.TwistProblem, verdict: engine.Verdict, disabled: bool) -> dict:
    if disabled:
        return {"ran": False, "reason": "disabled by flag"}
    if verdict.outcome not in ("simple", "not_simple"):
        return {"ran": False, "reason": "no engine verdict to check"}
    size = problem.lattice.rank * algebra_dimension(problem.end_algebra)
    if size > ORACLE_CROSSCHECK_BOUND:
        return {"ran": False, "reason": f"size {size} exceeds crosscheck bound {ORACLE_CROSSCHECK_BOUND}"}
    report = O.end_of_twist_oracle(problem.lattice, problem.end_algebra)
    result = {
        "ran": True,
        "oracle_outcome": report.verdict.outcome,
        "oracle_dimension": report.dimension,
    }
    if report.verdict.outcome == "inconclusive":
        result["status"] = "skipped_inconclusive"
        return result
    agree = (verdict.outcome == "simple") == report.verdict.is_division
    if not agree:
        raise RuntimeError(
            "engine and commutant oracle disagree: "
            f"engine={verdict.outcome} oracle={report.verdict.outcome}"
        )
    result["status"] = "agree"
    return result


def _cmd_decompose(args) -> tuple[int, dict]:
    doc = _read_document(args.input)
    _check_keys(doc, {"group", "endomorphism_algebra", "hypotheses"}, "decompose input")
    group = parse_group(doc.get("group"))
    end_algebra = parse_end_algebra(doc.get("endomorphism_algebra", {"type": "Q"}))
    hyp = parse_hypotheses(doc.get("hypotheses"))
    factors = engine.weil_restriction_decompose(group, end_algebra, hyp)
    total = sum(f["multiplicity"] * f["q_dimension"] for f in factors)
    out = {"group": str(group), "factors": factors, "total_dimension": total}
    code = EXIT_OK
    if any(f["verdict"]["outcome"] == "unsupported" for f in factors):
        code = EXIT_UNSUPPORTED
    return code, out


def _cmd_scenario(args) -> tuple[int, dict]:
    doc = _read_document(args.input)
    _check_keys(doc, {"name", "params"}, "scenario input")
    name = doc.get("name")
    raw = doc.get("params") or {}
    if not isinstance(raw, dict):
        raise InvalidInputError("scenario params must be an object")
    params = dict(raw)
    for key in ("p", "dim", "d"):
        if key in params:
            params[key] = _as_int(params[key], f"params.{key}")
    if "end_algebra" in params:
        params["end_algebra"] = parse_end_algebra(params["end_algebra"])
    if "group" in params:
        params["group"] = parse_group(params["group"])
    report = engine.scenario(name, params)
    verdict = report.get("verdict")
    code = EXIT_OK
    if verdict is not None and verdict["outcome"] == "unsupported":
        code = EXIT_UNSUPPORTED
    return code, report


def _cmd_oracle(args) -> tuple[int, dict]:
    problem = parse_problem(_read_document(args.input))
    report = O.end_of_twist_oracle(
        problem.lattice, problem.end_algebra, method=args.method
    )
    out = report.describe()
    if args.include_basis:
        out["basis"] = [
            [[str(x) for x in row] for row in matrix] for matrix in report.presentation.basis
        ]
    return EXIT_OK, out


def _cyclotomic_json(value) -> dict:
    return {"conductor": value.n, "coeffs": [str(c) for c in value.coeffs]}


def _cmd_table(args) -> tuple[int, dict | str]:
    doc = _read_document(args.input)
    _check_keys(doc, {"group"}, "table input")
    group = parse_group(doc.get("group"))
    table = G.character_table(group)
    if args.format == "text":
        return EXIT_OK, _render_table_text(table)
    out = {
        "group": str(group),
        "order": G.group_order(group),
        "exponent": G.group_exponent(group),
        "classes": [
            {"representative": G.element_repr(group, rep), "size": len(members)}
            for rep, members in zip(table.class_representatives, table.class_members)
        ],
        "characters": [
            {
                "name": c.name,
                "degree": c.degree,
                "indicator": G.frobenius_schur(table, c),
                "values": [_cyclotomic_json(v) for v in c.values],
            }
            for c in table.characters
        ],
    }
    return EXIT_OK, out


def _render_table_text(table: G.CharacterTable) -> str:
    group = table.group
    headers = [G.element_repr(group, rep) for rep in table.class_representatives]
    rows = [["", *headers], ["size", *[str(len(m)) for m in table.class_members]]]
    for c in table.characters:
        rows.append([c.name, *[repr(v) for v in c.values]])
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in rows]
    return "\n".join(lines) + "\n"


def _parse_place(value) -> Place:
    if value in ("oo", "infinity", "infinite"):
        return Place.infinite()
    return Place.finite(_as_int(value, "place"))


def _cmd_symbols(args) -> tuple[int, dict]:
    doc = _read_document(args.input)
    _check_keys(doc, {"operation", "a", "b", "d", "place"}, "symbols input")
    op = doc.get("operation")
    if op == "hilbert_symbol":
        result = hilbert_symbol(
            _as_int(doc.get("a"), "a"), _as_int(doc.get("b"), "b"), _parse_place(doc.get("place"))
        )
    elif op == "ramified_places":
        ram = ramified_places(_as_int(doc.get("a"), "a"), _as_int(doc.get("b"), "b"))
        result = sorted((("oo" if v.is_infinite else v.p) for v in ram), key=str)
    elif op == "is_sum_of_three_squares":
        result = is_sum_of_three_squares(_as_int(doc.get("d"), "d"))
    elif op == "squarefree_part":
        result = squarefree_part(_as_int(doc.get("d"), "d"))
    else:
        raise InvalidInputError(f"unknown symbols operation {op!r}")
    return EXIT_OK, {"operation": op, "result": result}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twistcheck",
        description="Exact simplicity tests for Galois twists of abelian varieties.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("input", nargs="?", default=None, help="JSON file path, or - for stdin")

    p = sub.add_parser("check", help="decide simplicity of a twist problem")
    p.add_argument("--no-oracle-crosscheck", action="store_true")
    add_input(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("decompose", help="Weil-restriction isogeny factors")
    add_input(p)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("scenario", help="run a canned scenario")
    add_input(p)
    p.set_defaults(func=_cmd_scenario)

    p = sub.add_parser("oracle", help="raw commutant-oracle dump for a problem")
    p.add_argument("--include-basis", action="store_true")
    p.add_argument("--method", choices=["factored", "direct"], default="factored")
    add_input(p)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("table", help="character table of a catalog group")
    p.add_argument("--format", choices=["json", "text"], default="json")
    add_input(p)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("symbols", help="Hilbert symbols and related utilities")
    add_input(p)
    p.set_defaults(func=_cmd_symbols)
    return parser


def run(argv) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        code, out = args.func(args)
    except InvalidInputError as exc:
        sys.stdout.write(_dump({"error": {"code": "invalid_input", "message": str(exc)}}))
        return EXIT_INVALID
    except UnsupportedError as exc:
        sys.stdout.write(_dump({"error": {"code": "unsupported", "message": str(exc)}}))
        return EXIT_UNSUPPORTED
    except ResourceLimitError as exc:
        sys.stdout.write(_dump({"error": {"code": "resource_limit", "message": str(exc)}}))
        return EXIT_RESOURCE
    if isinstance(out, str):
        sys.stdout.write(out)
    else:
        sys.stdout.write(_dump(out))
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
