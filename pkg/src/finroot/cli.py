"""Command-line front end: ``finroot verify|build|weyl|iso|catalog|matrix|dump``.

Exit codes: 0 pass, 1 mathematical failure or mismatch with expected
metadata, 2 malformed input, 3 cap or budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Any

from . import __version__
from . import catalog, liealg, matrixmodel
from .abelian import FiniteAbelianGroup
from .catalog import BadParameters
from .rootsystem import (
    DEFAULT_ISO_BUDGET,
    DEFAULT_WEYL_CAP,
    BudgetExceeded,
    CapExceeded,
    RootSystem,
    find_isomorphism,
    is_irreducible,
    reduce,
    verify,
    weyl_group,
)
from .symplectic import InvalidForm

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
REPORT_SCHEMA = "frs-report-1"


class InputError(Exception):
    pass


class Exhausted(Exception):
    pass


def _default_cap(fallback: int) -> int:
    env = os.environ.get("FRS_CAP")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"FRS_CAP must be an integer, got {env!r}")
    return fallback


def _load_system(args) -> tuple[RootSystem, dict]:
    if getattr(args, "input", None):
        try:
            with open(args.input) as fh:
                doc = json.load(fh)
            return RootSystem.from_json(doc), {"input": os.path.basename(args.input)}
        except (OSError, json.JSONDecodeError, ValueError) as exc:
            raise InputError(str(exc))
    if getattr(args, "type", None):
        return _from_tag(args.type), {"type": args.type}
    raise InputError("give --type TAG or --input FILE")


def _from_tag(tag: str) -> RootSystem:
    try:
        return catalog.make_tag(tag)
    except BadParameters as exc:
        raise InputError(str(exc))


def _expected(tag: str) -> catalog.CatalogEntry:
    return catalog.expected(*catalog.parse_tag(tag))


def _el(a) -> list[int]:
    return list(a)


# ---------------------------------------------------------------------------
# commands; each returns (ok, inputs, results)
# ---------------------------------------------------------------------------

def cmd_verify(args) -> tuple[bool, dict, dict]:
    R, inputs = _load_system(args)
    report = verify(R)
    results: dict[str, Any] = {
        "group_orders": list(R.group.orders),
        "group_size": R.group.size,
        "num_roots": len(R),
        "axioms": report.as_dict(),
        "radical": [_el(a) for a in sorted(R.radical)],
        "reduced": R.is_reduced,
    }
    if report.ok:
        results["irreducible"] = is_irreducible(R)
        Rbar = reduce(R)
        results["reduced_quotient"] = {"group_orders": list(Rbar.group.orders), "num_roots": len(Rbar)}
    return report.ok, inputs, results


def cmd_build(args) -> tuple[bool, dict, dict]:
    R = _from_tag(args.type)
    checks = [c for c in args.check.split(",") if c] if args.check else []
    unknown = set(checks) - {"jacobi", "killing", "center"}
    if unknown:
        raise InputError(f"unknown checks: {', '.join(sorted(unknown))}")
    try:
        L = liealg.build_root(R)
    except liealg.InvalidRootSystem as exc:
        return False, {"type": args.type}, {"error": str(exc)}
    table = L.bracket_table()
    results: dict[str, Any] = {"dim": L.dim, "nonzero_brackets": len(table), "modulus": L.modulus, "checks": {}}
    ok = True
    if "jacobi" in checks:
        j = liealg.check_jacobi(L)
        results["checks"]["jacobi"] = {"ok": j.ok, "triples": j.triples,
                                       "witness": [_el(x) for x in j.witness] if j.witness else None}
        ok &= j.ok
    if "killing" in checks:
        k = liealg.killing(L)
        kd = {
            "ok": k.nondegenerate and k.closed_form_positive,
            "nondegenerate": k.nondegenerate,
            "closed_form_positive": k.closed_form_positive,
            "trace_positive": k.trace_positive,
            "closed_form_equals_trace": k.closed_form_equals_trace,
            "roots_where_trace_differs": len(k.mismatches()),
            "closed_form_values": sorted({str(v.coeffs[0]) for v in k.closed_form.values()}) if all(
                v.is_rational() for v in k.closed_form.values()) else None,
        }
        results["checks"]["killing"] = kd
        ok &= kd["ok"]
    if "center" in checks:
        Z, D = liealg.check_center_derived(L)
        cd = {"ok": not Z and D == L.support_set, "center_dim": len(Z), "derived_dim": len(D)}
        results["checks"]["center"] = cd
        ok &= cd["ok"]
    return ok, {"type": args.type, "check": checks}, results


def cmd_weyl(args) -> tuple[bool, dict, dict]:
    R, inputs = _load_system(args)
    cap = args.cap if args.cap is not None else _default_cap(DEFAULT_WEYL_CAP)
    inputs["cap"] = cap
    try:
        W = weyl_group(R, cap=cap)
    except CapExceeded as exc:
        raise Exhausted(str(exc))
    results: dict[str, Any] = {"order": W.order, "generators": len(W.generators)}
    ok = True
    if getattr(args, "type", None):
        e = _expected(args.type)
        results["expected_label"] = e.weyl_label
        results["expected_order"] = e.weyl_order
        if e.weyl_order is not None:
            results["match"] = e.weyl_order == W.order
            ok = results["match"]
    return ok, inputs, results


def cmd_iso(args) -> tuple[bool, dict, dict]:
    R1, R2 = _from_tag(args.left), _from_tag(args.right)
    budget = args.budget if args.budget is not None else _default_cap(DEFAULT_ISO_BUDGET)
    try:
        res = find_isomorphism(R1, R2, budget=budget)
    except BudgetExceeded as exc:
        raise Exhausted(str(exc))
    results: dict[str, Any] = {
        "isomorphic": res.found,
        "nodes": res.nodes,
        "reason": res.reason,
        "matrix": [list(r) for r in res.isomorphism.matrix] if res.found else None,
    }
    key1, key2 = catalog.parse_tag(args.left), catalog.parse_tag(args.right)
    ok = True
    for a, b, exp in catalog.coincidences():
        if {a, b} == {key1, key2}:
            results["expected"] = exp
            ok = exp == res.found
    return ok, {"left": args.left, "right": args.right, "budget": budget}, results


def catalog_row(family: str, params: tuple, weyl_limit: int) -> dict:
    e = catalog.expected(family, params)
    R = catalog.make(family, params)
    rep = verify(R)
    row: dict[str, Any] = {
        "name": e.name,
        "tag": e.tag,
        "lie_type": e.lie_type,
        "dim": {"expected": e.lie_dim, "computed": len(R)},
        "group_orders": {"expected": list(e.group_orders), "computed": list(R.group.orders)},
        "verify": rep.ok,
        "reduced": {"expected": e.reduced, "computed": R.is_reduced},
        "irreducible": {"expected": e.irreducible, "computed": is_irreducible(R)},
        "weyl": {"label": e.weyl_label, "expected": e.weyl_order, "computed": None},
    }
    if e.weyl_order is not None and e.weyl_order <= weyl_limit:
        row["weyl"]["computed"] = weyl_group(R).order
    checks = [
        row["dim"]["expected"] == row["dim"]["computed"],
        row["group_orders"]["expected"] == row["group_orders"]["computed"],
        rep.ok,
        row["reduced"]["expected"] == row["reduced"]["computed"],
        row["irreducible"]["expected"] == row["irreducible"]["computed"],
        row["weyl"]["computed"] is None or row["weyl"]["computed"] == row["weyl"]["expected"],
    ]
    row["ok"] = all(checks)
    return row


def cmd_catalog(args) -> tuple[bool, dict, dict]:
    rows = [catalog_row(f, p, args.weyl_limit) for f, p in catalog.entries(args.max_dim)]
    return all(r["ok"] for r in rows), {"max_dim": args.max_dim, "weyl_limit": args.weyl_limit}, {"entries": rows}


def matrix_checks(family: str, params: tuple, wanted: list[str]) -> dict:
    """Matrix-model verifications available for the family."""
    out: dict[str, Any] = {}
    k = params[0]
    R = catalog.make(family, params)
    if family == "I":
        L = liealg.build_root(R)
        if "iso" in wanted:
            out["iso"] = matrixmodel.verify_iso(L, matrixmodel.model_sl(params, L.support)).ok
        if "action" in wanted:
            grading = matrixmodel.epsilon_tensor_model(params).restrict(L.support)
            gens = _slot_generators(params)
            out["action"] = matrixmodel.verify_dual_action(grading, gens).ok
    elif family in ("II", "IVprime"):
        n = 2 * k + 1 if family == "II" else 2 * k
        L = liealg.GradedLieAlgebra(catalog.natural_cocycle(family, params), R.roots)
        if "iso" in wanted:
            out["iso"] = matrixmodel.verify_iso(L, matrixmodel.model_so_pairs(n)).ok
    elif family in ("III", "V"):
        skew = family == "III"
        model, K = matrixmodel.model_pauli_tensor(k, skew)
        if "support" in wanted:
            q = catalog.form_f if skew else catalog.form_g
            G = FiniteAbelianGroup([2] * (2 * k))
            out["support"] = set(K) == {a for a in G.elements() if q(a) == 1} == set(R.roots)
        if "iso" in wanted:
            L = liealg.GradedLieAlgebra(catalog.natural_cocycle(family, params), R.roots)
            eta = matrixmodel.solve_eta(L, model)
            out["iso"] = eta is not None and matrixmodel.verify_iso(L, matrixmodel.apply_eta(model, eta)).ok
        if "action" in wanted:
            grading, _ = matrixmodel.pauli_tensor_model(k, skew)
            grading = grading.restrict(K)
            out["action"] = matrixmodel.verify_dual_action(grading, matrixmodel.pauli_generators(k)).ok
    else:
        raise InputError(f"no matrix model for family {family}")
    return out


def _slot_generators(ns) -> list:
    """X_{n_t}, Y_{n_t} placed in tensor slot t, identity elsewhere."""
    out = []
    paulis = [matrixmodel.generalized_pauli(n) for n in ns]
    for slot in range(len(ns)):
        for which in range(2):
            M = None
            for t, n in enumerate(ns):
                F = paulis[t][which] if t == slot else matrixmodel.ExactMatrix.identity(n)
                M = F if M is None else M.kron(F)
            out.append(M)
    return out


def cmd_matrix(args) -> tuple[bool, dict, dict]:
    family, params = _parse(args.type)
    wanted = [w for w in args.verify.split(",") if w]
    unknown = set(wanted) - {"iso", "action", "support"}
    if unknown:
        raise InputError(f"unknown verifications: {', '.join(sorted(unknown))}")
    res = matrix_checks(family, params, wanted)
    return all(res.values()), {"type": args.type, "verify": wanted}, res


def cmd_dump(args) -> tuple[bool, dict, dict]:
    R = _from_tag(args.type)
    if args.brackets:
        return True, {"type": args.type}, {"brackets": liealg.build_root(R).to_json()}
    return True, {"type": args.type}, {"system": R.to_json()}


def _parse(tag: str):
    try:
        return catalog.parse_tag(tag)
    except BadParameters as exc:
        raise InputError(str(exc))


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _table(command: str, ok: bool, results: dict) -> str:
    lines = [f"{command}: {'PASS' if ok else 'FAIL'}"]
    if command == "catalog":
        hdr = f"{'name':<12} {'lie':<8} {'dim':>4} {'|G|':>6} {'red':>4} {'irr':>4} {'weyl':>14} {'ok':>3}"
        lines.append(hdr)
        for r in results["entries"]:
            size = 1
            for n in r["group_orders"]["computed"]:
                size *= n
            w = r["weyl"]["computed"]
            lines.append(
                f"{r['name']:<12} {r['lie_type']:<8} {r['dim']['computed']:>4} {size:>6} "
                f"{'y' if r['reduced']['computed'] else 'n':>4} {'y' if r['irreducible']['computed'] else 'n':>4} "
                f"{(str(w) if w is not None else '-'):>14} {'y' if r['ok'] else 'n':>3}"
            )
        return "\n".join(lines)

    def walk(prefix, obj):
        if isinstance(obj, dict):
            for k, v in obj.items():
                walk(f"{prefix}{k}.", v)
        else:
            lines.append(f"  {prefix[:-1]} = {json.dumps(obj)}")

    walk("", results)
    return "\n".join(lines)


COMMANDS = {
    "verify": cmd_verify,
    "build": cmd_build,
    "weyl": cmd_weyl,
    "iso": cmd_iso,
    "catalog": cmd_catalog,
    "matrix": cmd_matrix,
    "dump": cmd_dump,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="finroot", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"finroot {__version__}")
    p.add_argument("--format", choices=("json", "table"), default="json")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", help="check the FRS axioms")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--type", help="catalog tag, e.g. II:2")
    g.add_argument("--input", help="root-system JSON file")

    s = sub.add_parser("build", help="build L(R) and run checks")
    s.add_argument("--type", required=True)
    s.add_argument("--check", default="jacobi,killing,center")

    s = sub.add_parser("weyl", help="enumerate the Weyl group")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--type")
    g.add_argument("--input")
    s.add_argument("--cap", type=int, default=None)

    s = sub.add_parser("iso", help="search for an isomorphism")
    s.add_argument("--left", required=True)
    s.add_argument("--right", required=True)
    s.add_argument("--budget", type=int, default=None)

    s = sub.add_parser("catalog", help="expected-vs-computed table")
    s.add_argument("--max-dim", type=int, default=63)
    s.add_argument("--weyl-limit", type=int, default=100_000,
                   help="skip Weyl enumeration above this expected order")

    s = sub.add_parser("matrix", help="matrix-model checks")
    s.add_argument("--type", required=True)
    s.add_argument("--verify", default="iso,action,support")

    s = sub.add_parser("dump", help="print a catalog system as JSON")
    s.add_argument("--type", required=True)
    s.add_argument("--brackets", action="store_true", help="dump the bracket table of L(R) instead")
    return p


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        ok, inputs, results = COMMANDS[args.command](args)
        code = EXIT_OK if ok else EXIT_FAIL
    except (InputError, InvalidForm, BadParameters) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    elapsed = time.perf_counter() - start
    if args.format == "table":
        print(_table(args.command, ok, results), file=out)
    else:
        report = {
            "schema": REPORT_SCHEMA,
            "tool": {"name": "finroot", "version": __version__},
            "command": args.command,
            "inputs": inputs,
            "ok": ok,
            "results": results,
            "timings": {"seconds": round(elapsed, 3)},
        }
        print(json.dumps(report, indent=2), file=out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
