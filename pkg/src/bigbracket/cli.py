"""Command-line entry point.

Exit codes: 0 when the check passes, 1 when the mathematics says no (a
violation or failed construction), 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .bracket import (
    NotMaurerCartan,
    _as_proto,
    classify_proto,
    deformation_cohomology,
    mc_check,
    pairing_gram,
    verify_poisson,
)
from . import formality, gs, lie, tetra
from .graded import Element, full_basis
from .lie import JacobiError
from .linalg import cohomology_dims
from .serialize import (
    FormatError,
    dumps,
    element_from_json,
    element_to_json,
    form_from_json,
    form_to_json,
    format_rational,
    hom_to_json,
    lie_from_json,
    lie_to_json,
)

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class InputError(Exception):
    """Malformed or invalid input; reported with exit code 2."""


@dataclass
class RunReport:
    command: str
    inputs: dict
    status: str
    payload: dict = field(default_factory=dict)
    timing_ms: float = 0.0

    def to_json(self) -> dict:
        # timing is left out so that reports are byte-identical across runs
        return {"command": self.command, "inputs": self.inputs, "status": self.status, "payload": self.payload}

    @property
    def exit_code(self) -> int:
        return {"pass": EXIT_PASS, "fail": EXIT_FAIL}.get(self.status, EXIT_ERROR)


def _load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: malformed JSON: {exc.msg}") from None


def _load_element(path: str) -> Element:
    try:
        return element_from_json(_load_json(path))
    except FormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_form(path: str):
    try:
        return form_from_json(_load_json(path))
    except FormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _proto(args) -> "ProtoStructure":
    h = _load_element(args.input)
    try:
        return _as_proto(h, args.dim)
    except ValueError as exc:
        raise InputError(f"{args.input}: {exc}") from None


def _dims_json(dims: dict) -> dict:
    return {str(k): v for k, v in sorted(dims.items())}


# -- subcommands --------------------------------------------------------------


def cmd_verify_poisson(args):
    rep = verify_poisson(args.dim, random_triples=args.triples, seed=args.seed)
    payload = rep.to_json()
    payload["dims"] = {}
    return "pass" if rep.ok else "fail", {"dim": args.dim, "seed": args.seed, "triples": args.triples}, payload


def cmd_mc_check(args):
    h = _proto(args)
    hh, ok = mc_check(h)
    payload = {"bracket_hh": element_to_json(hh), "is_mc": ok, "violations": [] if ok else ["[h,h] != 0"], "dims": {}}
    return "pass" if ok else "fail", {"input": args.input, "dim": h.dim}, payload


def cmd_classify(args):
    h = _proto(args)
    tag = classify_proto(h)
    payload = {
        "classification": tag.value,
        "components": {
            "lambda": element_to_json(h.lam),
            "delta": element_to_json(h.delta),
            "alpha": element_to_json(h.alpha),
            "beta": element_to_json(h.beta),
        },
        "violations": [],
        "dims": {},
    }
    return "pass", {"input": args.input, "dim": h.dim}, payload


def cmd_def_cohomology(args):
    h = _proto(args)
    try:
        dims = deformation_cohomology(h)
    except NotMaurerCartan as exc:
        raise InputError(f"{args.input}: {exc}") from None
    return "pass", {"input": args.input, "dim": h.dim}, {"dims": _dims_json(dims), "violations": []}


def cmd_gs_cohomology(args):
    N = args.max_total if args.max_total is not None else args.max_degree
    if N is None:
        raise InputError("--max-total is required")
    if args.bialgebra_file:
        try:
            A = gs.bialgebra_from_json(_load_json(args.bialgebra_file), name=args.bialgebra_file)
        except gs.AxiomError as exc:
            raise InputError(f"{args.bialgebra_file}: {exc}") from None
        except (FormatError, KeyError, TypeError, ValueError) as exc:
            raise InputError(f"{args.bialgebra_file}: bad bialgebra JSON: {exc}") from None
        name = args.bialgebra_file
    else:
        try:
            A = gs.builtin_bialgebra(args.bialgebra)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        name = args.bialgebra
    inputs = {"bialgebra": name, "max_total": N}
    try:
        dims = gs.gs_cohomology(A, N)
    except gs.GSSignError as exc:
        return "fail", inputs, {"violations": [list(f) for f in exc.failures]}
    return "pass", inputs, {"n": A.n, "dims": _dims_json(dims), "violations": []}


def cmd_hgs(args):
    if args.lie_algebra:
        try:
            g = lie_from_json(_load_json(args.lie_algebra))
        except JacobiError as exc:
            raise InputError(f"{args.lie_algebra}: {exc}") from None
        except (FormatError, ValueError) as exc:
            raise InputError(f"{args.lie_algebra}: {exc}") from None
        name = args.lie_algebra
    else:
        try:
            g = lie.builtin_lie(args.builtin)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        name = args.builtin
    C = tetra.hom_complex(g)
    dims = cohomology_dims(C)
    zero = all(C.differential(n).is_zero() for n in C.dims)
    payload = {"lie_algebra": lie_to_json(g), "zero_differential": zero, "dims": _dims_json(dims)}
    return "pass", {"lie_algebra": name}, payload


def cmd_yoneda(args):
    d = args.dim
    g = lie.abelian(d)
    basis = [Element({m: 1}) for m in full_basis(d)]
    mismatches = []
    pairs = 0
    for a in basis:
        for b in basis:
            pairs += 1
            lhs = tetra.yoneda_product(tetra.hom_from_h(a, d), tetra.hom_from_h(b, d), g)
            if lhs != tetra.hom_from_h(a * b, d):
                mismatches.append([repr(a), repr(b)])
    payload = {
        "pairs": pairs,
        "identification": "e_I f_J -> (-1)^{|J|(|J|-1)/2} (x_J -> x_I)",
        "violations": mismatches[:20],
    }
    return "pass" if not mismatches else "fail", {"dim": d}, payload


def cmd_transport_check(args):
    cap = args.cap
    if cap is None:
        raise InputError("--cap is required")
    rep = tetra.abelian_transport_check(args.dim, cap)
    payload = rep.to_json()
    payload["violations"] = payload["nonzero_full"] + payload["nonzero_transported"]
    return "pass" if rep.ok else "fail", {"dim": args.dim, "cap": cap}, payload


def cmd_formality_check(args):
    d = args.dim
    rep = formality.h1_vanishing_check(d)
    dim, basis = formality.invariant_form_space(d)
    gram = pairing_gram(d)
    ratios = [formality.proportionality(F, gram) for F in basis]
    payload = rep.to_json()
    payload["invariant_forms"] = {
        "dim": dim,
        "ratios_to_pairing": [None if r is None else format_rational(r) for r in ratios],
    }
    payload["violations"] = list(rep.failures)
    if dim != 1 or any(r is None for r in ratios):
        payload["violations"].append({"kind": "invariants", "dim": dim})
    return "pass" if not payload["violations"] else "fail", {"dim": d}, payload


def cmd_boundary(args):
    d = args.dim
    F = _load_form(args.form)
    gram = _load_form(args.gram) if args.gram else None
    inputs = {"dim": d, "form": args.form, "gram": args.gram}
    try:
        g = formality.boundary_construct(F, d, gram)
    except formality.BoundaryError as exc:
        return "fail", inputs, {"violations": [str(exc)]}
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return "pass", inputs, {"g": form_to_json(g), "violations": []}


def cmd_invariants(args):
    d = args.dim
    dim, basis = formality.invariant_form_space(d)
    gram = pairing_gram(d)
    ratios = [formality.proportionality(F, gram) for F in basis]
    ok = dim == 1 and all(r is not None for r in ratios)
    payload = {
        "dim": dim,
        "basis": [form_to_json(F) for F in basis],
        "ratios_to_pairing": [None if r is None else format_rational(r) for r in ratios],
        "violations": [] if ok else ["invariant space is not spanned by the pairing"],
    }
    return "pass" if ok else "fail", {"dim": d}, payload


COMMANDS: dict[str, Callable] = {
    "verify-poisson": cmd_verify_poisson,
    "mc-check": cmd_mc_check,
    "classify": cmd_classify,
    "def-cohomology": cmd_def_cohomology,
    "gs-cohomology": cmd_gs_cohomology,
    "hgs": cmd_hgs,
    "yoneda": cmd_yoneda,
    "transport-check": cmd_transport_check,
    "formality-check": cmd_formality_check,
    "boundary": cmd_boundary,
    "invariants": cmd_invariants,
}


def build_parser() -> argparse.ArgumentParser:
    def global_flags(suppress: bool) -> argparse.ArgumentParser:
        # the subcommand copy uses SUPPRESS so it never clobbers a value given before the command
        dflt = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        g = argparse.ArgumentParser(add_help=False)
        g.add_argument("--json", metavar="PATH", default=dflt(None), help="write the JSON report to PATH ('-' for stdout)")
        g.add_argument("--seed", type=int, default=dflt(0), help="seed for random property suites")
        g.add_argument("--max-degree", type=int, default=dflt(None), help="default for --max-total")
        g.add_argument("--cap", type=int, default=dflt(None), help="PBW filtration cap")
        return g

    parser = argparse.ArgumentParser(prog="bigbracket", description=__doc__.splitlines()[0], parents=[global_flags(False)])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    local = global_flags(True)

    def add(name, help_):
        return sub.add_parser(name, help=help_, parents=[local])

    p = add("verify-poisson", "check Leibniz, antisymmetry and Jacobi on basis elements")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--triples", type=int, default=None, help="number of random triples (default: exhaustive for dim <= 2)")
    for name, help_ in (("mc-check", "compute [h, h]"), ("classify", "classify a proto-Lie bialgebra"), ("def-cohomology", "cohomology of (H, ad_h)")):
        p = add(name, help_)
        p.add_argument("--input", required=True, help="element JSON file")
        p.add_argument("--dim", type=int, default=None, help="dim V (default: largest index used)")
    p = add("gs-cohomology", "Gerstenhaber-Schack cohomology of a finite bialgebra")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--bialgebra", choices=sorted(gs.BUILTIN_BIALGEBRAS))
    src.add_argument("--bialgebra-file", metavar="FILE")
    p.add_argument("--max-total", type=int, default=None)
    p = add("hgs", "cohomology of (wedge g (x) wedge g*, ad_lambda)")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--lie-algebra", metavar="FILE")
    src.add_argument("--builtin", choices=sorted(lie.BUILTIN_LIE))
    p = add("yoneda", "compare the Yoneda product with the product in H")
    p.add_argument("--dim", type=int, required=True)
    p = add("transport-check", "transported differential vanishes for abelian g (needs --cap)")
    p.add_argument("--dim", type=int, required=True)
    p = add("formality-check", "E_1-level formality hypothesis, census and invariants")
    p.add_argument("--dim", type=int, required=True)
    p = add("boundary", "solve Q_l(g) = F for a symmetric form F")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--form", required=True, metavar="F.json")
    p.add_argument("--gram", default=None, metavar="G.json", help="replace the pairing on W")
    p = add("invariants", "gl(V)-invariant symmetric forms on V + V*")
    p.add_argument("--dim", type=int, required=True)
    return parser


def _echo(args: argparse.Namespace) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "json")}


def dispatch(argv: list[str]) -> tuple[RunReport, argparse.Namespace | None]:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        status, inputs, payload = COMMANDS[args.command](args)
    except (InputError, ValueError) as exc:  # ValueError: dimension range and similar preconditions
        status, inputs, payload = "error", _echo(args), {"error": str(exc)}
    report = RunReport(args.command, inputs, status, payload)
    report.timing_ms = round((time.perf_counter() - t0) * 1000, 1)
    return report, args


def _render_text(report: RunReport) -> str:
    lines = [f"{report.command}: {report.status}"]
    for k, v in report.inputs.items():
        lines.append(f"  input {k} = {v}")
    for k, v in report.payload.items():
        if isinstance(v, (dict, list)):
            v = json.dumps(v, sort_keys=True)
            if len(v) > 200:
                v = v[:197] + "..."
        lines.append(f"  {k}: {v}")
    lines.append(f"  time: {report.timing_ms} ms")
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    report, args = dispatch(argv)
    if report.status == "error":
        sys.stderr.write(f"error: {report.payload['error']}\n")
    if args.json:
        text = dumps(report.to_json())
        if args.json == "-":
            sys.stdout.write(text)
        else:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(text)
    else:
        sys.stdout.write(_render_text(report))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
