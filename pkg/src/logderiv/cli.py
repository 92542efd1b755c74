"""Command-line front end.

Subcommands mirror the library: ``arr lattice|canonical|circuits``,
``deriv check|graded``, ``free check``, ``syzygy system|gens|verify``,
``constraints``, ``critical verify|search``, ``transport`` and
``example ziegler``.  Output is deterministic (byte-identical for identical
inputs) in both text and ``--json`` modes; rationals are always rendered as
"p/q" strings, never floats.

Exit codes: 0 success, 1 usage error, 2 domain error (the error class is
named in the diagnostics).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import (
    arrangement as arr_mod,
    constraints as con_mod,
    derivations as der_mod,
    syzygy as syz_mod,
    ziegler as zie_mod,
)
from .poly import Polynomial


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on usage problems, not argparse's 2
        raise UsageError(message)


@dataclass
class Report:
    command: str
    inputs: dict
    results: dict
    diagnostics: list[str] = field(default_factory=list)

    def to_plain(self) -> dict:
        return {
            "command": self.command,
            "inputs": _plain(self.inputs),
            "results": _plain(self.results),
            "diagnostics": list(self.diagnostics),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_plain(), indent=2)

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        if self.inputs:
            lines.append("inputs:")
            _render_text(_plain(self.inputs), lines, "  ")
        if self.results:
            lines.append("results:")
            _render_text(_plain(self.results), lines, "  ")
        if self.diagnostics:
            lines.append("diagnostics:")
            for d in self.diagnostics:
                lines.append(f"  - {d}")
        return "\n".join(lines)


def _plain(value):
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Polynomial):
        return value.render()
    if isinstance(value, der_mod.Derivation):
        return [p.render() for p in value.coords]
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    return str(value)


def _render_text(value, lines: list[str], indent: str, key: str | None = None) -> None:
    prefix = f"{indent}{key}: " if key is not None else indent
    if isinstance(value, dict):
        if key is not None:
            lines.append(f"{indent}{key}:")
            indent += "  "
        for k, v in value.items():
            if isinstance(v, (dict, list)):
                _render_text(v, lines, indent, k)
            else:
                lines.append(f"{indent}{k}: {_scalar_text(v)}")
        return
    if isinstance(value, list):
        if key is not None:
            lines.append(f"{indent}{key}:")
            indent += "  "
        for v in value:
            if isinstance(v, (dict, list)):
                lines.append(f"{indent}-")
                _render_text(v, lines, indent + "  ")
            else:
                lines.append(f"{indent}- {_scalar_text(v)}")
        return
    lines.append(f"{prefix}{_scalar_text(value)}")


def _scalar_text(value) -> str:
    if value is True:
        return "true"
    if value is False:
        return "false"
    if value is None:
        return "none"
    return str(value)


# -- input loading -------------------------------------------------------------


def _read(path: str) -> str:
    p = Path(path)
    if not p.exists():
        raise ValueError(f"input file not found: {path}")
    return p.read_text()


def _load_arr(path: str) -> arr_mod.Arrangement:
    return arr_mod.load_arrangement(_read(path))


def _load_der(path: str, ell: int) -> der_mod.Derivation:
    return der_mod.load_derivation(_read(path), nvars=ell)


def _parse_int_list(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError as exc:
        raise UsageError(f"{what} must be a comma-separated integer list") from exc


def _parse_point(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(t) for t in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError("point must be a comma-separated rational list") from exc


def _load_perm(path: str, n: int) -> tuple[int, ...]:
    tokens = []
    for raw in _read(path).splitlines():
        line = raw.split("#", 1)[0]
        tokens.extend(line.split())
    try:
        perm = tuple(int(t) for t in tokens)
    except ValueError as exc:
        raise ValueError(f"perm file must hold integers: {path}") from exc
    if len(perm) != n:
        raise ValueError(f"perm file must hold {n} integers, found {len(perm)}")
    return perm


def _degree_label(p: Polynomial) -> str:
    return "zero" if p.is_zero else str(p.degree())


# -- command implementations ----------------------------------------------------


def _cmd_arr_lattice(args) -> Report:
    arr = _load_arr(args.arrangement)
    flats = arr_mod.intersection_lattice(arr)
    counts: dict[str, int] = {}
    for f in flats:
        counts[f"rank {f.rank}"] = counts.get(f"rank {f.rank}", 0) + 1
    return Report(
        command="arr lattice",
        inputs={"arrangement": args.arrangement, "ell": arr.ell, "n": arr.n},
        results={
            "flat_counts": counts,
            "flats": [
                {"rank": f.rank, "hyperplanes": list(f.hyperplane_indices)} for f in flats
            ],
        },
    )


def _cmd_arr_canonical(args) -> Report:
    arr = _load_arr(args.arrangement)
    canon, change = arr_mod.to_canonical(arr)
    return Report(
        command="arr canonical",
        inputs={"arrangement": args.arrangement, "ell": arr.ell, "n": arr.n},
        results={
            "permutation": list(change.permutation),
            "matrix": [list(row) for row in change.matrix],
            "inverse": [list(row) for row in change.inverse],
            "identity": change.is_identity(),
            "forms": [f.render() for f in canon.forms],
        },
    )


def _cmd_arr_circuits(args) -> Report:
    arr = _load_arr(args.arrangement)
    circs = arr_mod.circuits(arr)
    return Report(
        command="arr circuits",
        inputs={"arrangement": args.arrangement, "ell": arr.ell, "n": arr.n},
        results={
            "count": len(circs),
            "circuits": [
                {"indices": list(c.indices), "coefficients": list(c.coefficients)}
                for c in circs
            ],
        },
    )


def _cmd_deriv_check(args) -> Report:
    arr = _load_arr(args.arrangement)
    theta = _load_der(args.derivation, arr.ell)
    kv = der_mod.k_vector(arr, theta)
    q = arr_mod.defining_polynomial(arr)
    g = der_mod.apply_derivation(theta, q).try_div(q)
    return Report(
        command="deriv check",
        inputs={
            "arrangement": args.arrangement,
            "derivation": args.derivation,
            "ell": arr.ell,
            "n": arr.n,
        },
        results={
            "status": "logarithmic",
            "degrees": [_degree_label(k) for k in kv.entries],
            "quotients": {f"k{i}": k for i, k in enumerate(kv.entries, 1)},
            "quotient_sum": g,
        },
    )


def _cmd_deriv_graded(args) -> Report:
    if args.degree > args.max_degree:
        raise UsageError(
            f"degree {args.degree} exceeds the cap {args.max_degree}; "
            "raise it with --max-degree"
        )
    arr = _load_arr(args.arrangement)
    basis = der_mod.graded_component(arr, args.degree)
    euler_dim = der_mod.euler_multiple_dimension(arr.ell, args.degree)
    return Report(
        command="deriv graded",
        inputs={"arrangement": args.arrangement, "degree": args.degree},
        results={
            "dimension": basis.dimension,
            "euler_multiple_dimension": euler_dim,
            "members": [list(m.coords) for m in basis.members],
        },
    )


def _cmd_free_check(args) -> Report:
    arr = _load_arr(args.arrangement)
    report = der_mod.find_free_basis(arr, max_degree=args.max_degree)
    results = {
        "status": report.status,
        "exponents": list(report.exponents) if report.exponents else None,
        "scalar": report.scalar,
        "basis": [list(b.coords) for b in report.basis] if report.basis else None,
    }
    return Report(
        command="free check",
        inputs={"arrangement": args.arrangement, "max_degree": args.max_degree},
        results=results,
        diagnostics=list(report.diagnostics),
    )


def _cmd_syzygy_system(args) -> Report:
    arr = _load_arr(args.arrangement)
    sys_ = syz_mod.build_system(arr)
    return Report(
        command="syzygy system",
        inputs={"arrangement": args.arrangement, "ell": sys_.ell, "n": sys_.n},
        results={
            "equations": {
                f"j={j}": list(sys_.coeffs_for(j))
                for j in range(sys_.ell + 1, sys_.n + 1)
            }
        },
    )


def _cmd_syzygy_gens(args) -> Report:
    arr = _load_arr(args.arrangement)
    sys_ = syz_mod.build_system(arr)
    gens = syz_mod.canonical_generators(sys_, args.j)
    members = {}
    for label, member in gens.members():
        check = syz_mod.verify_solution(sys_, member, args.j)
        members[label] = {"tuple": list(member), "k_j": check.k_j}
    return Report(
        command="syzygy gens",
        inputs={"arrangement": args.arrangement, "j": args.j},
        results={"coefficients": list(sys_.coeffs_for(args.j)), "members": members},
    )


def _cmd_syzygy_verify(args) -> Report:
    arr = _load_arr(args.arrangement)
    sys_ = syz_mod.build_system(arr)
    tup = der_mod.load_derivation(_read(args.ktuple), nvars=sys_.ell)
    check = syz_mod.verify_solution(sys_, tup.coords, args.j)
    return Report(
        command="syzygy verify",
        inputs={"arrangement": args.arrangement, "ktuple": args.ktuple, "j": args.j},
        results={"ok": check.ok, "k_j": check.k_j},
    )


def _cmd_constraints(args) -> Report:
    arr = _load_arr(args.arrangement)
    theta = _load_der(args.derivation, arr.ell)
    space = con_mod.constraint_space(arr, theta)
    interior = sum(1 for r in space.generators if r.kind == "interior")
    exterior = sum(1 for r in space.generators if r.kind == "exterior")
    return Report(
        command="constraints",
        inputs={"arrangement": args.arrangement, "derivation": args.derivation},
        results={
            "monomials": space.m_count,
            "cells": space.m_count * space.n_count,
            "interior_rows": interior,
            "exterior_rows": exterior,
            "rank": space.rank,
        },
    )


def _cmd_critical_verify(args) -> Report:
    arr = _load_arr(args.arrangement)
    theta = _load_der(args.derivation, arr.ell)
    basis = _parse_int_list(args.basis, "--basis")
    point = _parse_point(args.point)
    field_ = con_mod.associated_field(arr, theta, basis)
    check = con_mod.verify_critical_point(arr, field_, point)
    return Report(
        command="critical verify",
        inputs={
            "arrangement": args.arrangement,
            "derivation": args.derivation,
            "basis": list(basis),
            "point": list(point),
        },
        results={
            "field": {f"q{t + 1}": q for t, q in enumerate(field_.q)},
            "is_zero": check.is_zero,
            "in_complement": check.in_complement,
        },
    )


def _cmd_critical_search(args) -> Report:
    arr = _load_arr(args.arrangement)
    theta = _load_der(args.derivation, arr.ell)
    basis = _parse_int_list(args.basis, "--basis")
    field_ = con_mod.associated_field(arr, theta, basis)
    result = con_mod.search_critical_points(arr, field_, args.height)
    return Report(
        command="critical search",
        inputs={
            "arrangement": args.arrangement,
            "derivation": args.derivation,
            "basis": list(basis),
            "height": args.height,
        },
        results={
            "mode": result.mode,
            "points": [list(p) for p in result.points],
        },
        diagnostics=[
            f"search incomplete at height {args.height}: the scan bounds "
            "numerators and denominators; absence of hits is not a proof"
        ],
    )


def _cmd_transport(args) -> Report:
    arr = _load_arr(args.arrangement)
    target = _load_arr(args.target)
    theta = _load_der(args.derivation, arr.ell)
    perm = _load_perm(args.perm, arr.n)
    result = con_mod.transport_derivation(arr, target, perm, theta)
    return Report(
        command="transport",
        inputs={
            "arrangement": args.arrangement,
            "target": args.target,
            "derivation": args.derivation,
            "perm": list(perm),
        },
        results={
            "solution_dim": result.solution_dim,
            "witness": result.witness,
            "witness_consistent": result.witness_consistent,
        },
    )


def _cmd_example_ziegler(args) -> Report:
    arr, theta = zie_mod.emit_ziegler_fixture()
    results = {
        "ell": arr.ell,
        "n": arr.n,
        "forms": [f.render() for f in arr.forms],
        "derivation": theta,
        "self_check": "k-vector computed: the derivation is logarithmic",
    }
    diagnostics: list[str] = []
    if args.emit_files:
        out = Path(args.emit_files)
        out.mkdir(parents=True, exist_ok=True)
        arr_path = out / "ziegler_x2.arr"
        der_path = out / "ziegler_thetaz.der"
        arr_path.write_text(zie_mod.arrangement_text())
        der_path.write_text(zie_mod.derivation_text())
        results["written"] = [str(arr_path), str(der_path)]
    return Report(
        command="example ziegler",
        inputs={},
        results=results,
        diagnostics=diagnostics,
    )


# -- parser ---------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="logderiv", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def add_json(p):
        p.add_argument("--json", action="store_true", help="emit the report as JSON")

    p_arr = sub.add_parser("arr", help="arrangement structure")
    arr_sub = p_arr.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    for name, fn in (
        ("lattice", _cmd_arr_lattice),
        ("canonical", _cmd_arr_canonical),
        ("circuits", _cmd_arr_circuits),
    ):
        p = arr_sub.add_parser(name)
        p.add_argument("arrangement", help=".arr file")
        add_json(p)
        p.set_defaults(fn=fn)

    p_deriv = sub.add_parser("deriv", help="derivations and graded pieces")
    deriv_sub = p_deriv.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = deriv_sub.add_parser("check")
    p.add_argument("arrangement")
    p.add_argument("derivation", help=".der file")
    add_json(p)
    p.set_defaults(fn=_cmd_deriv_check)
    p = deriv_sub.add_parser("graded")
    p.add_argument("arrangement")
    p.add_argument("-d", "--degree", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=12)
    add_json(p)
    p.set_defaults(fn=_cmd_deriv_graded)

    p_free = sub.add_parser("free", help="freeness search")
    free_sub = p_free.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = free_sub.add_parser("check")
    p.add_argument("arrangement")
    p.add_argument("--max-degree", type=int, default=12)
    add_json(p)
    p.set_defaults(fn=_cmd_free_check)

    p_syz = sub.add_parser("syzygy", help="canonical equation system")
    syz_sub = p_syz.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = syz_sub.add_parser("system")
    p.add_argument("arrangement")
    add_json(p)
    p.set_defaults(fn=_cmd_syzygy_system)
    p = syz_sub.add_parser("gens")
    p.add_argument("arrangement")
    p.add_argument("-j", type=int, required=True)
    add_json(p)
    p.set_defaults(fn=_cmd_syzygy_gens)
    p = syz_sub.add_parser("verify")
    p.add_argument("arrangement")
    p.add_argument("ktuple", help=".der-format file with the first ell entries")
    p.add_argument("-j", type=int, required=True)
    add_json(p)
    p.set_defaults(fn=_cmd_syzygy_verify)

    p = sub.add_parser("constraints", help="contact-table constraint space")
    p.add_argument("arrangement")
    p.add_argument("derivation")
    add_json(p)
    p.set_defaults(fn=_cmd_constraints)

    p_crit = sub.add_parser("critical", help="associated fields and critical points")
    crit_sub = p_crit.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = crit_sub.add_parser("verify")
    p.add_argument("arrangement")
    p.add_argument("derivation")
    p.add_argument("--basis", required=True, help="comma-separated form indices")
    p.add_argument("--point", required=True, help="comma-separated rationals")
    add_json(p)
    p.set_defaults(fn=_cmd_critical_verify)
    p = crit_sub.add_parser("search")
    p.add_argument("arrangement")
    p.add_argument("derivation")
    p.add_argument("--basis", required=True)
    p.add_argument("--height", type=int, default=3)
    add_json(p)
    p.set_defaults(fn=_cmd_critical_search)

    p = sub.add_parser("transport", help="re-solve a derivation over another arrangement")
    p.add_argument("arrangement")
    p.add_argument("target")
    p.add_argument("derivation")
    p.add_argument("--perm", required=True, help="file with n integers (1-based images)")
    add_json(p)
    p.set_defaults(fn=_cmd_transport)

    p_ex = sub.add_parser("example", help="built-in datasets")
    ex_sub = p_ex.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = ex_sub.add_parser("ziegler")
    p.add_argument("--emit-files", metavar="DIR", help="write the fixture files here")
    add_json(p)
    p.set_defaults(fn=_cmd_example_ziegler)

    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        report = args.fn(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        report = Report(
            command=f"{args.group}" + (f" {args.cmd}" if getattr(args, "cmd", None) else ""),
            inputs={},
            results={},
            diagnostics=[f"{type(exc).__name__}: {exc}"],
        )
        print(report.to_json() if getattr(args, "json", False) else report.to_text())
        return 2
    print(report.to_json() if args.json else report.to_text())
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
