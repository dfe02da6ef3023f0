"""
Command line front end.

    purity-lab run <workspace.toml> [--report out.json] [--threads K]
                                    [--up-to N] [--budget C] [--seed S]
    purity-lab suite <name> [same flags]
    purity-lab construct warfield ... / construct dual ...
    purity-lab list suites

Exit codes: 0 all pass, 1 any fail, 2 any undecided, 3 usage/parse error.
Settings precedence: defaults < workspace settings < environment < flags.
Environment overrides: PURITY_LAB_BUDGET, PURITY_LAB_UP_TO,
PURITY_LAB_THREADS, PURITY_LAB_SEED.
"""

from __future__ import annotations

import argparse
import os
import sys

from .algebra import AlgebraError, build_named
from .bounds import Settings
from .checkers import (
    check_end_local,
    check_fitting,
    check_flat,
    check_free,
    check_injective,
    check_purity,
    check_purity_via_tensor,
)
from .constructions import (
    ConstructionError,
    StaircaseSpec,
    auslander_bridger_dual,
    fq_dual,
    staircase_module,
)
from .modules import ModuleError, submodule_span
from .report import FAIL, PASS, UNDECIDED, emit_report
from .suites import SUITES, UnknownSuiteError, run_suite, suite_names
from .workspace import (
    CHECK_KINDS,
    WorkspaceError,
    format_module_block,
    format_ring_block,
    parse_workspace,
    run_workspace,
)

_EXIT = {PASS: 0, FAIL: 1, UNDECIDED: 2}

_ENV_KEYS = {
    "budget": "PURITY_LAB_BUDGET",
    "up_to": "PURITY_LAB_UP_TO",
    "threads": "PURITY_LAB_THREADS",
    "seed": "PURITY_LAB_SEED",
}


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit code 3."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(3, f"{self.prog}: error: {message}\n")


def _add_settings_flags(p: argparse.ArgumentParser):
    p.add_argument("--report", metavar="PATH", help="write canonical JSON report")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--up-to", type=int, default=None, dest="up_to",
                   help="bound N for UP_TO(N) quantifiers")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)


def _resolve_settings(base: Settings, args) -> Settings:
    st = Settings(base.up_to, base.budget, base.threads, base.seed)
    for attr, env_key in _ENV_KEYS.items():
        if env_key in os.environ:
            setattr(st, attr, int(os.environ[env_key]))
    for attr in ("up_to", "budget", "threads", "seed"):
        val = getattr(args, attr, None)
        if val is not None:
            setattr(st, attr, val)
    st.validate()
    return st


def build_parser() -> _Parser:
    parser = _Parser(prog="purity-lab", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run the checks of a workspace file")
    p_run.add_argument("workspace")
    _add_settings_flags(p_run)

    p_suite = sub.add_parser("suite", help="run a named verification suite")
    p_suite.add_argument("name")
    _add_settings_flags(p_suite)

    p_check = sub.add_parser(
        "check", help="run one checker against objects from a workspace file"
    )
    p_check.add_argument("kind", choices=list(CHECK_KINDS))
    p_check.add_argument("workspace")
    p_check.add_argument("--module", help="module name (non-purity checks)")
    p_check.add_argument("--ambient", help="ambient module name (purity)")
    p_check.add_argument("--sub", action="append", default=[],
                         help="one submodule generator as comma-separated ring "
                              "elements; repeat for more generators")
    p_check.add_argument("--n", default="1", help="row quantifier (int or 'inf')")
    p_check.add_argument("--m", default="1", help="column quantifier (int or 'inf')")
    p_check.add_argument("--oracle", action="store_true",
                         help="cross-check with the independent method")
    _add_settings_flags(p_check)

    p_con = sub.add_parser("construct", help="emit module definition blocks")
    con_sub = p_con.add_subparsers(dest="construction", required=True)

    p_w = con_sub.add_parser("warfield", help="build a staircase module W_{p,n,m}")
    p_w.add_argument("--family", default="squareZero",
                     help="ring family: squareZero|chain|truncated")
    p_w.add_argument("--q", type=int, default=2)
    p_w.add_argument("--t", type=int, default=2, help="squareZero generators")
    p_w.add_argument("--e", type=int, default=2, help="chain exponent")
    p_w.add_argument("--exponents", default="2,2", help="truncated exponents")
    p_w.add_argument("--p", type=int, required=True)
    p_w.add_argument("--n", type=int, required=True)
    p_w.add_argument("--m", type=int, required=True)
    p_w.add_argument("--gens", required=True,
                     help="comma-separated ideal generators, e.g. 'a,b'")
    p_w.add_argument("--name", default="W")
    p_w.add_argument("--ring-name", default="R", dest="ring_name")

    p_d = con_sub.add_parser("dual", help="dualize a module from a workspace")
    p_d.add_argument("workspace")
    p_d.add_argument("--module", required=True)
    p_d.add_argument("--fq", action="store_true",
                     help="base-field dual instead of Auslander-Bridger")
    p_d.add_argument("--name", default=None)

    p_list = sub.add_parser("list", help="list available resources")
    p_list.add_argument("what", choices=["suites"])
    return parser


def _cmd_run(args) -> int:
    try:
        with open(args.workspace, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"purity-lab: cannot read workspace: {exc}", file=sys.stderr)
        return 3
    try:
        ws = parse_workspace(text)
    except WorkspaceError as exc:
        for err in exc.errors:
            print(f"purity-lab: {err}", file=sys.stderr)
        return 3
    settings = _resolve_settings(ws.settings, args)
    payload = run_workspace(ws, settings)
    for entry in payload["checks"]:
        rep = entry["report"]
        print(f"[{rep['verdict']:9s}] {entry['label']} ({entry['kind']} on {entry['target']})")
    print(f"[{payload['verdict']:9s}] workspace ({len(payload['checks'])} checks)")
    if args.report:
        try:
            emit_report(payload, args.report)
        except OSError as exc:
            print(f"purity-lab: IoError writing report: {exc}", file=sys.stderr)
            return 3
    return _EXIT[payload["verdict"]]


def _cmd_check(args) -> int:
    try:
        with open(args.workspace, "r", encoding="utf-8") as fh:
            ws = parse_workspace(fh.read())
    except OSError as exc:
        print(f"purity-lab: cannot read workspace: {exc}", file=sys.stderr)
        return 3
    except WorkspaceError as exc:
        for err in exc.errors:
            print(f"purity-lab: {err}", file=sys.stderr)
        return 3
    settings = _resolve_settings(ws.settings, args)
    quant = lambda v: v if v == "inf" else int(v)
    try:
        if args.kind == "purity":
            if not args.ambient:
                print("purity-lab: check purity needs --ambient", file=sys.stderr)
                return 3
            if args.ambient not in ws.modules:
                print(f"purity-lab: UnknownName: {args.ambient!r}", file=sys.stderr)
                return 3
            ambient = ws.modules[args.ambient]
            gens = [
                ambient.element_from_generators([e.strip() for e in spec.split(",")])
                for spec in args.sub
            ]
            sub = submodule_span(ambient, gens)
            report = check_purity(sub, quant(args.n), quant(args.m), settings)
            reports = {"purity": report}
            if args.oracle:
                reports["purity-oracle"] = check_purity_via_tensor(
                    sub, quant(args.n), quant(args.m), settings
                )
                if reports["purity-oracle"].verdict != report.verdict:
                    print("purity-lab: ORACLE DISAGREEMENT", file=sys.stderr)
                    return 1
        else:
            if not args.module or args.module not in ws.modules:
                print(f"purity-lab: UnknownName: {args.module!r}", file=sys.stderr)
                return 3
            module = ws.modules[args.module]
            if args.kind == "flat":
                report = check_flat(module, quant(args.n), quant(args.m), settings)
            elif args.kind == "injective":
                report = check_injective(module, quant(args.n), quant(args.m), settings)
            elif args.kind == "end-local":
                report = check_end_local(module, settings, cross_check=args.oracle)
            elif args.kind == "fitting":
                report = check_fitting(module, settings)
            else:
                report = check_free(module, settings)
            reports = {args.kind: report}
    except (AlgebraError, ModuleError, WorkspaceError, ValueError) as exc:
        print(f"purity-lab: {exc}", file=sys.stderr)
        return 3
    target = args.ambient if args.kind == "purity" else args.module
    for label, rep in reports.items():
        print(f"[{rep.verdict:9s}] {label} on {target}")
    if args.report:
        payload = {
            "schema": "purity-lab/check-report/1",
            "kind": args.kind,
            "target": target,
            "settings": settings.to_payload(),
            "reports": {k: r.to_payload() for k, r in reports.items()},
            "verdict": report.verdict,
        }
        try:
            emit_report(payload, args.report)
        except OSError as exc:
            print(f"purity-lab: IoError writing report: {exc}", file=sys.stderr)
            return 3
    return _EXIT[report.verdict]


def _cmd_suite(args) -> int:
    settings = _resolve_settings(Settings(), args)
    try:
        result = run_suite(args.name, settings)
    except UnknownSuiteError as exc:
        print(f"purity-lab: {exc}", file=sys.stderr)
        return 3
    for line in result.console_lines():
        print(line)
    if args.report:
        try:
            emit_report(result.to_payload(), args.report)
        except OSError as exc:
            print(f"purity-lab: IoError writing report: {exc}", file=sys.stderr)
            return 3
    return _EXIT[result.verdict]


def _cmd_construct(args) -> int:
    if args.construction == "warfield":
        try:
            if args.family in ("squareZero", "square_zero"):
                ring = build_named("squareZero", q=args.q, t=args.t)
                ring_block = format_ring_block(args.ring_name, "squareZero", q=args.q, t=args.t)
            elif args.family == "chain":
                ring = build_named("chain", q=args.q, e=args.e)
                ring_block = format_ring_block(args.ring_name, "chain", q=args.q, e=args.e)
            elif args.family == "truncated":
                exps = [int(x) for x in args.exponents.split(",")]
                ring = build_named("truncated", q=args.q, exponents=exps)
                ring_block = format_ring_block(
                    args.ring_name, "truncated", q=args.q, exponents=exps
                )
            else:
                print(f"purity-lab: unknown family {args.family!r}", file=sys.stderr)
                return 3
            gens = tuple(g.strip() for g in args.gens.split(","))
            spec = StaircaseSpec(args.p, args.n, args.m, gens)
            module = staircase_module(ring, spec)
        except (AlgebraError, ConstructionError, ModuleError) as exc:
            print(f"purity-lab: {exc}", file=sys.stderr)
            return 3
        sys.stdout.write(ring_block + "\n")
        sys.stdout.write(format_module_block(args.name, args.ring_name, module))
        return 0
    # dual
    try:
        with open(args.workspace, "r", encoding="utf-8") as fh:
            ws = parse_workspace(fh.read())
    except OSError as exc:
        print(f"purity-lab: cannot read workspace: {exc}", file=sys.stderr)
        return 3
    except WorkspaceError as exc:
        for err in exc.errors:
            print(f"purity-lab: {err}", file=sys.stderr)
        return 3
    if args.module not in ws.modules:
        print(f"purity-lab: UnknownName: module {args.module!r}", file=sys.stderr)
        return 3
    module = ws.modules[args.module]
    ring_name = next(
        (rn for rn, ring in ws.rings.items() if ring == module.ring), "R"
    )
    try:
        dual = fq_dual(module) if args.fq else auslander_bridger_dual(module)
    except (ConstructionError, ModuleError) as exc:
        print(f"purity-lab: {exc}", file=sys.stderr)
        return 3
    name = args.name or (f"{args.module}_fqdual" if args.fq else f"{args.module}_dual")
    sys.stdout.write(format_module_block(name, ring_name, dual))
    return 0


def _cmd_list(args) -> int:
    for name in suite_names():
        print(f"{name:20s} {SUITES[name][0]}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 3
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "suite":
        return _cmd_suite(args)
    if args.command == "check":
        return _cmd_check(args)
    if args.command == "construct":
        return _cmd_construct(args)
    return _cmd_list(args)


if __name__ == "__main__":
    sys.exit(main())
