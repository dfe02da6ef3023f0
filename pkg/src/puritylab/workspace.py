"""
Workspace files: a TOML document with typed blocks for rings, modules,
checks and settings.

    [settings]
    up_to = 3
    budget = 2000000
    threads = 1
    seed = 0

    [rings.R]
    family = "squareZero"     # or "chain" (q, e) / "truncated" (q, exponents)
    q = 2
    t = 2

    [rings.X]                 # explicit structure constants
    q = 2
    labels = ["1", "x"]
    table = [[[1,0],[0,1]], [[0,1],[0,0]]]

    [modules.M]
    ring = "R"
    presentation = { rank = 2, relations = [["a", "b"]] }
    # or: free = 2
    # or: warfield = { p = 1, n = 2, m = 3, ideal_gens = ["a", "b"] }
    # or: dual = "M" / fqdual = "M"

    [[checks]]
    kind = "flat"             # purity|flat|injective|end-local|fitting|free
    module = "M"              # purity instead uses: ambient = "F", sub = [["a","b"]]
    n = 1
    m = 2                     # n/m may be "inf" for the bounded UP_TO check

Ring elements are label expressions ("a", "a+b", "2*x") or coefficient
vectors.  Validation errors carry the nearest block header line.
"""

from __future__ import annotations

from dataclasses import dataclass

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .algebra import Algebra, AlgebraError, build_named
from .bounds import MAX_BUDGET, MAX_THREADS, MAX_UP_TO, Settings
from .checkers import (
    check_end_local,
    check_fitting,
    check_flat,
    check_free,
    check_injective,
    check_purity,
)
from .constructions import (
    ConstructionError,
    StaircaseSpec,
    auslander_bridger_dual,
    fq_dual,
    staircase_module,
)
from .modules import (
    Module,
    ModuleError,
    free_module,
    from_presentation,
    submodule_span,
)
from .report import merge_verdicts

CHECK_KINDS = ("purity", "flat", "injective", "end-local", "fitting", "free")


class WorkspaceError(ValueError):
    """Parse/validation failure; ``errors`` lists messages with positions."""

    def __init__(self, errors: list[str]):
        super().__init__("; ".join(errors))
        self.errors = errors


@dataclass
class CheckSpec:
    label: str
    kind: str
    target_name: str
    module: Module | None
    sub_generators: list | None
    n: object
    m: object


@dataclass
class Workspace:
    rings: dict
    modules: dict
    checks: list
    settings: Settings


def _line_of(text: str, header: str) -> str:
    for i, line in enumerate(text.splitlines(), start=1):
        if line.strip().startswith(header):
            return f"line {i}"
    return "unknown line"


def parse_workspace(text: str) -> Workspace:
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise WorkspaceError([f"ParseError: {exc}"]) from exc
    errors: list[str] = []
    settings = Settings()
    raw_settings = doc.get("settings", {})
    if not isinstance(raw_settings, dict):
        errors.append(f"settings must be a table ({_line_of(text, '[settings]')})")
        raw_settings = {}
    for key in raw_settings:
        if key not in ("up_to", "budget", "threads", "seed"):
            errors.append(
                f"unknown setting {key!r} ({_line_of(text, '[settings]')})"
            )
    try:
        settings = Settings(
            up_to=int(raw_settings.get("up_to", settings.up_to)),
            budget=int(raw_settings.get("budget", settings.budget)),
            threads=int(raw_settings.get("threads", settings.threads)),
            seed=int(raw_settings.get("seed", settings.seed)),
        )
        settings.validate()
    except (TypeError, ValueError) as exc:
        errors.append(
            f"BudgetCap: {exc} (caps: budget <= {MAX_BUDGET}, up_to <= {MAX_UP_TO}, "
            f"threads <= {MAX_THREADS}; {_line_of(text, '[settings]')})"
        )

    rings: dict[str, Algebra] = {}
    for name, spec in doc.get("rings", {}).items():
        where = _line_of(text, f"[rings.{name}]")
        try:
            rings[name] = _build_ring(spec)
        except (AlgebraError, KeyError, TypeError, ValueError) as exc:
            errors.append(f"rings.{name}: {exc} ({where})")

    modules: dict[str, Module] = {}
    for name, spec in doc.get("modules", {}).items():
        where = _line_of(text, f"[modules.{name}]")
        try:
            modules[name] = _build_module(spec, rings, modules)
        except (AlgebraError, ModuleError, ConstructionError, KeyError, TypeError, ValueError) as exc:
            errors.append(f"modules.{name}: {exc} ({where})")

    checks: list[CheckSpec] = []
    seen_labels: set[str] = set()
    for idx, spec in enumerate(doc.get("checks", [])):
        where = _line_of(text, "[[checks]]")
        try:
            check = _build_check(spec, idx, modules)
            if check.label in seen_labels:
                raise ValueError(f"duplicate check label {check.label!r}")
            seen_labels.add(check.label)
            checks.append(check)
        except (AlgebraError, ModuleError, KeyError, TypeError, ValueError) as exc:
            errors.append(f"checks[{idx}]: {exc} ({where})")

    for key in doc:
        if key not in ("settings", "rings", "modules", "checks"):
            errors.append(f"unknown top-level table {key!r} ({_line_of(text, f'[{key}')})")

    if errors:
        raise WorkspaceError(errors)
    return Workspace(rings, modules, checks, settings)


def _build_ring(spec: dict) -> Algebra:
    if "family" in spec:
        family = spec["family"]
        if family in ("squareZero", "square_zero"):
            return build_named(family, q=spec["q"], t=spec["t"])
        if family == "chain":
            return build_named(family, q=spec["q"], e=spec["e"])
        if family == "truncated":
            return build_named(family, q=spec["q"], exponents=spec["exponents"])
        raise ValueError(f"UnsupportedFamily: {family!r}")
    if "table" in spec:
        return Algebra(int(spec["q"]), spec["labels"], spec["table"])
    raise ValueError("ring needs either family=... or labels=/table=")


def _build_module(spec: dict, rings: dict, modules: dict) -> Module:
    ring_name = spec.get("ring")
    if ring_name is None:
        raise ValueError("module needs ring = \"<name>\"")
    if ring_name not in rings:
        raise ValueError(f"UnknownName: ring {ring_name!r} is not defined")
    ring = rings[ring_name]
    kinds = [k for k in ("presentation", "free", "warfield", "dual", "fqdual") if k in spec]
    if len(kinds) != 1:
        raise ValueError(
            "module needs exactly one of presentation/free/warfield/dual/fqdual"
        )
    kind = kinds[0]
    if kind == "free":
        return free_module(ring, int(spec["free"]))
    if kind == "presentation":
        pres = spec["presentation"]
        return from_presentation(ring, int(pres["rank"]), pres.get("relations", []))
    if kind == "warfield":
        w = spec["warfield"]
        sc = StaircaseSpec(
            int(w["p"]), int(w["n"]), int(w["m"]), tuple(w["ideal_gens"])
        )
        return staircase_module(ring, sc)
    other = spec[kind]
    if other not in modules:
        raise ValueError(f"UnknownName: module {other!r} is not defined (yet)")
    base = modules[other]
    if base.ring != ring:
        raise ValueError(f"module {other!r} lives over a different ring")
    return auslander_bridger_dual(base) if kind == "dual" else fq_dual(base)


def _build_check(spec: dict, idx: int, modules: dict) -> CheckSpec:
    kind = spec.get("kind")
    if kind not in CHECK_KINDS:
        raise ValueError(f"kind must be one of {', '.join(CHECK_KINDS)}")
    label = str(spec.get("label", f"check-{idx}"))
    n = spec.get("n", 1)
    m = spec.get("m", 1)
    for v in (n, m):
        if not (isinstance(v, int) or v == "inf"):
            raise ValueError("n and m must be integers or \"inf\"")
    if kind == "purity":
        target = spec.get("ambient")
        if target not in modules:
            raise ValueError(f"UnknownName: ambient module {target!r} is not defined")
        gens = spec.get("sub")
        if not isinstance(gens, list):
            raise ValueError("purity check needs sub = [[...generators...]]")
        return CheckSpec(label, kind, target, modules[target], gens, n, m)
    target = spec.get("module")
    if target not in modules:
        raise ValueError(f"UnknownName: module {target!r} is not defined")
    return CheckSpec(label, kind, target, modules[target], None, n, m)


def run_workspace(ws: Workspace, settings: Settings | None = None) -> dict:
    """Execute the checks in order; returns the canonical report payload."""
    st = settings if settings is not None else ws.settings
    st.validate()
    results = []
    for check in ws.checks:
        module = check.module
        if check.kind == "purity":
            ring = module.ring
            rank = module.gen_rank if module.gen_rank is not None else 0
            gens = []
            for entry in check.sub_generators:
                if isinstance(entry, list) and len(entry) == rank:
                    gens.append(module.element_from_generators(entry))
                else:
                    raise WorkspaceError(
                        [f"purity sub generator needs {rank} ring elements"]
                    )
            sub = submodule_span(module, gens)
            report = check_purity(sub, check.n, check.m, st)
        elif check.kind == "flat":
            report = check_flat(module, check.n, check.m, st)
        elif check.kind == "injective":
            report = check_injective(module, check.n, check.m, st)
        elif check.kind == "end-local":
            report = check_end_local(module, st)
        elif check.kind == "fitting":
            report = check_fitting(module, st)
        else:
            report = check_free(module, st)
        results.append(
            {
                "label": check.label,
                "kind": check.kind,
                "target": check.target_name,
                "report": report.to_payload(),
            }
        )
    return {
        "schema": "purity-lab/run-report/1",
        "settings": st.to_payload(),
        "checks": results,
        "verdict": merge_verdicts(r["report"]["verdict"] for r in results),
    }


# -- emission helpers (construct verbs) ----------------------------------------

def format_ring_block(name: str, family: str, **params) -> str:
    lines = [f"[rings.{name}]", f'family = "{family}"']
    for key, value in params.items():
        if isinstance(value, (list, tuple)):
            lines.append(f"{key} = [{', '.join(str(v) for v in value)}]")
        else:
            lines.append(f"{key} = {value}")
    return "\n".join(lines) + "\n"


def format_module_block(name: str, ring_name: str, module: Module) -> str:
    """A module definition block reproducing ``module`` by presentation."""
    if module.relations is not None and module.gen_rank is not None:
        rank = module.gen_rank
        relations = module.relations
    else:
        mp = module.min_presentation()
        rank = mp.profile.gen
        relations = mp.relations
    ring = module.ring
    cols = []
    for col in relations:
        entries = ", ".join(f'"{ring.format_element(e)}"' for e in col)
        cols.append(f"[{entries}]")
    rel_text = "[" + ", ".join(cols) + "]"
    return (
        f"[modules.{name}]\n"
        f'ring = "{ring_name}"\n'
        f"presentation = {{ rank = {rank}, relations = {rel_text} }}\n"
    )
