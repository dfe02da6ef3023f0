"""
Decision procedures for purity, flatness, injectivity and endomorphism
properties, each returning a reproducible CheckReport.

Quantifier conventions: n and m may be positive ints or the bounded-infinity
marker ("inf"/UpTo), which expands to 1..up_to and is recorded in the report
bounds.  Each checker owns a fresh Budget derived from the settings; hitting
it yields an honest "undecided" verdict, never a guess.

Enumeration order is fixed (canonical element order, little-endian digits),
so reported witnesses are deterministic and independent of thread count: the
parallel driver always surfaces the smallest-index failure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gflinalg as la
from .algebra import Algebra
from .bounds import Budget, BudgetExceededError, Settings, resolve_quantifier
from .modules import (
    Module,
    ModuleMap,
    Submodule,
    free_element,
    free_module,
    hom_space,
    quotient,
    radical_multiples,
    submodule_span,
    submodules_of_free,
    tensor,
    tensor_map_on_inclusion,
    hom_restriction,
)
from .parallel import first_failure
from .report import FAIL, PASS, UNDECIDED, CheckReport


@dataclass
class PurityQuery:
    """An inclusion A <= B plus the (n, m) quantifiers to test."""

    sub: Submodule
    n: object
    m: object


def _settings(settings: Settings | None) -> Settings:
    return settings if settings is not None else Settings()


def _format_free_vector(ring: Algebra, rank: int, vec) -> list[str]:
    """A free-module carrier vector as one ring element string per slot."""
    vec = la.asfield(vec, ring.q).reshape(rank, ring.dim)
    return [ring.format_element(slot) for slot in vec]


def _sub_generators_payload(ring: Algebra, rank: int, sub: Submodule) -> list:
    gens = sub.gens if sub.gens is not None else list(sub.basis)
    return [_format_free_vector(ring, rank, g) for g in gens if np.asarray(g).any()]


def _undecided(method: str, exc: BudgetExceededError, bounds: dict) -> CheckReport:
    bounds = dict(bounds)
    bounds["budget_limit"] = exc.limit
    return CheckReport(UNDECIDED, method, {"reason": str(exc)}, bounds)


# -- purity by equation solvability -------------------------------------------

def _purity_core(sub: Submodule, n: int, m: int, budget: Budget, threads: int):
    """Check Im(L_B) ∩ A^n <= Im(L_A) for every coefficient matrix.

    Enumerating matrices with entries in the maximal ideal suffices: over a
    local ring every matrix is GL x GL-equivalent to [[I, 0], [0, N]] with N
    radical-entried, the purity condition is invariant under that
    equivalence, and the identity block reduces to the N-block condition
    (smaller shapes embed by zero padding).  Entries stay genuine ring
    elements, so witnesses replay through the unreduced definition.
    """
    amb = sub.ambient
    ring = amb.ring
    q, dim = ring.q, amb.dim
    rad_elems = ring.radical_elements()
    count = len(rad_elems)
    total = count ** (n * m)
    budget.spend(total, "coefficient matrices")
    act = np.stack([amb.action_of(e) for e in rad_elems])
    eye_n = np.eye(n, dtype=np.int64)
    eye_m = np.eye(m, dtype=np.int64)
    a_n = np.kron(eye_n, sub.basis) % q
    a_m = np.kron(eye_m, sub.basis) % q
    ann_a = la.nullspace(a_n, q) if a_n.shape[0] else np.eye(n * dim, dtype=np.int64)

    def try_matrix(idx: int):
        digits = la.index_to_vector(idx, n * m, count)
        big = np.zeros((n * dim, m * dim), dtype=np.int64)
        for i in range(n):
            for j in range(m):
                big[i * dim : (i + 1) * dim, j * dim : (j + 1) * dim] = act[
                    digits[i * m + j]
                ]
        im_b = la.row_basis(big.T, q)
        if im_b.shape[0] == 0:
            return None
        coeff = la.nullspace((ann_a @ im_b.T) % q, q) if ann_a.shape[0] else np.eye(
            im_b.shape[0], dtype=np.int64
        )
        if coeff.shape[0] == 0:
            return None
        inter = la.row_basis((coeff @ im_b) % q, q)
        if inter.shape[0] == 0:
            return None
        im_a = la.row_basis((big @ a_m.T).T % q, q)
        _, piv = la.rref(im_a, q) if im_a.shape[0] else (None, [])
        for w in inter:
            if not la.in_row_span(im_a, piv, w, q):
                matrix = [
                    [ring.format_element(rad_elems[digits[i * m + j]]) for j in range(m)]
                    for i in range(n)
                ]
                return {
                    "coefficient_matrix": matrix,
                    "target_vector": w.tolist(),
                    "n": n,
                    "m": m,
                }
        return None

    hit = first_failure(range(total), try_matrix, threads)
    return (None if hit is None else hit[1]), total


def check_purity(
    query_or_sub, n=None, m=None, settings: Settings | None = None
) -> CheckReport:
    """Decide (n, m)-purity of an inclusion via equation solvability."""
    st = _settings(settings)
    if isinstance(query_or_sub, PurityQuery):
        sub, n, m = query_or_sub.sub, query_or_sub.n, query_or_sub.m
    else:
        sub = query_or_sub
    n_vals, n_bound = resolve_quantifier(n, st.up_to)
    m_vals, m_bound = resolve_quantifier(m, st.up_to)
    bounds = {"n": n_bound, "m": m_bound, "entry_domain": "maximal-ideal"}
    if any(v == 0 for v in n_vals + m_vals):
        bounds["degenerate"] = True
        return CheckReport(PASS, "purity-equations", None, bounds)
    budget = st.new_budget()
    checked = 0
    try:
        for nv in n_vals:
            for mv in m_vals:
                witness, total = _purity_core(sub, nv, mv, budget, st.threads)
                checked += total
                if witness is not None:
                    bounds["matrices_checked"] = checked
                    return CheckReport(FAIL, "purity-equations", witness, bounds)
    except BudgetExceededError as exc:
        return _undecided("purity-equations", exc, bounds)
    bounds["matrices_checked"] = checked
    return CheckReport(PASS, "purity-equations", None, bounds)


# -- purity via the tensor definition (independent oracle) ----------------------

def _nm_presented(ring: Algebra, n: int, m: int, budget: Budget | None):
    """All (n, m)-presented modules, one per distinct relation submodule.

    Deduplication is exact (same relation span => literally the same
    quotient); isomorphic modules with different relation spans are kept and
    tested redundantly.
    """
    key = ("nm-presented", n, m)
    cached = ring._cache.get(key)
    if cached is not None:
        mods, cost = cached
        if budget is not None:
            budget.spend(cost, "presented-module enumeration")
        return mods
    probe = Budget(budget.remaining() if budget is not None else 10**18)
    subs = submodules_of_free(ring, n, m, probe)
    free = free_module(ring, n)
    mods = []
    for k_sub in subs:
        g_mod, _ = quotient(free, k_sub)
        mods.append((g_mod, k_sub))
    ring._cache[key] = (mods, probe.spent)
    if budget is not None:
        budget.spend(probe.spent, "presented-module enumeration")
    return mods


def check_purity_via_tensor(
    query_or_sub, n=None, m=None, settings: Settings | None = None
) -> CheckReport:
    """Decide (n, m)-purity by tensoring with every (n, m)-presented module.

    This is the definition itself, kept enumeration-complete so it can serve
    as the independent oracle for check_purity.
    """
    st = _settings(settings)
    if isinstance(query_or_sub, PurityQuery):
        sub, n, m = query_or_sub.sub, query_or_sub.n, query_or_sub.m
    else:
        sub = query_or_sub
    n_vals, n_bound = resolve_quantifier(n, st.up_to)
    m_vals, m_bound = resolve_quantifier(m, st.up_to)
    bounds = {"n": n_bound, "m": m_bound}
    if any(v == 0 for v in n_vals + m_vals):
        bounds["degenerate"] = True
        return CheckReport(PASS, "purity-tensor", None, bounds)
    budget = st.new_budget()
    amb = sub.ambient
    ring = amb.ring
    tested = 0
    try:
        for nv in n_vals:
            for mv in m_vals:
                mods = _nm_presented(ring, nv, mv, budget)
                budget.spend(len(mods), "tensor tests")
                tested += len(mods)

                def try_module(pair):
                    g_mod, k_sub = pair
                    tmap = tensor_map_on_inclusion(g_mod, sub)
                    kernel = tmap.kernel_rows()
                    if kernel.shape[0] == 0:
                        return None
                    return {
                        "presented_module_relations": _sub_generators_payload(
                            ring, nv, k_sub
                        ),
                        "presented_rank": nv,
                        "kernel_vector": kernel[0].tolist(),
                        "n": nv,
                        "m": mv,
                    }

                hit = first_failure(mods, try_module, st.threads)
                if hit is not None:
                    bounds["modules_tested"] = tested
                    return CheckReport(FAIL, "purity-tensor", hit[1], bounds)
    except BudgetExceededError as exc:
        return _undecided("purity-tensor", exc, bounds)
    bounds["modules_tested"] = tested
    return CheckReport(PASS, "purity-tensor", None, bounds)


# -- flatness and injectivity ----------------------------------------------------

def check_flat(module: Module, n, m, settings: Settings | None = None) -> CheckReport:
    """(n, m)-flatness: M (x) K -> M (x) R^n injective for all m-generated K."""
    st = _settings(settings)
    n_vals, n_bound = resolve_quantifier(n, st.up_to)
    m_vals, m_bound = resolve_quantifier(m, st.up_to)
    bounds = {"n": n_bound, "m": m_bound}
    if any(v == 0 for v in n_vals + m_vals):
        bounds["degenerate"] = True
        return CheckReport(PASS, "flat-tensor-maps", None, bounds)
    ring = module.ring
    budget = st.new_budget()
    tested = 0
    try:
        for nv in n_vals:
            free = free_module(ring, nv)
            ambient_tensor = tensor(module, free)
            for mv in m_vals:
                subs = submodules_of_free(ring, nv, mv, budget)
                budget.spend(len(subs), "tensor maps")
                tested += len(subs)

                def try_sub(k_sub):
                    tmap = tensor_map_on_inclusion(
                        module, k_sub, ambient_tensor=ambient_tensor
                    )
                    kernel = tmap.kernel_rows()
                    if kernel.shape[0] == 0:
                        return None
                    return {
                        "submodule_generators": _sub_generators_payload(
                            ring, nv, k_sub
                        ),
                        "submodule_basis": k_sub.basis.tolist(),
                        "kernel_vector": kernel[0].tolist(),
                        "n": nv,
                        "m": mv,
                    }

                hit = first_failure(subs, try_sub, st.threads)
                if hit is not None:
                    bounds["submodules_tested"] = tested
                    return CheckReport(FAIL, "flat-tensor-maps", hit[1], bounds)
    except BudgetExceededError as exc:
        return _undecided("flat-tensor-maps", exc, bounds)
    bounds["submodules_tested"] = tested
    return CheckReport(PASS, "flat-tensor-maps", None, bounds)


def check_injective(
    module: Module, n, m, settings: Settings | None = None
) -> CheckReport:
    """(n, m)-injectivity: Hom(R^n, M) -> Hom(K, M) onto for all m-generated K."""
    st = _settings(settings)
    n_vals, n_bound = resolve_quantifier(n, st.up_to)
    m_vals, m_bound = resolve_quantifier(m, st.up_to)
    bounds = {"n": n_bound, "m": m_bound}
    if any(v == 0 for v in n_vals + m_vals):
        bounds["degenerate"] = True
        return CheckReport(PASS, "injective-hom-restriction", None, bounds)
    ring = module.ring
    budget = st.new_budget()
    tested = 0
    try:
        for nv in n_vals:
            for mv in m_vals:
                subs = submodules_of_free(ring, nv, mv, budget)
                budget.spend(len(subs), "hom restrictions")
                tested += len(subs)

                def try_sub(k_sub):
                    restr = hom_restriction(k_sub, module)
                    if restr.is_surjective(ring.q):
                        return None
                    bad = restr.non_extendable(ring.q)
                    return {
                        "submodule_generators": _sub_generators_payload(
                            ring, nv, k_sub
                        ),
                        "submodule_basis": k_sub.basis.tolist(),
                        "non_extendable_hom": bad.tolist() if bad is not None else None,
                        "n": nv,
                        "m": mv,
                    }

                hit = first_failure(subs, try_sub, st.threads)
                if hit is not None:
                    bounds["submodules_tested"] = tested
                    return CheckReport(
                        FAIL, "injective-hom-restriction", hit[1], bounds
                    )
    except BudgetExceededError as exc:
        return _undecided("injective-hom-restriction", exc, bounds)
    bounds["submodules_tested"] = tested
    return CheckReport(PASS, "injective-hom-restriction", None, bounds)


# -- endomorphism ring checks ------------------------------------------------------

def _residue_pairs(module: Module):
    """Independent residue endomorphisms of M/PM with lifts in End(M)."""
    q = module.ring.q
    endos = hom_space(module, module)
    pm = radical_multiples(module, np.eye(module.dim, dtype=np.int64))
    proj, sect = la.quotient_maps(pm, module.dim, q)
    g = proj.shape[0]
    pairs = []
    span = np.zeros((0, g * g), dtype=np.int64)
    pivots: list[int] = []
    for h in endos:
        hbar = (proj @ h @ sect) % q
        flat = hbar.reshape(-1)
        if g and la.in_row_span(span, pivots, flat, q):
            continue
        pairs.append((h, hbar))
        span = la.row_basis(np.concatenate([span, flat.reshape(1, -1)], axis=0), q)
        _, pivots = la.rref(span, q)
    return pairs, proj, sect, endos


def check_end_local(
    module: Module, settings: Settings | None = None, cross_check: bool = False
) -> CheckReport:
    """Locality of End(M) via residue invertibility.

    Every endomorphism class sigma of M/PM induced from End(M) must have
    sigma or I - sigma invertible; lifting invertibility back to End(M) is
    exactly the residue-isomorphism lemma, optionally cross-checked here on
    every basis endomorphism.
    """
    st = _settings(settings)
    q = module.ring.q
    budget = st.new_budget()
    pairs, proj, sect, endos = _residue_pairs(module)
    g = proj.shape[0]
    t = len(pairs)
    bounds = {"residue_image_dim": t, "residue_rank": g}
    try:
        budget.spend(q**t, "residue endomorphisms")
    except BudgetExceededError as exc:
        return _undecided("end-local-residue", exc, bounds)
    eye_g = np.eye(g, dtype=np.int64)
    if t:
        lifts = np.stack([h.reshape(-1) for h, _ in pairs])
        bars = np.stack([hb.reshape(-1) for _, hb in pairs])
    for idx in range(q**t):
        coeffs = la.index_to_vector(idx, t, q)
        sigma = ((coeffs @ bars) % q).reshape(g, g) if t else eye_g * 0
        if la.is_invertible(sigma, q):
            continue
        if la.is_invertible((eye_g - sigma) % q, q):
            continue
        lift = ((coeffs @ lifts) % q).reshape(module.dim, module.dim) if t else None
        witness = {
            "residue_matrix": sigma.tolist(),
            "lift_matrix": lift.tolist() if lift is not None else None,
        }
        bounds["elements_checked"] = idx + 1
        return CheckReport(FAIL, "end-local-residue", witness, bounds)
    bounds["elements_checked"] = q**t
    if cross_check:
        agree, checked = residue_invertibility_agreement(
            module, samples=32, seed=st.seed
        )
        bounds["cross_checked_endomorphisms"] = checked
        if not agree:
            return CheckReport(
                FAIL,
                "end-local-residue",
                {"reason": "residue invertibility disagrees with direct test"},
                bounds,
            )
    return CheckReport(PASS, "end-local-residue", None, bounds)


def residue_invertibility_agreement(module: Module, samples: int, seed: int):
    """Compare invertibility of s and of the induced map on M/PM.

    Runs over every basis endomorphism plus seeded random combinations;
    returns (all_agree, number_checked).
    """
    q = module.ring.q
    endos = hom_space(module, module)
    pm = radical_multiples(module, np.eye(module.dim, dtype=np.int64))
    proj, sect = la.quotient_maps(pm, module.dim, q)
    candidates = [h for h in endos]
    if endos:
        rng = np.random.default_rng(seed)
        stack = np.stack([h.reshape(-1) for h in endos])
        for _ in range(samples):
            c = rng.integers(0, q, size=len(endos), dtype=np.int64)
            candidates.append(((c @ stack) % q).reshape(module.dim, module.dim))
    checked = 0
    for h in candidates:
        direct = la.is_invertible(h, q)
        residue = la.is_invertible((proj @ h @ sect) % q, q)
        checked += 1
        if direct != residue:
            return False, checked
    return True, checked


def check_fitting(module: Module, settings: Settings | None = None) -> CheckReport:
    """Fitting decomposition M = ker(s^t) (+) im(s^t) for each endomorphism."""
    st = _settings(settings)
    q = module.ring.q
    budget = st.new_budget()
    if module.dim == 0:
        return CheckReport(PASS, "fitting-decomposition", None, {"end_dim": 0})
    endos = hom_space(module, module)
    t = len(endos)
    bounds = {"end_dim": t}
    total = q**t
    exhaustive = total <= min(budget.remaining(), 65536)
    if exhaustive:
        budget.spend(total, "endomorphisms")
        stack = np.stack([h.reshape(-1) for h in endos]) if t else None
        candidates = (
            ((la.index_to_vector(i, t, q) @ stack) % q).reshape(
                module.dim, module.dim
            )
            for i in range(total)
        )
        bounds["endomorphisms_checked"] = total
        bounds["sampled"] = False
    else:
        rng = np.random.default_rng(st.seed)
        n_samples = 256
        budget.spend(t + n_samples, "endomorphisms")
        stack = np.stack([h.reshape(-1) for h in endos])
        extra = [
            ((rng.integers(0, q, size=t, dtype=np.int64) @ stack) % q).reshape(
                module.dim, module.dim
            )
            for _ in range(n_samples)
        ]
        candidates = endos + extra
        bounds["endomorphisms_checked"] = t + n_samples
        bounds["sampled"] = True
    max_exp = 0
    for f in candidates:
        power = np.eye(module.dim, dtype=np.int64)
        found = None
        for exp in range(1, module.dim + 1):
            power = (power @ f) % q
            double = (power @ power) % q
            if la.rank(power, q) == la.rank(double, q):
                found = exp
                break
        if module.dim == 0:
            found = 1
        if found is None:
            return CheckReport(
                FAIL,
                "fitting-decomposition",
                {"endomorphism": f.tolist(), "reason": "no stabilizing exponent"},
                bounds,
            )
        ker = la.row_basis(la.nullspace(power, q), q)
        image = la.row_basis(power.T, q)
        inter = la.intersect_row_spans(ker, image, q)
        if inter.shape[0] != 0 or ker.shape[0] + image.shape[0] != module.dim:
            return CheckReport(
                FAIL,
                "fitting-decomposition",
                {"endomorphism": f.tolist(), "exponent": found},
                bounds,
            )
        max_exp = max(max_exp, found)
    bounds["max_exponent"] = max_exp
    return CheckReport(PASS, "fitting-decomposition", None, bounds)


def check_free(module: Module, settings: Settings | None = None) -> CheckReport:
    """Freeness: a finitely generated module is free iff rel = 0."""
    mp = module.min_presentation()
    bounds = {"gen": mp.profile.gen, "rel": mp.profile.rel}
    if mp.profile.rel == 0:
        return CheckReport(PASS, "free-minimal-presentation", None, bounds)
    ring = module.ring
    witness = {
        "gen": mp.profile.gen,
        "rel": mp.profile.rel,
        "first_relation": [
            ring.format_element(slot) for slot in mp.relations[0]
        ],
    }
    return CheckReport(FAIL, "free-minimal-presentation", witness, bounds)


def check_sequence_purity(
    surjection: ModuleMap, n, m, settings: Settings | None = None
) -> CheckReport:
    """(n, m)-purity of the kernel of a surjection (sequence purity)."""
    if not surjection.is_surjective():
        raise ValueError("sequence purity needs a surjective module map")
    source = surjection.source
    kernel = Submodule(source, surjection.kernel_rows())
    report = check_purity(kernel, n, m, settings)
    report.bounds = dict(report.bounds)
    report.bounds["kernel_dim"] = kernel.dim
    report.method = "sequence-" + report.method
    return report


# -- witness replay -----------------------------------------------------------------

def replay_purity_witness(sub: Submodule, witness: dict) -> bool:
    """Re-verify a purity failure from its serialized witness alone."""
    amb = sub.ambient
    ring = amb.ring
    q = ring.q
    n = witness["n"]
    m = witness["m"]
    entries = [
        [ring.parse_element(cell) for cell in row]
        for row in witness["coefficient_matrix"]
    ]
    target = la.asfield(witness["target_vector"], q)
    dim = amb.dim
    big = np.zeros((n * dim, m * dim), dtype=np.int64)
    for i in range(n):
        for j in range(m):
            big[i * dim : (i + 1) * dim, j * dim : (j + 1) * dim] = amb.action_of(
                entries[i][j]
            )
    # target must be solvable over B
    if la.solve(big, target, q) is None:
        return False
    # target must lie in A^n
    a_n = np.kron(np.eye(n, dtype=np.int64), sub.basis) % q
    basis, piv = la.rref(a_n, q) if a_n.shape[0] else (a_n, [])
    if not la.in_row_span(basis[: len(piv)], piv, target, q):
        return False
    # and must NOT be solvable inside A: solutions restricted to A^m
    a_m = np.kron(np.eye(m, dtype=np.int64), sub.basis) % q
    if a_m.shape[0] == 0:
        return target.any()
    restricted = (big @ a_m.T) % q
    return la.solve(restricted, target, q) is None


def replay_flat_witness(module: Module, witness: dict) -> bool:
    """Re-verify a flatness failure: rebuild K and the tensor map kernel."""
    ring = module.ring
    n = witness["n"]
    free = free_module(ring, n)
    gens = [
        free_element(ring, entries) for entries in witness["submodule_generators"]
    ]
    k_sub = submodule_span(free, gens)
    if k_sub.basis.tolist() != witness["submodule_basis"]:
        return False
    tmap = tensor_map_on_inclusion(module, k_sub)
    vec = la.asfield(witness["kernel_vector"], ring.q)
    if not vec.any():
        return False
    return not ((tmap.matrix @ vec) % ring.q).any()


def replay_injective_witness(module: Module, witness: dict) -> bool:
    """Re-verify an injectivity failure: the hom exists and does not extend."""
    ring = module.ring
    q = ring.q
    n = witness["n"]
    free = free_module(ring, n)
    gens = [
        free_element(ring, entries) for entries in witness["submodule_generators"]
    ]
    k_sub = submodule_span(free, gens)
    if k_sub.basis.tolist() != witness["submodule_basis"]:
        return False
    bad = la.asfield(witness["non_extendable_hom"], q)
    sub_mod, incl = k_sub.as_module()
    ModuleMap(sub_mod, module, bad)  # raises if not a module map
    restr = hom_restriction(k_sub, module)
    flat_sub = np.stack([h.reshape(-1) for h in restr.sub_basis])
    coords = la.solve(flat_sub.T, bad.reshape(-1), q)
    if coords is None:
        return False
    col_rows = la.row_basis(restr.matrix.T, q)
    _, piv = la.rref(col_rows, q) if col_rows.shape[0] else (None, [])
    return not la.in_row_span(col_rows, piv, coords, q)
