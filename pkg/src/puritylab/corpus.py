"""
Default test rings and module corpora for the verification suites.

The ring list is fixed: the two square-zero rings exhibit the p = 1 and
p = 2 witnesses, the chain rings are the principal-ideal (valuation-like)
regime where purities collapse, chain(3,2) is an odd-characteristic smoke
test, and truncated(2,2,2) is the quasi-Frobenius instance.
"""

from __future__ import annotations

import numpy as np

from . import gflinalg as la
from .algebra import Algebra, chain, square_zero, truncated
from .bounds import BudgetExceededError
from .constructions import StaircaseSpec, staircase_module
from .modules import (
    Module,
    Submodule,
    direct_sum,
    free_module,
    from_presentation,
    is_isomorphic,
    submodule_span,
)

RING_NAMES = (
    "squareZero(2,2)",
    "squareZero(2,3)",
    "chain(2,2)",
    "chain(2,3)",
    "chain(3,2)",
    "truncated(2,2,2)",
)


_DEFAULT_RINGS: dict[str, Algebra] = {}


def default_rings() -> dict[str, Algebra]:
    """The corpus rings, memoized so suites share enumeration caches.

    Budget accounting re-charges cached enumeration costs, so verdicts and
    reports never depend on cache warmth.
    """
    if not _DEFAULT_RINGS:
        _DEFAULT_RINGS.update(
            {
                "squareZero(2,2)": square_zero(2, 2),
                "squareZero(2,3)": square_zero(2, 3),
                "chain(2,2)": chain(2, 2),
                "chain(2,3)": chain(2, 3),
                "chain(3,2)": chain(3, 2),
                "truncated(2,2,2)": truncated(2, (2, 2)),
            }
        )
    return _DEFAULT_RINGS


def residue_field_module(ring: Algebra) -> Module:
    """k = R/P as a module, presented by the radical generators."""
    rels = [[row] for row in ring.radical]
    return from_presentation(ring, 1, rels)


def single_relation_module(ring: Algebra) -> Module:
    """F/(a_1 e_1 + ... + a_t e_t) for the radical generators a_i.

    Over a square-zero ring with dim P = p + 1 this is the module that is
    (aleph0, p)-flat but not (1, p+1)-flat.
    """
    t = ring.radical.shape[0]
    return from_presentation(ring, t, [list(ring.radical)])


def corpus_modules(ring_name: str, ring: Algebra) -> list[tuple[str, Module]]:
    """A small named family of modules exercising each ring's phenomena."""
    reg = free_module(ring, 1)
    k = residue_field_module(ring)
    mods: list[tuple[str, Module]] = [("R", reg), ("k", k)]
    if ring_name.startswith("squareZero"):
        a = ring.parse_element("a")
        mods.append(("R/(a)", from_presentation(ring, 1, [[a]])))
        mods.append(("single-relation", single_relation_module(ring)))
        if ring_name == "squareZero(2,2)":
            mods.append(
                ("W(1,2,2)", staircase_module(ring, StaircaseSpec(1, 2, 2, ("a", "b"))))
            )
            mods.append(
                ("W(1,2,3)", staircase_module(ring, StaircaseSpec(1, 2, 3, ("a", "b"))))
            )
        mods.append(("R+k", direct_sum(reg, k)))
    elif ring_name.startswith("chain"):
        e = ring.dim
        if e > 2:
            mods.append(("R/(x^2)", from_presentation(ring, 1, [["x2"]])))
        mods.append(("k+k", direct_sum(k, k)))
        mods.append(("R+k", direct_sum(reg, k)))
    else:  # truncated quasi-Frobenius ring
        mods.append(("R/(a)", from_presentation(ring, 1, [["a"]])))
        mods.append(("R/socle", from_presentation(ring, 1, [["ab"]])))
        mods.append(("R/(a+b)", from_presentation(ring, 1, [["a+b"]])))
    return mods


def all_ideals(ring: Algebra) -> list[Submodule]:
    """Every ideal (action-closed subspace of the regular module)."""
    reg = free_module(ring, 1)
    out = []
    for rows in la.all_subspaces(ring.dim, ring.q):
        if _is_action_closed(reg, rows):
            out.append(Submodule(reg, rows))
    return out


def all_submodules(module: Module) -> list[Submodule]:
    """Every submodule of a small module, by subspace enumeration."""
    out = []
    for rows in la.all_subspaces(module.dim, module.ring.q):
        if _is_action_closed(module, rows):
            out.append(Submodule(module, rows))
    return out


def _is_action_closed(module: Module, rows: np.ndarray) -> bool:
    q = module.ring.q
    if rows.shape[0] == 0:
        return True
    basis, piv = la.rref(rows, q)
    basis = basis[: len(piv)]
    for i in range(1, module.ring.dim):
        img = (rows @ module.actions[i].T) % q
        for v in img:
            if not la.in_row_span(basis, piv, v, q):
                return False
    return True


def modules_up_to_iso(ring: Algebra, max_dim: int) -> list[Module]:
    """All modules of dimension <= max_dim up to isomorphism (needs P^2 = 0).

    A module over a radical-square-zero ring splits as V (+) PM with the
    radical generators acting as maps V -> PM, so enumerating all generator
    map tuples on all (dim V, dim W) splits reaches every isomorphism class;
    duplicates are removed by invariant buckets plus exact isomorphism
    search.  An undecidable isomorphism (budget) keeps both candidates,
    which only adds redundant members, never loses a class.
    """
    key = ("modules-up-to-iso", max_dim)
    cached = ring._cache.get(key)
    if cached is not None:
        return cached
    if ring.residue_degree != 1:
        raise ValueError("module enumeration needs residue field = F_q")
    rad = ring.radical
    s = rad.shape[0]
    for i in range(s):
        for j in range(s):
            if ring.mul(rad[i], rad[j]).any():
                raise ValueError("module enumeration needs P^2 = 0")
    q, d = ring.q, ring.dim
    # coordinates of each basis element over {1} + radical basis
    base = np.concatenate([ring.one().reshape(1, -1), rad], axis=0)
    coords = np.stack(
        [la.solve(base.T, ring.basis_element(i), q) for i in range(d)]
    )
    candidates: list[Module] = []
    for v in range(0, max_dim + 1):
        for w in range(0, max_dim - v + 1):
            if v == 0 and w > 0:
                continue
            total = q ** (s * v * w)
            for idx in range(total):
                digits = la.index_to_vector(idx, s * v * w, q)
                maps = digits.reshape(s, w, v) if v * w else np.zeros(
                    (s, w, v), dtype=np.int64
                )
                actions = np.zeros((d, v + w, v + w), dtype=np.int64)
                for i in range(d):
                    act = np.zeros((v + w, v + w), dtype=np.int64)
                    act += coords[i, 0] * np.eye(v + w, dtype=np.int64)
                    for kk in range(s):
                        act[v:, :v] = (act[v:, :v] + coords[i, kk + 1] * maps[kk]) % q
                    actions[i] = act % q
                candidates.append(Module(ring, actions))
    buckets: dict = {}
    out: list[Module] = []
    for cand in candidates:
        profile = cand.min_presentation().profile
        bkey = (cand.dim, profile.gen, profile.rel, cand.loewy_dims())
        known = buckets.setdefault(bkey, [])
        duplicate = False
        for rep in known:
            try:
                if is_isomorphic(cand, rep):
                    duplicate = True
                    break
            except BudgetExceededError:
                continue
        if not duplicate:
            known.append(cand)
            out.append(cand)
    ring._cache[key] = out
    return out


def seeded_inclusions(ring: Algebra, count: int, seed: int, max_dim: int = 6):
    """Deterministic pseudo-random inclusions A <= B over presented modules."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        rank = int(rng.integers(1, 3))
        n_rel = int(rng.integers(0, 3))
        rel = rng.integers(0, ring.q, size=(n_rel, rank, ring.dim))
        big = from_presentation(ring, rank, rel)
        if big.dim == 0 or big.dim > max_dim:
            continue
        n_gens = int(rng.integers(0, 3))
        gens = rng.integers(0, ring.q, size=(n_gens, big.dim))
        out.append(submodule_span(big, gens))
    return out
