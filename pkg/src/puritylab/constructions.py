"""
Witness module constructions.

* Warfield staircase modules W_{p,n,m}: n generators, m relation columns
  built from p+1 ring elements that minimally generate an ideal, laid out in
  the staircase pattern whose endomorphism ring is local.
* Auslander-Bridger dual D(M): cokernel of the transposed minimal relation
  matrix (transpose suffices over a commutative ring).
* Base-field dual M^v: the F_q-linear dual with transposed actions, an
  injective cogenerator substitute for the character module; it swaps
  flatness and injectivity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import Algebra, ideal_generate, min_generators
from .modules import (
    Module,
    from_presentation,
    has_free_summand,
    hom_space,
)


class ConstructionError(ValueError):
    pass


class BadIdealGensError(ConstructionError):
    """The supplied elements do not minimally generate their ideal."""


class RangeViolationError(ConstructionError):
    """(n, m) outside the staircase range (n-1)p+1 <= m <= np+1."""


class HasFreeSummandError(ConstructionError):
    """Auslander-Bridger duality requires a module without free summands."""

    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


@dataclass(frozen=True)
class StaircaseSpec:
    """Parameters of W_{p,n,m}: p, generator count n, relation count m, and
    the p+1 ideal generators a_1..a_{p+1} (ring elements)."""

    p: int
    n: int
    m: int
    ideal_gens: tuple

    def validate(self, ring: Algebra) -> list[np.ndarray]:
        gens = [ring.element(g) for g in self.ideal_gens]
        if self.p < 1 or self.n < 1 or self.m < 1:
            raise ConstructionError("p, n, m must be positive")
        if len(gens) != self.p + 1:
            raise BadIdealGensError(
                f"need p+1 = {self.p + 1} ideal generators, got {len(gens)}"
            )
        count, _ = min_generators(ring, ideal_generate(ring, gens))
        if count != self.p + 1:
            raise BadIdealGensError(
                f"ideal generated by {[ring.format_element(g) for g in gens]} "
                f"needs {count} generators, expected {self.p + 1}"
            )
        lo = (self.n - 1) * self.p + 1
        hi = self.n * self.p + 1
        if not (lo <= self.m <= hi):
            raise RangeViolationError(
                f"m = {self.m} outside [{lo}, {hi}] for p = {self.p}, n = {self.n}"
            )
        return gens


def staircase_columns(spec: StaircaseSpec, ring: Algebra) -> np.ndarray:
    """The m relation columns of W_{p,n,m} as an (m, n, dim) array.

    Writing j = p*q + r with 1 <= r <= p: column j is a_r e_{q+1} unless
    r = 1 and q > 0, in which case it is a_{p+1} e_q + a_1 e_{q+1}; the top
    index j = p*n + 1 (present only when m = p*n + 1) is a_{p+1} e_n.
    """
    gens = spec.validate(ring)
    p, n, m = spec.p, spec.n, spec.m
    cols = np.zeros((m, n, ring.dim), dtype=np.int64)
    for j in range(1, m + 1):
        q_idx, r = divmod(j - 1, p)
        r += 1
        if j == p * n + 1:
            cols[j - 1, n - 1] = gens[p]  # a_{p+1} e_n
        elif r != 1 or q_idx == 0:
            cols[j - 1, q_idx] = gens[r - 1]  # a_r e_{q+1}
        else:
            cols[j - 1, q_idx - 1] = gens[p]  # a_{p+1} e_q
            cols[j - 1, q_idx] = gens[0]  # + a_1 e_{q+1}
    return cols


def staircase_module(ring: Algebra, spec: StaircaseSpec) -> Module:
    """Build W_{p,n,m} and re-derive gen = n, rel = m as a build-time check."""
    cols = staircase_columns(spec, ring)
    module = from_presentation(ring, spec.n, cols)
    profile = module.min_presentation().profile
    if (profile.gen, profile.rel) != (spec.n, spec.m):
        raise ConstructionError(
            f"staircase invariants failed: got gen={profile.gen}, "
            f"rel={profile.rel}, expected gen={spec.n}, rel={spec.m}"
        )
    return module


def auslander_bridger_dual(module: Module) -> Module:
    """D(M) = coker of the transposed minimal relation matrix.

    Refuses modules with a free summand (callers strip summands explicitly if
    they mean to); verifies the gen/rel exchange at build time.
    """
    ring = module.ring
    if has_free_summand(module):
        witness = None
        reg = from_presentation(ring, 1, [])
        for h in hom_space(module, reg):
            if any(not ring.in_radical(col) for col in h.T):
                witness = h
                break
        raise HasFreeSummandError(
            "module has a free summand; strip it before dualizing",
            witness=witness.tolist() if witness is not None else None,
        )
    mp = module.min_presentation()
    g, r = mp.profile.gen, mp.profile.rel
    # relations: (r, g, dim) columns of f: R^r -> R^g; the transpose f* has
    # relation columns indexed by the old generators.
    transposed = np.transpose(mp.relations, (1, 0, 2))
    dual = from_presentation(ring, r, transposed)
    dprof = dual.min_presentation().profile
    if (dprof.gen, dprof.rel) != (r, g):
        raise ConstructionError(
            f"duality exchange failed: D(M) has (gen, rel) = "
            f"({dprof.gen}, {dprof.rel}), expected ({r}, {g})"
        )
    return dual


def fq_dual(module: Module) -> Module:
    """The base-field dual: same carrier dimension, transposed actions."""
    actions = np.transpose(module.actions, (0, 2, 1)).copy()
    return Module(module.ring, actions, validate=False)
