"""
Finite-dimensional commutative local algebras over prime fields.

An algebra is given by structure constants on a basis whose element 0 is the
unit.  Construction validates the ring axioms on all basis triples, computes
the nilradical by Frobenius-kernel linear algebra (the q-power map is linear
over a prime field) and rejects non-local input.  For a finite-dimensional
commutative algebra the set of non-units of a local ring equals the
nilradical, so the stored radical basis spans exactly the non-units.

Elements are plain numpy coefficient vectors of length ``dim``; the algebra
object carries the arithmetic.
"""

from __future__ import annotations

import re

import numpy as np

from . import gflinalg as la
from .bounds import Budget, BudgetExceededError
from .report import FAIL, PASS, CheckReport


class AlgebraError(ValueError):
    """Base class for algebra construction/validation failures."""


class NotAssociativeError(AlgebraError):
    pass


class NotCommutativeError(AlgebraError):
    pass


class NoUnitError(AlgebraError):
    pass


class NotLocalError(AlgebraError):
    pass


class NotNilpotentRadicalError(AlgebraError):
    pass


class UnsupportedFamilyError(AlgebraError):
    pass


class NonPrimeCharacteristicError(AlgebraError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


_TERM_RE = re.compile(r"^(?:(\d+)\s*\*\s*)?([A-Za-z][A-Za-z0-9^_]*)$|^(\d+)$")


class Algebra:
    """A validated commutative local F_q-algebra with structure constants.

    Attributes:
        q: prime field size.
        dim: dimension over F_q.
        labels: basis element names; labels[0] is the unit "1".
        table: (dim, dim, dim) structure constants, table[i, j] = coefficient
            vector of basis_i * basis_j.
        mult_mats: (dim, dim, dim), mult_mats[i] = matrix of multiplication
            by basis_i on column coefficient vectors.
        radical: RREF row basis of the maximal ideal (= nilradical).
        residue_degree: [R/P : F_q]; 1 for every named family.

    Instances are immutable by convention and safe to share across threads;
    ``_cache`` holds derived data keyed by structural parameters only.
    """

    def __init__(self, q: int, labels, table):
        if not is_prime(q):
            raise NonPrimeCharacteristicError(f"field size {q} is not prime")
        labels = tuple(str(s) for s in labels)
        d = len(labels)
        table = la.asfield(table, q)
        if table.shape != (d, d, d):
            raise AlgebraError(
                f"structure table has shape {table.shape}, expected {(d, d, d)}"
            )
        if len(set(labels)) != d:
            raise AlgebraError("basis labels must be distinct")
        self.q = q
        self.dim = d
        self.labels = labels
        self.table = table
        self.mult_mats = np.transpose(table, (0, 2, 1)).copy()  # mult_mats[i][:, j] = table[i, j]
        self._validate_unit()
        self._validate_commutative()
        self._validate_associative()
        self.radical, self.radical_pivots = self._compute_radical()
        self.residue_degree = d - self.radical.shape[0]
        self._cache: dict = {}

    # -- validation ------------------------------------------------------

    def _validate_unit(self):
        eye = np.eye(self.dim, dtype=np.int64)
        if not np.array_equal(self.table[0], eye):
            raise NoUnitError("basis element 0 does not act as a left unit")
        if not np.array_equal(self.table[:, 0, :], eye):
            raise NoUnitError("basis element 0 does not act as a right unit")

    def _validate_commutative(self):
        if not np.array_equal(self.table, np.transpose(self.table, (1, 0, 2))):
            raise NotCommutativeError("structure table is not symmetric")

    def _validate_associative(self):
        t = self.table
        left = np.einsum("ijl,lkm->ijkm", t, t) % self.q
        right = np.einsum("jkl,ilm->ijkm", t, t) % self.q
        if not np.array_equal(left, right):
            bad = np.argwhere((left - right) % self.q)
            i, j, k = (int(x) for x in bad[0][:3])
            raise NotAssociativeError(
                f"({self.labels[i]}*{self.labels[j]})*{self.labels[k]} != "
                f"{self.labels[i]}*({self.labels[j]}*{self.labels[k]})"
            )

    def _compute_radical(self):
        d, q = self.dim, self.q
        # Frobenius matrix: column i = basis_i ** q (linear over a prime field).
        frob = np.zeros((d, d), dtype=np.int64)
        for i in range(d):
            frob[:, i] = self.power(np.eye(d, dtype=np.int64)[i], q)
        k = 1
        while q**k < d:
            k += 1
        nil = la.row_basis(la.nullspace(la.mat_pow(frob, k, q), q), q)
        # R/nilradical is semisimple; number of maximal ideals = fixed points
        # of the induced Frobenius.
        proj, sect = la.quotient_maps(nil, d, q)
        fbar = (proj @ frob @ sect) % q
        dbar = fbar.shape[0]
        fixed = la.nullspace((fbar - np.eye(dbar, dtype=np.int64)) % q, q)
        if fixed.shape[0] != 1:
            raise NotLocalError(
                f"non-units are not closed under addition "
                f"({fixed.shape[0]} maximal ideals)"
            )
        for row in nil:
            m = self.mult_matrix(row)
            if la.mat_pow(m, d, q).any():
                raise NotNilpotentRadicalError(
                    f"radical element {self.format_element(row)} is not nilpotent"
                )
        r, pivots = la.rref(nil, q) if nil.shape[0] else (nil, [])
        return r[: len(pivots)].copy(), pivots

    # -- element arithmetic ----------------------------------------------

    def zero(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=np.int64)

    def one(self) -> np.ndarray:
        v = self.zero()
        v[0] = 1
        return v

    def basis_element(self, i: int) -> np.ndarray:
        v = self.zero()
        v[i] = 1
        return v

    def mult_matrix(self, v) -> np.ndarray:
        v = la.asfield(v, self.q)
        return np.einsum("i,ijk->jk", v, self.mult_mats) % self.q

    def mul(self, u, v) -> np.ndarray:
        return (self.mult_matrix(u) @ la.asfield(v, self.q)) % self.q

    def power(self, v, k: int) -> np.ndarray:
        out = self.one()
        for _ in range(k):
            out = self.mul(out, v)
        return out

    def is_unit(self, v) -> bool:
        # local ring: unit iff outside the maximal ideal
        return not la.in_row_span(self.radical, self.radical_pivots, v, self.q)

    def in_radical(self, v) -> bool:
        return la.in_row_span(self.radical, self.radical_pivots, v, self.q)

    @property
    def element_count(self) -> int:
        return self.q**self.dim

    def elements(self) -> np.ndarray:
        """All elements as rows, in canonical index order."""
        return la.all_vectors(self.dim, self.q)

    def radical_elements(self) -> np.ndarray:
        """All elements of the maximal ideal, in canonical index order."""
        r = self.radical.shape[0]
        return (la.all_vectors(r, self.q) @ self.radical) % self.q

    # -- parsing / formatting ----------------------------------------------

    def element(self, x) -> np.ndarray:
        """Coerce int / label expression / coefficient list to a vector."""
        if isinstance(x, str):
            return self.parse_element(x)
        if isinstance(x, (int, np.integer)):
            return (int(x) % self.q) * self.one() % self.q
        v = la.asfield(x, self.q)
        if v.shape != (self.dim,):
            raise AlgebraError(f"coefficient vector must have length {self.dim}")
        return v

    def parse_element(self, text: str) -> np.ndarray:
        """Parse label expressions such as "a+b", "2*x", "1", "x2"."""
        out = self.zero()
        s = text.replace("-", "+-").strip()
        if s.startswith("+-"):
            s = s[1:]
        for raw in s.split("+"):
            term = raw.strip()
            if not term:
                raise AlgebraError(f"empty term in {text!r}")
            sign = 1
            if term.startswith("-"):
                sign = -1
                term = term[1:].strip()
            m = _TERM_RE.match(term)
            if not m:
                raise AlgebraError(f"cannot parse term {term!r} in {text!r}")
            if m.group(3) is not None:
                out[0] = (out[0] + sign * int(m.group(3))) % self.q
                continue
            coeff = int(m.group(1)) if m.group(1) else 1
            label = m.group(2)
            if label not in self.labels:
                raise AlgebraError(f"unknown basis label {label!r} in {text!r}")
            idx = self.labels.index(label)
            out[idx] = (out[idx] + sign * coeff) % self.q
        return out

    def format_element(self, v) -> str:
        v = la.asfield(v, self.q)
        terms = []
        for i, c in enumerate(v):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(int(c)))
            elif c == 1:
                terms.append(self.labels[i])
            else:
                terms.append(f"{int(c)}*{self.labels[i]}")
        return " + ".join(terms) if terms else "0"

    # -- identity ---------------------------------------------------------

    def key(self) -> bytes:
        return (
            self.q.to_bytes(4, "little")
            + self.dim.to_bytes(4, "little")
            + self.table.astype(np.uint8).tobytes()
        )

    def __repr__(self) -> str:
        return f"Algebra(q={self.q}, dim={self.dim}, basis={list(self.labels)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Algebra) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())


# -- named families --------------------------------------------------------

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def square_zero(q: int, t: int) -> Algebra:
    """F_q[a_1..a_t] with all products of generators zero (P^2 = 0)."""
    if t < 1 or t > 25:
        raise UnsupportedFamilyError("squareZero needs 1 <= t <= 25 generators")
    d = t + 1
    labels = ["1"] + [_LETTERS[i] for i in range(t)]
    table = np.zeros((d, d, d), dtype=np.int64)
    for j in range(d):
        table[0, j, j] = 1
        table[j, 0, j] = 1
    return Algebra(q, labels, table)


def chain(q: int, e: int) -> Algebra:
    """F_q[x]/(x^e); every finitely generated ideal is principal."""
    if e < 1:
        raise UnsupportedFamilyError("chain needs exponent >= 1")
    labels = ["1"] + [("x" if k == 1 else f"x{k}") for k in range(1, e)]
    table = np.zeros((e, e, e), dtype=np.int64)
    for i in range(e):
        for j in range(e):
            if i + j < e:
                table[i, j, i + j] = 1
    return Algebra(q, labels, table)


def truncated(q: int, exponents) -> Algebra:
    """F_q[x_1..x_t]/(x_i^{e_i}) on the monomial basis."""
    exps = tuple(int(e) for e in exponents)
    if not exps or any(e < 1 for e in exps) or len(exps) > 25:
        raise UnsupportedFamilyError("truncated needs 1..25 exponents, each >= 1")
    from itertools import product as iproduct

    monos = sorted(
        iproduct(*(range(e) for e in exps)),
        key=lambda a: (sum(a), tuple(-x for x in a)),
    )
    index = {m: i for i, m in enumerate(monos)}
    d = len(monos)

    def label(mono):
        if sum(mono) == 0:
            return "1"
        parts = []
        for letter, k in zip(_LETTERS, mono):
            if k == 1:
                parts.append(letter)
            elif k > 1:
                parts.append(f"{letter}{k}")
        return "".join(parts)

    labels = [label(m) for m in monos]
    table = np.zeros((d, d, d), dtype=np.int64)
    for i, mi in enumerate(monos):
        for j, mj in enumerate(monos):
            s = tuple(x + y for x, y in zip(mi, mj))
            if all(x < e for x, e in zip(s, exps)):
                table[i, j, index[s]] = 1
    return Algebra(q, labels, table)


def build_named(family: str, **params) -> Algebra:
    """Build one of the named test families by name."""
    fam = family.strip()
    if fam in ("squareZero", "square_zero"):
        return square_zero(int(params["q"]), int(params["t"]))
    if fam == "chain":
        return chain(int(params["q"]), int(params["e"]))
    if fam == "truncated":
        return truncated(int(params["q"]), params["exponents"])
    raise UnsupportedFamilyError(f"unknown family {family!r}")


# -- ideals -----------------------------------------------------------------

class Ideal:
    """An ideal as a canonical RREF subspace closed under the ring action."""

    def __init__(self, algebra: Algebra, rows):
        rows = la.asfield(rows, algebra.q)
        if rows.size == 0:
            rows = rows.reshape(0, algebra.dim)
        self.algebra = algebra
        self.basis = la.row_basis(rows, algebra.q)
        _, self.pivots = la.rref(self.basis, algebra.q) if self.basis.shape[0] else (None, [])

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def contains(self, v) -> bool:
        return la.in_row_span(self.basis, self.pivots, v, self.algebra.q)

    def key(self) -> bytes:
        return la.span_key(self.basis, self.algebra.q, self.algebra.dim)

    def __eq__(self, other) -> bool:
        return isinstance(other, Ideal) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        gens = ", ".join(self.algebra.format_element(r) for r in self.basis)
        return f"Ideal<{gens or '0'}>"


def ideal_generate(algebra: Algebra, gens) -> Ideal:
    """Smallest ideal containing ``gens`` (one action pass suffices: the span
    of basis_i * g over all i is already R*g)."""
    vecs = [algebra.element(g) for g in gens]
    if not vecs:
        return Ideal(algebra, np.zeros((0, algebra.dim), dtype=np.int64))
    rows = []
    for g in vecs:
        rows.append((algebra.mult_mats @ g) % algebra.q)
    return Ideal(algebra, np.concatenate(rows, axis=0))


def unit_ideal(algebra: Algebra) -> Ideal:
    return Ideal(algebra, np.eye(algebra.dim, dtype=np.int64))


def annihilator(algebra: Algebra, ideal: Ideal) -> Ideal:
    """{r : r * I = 0}, computed as the kernel of stacked multiplications."""
    if ideal.dim == 0:
        return unit_ideal(algebra)
    mats = np.concatenate([algebra.mult_matrix(x) for x in ideal.basis], axis=0)
    return Ideal(algebra, la.nullspace(mats, algebra.q))


def _radical_multiples(algebra: Algebra, rows) -> np.ndarray:
    """Row basis of P * span(rows) for an action-closed span."""
    q = algebra.q
    if rows.shape[0] == 0 or algebra.radical.shape[0] == 0:
        return np.zeros((0, rows.shape[1] if rows.ndim == 2 else algebra.dim), dtype=np.int64)
    out = []
    for p in algebra.radical:
        out.append((rows @ algebra.mult_matrix(p).T) % q)
    return la.row_basis(np.concatenate(out, axis=0), q)


def min_generators(algebra: Algebra, ideal: Ideal):
    """Minimal generator count and a lifting generating set (Nakayama).

    Greedy: pick basis vectors of I whose classes mod P*I are progressively
    independent; each pick enlarges the span by the full R-multiple line, so
    the number of picks equals dim_k I/(P*I) even when the residue field is
    an extension of F_q.
    """
    q = algebra.q
    span = _radical_multiples(algebra, ideal.basis)
    _, pivots = la.rref(span, q) if span.shape[0] else (span, [])
    span = span[: len(pivots)]
    gens = []
    for v in ideal.basis:
        if la.in_row_span(span, pivots, v, q):
            continue
        gens.append(v)
        extra = (algebra.mult_mats @ v) % q
        span = la.row_basis(np.concatenate([span, extra], axis=0), q)
        _, pivots = la.rref(span, q)
        if span.shape[0] == ideal.dim:
            break
    return len(gens), gens


def enumerate_ideals(algebra: Algebra, max_gens: int, budget: Budget | None = None):
    """All ideals generated by <= max_gens elements, deduplicated.

    Level-wise expansion in canonical element order; the first discovery of
    each ideal corresponds to its lexicographically first generator tuple.
    Yields (ideal, generator_list) in discovery order.
    """
    q, d = algebra.q, algebra.dim
    zero = Ideal(algebra, np.zeros((0, d), dtype=np.int64))
    seen = {zero.key()}
    out = [(zero, [])]
    frontier = [(zero, [])]
    elems = algebra.elements()
    for _ in range(max_gens):
        if budget is not None:
            budget.spend(len(frontier) * len(elems), "ideal enumeration")
        new_frontier = []
        for ideal, gens in frontier:
            for v in elems:
                rows = np.concatenate([ideal.basis, (algebra.mult_mats @ v) % q], axis=0)
                cand = Ideal(algebra, rows)
                k = cand.key()
                if k in seen:
                    continue
                seen.add(k)
                entry = (cand, gens + [v])
                out.append(entry)
                new_frontier.append(entry)
        frontier = new_frontier
    return out


def double_annihilator_test(
    algebra: Algebra, max_gens: int, budget: Budget | None = None
) -> CheckReport:
    """Check A = ann(ann(A)) for every <= max_gens-generated ideal A."""
    if max_gens < 1:
        raise ValueError("max_gens must be >= 1")
    bounds = {
        "max_gens": max_gens,
        "ring_elements": algebra.element_count,
    }
    try:
        ideals = enumerate_ideals(algebra, max_gens, budget)
    except BudgetExceededError as exc:
        return CheckReport(
            "undecided", "double-annihilator", {"reason": str(exc)}, bounds
        )
    bounds["ideals_checked"] = len(ideals)
    for ideal, gens in ideals:
        dd = annihilator(algebra, annihilator(algebra, ideal))
        if dd != ideal:
            witness = {
                "ideal_generators": [algebra.format_element(g) for g in gens],
                "ideal_basis": ideal.basis.tolist(),
                "double_annihilator_basis": dd.basis.tolist(),
            }
            return CheckReport(FAIL, "double-annihilator", witness, bounds)
    return CheckReport(PASS, "double-annihilator", None, bounds)
