"""
Finitely presented modules as vector spaces with a ring action.

A module over an Algebra is a carrier F_q^dim plus one action matrix per
ring basis element, validated against the structure constants.  Presentation
data (generator rank, relation columns, the covering projection from the
free module) is optional metadata: carrier-level operations (Hom, tensor,
quotients) never need it, and minimal presentations are recomputed on demand
by Nakayama-greedy generator selection.

Relation matrices use the columns-as-relations orientation: a presentation
with rank n and m relations is stored as an (m, n, dim_R) array whose j-th
slice is the j-th relation column, one ring element per generator row.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gflinalg as la
from .algebra import Algebra
from .bounds import Budget, BudgetExceededError


class ModuleError(ValueError):
    pass


@dataclass(frozen=True)
class GenRelProfile:
    gen: int
    rel: int


class Module:
    """Carrier + actions, optionally carrying presentation metadata.

    Immutable by convention; `_cache` memoizes derived data (minimal
    presentation, Loewy dims) so modules can be shared across threads after
    warm-up by the sequential driver.
    """

    def __init__(
        self,
        ring: Algebra,
        actions,
        *,
        gen_rank: int | None = None,
        relations: np.ndarray | None = None,
        cover: np.ndarray | None = None,
        free_rank: int | None = None,
        validate: bool = True,
    ):
        q = ring.q
        actions = la.asfield(actions, q)
        if actions.ndim != 3 or actions.shape[0] != ring.dim:
            raise ModuleError(f"actions must be ({ring.dim}, dim, dim)")
        self.ring = ring
        self.dim = actions.shape[1]
        self.actions = actions
        self.gen_rank = gen_rank
        self.relations = relations
        self.cover = cover
        self.free_rank = free_rank
        self._cache: dict = {}
        if validate:
            self._validate()

    def _validate(self):
        q, d, n = self.ring.q, self.ring.dim, self.dim
        if self.actions.shape != (d, n, n):
            raise ModuleError("action matrices must be square over the carrier")
        if not np.array_equal(self.actions[0], np.eye(n, dtype=np.int64)):
            raise ModuleError("unit basis element must act as the identity")
        table = self.ring.table
        for i in range(d):
            for j in range(i, d):
                composed = (self.actions[i] @ self.actions[j]) % q
                from_table = np.einsum("l,ljk->jk", table[i, j], self.actions) % q
                if not np.array_equal(composed, from_table):
                    raise ModuleError(
                        f"action incompatible with structure constants at "
                        f"({self.ring.labels[i]}, {self.ring.labels[j]})"
                    )

    # -- elements ----------------------------------------------------------

    def act(self, r, v) -> np.ndarray:
        """Apply the ring element r to the carrier vector v."""
        r = self.ring.element(r)
        mat = np.einsum("i,ijk->jk", r, self.actions) % self.ring.q
        return (mat @ la.asfield(v, self.ring.q)) % self.ring.q

    def action_of(self, r) -> np.ndarray:
        r = self.ring.element(r)
        return np.einsum("i,ijk->jk", r, self.actions) % self.ring.q

    def closure_rows(self, vectors) -> np.ndarray:
        """Canonical basis of the submodule generated by ``vectors``.

        One action pass suffices: span{basis_i * v} is already R*v.
        """
        q = self.ring.q
        vecs = la.asfield(vectors, q)
        if vecs.size == 0:
            return np.zeros((0, self.dim), dtype=np.int64)
        if vecs.ndim == 1:
            vecs = vecs.reshape(1, -1)
        orbit = np.einsum("aij,kj->kai", self.actions, vecs).reshape(-1, self.dim) % q
        return la.row_basis(orbit, q)

    def element_from_generators(self, ring_elements) -> np.ndarray:
        """Map a tuple of gen_rank ring elements through the cover."""
        if self.cover is None or self.gen_rank is None:
            raise ModuleError("module carries no presentation cover")
        ring_vecs = [self.ring.element(r) for r in ring_elements]
        if len(ring_vecs) != self.gen_rank:
            raise ModuleError(f"expected {self.gen_rank} generator coefficients")
        flat = np.concatenate(ring_vecs)
        return (self.cover @ flat) % self.ring.q

    # -- memoized invariants -------------------------------------------------

    def min_presentation(self) -> "MinimalPresentation":
        if "minpres" not in self._cache:
            self._cache["minpres"] = minimal_presentation(self)
        return self._cache["minpres"]

    def loewy_dims(self) -> tuple[int, ...]:
        """Dimensions of the radical filtration M, PM, P^2 M, ... (to zero)."""
        if "loewy" not in self._cache:
            q = self.ring.q
            dims = [self.dim]
            rows = np.eye(self.dim, dtype=np.int64)
            while rows.shape[0]:
                rows = radical_multiples(self, rows)
                dims.append(rows.shape[0])
                if rows.shape[0] == 0:
                    break
            self._cache["loewy"] = tuple(dims)
        return self._cache["loewy"]

    def key(self) -> bytes:
        return (
            self.dim.to_bytes(4, "little")
            + self.actions.astype(np.uint8).tobytes()
        )

    def __repr__(self) -> str:
        return f"Module(dim={self.dim} over {self.ring!r})"


class ModuleMap:
    """An F_q-matrix between carriers commuting with all ring actions."""

    def __init__(self, source: Module, target: Module, matrix, validate: bool = True):
        q = source.ring.q
        self.source = source
        self.target = target
        self.matrix = la.asfield(matrix, q)
        if self.matrix.shape != (target.dim, source.dim):
            raise ModuleError(
                f"map matrix has shape {self.matrix.shape}, expected "
                f"{(target.dim, source.dim)}"
            )
        if validate:
            if source.ring is not target.ring and source.ring != target.ring:
                raise ModuleError("source and target live over different rings")
            for i in range(source.ring.dim):
                lhs = (self.matrix @ source.actions[i]) % q
                rhs = (target.actions[i] @ self.matrix) % q
                if not np.array_equal(lhs, rhs):
                    raise ModuleError(
                        f"matrix does not commute with action of "
                        f"{source.ring.labels[i]}"
                    )

    @property
    def rank(self) -> int:
        return la.rank(self.matrix, self.source.ring.q)

    def is_injective(self) -> bool:
        return self.rank == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank == self.target.dim

    def is_isomorphism(self) -> bool:
        return self.source.dim == self.target.dim and self.is_injective()

    def kernel_rows(self) -> np.ndarray:
        return la.row_basis(la.nullspace(self.matrix, self.source.ring.q), self.source.ring.q)

    def __repr__(self) -> str:
        return f"ModuleMap({self.source.dim} -> {self.target.dim})"


class Submodule:
    """An action-closed subspace in canonical RREF form.

    ``gens`` optionally remembers the generating vectors that produced the
    submodule (used for reproducible witnesses).
    """

    def __init__(self, ambient: Module, rows, gens=None):
        q = ambient.ring.q
        rows = la.asfield(rows, q)
        if rows.size == 0:
            rows = rows.reshape(0, ambient.dim)
        self.ambient = ambient
        self.basis = la.row_basis(rows, q)
        _, self.pivots = (
            la.rref(self.basis, q) if self.basis.shape[0] else (None, [])
        )
        self.gens = gens
        for i in range(ambient.ring.dim):
            img = (self.basis @ ambient.actions[i].T) % q
            for v in img:
                if not la.in_row_span(self.basis, self.pivots, v, q):
                    raise ModuleError("subspace is not closed under the ring action")

    @classmethod
    def _trusted(cls, ambient: Module, rref_rows, pivots, gens):
        """Internal constructor for rows already known closed and in RREF."""
        sub = cls.__new__(cls)
        sub.ambient = ambient
        sub.basis = rref_rows
        sub.pivots = pivots
        sub.gens = gens
        return sub

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def contains(self, v) -> bool:
        return la.in_row_span(self.basis, self.pivots, v, self.ambient.ring.q)

    def key(self) -> bytes:
        return la.span_key(self.basis, self.ambient.ring.q, self.ambient.dim)

    def coords(self, v) -> np.ndarray:
        """Coordinates in the RREF basis (reads off pivot positions)."""
        v = la.asfield(v, self.ambient.ring.q)
        return v[self.pivots]

    def as_module(self) -> tuple[Module, ModuleMap]:
        """The submodule as a Module plus its inclusion map."""
        q = self.ambient.ring.q
        s = self.dim
        acts = np.zeros((self.ambient.ring.dim, s, s), dtype=np.int64)
        for i in range(self.ambient.ring.dim):
            img = (self.ambient.actions[i] @ self.basis.T) % q  # columns = images
            acts[i] = img[self.pivots, :]
        sub = Module(self.ambient.ring, acts, validate=False)
        incl = ModuleMap(sub, self.ambient, self.basis.T, validate=False)
        return sub, incl

    def __repr__(self) -> str:
        return f"Submodule(dim={self.dim} of {self.ambient.dim})"


# -- constructors ------------------------------------------------------------

def free_module(ring: Algebra, n: int) -> Module:
    """R^n with the block regular representation (slot-major coordinates)."""
    if n < 0:
        raise ModuleError("rank must be >= 0")
    q, d = ring.q, ring.dim
    eye = np.eye(n, dtype=np.int64)
    actions = np.stack([np.kron(eye, ring.mult_mats[i]) % q for i in range(d)])
    return Module(
        ring,
        actions,
        gen_rank=n,
        relations=np.zeros((0, n, d), dtype=np.int64),
        cover=np.eye(n * d, dtype=np.int64),
        free_rank=n,
        validate=False,
    )


def free_element(ring: Algebra, entries) -> np.ndarray:
    """Embed a tuple of ring elements into the free carrier."""
    vecs = [ring.element(e) for e in entries]
    return np.concatenate(vecs) if vecs else np.zeros(0, dtype=np.int64)


def normalize_relations(ring: Algebra, rank: int, relations) -> np.ndarray:
    """Coerce a list of relation columns into an (m, rank, dim) array."""
    cols = []
    for col in relations:
        entries = [ring.element(e) for e in col]
        if len(entries) != rank:
            raise ModuleError(f"relation column needs {rank} entries")
        cols.append(np.stack(entries))
    if not cols:
        return np.zeros((0, rank, ring.dim), dtype=np.int64)
    return np.stack(cols)


def from_presentation(ring: Algebra, rank: int, relations) -> Module:
    """Cokernel of the relation columns inside R^rank."""
    rel = normalize_relations(ring, rank, relations)
    free = free_module(ring, rank)
    vectors = rel.reshape(rel.shape[0], rank * ring.dim)
    closure = free.closure_rows(vectors)
    proj, sect = la.quotient_maps(closure, rank * ring.dim, ring.q)
    actions = np.stack(
        [(proj @ free.actions[i] @ sect) % ring.q for i in range(ring.dim)]
    )
    return Module(
        ring,
        actions,
        gen_rank=rank,
        relations=rel,
        cover=proj,
        free_rank=rank if rel.shape[0] == 0 else None,
        validate=False,
    )


def submodule_span(module: Module, vectors, gens=None) -> Submodule:
    rows = module.closure_rows(vectors)
    if gens is None:
        vecs = la.asfield(vectors, module.ring.q)
        gens = list(vecs.reshape(-1, module.dim)) if vecs.size else []
    return Submodule(module, rows, gens=gens)


def quotient(module: Module, sub: Submodule) -> tuple[Module, ModuleMap]:
    if sub.ambient is not module and sub.ambient.key() != module.key():
        raise ModuleError("submodule does not live in the given module")
    q = module.ring.q
    proj, sect = la.quotient_maps(sub.basis, module.dim, q)
    actions = np.stack(
        [(proj @ module.actions[i] @ sect) % q for i in range(module.ring.dim)]
    )
    cover = (proj @ module.cover) % q if module.cover is not None else None
    quot = Module(
        module.ring,
        actions,
        gen_rank=module.gen_rank,
        cover=cover,
        validate=False,
    )
    return quot, ModuleMap(module, quot, proj, validate=False)


def direct_sum(m1: Module, m2: Module) -> Module:
    if m1.ring != m2.ring:
        raise ModuleError("direct sum needs a common ring")
    q, d = m1.ring.q, m1.ring.dim
    n1, n2 = m1.dim, m2.dim
    actions = np.zeros((d, n1 + n2, n1 + n2), dtype=np.int64)
    actions[:, :n1, :n1] = m1.actions
    actions[:, n1:, n1:] = m2.actions
    gen_rank = None
    cover = None
    relations = None
    if m1.gen_rank is not None and m2.gen_rank is not None and \
            m1.cover is not None and m2.cover is not None:
        r1, r2 = m1.gen_rank, m2.gen_rank
        gen_rank = r1 + r2
        cover = np.zeros((n1 + n2, (r1 + r2) * d), dtype=np.int64)
        cover[:n1, : r1 * d] = m1.cover
        cover[n1:, r1 * d :] = m2.cover
        if m1.relations is not None and m2.relations is not None:
            k1, k2 = m1.relations.shape[0], m2.relations.shape[0]
            relations = np.zeros((k1 + k2, r1 + r2, d), dtype=np.int64)
            relations[:k1, :r1] = m1.relations
            relations[k1:, r1:] = m2.relations
    return Module(
        m1.ring,
        actions,
        gen_rank=gen_rank,
        relations=relations,
        cover=cover,
        validate=False,
    )


# -- Hom and tensor -----------------------------------------------------------

def hom_space(source: Module, target: Module) -> list[np.ndarray]:
    """Field basis of all matrices commuting with every ring action."""
    if source.ring != target.ring:
        raise ModuleError("Hom needs a common ring")
    q = source.ring.q
    dm, dn = source.dim, target.dim
    if dm == 0 or dn == 0:
        return []
    blocks = []
    for i in range(1, source.ring.dim):
        blocks.append(
            (np.kron(np.eye(dn, dtype=np.int64), source.actions[i].T)
             - np.kron(target.actions[i], np.eye(dm, dtype=np.int64))) % q
        )
    if not blocks:
        sol = np.eye(dn * dm, dtype=np.int64)
    else:
        sol = la.nullspace(np.concatenate(blocks, axis=0), q)
    return [row.reshape(dn, dm) for row in sol]


def hom_from_free(rank: int, target: Module) -> list[np.ndarray]:
    """Basis of Hom(R^rank, M) built directly from evaluation at slot units.

    Basis order: slot-major, then carrier basis vector of M; the hom sends
    the slot-j unit to the chosen carrier basis vector.
    """
    d = target.ring.dim
    out = []
    for j in range(rank):
        for a in range(target.dim):
            h = np.zeros((target.dim, rank * d), dtype=np.int64)
            h[:, j * d : (j + 1) * d] = target.actions[:, :, a].T
            out.append(h)
    return out


@dataclass
class TensorProduct:
    module: Module
    to_classes: np.ndarray    # (T, dimM*dimN) projection from pure tensors
    from_classes: np.ndarray  # (dimM*dimN, T) section

    def pure(self, x, y) -> np.ndarray:
        """Class of x (x) y."""
        q = self.module.ring.q
        return (self.to_classes @ np.kron(la.asfield(x, q), la.asfield(y, q))) % q


def tensor(m1: Module, m2: Module) -> TensorProduct:
    """M (x)_R N as the quotient of M (x)_F N by (r x)(x)y - x(x)(r y)."""
    if m1.ring != m2.ring:
        raise ModuleError("tensor needs a common ring")
    q = m1.ring.q
    da, db = m1.dim, m2.dim
    amb = da * db
    rel_rows = []
    eb = np.eye(db, dtype=np.int64)
    ea = np.eye(da, dtype=np.int64)
    for i in range(1, m1.ring.dim):
        diff = (np.kron(m1.actions[i], eb) - np.kron(ea, m2.actions[i])) % q
        rel_rows.append(diff.T)
    rel = (
        la.row_basis(np.concatenate(rel_rows, axis=0), q)
        if rel_rows
        else np.zeros((0, amb), dtype=np.int64)
    )
    proj, sect = la.quotient_maps(rel, amb, q)
    actions = np.stack(
        [(proj @ np.kron(m1.actions[i], eb) @ sect) % q for i in range(m1.ring.dim)]
    )
    mod = Module(m1.ring, actions, validate=False)
    return TensorProduct(mod, proj, sect)


def tensor_map_on_inclusion(
    m: Module, sub: Submodule, ambient_tensor: TensorProduct | None = None
) -> ModuleMap:
    """The induced map M (x) S -> M (x) F for S inside F."""
    q = m.ring.q
    sub_mod, incl = sub.as_module()
    t_sub = tensor(m, sub_mod)
    t_amb = ambient_tensor if ambient_tensor is not None else tensor(m, sub.ambient)
    mat = (
        t_amb.to_classes
        @ np.kron(np.eye(m.dim, dtype=np.int64), incl.matrix)
        @ t_sub.from_classes
    ) % q
    return ModuleMap(t_sub.module, t_amb.module, mat, validate=False)


@dataclass
class HomRestriction:
    """The restriction map Hom(F, M) -> Hom(S, M) on computed bases."""

    matrix: np.ndarray          # (dim Hom(S,M), dim Hom(F,M)) coordinates
    free_basis: list
    sub_basis: list
    sub_module: Module
    inclusion: ModuleMap

    def is_surjective(self, q: int) -> bool:
        if not self.sub_basis:
            return True
        return la.rank(self.matrix, q) == len(self.sub_basis)

    def non_extendable(self, q: int) -> np.ndarray | None:
        """A hom S -> M outside the image, as a matrix (None if surjective)."""
        if not self.sub_basis:
            return None
        col_rows = la.row_basis(self.matrix.T, q)
        _, piv = la.rref(col_rows, q) if col_rows.shape[0] else (None, [])
        for j in range(len(self.sub_basis)):
            e = np.zeros(len(self.sub_basis), dtype=np.int64)
            e[j] = 1
            if not la.in_row_span(col_rows, piv, e, q):
                return self.sub_basis[j]
        # image is proper but contains every coordinate vector: impossible
        return None


def hom_restriction(sub: Submodule, m: Module) -> HomRestriction:
    q = m.ring.q
    amb = sub.ambient
    if amb.free_rank is not None:
        free_basis = hom_from_free(amb.free_rank, m)
    else:
        free_basis = hom_space(amb, m)
    sub_mod, incl = sub.as_module()
    sub_basis = hom_space(sub_mod, m)
    if not sub_basis:
        mat = np.zeros((0, len(free_basis)), dtype=np.int64)
        return HomRestriction(mat, free_basis, sub_basis, sub_mod, incl)
    flat_sub = np.stack([h.reshape(-1) for h in sub_basis])  # (tS, dimM*s)
    if free_basis:
        restr_cols = np.stack(
            [((h @ incl.matrix) % q).reshape(-1) for h in free_basis], axis=1
        )
    else:
        restr_cols = np.zeros((flat_sub.shape[1], 0), dtype=np.int64)
    coords = _solve_matrix(flat_sub.T, restr_cols, q)
    return HomRestriction(coords, free_basis, sub_basis, sub_mod, incl)


def _solve_matrix(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    """Solve a @ X = b columnwise; a must have full column rank and the
    system must be consistent (guaranteed for hom restrictions)."""
    n = a.shape[1]
    aug = np.concatenate([a, b], axis=1)
    r, pivots = la.rref(aug, q)
    if any(p >= n for p in pivots):
        raise ModuleError("inconsistent restriction system")
    x = np.zeros((n, b.shape[1]), dtype=np.int64)
    for k, p in enumerate(pivots):
        x[p] = r[k, n:]
    return x


# -- minimal presentations -----------------------------------------------------

def radical_multiples(module: Module, rows: np.ndarray) -> np.ndarray:
    """Row basis of P * span(rows) inside the carrier."""
    q = module.ring.q
    rad = module.ring.radical
    if rows.shape[0] == 0 or rad.shape[0] == 0:
        return np.zeros((0, module.dim), dtype=np.int64)
    mats = np.einsum("ri,ijk->rjk", rad, module.actions) % q
    out = np.einsum("rjk,sk->rsj", mats, rows).reshape(-1, module.dim) % q
    return la.row_basis(out, q)


@dataclass
class MinimalPresentation:
    profile: GenRelProfile
    relations: np.ndarray        # (rel, gen, dim_R) relation columns
    cover: ModuleMap             # free(gen) -> M, kernel inside P * free
    generator_vectors: list      # carrier vectors lifting a residue basis
    kernel_rows: np.ndarray      # canonical basis of ker(cover)


def minimal_presentation(module: Module) -> MinimalPresentation:
    """Nakayama-minimal cover and relation count.

    gen = dim_k M/PM via greedy residue-basis lifting; the cover kernel then
    sits inside P*R^gen (asserted), and rel is the minimal generator count
    of that kernel, computed by the same greedy on the kernel.
    """
    ring = module.ring
    q, d = ring.q, ring.dim
    pm = radical_multiples(module, np.eye(module.dim, dtype=np.int64))
    span = pm
    _, pivots = la.rref(span, q) if span.shape[0] else (None, [])
    gens: list[np.ndarray] = []
    for a in range(module.dim):
        v = np.eye(module.dim, dtype=np.int64)[a]
        if span.shape[0] == module.dim:
            break
        if la.in_row_span(span, pivots, v, q):
            continue
        gens.append(v)
        orbit = np.einsum("aij,j->ai", module.actions, v) % q
        span = la.row_basis(np.concatenate([span, orbit], axis=0), q)
        _, pivots = la.rref(span, q)
    g = len(gens)
    cover_mat = np.zeros((module.dim, g * d), dtype=np.int64)
    for j, v in enumerate(gens):
        cover_mat[:, j * d : (j + 1) * d] = (
            np.einsum("aij,j->ai", module.actions, v) % q
        ).T
    free = free_module(ring, g)
    kernel = la.row_basis(la.nullspace(cover_mat, q), q)
    # Nakayama guarantee: kernel coordinates are radical in every slot
    for row in kernel:
        for slot in row.reshape(g, d):
            if not ring.in_radical(slot):
                raise ModuleError("minimal cover kernel escapes P * R^gen")
    # minimal generators of the kernel submodule of the free cover
    span2 = radical_multiples(free, kernel)
    _, piv2 = la.rref(span2, q) if span2.shape[0] else (None, [])
    rel_gens: list[np.ndarray] = []
    for v in kernel:
        if la.in_row_span(span2, piv2, v, q):
            continue
        rel_gens.append(v)
        orbit = np.einsum("aij,j->ai", free.actions, v) % q
        span2 = la.row_basis(np.concatenate([span2, orbit], axis=0), q)
        _, piv2 = la.rref(span2, q)
    rel = len(rel_gens)
    relations = (
        np.stack([v.reshape(g, d) for v in rel_gens])
        if rel_gens
        else np.zeros((0, g, d), dtype=np.int64)
    )
    cover = ModuleMap(free, module, cover_mat, validate=False)
    return MinimalPresentation(
        GenRelProfile(g, rel), relations, cover, gens, kernel
    )


# -- isomorphism testing --------------------------------------------------------

DEFAULT_ISO_BUDGET = 65536
_ISO_SAMPLES = 512


def is_isomorphic(
    m1: Module,
    m2: Module,
    budget: int = DEFAULT_ISO_BUDGET,
    seed: int = 0,
) -> bool:
    """Exact isomorphism test by invariant filters plus search in Hom.

    Raises BudgetExceededError when the Hom coefficient space is too large to
    enumerate and seeded sampling finds nothing; never guesses.
    """
    if m1.ring != m2.ring:
        raise ModuleError("isomorphism test needs a common ring")
    q = m1.ring.q
    if m1.dim != m2.dim:
        return False
    if m1.dim == 0:
        return True
    if m1.min_presentation().profile != m2.min_presentation().profile:
        return False
    if m1.loewy_dims() != m2.loewy_dims():
        return False
    hom = hom_space(m1, m2)
    t = len(hom)
    if t == 0:
        return False
    stack = np.stack([h.reshape(-1) for h in hom])
    dim = m1.dim

    def invertible(coeffs) -> bool:
        mat = ((coeffs @ stack) % q).reshape(dim, dim)
        return la.rank(mat, q) == dim

    total = q**t
    if total <= budget:
        for idx in range(1, total):
            if invertible(la.index_to_vector(idx, t, q)):
                return True
        return False
    rng = np.random.default_rng(seed)
    for _ in range(min(budget, _ISO_SAMPLES * 8)):
        c = rng.integers(0, q, size=t, dtype=np.int64)
        if c.any() and invertible(c):
            return True
    raise BudgetExceededError(total, budget, "isomorphism search")


def has_free_summand(module: Module) -> bool:
    """True iff some hom to the regular module hits a unit (then it splits)."""
    ring = module.ring
    if module.dim == 0:
        return False
    reg = free_module(ring, 1)
    for h in hom_space(module, reg):
        for col in h.T:
            if not ring.in_radical(col):
                return True
    return False


# -- submodule enumeration -------------------------------------------------------

def enumerate_submodules(
    ambient: Module, m: int, budget: Budget | None = None
) -> list[Submodule]:
    """Every submodule generated by <= m elements, each exactly once.

    Level-wise closure expansion in canonical element order; a submodule's
    first discovery corresponds to the lexicographically first generator
    tuple that produces it, so the order is deterministic and reproducible.
    """
    q = ambient.ring.q
    zero = Submodule(ambient, np.zeros((0, ambient.dim), dtype=np.int64), gens=[])
    seen = {zero.basis.astype(np.uint8).tobytes()}
    out = [zero]
    frontier = [zero]
    vectors = la.all_vectors(ambient.dim, q)
    orbits = (
        np.einsum("aij,kj->kai", ambient.actions, vectors).astype(np.int64)
        % q
    )  # orbits[k] = all basis-element multiples of vector k
    for _ in range(m):
        if budget is not None:
            budget.spend(len(frontier) * len(vectors), "submodule enumeration")
        new_frontier = []
        for sub in frontier:
            for v, orbit in zip(vectors, orbits):
                rows = la.row_basis(np.concatenate([sub.basis, orbit], axis=0), q)
                key = rows.astype(np.uint8).tobytes()
                if key in seen:
                    continue
                seen.add(key)
                _, pivots = la.rref(rows, q)
                cand = Submodule._trusted(
                    ambient, rows, pivots, list(sub.gens) + [v.copy()]
                )
                out.append(cand)
                new_frontier.append(cand)
        frontier = new_frontier
    return out


def submodules_of_free(
    ring: Algebra, n: int, m: int, budget: Budget | None = None
) -> list[Submodule]:
    """Cached enumerate_submodules(free(n), m).

    The deterministic enumeration cost is re-charged to the caller's budget
    even on cache hits, so verdicts never depend on cache warmth.
    """
    key = ("subs", n, m)
    cached = ring._cache.get(key)
    if cached is not None:
        subs, cost = cached
        if budget is not None:
            budget.spend(cost, "submodule enumeration")
        return subs
    probe = Budget(budget.remaining() if budget is not None else 10**18)
    subs = enumerate_submodules(free_module(ring, n), m, probe)
    ring._cache[key] = (subs, probe.spent)
    if budget is not None:
        budget.spend(probe.spent, "submodule enumeration")
    return subs
