"""
Dense exact linear algebra over prime fields GF(q).

All matrices are numpy int64 arrays with entries reduced mod q.  Vectors are
1-D arrays; matrices act on column vectors.  Subspaces are represented by
matrices whose rows form a basis in reduced row echelon form (RREF), which is
the unique canonical basis of the row space and therefore usable as a
dictionary key via ``span_key``.

No floating point anywhere; q is assumed prime (inverses via Fermat).
"""

from __future__ import annotations

import numpy as np


def asfield(a, q: int) -> np.ndarray:
    """Coerce to an int64 array with entries reduced mod q."""
    return np.asarray(a, dtype=np.int64) % q


def inv_mod(x: int, q: int) -> int:
    """Inverse of a nonzero residue mod a prime q."""
    return pow(int(x) % q, q - 2, q)


def rref(a, q: int):
    """Reduced row echelon form.

    Returns (R, pivots): R is the full-shape RREF of ``a`` and pivots the
    list of pivot column indices (len(pivots) = rank).
    """
    r = asfield(a, q).copy()
    if r.ndim != 2:
        raise ValueError("rref expects a 2-D array")
    nrows, ncols = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        pr = row + int(nz[0])
        if pr != row:
            r[[row, pr]] = r[[pr, row]]
        if r[row, col] != 1:
            r[row] = (r[row] * inv_mod(r[row, col], q)) % q
        col_vals = r[:, col].copy()
        col_vals[row] = 0
        r -= np.outer(col_vals, r[row])
        r %= q
        pivots.append(col)
        row += 1
    return r, pivots


def row_basis(a, q: int) -> np.ndarray:
    """Canonical (RREF, no zero rows) basis of the row space of ``a``."""
    a = asfield(a, q)
    if a.size == 0:
        return np.zeros((0, a.shape[1] if a.ndim == 2 else 0), dtype=np.int64)
    r, pivots = rref(a, q)
    return r[: len(pivots)].copy()


def rank(a, q: int) -> int:
    a = asfield(a, q)
    if a.size == 0:
        return 0
    return len(rref(a, q)[1])


def span_key(rows, q: int, ncols: int | None = None) -> bytes:
    """Canonical hashable key of the row space of ``rows``."""
    rows = asfield(rows, q)
    if rows.ndim == 1:
        rows = rows.reshape(1, -1)
    if rows.size == 0 and ncols is not None:
        rows = rows.reshape(0, ncols)
    b = row_basis(rows, q)
    return b.shape[1].to_bytes(4, "little") + b.astype(np.uint8).tobytes()


def reduce_row(basis: np.ndarray, pivots: list[int], v, q: int) -> np.ndarray:
    """Residual of ``v`` after elimination against an RREF row basis."""
    v = asfield(v, q).copy()
    for k, p in enumerate(pivots):
        if v[p]:
            v = (v - v[p] * basis[k]) % q
    return v


def in_row_span(basis: np.ndarray, pivots: list[int], v, q: int) -> bool:
    return not reduce_row(basis, pivots, v, q).any()


def nullspace(a, q: int) -> np.ndarray:
    """Basis (rows) of the right kernel {x : a @ x = 0}, canonical order."""
    a = asfield(a, q)
    m, n = a.shape
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if m == 0:
        return np.eye(n, dtype=np.int64)
    r, pivots = rref(a, q)
    free = [j for j in range(n) if j not in pivots]
    out = np.zeros((len(free), n), dtype=np.int64)
    for i, j in enumerate(free):
        out[i, j] = 1
        for k, p in enumerate(pivots):
            out[i, p] = (-r[k, j]) % q
    return out


def solve(a, b, q: int) -> np.ndarray | None:
    """One solution x of a @ x = b, or None if inconsistent."""
    a = asfield(a, q)
    b = asfield(b, q)
    m, n = a.shape
    aug = np.concatenate([a, b.reshape(m, 1)], axis=1)
    r, pivots = rref(aug, q)
    if n in pivots:
        return None
    x = np.zeros(n, dtype=np.int64)
    for k, p in enumerate(pivots):
        x[p] = r[k, n]
    return x


def mat_inv(a, q: int) -> np.ndarray | None:
    """Inverse of a square matrix, or None if singular."""
    a = asfield(a, q)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("mat_inv expects a square matrix")
    aug = np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1)
    r, pivots = rref(aug, q)
    if pivots[:n] != list(range(n)):
        return None
    return r[:n, n:].copy()


def is_invertible(a, q: int) -> bool:
    a = asfield(a, q)
    return a.shape[0] == a.shape[1] and rank(a, q) == a.shape[0]


def mat_pow(a, k: int, q: int) -> np.ndarray:
    """a**k mod q by binary powering (k >= 0)."""
    a = asfield(a, q)
    n = a.shape[0]
    out = np.eye(n, dtype=np.int64)
    base = a.copy()
    while k:
        if k & 1:
            out = (out @ base) % q
        base = (base @ base) % q
        k >>= 1
    return out


def intersect_row_spans(a_rows, b_rows, q: int) -> np.ndarray:
    """Canonical basis of rowspace(a) ∩ rowspace(b).

    Uses the annihilator characterization: v ∈ rowspace(b) iff N @ v = 0
    where N spans the right kernel of b (valid over any finite field since
    dim W^perp = n - dim W for the standard bilinear form).
    """
    a_rows = asfield(a_rows, q)
    b_rows = asfield(b_rows, q)
    if a_rows.shape[0] == 0 or b_rows.shape[0] == 0:
        return np.zeros((0, a_rows.shape[1]), dtype=np.int64)
    nb = nullspace(b_rows, q)
    if nb.shape[0] == 0:
        return row_basis(a_rows, q)
    # u @ a_rows lies in rowspace(b) iff (nb @ a_rows.T) @ u = 0.
    coeff = nullspace((nb @ a_rows.T) % q, q)
    if coeff.shape[0] == 0:
        return np.zeros((0, a_rows.shape[1]), dtype=np.int64)
    return row_basis((coeff @ a_rows) % q, q)


def quotient_maps(sub_rows, dim: int, q: int):
    """Projection/section pair for F^dim / rowspace(sub_rows).

    Returns (proj, sect): proj is a (dim-s) x dim matrix onto canonical
    quotient coordinates (the non-pivot coordinates after reduction), sect a
    dim x (dim-s) section with proj @ sect = I.  Both are exact linear maps;
    proj kills exactly the subspace.
    """
    sub_rows = asfield(sub_rows, q)
    if sub_rows.size == 0:
        sub_rows = sub_rows.reshape(0, dim)
    basis, pivots = rref(sub_rows, q) if sub_rows.shape[0] else (sub_rows, [])
    basis = basis[: len(pivots)]
    nonpivots = [j for j in range(dim) if j not in pivots]
    # reduce(v) = v - sum_k v[p_k] * basis_k, then keep non-pivot coords
    red = np.eye(dim, dtype=np.int64)
    for k, p in enumerate(pivots):
        red -= np.outer(basis[k], np.eye(dim, dtype=np.int64)[p])
    red %= q
    proj = red[nonpivots, :].copy() if nonpivots else np.zeros((0, dim), dtype=np.int64)
    sect = np.zeros((dim, len(nonpivots)), dtype=np.int64)
    for i, j in enumerate(nonpivots):
        sect[j, i] = 1
    return proj, sect


def kron(a, b, q: int) -> np.ndarray:
    return np.kron(asfield(a, q), asfield(b, q)) % q


def index_to_vector(idx: int, length: int, q: int) -> np.ndarray:
    """Decode an enumeration index to a coefficient vector.

    Little-endian in the coordinate index: coordinate 0 is the fastest
    digit, so vectors sort by index in the engine's canonical element order.
    """
    v = np.zeros(length, dtype=np.int64)
    for i in range(length):
        if idx == 0:
            break
        idx, d = divmod(idx, q)
        v[i] = d
    return v


def all_vectors(length: int, q: int) -> np.ndarray:
    """All q**length coefficient vectors, row i = index_to_vector(i)."""
    n = q**length
    out = np.zeros((n, length), dtype=np.int64)
    idx = np.arange(n)
    for i in range(length):
        out[:, i] = idx % q
        idx //= q
    return out


def all_subspaces(dim: int, q: int):
    """Yield the RREF basis of every subspace of F_q^dim.

    Enumeration order: dimension ascending, then pivot sets in lexicographic
    order, then free entries little-endian.  Intended for small dim only.
    """
    from itertools import combinations

    yield np.zeros((0, dim), dtype=np.int64)
    for k in range(1, dim + 1):
        for pivots in combinations(range(dim), k):
            free_pos = [
                (i, j)
                for i in range(k)
                for j in range(dim)
                if j > pivots[i] and j not in pivots
            ]
            nfree = len(free_pos)
            for idx in range(q**nfree):
                mat = np.zeros((k, dim), dtype=np.int64)
                for i, p in enumerate(pivots):
                    mat[i, p] = 1
                rem = idx
                for i, j in free_pos:
                    rem, d = divmod(rem, q)
                    mat[i, j] = d
                yield mat
