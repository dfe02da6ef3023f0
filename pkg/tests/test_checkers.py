import numpy as np
import pytest

from puritylab import gflinalg as la
from puritylab.bounds import Settings, UpTo
from puritylab.checkers import (
    PurityQuery,
    check_end_local,
    check_fitting,
    check_flat,
    check_free,
    check_injective,
    check_purity,
    check_purity_via_tensor,
    check_sequence_purity,
    replay_flat_witness,
    replay_injective_witness,
    replay_purity_witness,
    residue_invertibility_agreement,
)
from puritylab.constructions import StaircaseSpec, fq_dual, staircase_module
from puritylab.corpus import all_submodules
from puritylab.modules import (
    ModuleMap,
    direct_sum,
    free_element,
    free_module,
    from_presentation,
    hom_space,
    submodule_span,
)


# -- independent purity oracles -----------------------------------------------

def purity_brute_all_entries(sub, n, m):
    """The containment criterion over EVERY coefficient matrix (no radical
    reduction): independent check of the entry-domain optimization."""
    amb = sub.ambient
    ring = amb.ring
    q, dim = ring.q, amb.dim
    elems = ring.elements()
    a_n = np.kron(np.eye(n, dtype=np.int64), sub.basis) % q
    a_m = np.kron(np.eye(m, dtype=np.int64), sub.basis) % q
    ann_a = la.nullspace(a_n, q)
    for idx in range(len(elems) ** (n * m)):
        digits = la.index_to_vector(idx, n * m, len(elems))
        big = np.zeros((n * dim, m * dim), dtype=np.int64)
        for i in range(n):
            for j in range(m):
                big[i * dim : (i + 1) * dim, j * dim : (j + 1) * dim] = amb.action_of(
                    elems[digits[i * m + j]]
                )
        im_b = la.row_basis(big.T, q)
        coeff = la.nullspace((ann_a @ im_b.T) % q, q) if ann_a.shape[0] else np.eye(
            im_b.shape[0], dtype=np.int64
        )
        inter = (coeff @ im_b) % q if coeff.shape[0] else np.zeros((0, n * dim), dtype=np.int64)
        im_a = la.row_basis((big @ a_m.T).T % q, q)
        basis, piv = la.rref(im_a, q) if im_a.shape[0] else (im_a, [])
        for w in inter:
            if not la.in_row_span(basis[: len(piv)], piv, w, q):
                return False
    return True


def purity_brute_targets(sub, n, m):
    """Literal solvability transfer: for every coefficient matrix and every
    target in A^n, a solution over B forces a solution over A.  Tiny cases
    only."""
    amb = sub.ambient
    ring = amb.ring
    q, dim = ring.q, amb.dim
    elems = ring.elements()
    a_m = np.kron(np.eye(m, dtype=np.int64), sub.basis) % q
    for idx in range(len(elems) ** (n * m)):
        digits = la.index_to_vector(idx, n * m, len(elems))
        big = np.zeros((n * dim, m * dim), dtype=np.int64)
        for i in range(n):
            for j in range(m):
                big[i * dim : (i + 1) * dim, j * dim : (j + 1) * dim] = amb.action_of(
                    elems[digits[i * m + j]]
                )
        for tidx in range(q ** (sub.dim * n)):
            coords = la.index_to_vector(tidx, sub.dim * n, q).reshape(n, sub.dim)
            target = (coords @ sub.basis).reshape(-1) % q
            solvable_b = la.solve(big, target, q) is not None
            if not solvable_b:
                continue
            solvable_a = (
                la.solve((big @ a_m.T) % q, target, q) is not None
                if a_m.shape[0]
                else not target.any()
            )
            if not solvable_a:
                return False
    return True


@pytest.fixture(scope="module")
def k48(sz22):
    free2 = free_module(sz22, 2)
    return submodule_span(free2, [free_element(sz22, ["a", "b"])])


def test_purity_pinned_cases(sz22, k48, settings):
    assert check_purity(k48, 1, 1, settings).verdict == "pass"
    rep = check_purity(k48, 1, 2, settings)
    assert rep.verdict == "fail"
    assert replay_purity_witness(k48, rep.witness)
    free2 = free_module(sz22, 2)
    full = submodule_span(free2, list(np.eye(6, dtype=np.int64)))
    zero = submodule_span(free2, [])
    assert check_purity(full, 2, 2, settings).verdict == "pass"
    assert check_purity(zero, 2, 2, settings).verdict == "pass"


def test_purity_query_and_upto(k48, settings):
    rep = check_purity(PurityQuery(k48, 1, UpTo(2)), settings=settings)
    assert rep.verdict == "fail"
    assert rep.bounds["m"] == "UP_TO(2)"
    rep = check_purity(k48, 1, "inf", settings)
    assert rep.bounds["m"] == f"UP_TO({settings.up_to})"


def test_purity_degenerate_flagged(k48, settings):
    rep = check_purity(k48, 0, 1, settings)
    assert rep.verdict == "pass" and rep.bounds.get("degenerate")


def test_purity_radical_reduction_against_full_enumeration(ch22, sz22, ch32, tr222):
    """The radical-entry reduction must agree with full-entry enumeration,
    including in odd characteristic and over a ring with P^2 != 0."""
    cases = []
    reg_c = free_module(ch22, 1)
    for sub in all_submodules(reg_c):
        cases.append((sub, [(1, 1), (1, 2), (2, 1)]))
    reg_s = free_module(sz22, 1)
    for sub in all_submodules(reg_s):
        cases.append((sub, [(1, 1), (1, 2)]))
    for sub in all_submodules(free_module(ch32, 1)):
        cases.append((sub, [(1, 1), (2, 1)]))
    for sub in all_submodules(free_module(tr222, 1)):
        cases.append((sub, [(1, 1)]))
    free2c = free_module(ch22, 2)
    cases.append((submodule_span(free2c, [free_element(ch22, ["x", "1"])]), [(1, 1)]))
    cases.append((submodule_span(free2c, [free_element(ch22, ["x", "0"])]), [(1, 1)]))
    st = Settings()
    for sub, pairs in cases:
        for n, m in pairs:
            fast = check_purity(sub, n, m, st).verdict == "pass"
            slow = purity_brute_all_entries(sub, n, m)
            assert fast == slow, (sub.basis.tolist(), n, m)


def test_purity_oracle_agreement_random_inclusions(ch22, sz22):
    from puritylab.corpus import seeded_inclusions

    st = Settings()
    for ring in (ch22, sz22):
        for sub in seeded_inclusions(ring, 12, seed=2024, max_dim=5):
            for n, m in [(1, 1), (1, 2), (2, 1)]:
                eq = check_purity(sub, n, m, st).verdict
                tn = check_purity_via_tensor(sub, n, m, st).verdict
                assert eq == tn, (sub.basis.tolist(), n, m)


def test_purity_matches_literal_solvability(ch22, sz22):
    """Tiny-case oracle straight from the definition, no subspace shortcuts."""
    st = Settings()
    for ring in (ch22, sz22):
        reg = free_module(ring, 1)
        for sub in all_submodules(reg):
            for n, m in [(1, 1), (1, 2)]:
                fast = check_purity(sub, n, m, st).verdict == "pass"
                literal = purity_brute_targets(sub, n, m)
                assert fast == literal


def test_purity_oracle_agreement_pinned(k48, settings):
    for n, m in [(1, 1), (1, 2)]:
        assert (
            check_purity(k48, n, m, settings).verdict
            == check_purity_via_tensor(k48, n, m, settings).verdict
        )


def test_flat_pinned_cases(sz22, settings):
    m48 = from_presentation(sz22, 2, [["a", "b"]])
    for n in (1, 2, 3):
        assert check_flat(m48, n, 1, settings).verdict == "pass"
    rep = check_flat(m48, 1, 2, settings)
    assert rep.verdict == "fail"
    assert replay_flat_witness(m48, rep.witness)
    assert check_flat(free_module(sz22, 2), 2, 2, settings).verdict == "pass"
    k = from_presentation(sz22, 1, [["a"], ["b"]])
    repk = check_flat(k, 1, 1, settings)
    assert repk.verdict == "fail"
    assert repk.witness["submodule_generators"] == [["a"]]
    assert replay_flat_witness(k, repk.witness)


def test_injective_pinned_cases(sz22, tr222, settings):
    m48 = from_presentation(sz22, 2, [["a", "b"]])
    dual = fq_dual(m48)
    for n in (1, 2, 3):
        assert check_injective(dual, n, 1, settings).verdict == "pass"
    rep = check_injective(dual, 1, 2, settings)
    assert rep.verdict == "fail"
    assert replay_injective_witness(dual, rep.witness)
    k = from_presentation(sz22, 1, [["a"], ["b"]])
    assert check_injective(k, 1, 1, settings).verdict == "fail"
    reg = free_module(tr222, 1)
    assert check_injective(reg, 1, 1, settings).verdict == "pass"
    assert check_injective(reg, 2, 2, settings).verdict == "pass"


def test_injectivity_by_direct_extension_search(sz22, tr222):
    """Oracle: enumerate every hom K -> M and look for extensions directly."""
    def injective_brute(ring, module):
        reg = free_module(ring, 1)
        hom_reg = hom_space(reg, module)
        for sub in all_submodules(reg):
            if sub.dim == 0:
                continue
            sub_mod, incl = sub.as_module()
            for idx in range(ring.q ** (module.dim * sub.dim)):
                mat = la.index_to_vector(idx, module.dim * sub.dim, ring.q).reshape(
                    module.dim, sub.dim
                )
                is_hom = all(
                    np.array_equal(
                        (mat @ sub_mod.actions[i]) % ring.q,
                        (module.actions[i] @ mat) % ring.q,
                    )
                    for i in range(ring.dim)
                )
                if not is_hom:
                    continue
                extended = False
                for h in _all_combos(hom_reg, ring.q):
                    if np.array_equal((h @ incl.matrix) % ring.q, mat):
                        extended = True
                        break
                if not extended:
                    return False
        return True

    st = Settings()
    k = from_presentation(sz22, 1, [["a"], ["b"]])
    assert injective_brute(sz22, k) == (check_injective(k, 1, "inf", st).verdict == "pass")
    reg = free_module(tr222, 1)
    assert injective_brute(tr222, reg)
    assert check_injective(reg, 1, 2, st).verdict == "pass"


def _all_combos(hom_basis, q):
    if not hom_basis:
        yield np.zeros((0, 0), dtype=np.int64)
        return
    stack = np.stack([h.reshape(-1) for h in hom_basis])
    shape = hom_basis[0].shape
    for idx in range(q ** len(hom_basis)):
        c = la.index_to_vector(idx, len(hom_basis), q)
        yield ((c @ stack) % q).reshape(shape)


def test_monotonicity_smaller_quantifiers(sz22, settings):
    # pass at (n, m) implies pass at (n', m') for n' <= n, m' <= m
    mods = [
        free_module(sz22, 1),
        from_presentation(sz22, 2, [["a", "b"]]),
        from_presentation(sz22, 1, [["a"], ["b"]]),
        from_presentation(sz22, 1, [["a"]]),
    ]
    for module in mods:
        grid = {
            (n, m): check_flat(module, n, m, settings).verdict == "pass"
            for n in (1, 2)
            for m in (1, 2)
        }
        if grid[(2, 2)]:
            assert grid[(1, 1)] and grid[(1, 2)] and grid[(2, 1)]
        if grid[(1, 2)]:
            assert grid[(1, 1)]
        if grid[(2, 1)]:
            assert grid[(1, 1)]


def test_end_local_cases(sz22, settings):
    w123 = staircase_module(sz22, StaircaseSpec(1, 2, 3, ("a", "b")))
    assert check_end_local(w123, settings, cross_check=True).verdict == "pass"
    rep = check_end_local(free_module(sz22, 2), settings)
    assert rep.verdict == "fail"
    sigma = np.array(rep.witness["residue_matrix"])
    eye = np.eye(sigma.shape[0], dtype=np.int64)
    assert not la.is_invertible(sigma, 2)
    assert not la.is_invertible((eye - sigma) % 2, 2)
    # the recorded lift really induces the recorded residue action
    k = from_presentation(sz22, 1, [["a"], ["b"]])
    assert check_end_local(k, settings).verdict == "pass"


def test_end_local_agrees_with_direct_unit_enumeration(sz22, ch22, settings):
    """Oracle: enumerate all of End(M) and test locality from the definition
    (every element or its complement to the identity invertible)."""
    def end_local_direct(module):
        q = module.ring.q
        endos = hom_space(module, module)
        if not endos:
            return True
        stack = np.stack([h.reshape(-1) for h in endos])
        eye = np.eye(module.dim, dtype=np.int64)
        for idx in range(q ** len(endos)):
            c = la.index_to_vector(idx, len(endos), q)
            f = ((c @ stack) % q).reshape(module.dim, module.dim)
            if not la.is_invertible(f, q) and not la.is_invertible((eye - f) % q, q):
                return False
        return True

    from puritylab.corpus import corpus_modules

    for ring_name, ring in (("squareZero(2,2)", sz22), ("chain(2,2)", ch22)):
        for name, module in corpus_modules(ring_name, ring):
            if module.ring.q ** len(hom_space(module, module)) > 4096:
                continue
            direct = end_local_direct(module)
            residue = check_end_local(module, settings).verdict == "pass"
            assert direct == residue, (ring_name, name)


def test_witness_replay_survives_json_roundtrip(sz22, settings):
    import json

    m48 = from_presentation(sz22, 2, [["a", "b"]])
    rep = check_flat(m48, 1, 2, settings)
    assert replay_flat_witness(m48, json.loads(json.dumps(rep.witness)))
    dual = fq_dual(m48)
    repi = check_injective(dual, 1, 2, settings)
    assert replay_injective_witness(dual, json.loads(json.dumps(repi.witness)))
    k48 = submodule_span(free_module(sz22, 2), [free_element(sz22, ["a", "b"])])
    repp = check_purity(k48, 1, 2, settings)
    assert replay_purity_witness(k48, json.loads(json.dumps(repp.witness)))


def test_residue_invertibility_agreement(sz22, ch23, settings):
    for module in (
        from_presentation(sz22, 2, [["a", "b"]]),
        from_presentation(ch23, 1, [["x2"]]),
        free_module(sz22, 2),
    ):
        agree, checked = residue_invertibility_agreement(module, samples=50, seed=3)
        assert agree and checked > 0


def test_fitting_cases(sz22, ch23, settings):
    for module in (
        from_presentation(sz22, 1, [["a"], ["b"]]),
        from_presentation(sz22, 2, [["a", "b"]]),
        from_presentation(ch23, 1, [["x2"]]),
        direct_sum(free_module(sz22, 1), from_presentation(sz22, 1, [["a"], ["b"]])),
    ):
        rep = check_fitting(module, settings)
        assert rep.verdict == "pass"
        assert rep.bounds["max_exponent"] <= module.dim


def test_free_checker(sz22, settings):
    assert check_free(free_module(sz22, 2), settings).verdict == "pass"
    k_rep = check_free(from_presentation(sz22, 1, [["a"], ["b"]]), settings)
    assert k_rep.verdict == "fail" and k_rep.bounds == {"gen": 1, "rel": 2}
    m48_rep = check_free(from_presentation(sz22, 2, [["a", "b"]]), settings)
    assert m48_rep.verdict == "fail" and m48_rep.bounds == {"gen": 2, "rel": 1}


def test_sequence_purity(sz22, settings):
    m48 = from_presentation(sz22, 2, [["a", "b"]])
    cover = m48.min_presentation().cover
    assert check_sequence_purity(cover, 1, 1, settings).verdict == "pass"
    assert check_sequence_purity(cover, 1, 2, settings).verdict == "fail"
    k = from_presentation(sz22, 1, [["a"], ["b"]])
    assert check_sequence_purity(k.min_presentation().cover, 1, 1, settings).verdict == "fail"
    # split surjections are pure for all tested quantifiers
    both = direct_sum(m48, k)
    proj = ModuleMap(
        both,
        m48,
        np.concatenate([np.eye(m48.dim, dtype=np.int64), np.zeros((m48.dim, k.dim), dtype=np.int64)], axis=1),
    )
    for n, m in [(1, 1), (1, 2), (2, 2)]:
        assert check_sequence_purity(proj, n, m, settings).verdict == "pass"
    with pytest.raises(ValueError):
        check_sequence_purity(ModuleMap(m48, both, np.zeros((both.dim, m48.dim), dtype=np.int64), validate=False), 1, 1, settings)


def test_budget_gives_undecided(sz22):
    tight = Settings(budget=10)
    m48 = from_presentation(sz22, 2, [["a", "b"]])
    rep = check_flat(m48, 2, 2, tight)
    assert rep.verdict == "undecided"
    assert "budget_limit" in rep.bounds
    k48 = submodule_span(free_module(sz22, 2), [free_element(sz22, ["a", "b"])])
    assert check_purity(k48, 2, 2, tight).verdict == "undecided"
    assert check_purity_via_tensor(k48, 2, 2, tight).verdict == "undecided"


def test_reports_deterministic_across_threads(sz22):
    m48 = from_presentation(sz22, 2, [["a", "b"]])
    k48 = submodule_span(free_module(sz22, 2), [free_element(sz22, ["a", "b"])])
    for fn, args in [
        (check_flat, (m48, 1, 2)),
        (check_injective, (fq_dual(m48), 1, 2)),
        (check_purity, (k48, 2, 2)),
        (check_purity_via_tensor, (k48, 1, 2)),
    ]:
        payloads = []
        for threads in (1, 4, 8):
            rep = fn(*args, Settings(threads=threads))
            payloads.append(rep.to_payload())
        assert payloads[0] == payloads[1] == payloads[2]


def test_flat_injective_duality_small_sweep(sz22, ch22, settings):
    # flatness of M must match injectivity of the base-field dual
    mods = [
        free_module(sz22, 1),
        from_presentation(sz22, 1, [["a"], ["b"]]),
        from_presentation(sz22, 2, [["a", "b"]]),
        from_presentation(ch22, 1, [["x"]]),
        free_module(ch22, 1),
    ]
    for module in mods:
        dual = fq_dual(module)
        for n, m in [(1, 1), (1, 2), (2, 1)]:
            assert (
                check_flat(module, n, m, settings).verdict
                == check_injective(dual, n, m, settings).verdict
            )
