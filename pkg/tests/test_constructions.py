import pytest

from puritylab.algebra import square_zero
from puritylab.constructions import (
    BadIdealGensError,
    HasFreeSummandError,
    RangeViolationError,
    StaircaseSpec,
    auslander_bridger_dual,
    fq_dual,
    staircase_columns,
    staircase_module,
)
from puritylab.modules import (
    direct_sum,
    free_module,
    from_presentation,
    is_isomorphic,
)


def pretty_matrix(ring, cols, n):
    return [[ring.format_element(cols[j, i]) for j in range(cols.shape[0])] for i in range(n)]


GOLDEN = {
    (1, 1, 2): [["a", "b"]],
    (1, 2, 3): [["a", "b", "0"], ["0", "a", "b"]],
    (2, 1, 3): [["a", "b", "c"]],
    (2, 2, 5): [["a", "b", "c", "0", "0"], ["0", "0", "a", "b", "c"]],
}


@pytest.mark.parametrize("key", sorted(GOLDEN))
def test_staircase_golden_matrices(key):
    p, n, m = key
    ring = square_zero(2, p + 1)
    gens = tuple("abc"[: p + 1])
    cols = staircase_columns(StaircaseSpec(p, n, m, gens), ring)
    assert pretty_matrix(ring, cols, n) == GOLDEN[key]


def test_staircase_invariants(sz22, sz23):
    cases = [
        (sz22, 1, ("a", "b"), [(1, 1), (1, 2), (2, 2), (2, 3)]),
        (sz23, 2, ("a", "b", "c"), [(1, 1), (1, 2), (1, 3), (2, 3), (2, 4), (2, 5)]),
    ]
    for ring, p, gens, pairs in cases:
        for n, m in pairs:
            module = staircase_module(ring, StaircaseSpec(p, n, m, gens))
            prof = module.min_presentation().profile
            assert (prof.gen, prof.rel) == (n, m)


def test_staircase_w112_is_residue_field(sz22):
    w = staircase_module(sz22, StaircaseSpec(1, 1, 2, ("a", "b")))
    k = from_presentation(sz22, 1, [["a"], ["b"]])
    assert is_isomorphic(w, k)


def test_staircase_range_checks(sz22):
    with pytest.raises(RangeViolationError):
        staircase_module(sz22, StaircaseSpec(1, 2, 4, ("a", "b")))
    with pytest.raises(RangeViolationError):
        staircase_module(sz22, StaircaseSpec(1, 2, 1, ("a", "b")))
    with pytest.raises(BadIdealGensError):
        staircase_module(sz22, StaircaseSpec(1, 1, 2, ("a", "a")))
    with pytest.raises(BadIdealGensError):
        staircase_module(sz22, StaircaseSpec(2, 1, 2, ("a", "b")))


def test_ab_dual_of_residue_field(sz22):
    k = from_presentation(sz22, 1, [["a"], ["b"]])
    m48 = from_presentation(sz22, 2, [["a", "b"]])
    dual = auslander_bridger_dual(k)
    prof = dual.min_presentation().profile
    assert (prof.gen, prof.rel) == (2, 1)
    assert is_isomorphic(dual, m48)


def test_ab_dual_involution(sz22, ch22):
    w123 = staircase_module(sz22, StaircaseSpec(1, 2, 3, ("a", "b")))
    assert is_isomorphic(auslander_bridger_dual(auslander_bridger_dual(w123)), w123)
    kc = from_presentation(ch22, 1, [["x"]])
    assert is_isomorphic(auslander_bridger_dual(kc), kc)


def test_ab_dual_genrel_exchange(sz22):
    for module in (
        from_presentation(sz22, 1, [["a"], ["b"]]),
        from_presentation(sz22, 2, [["a", "b"]]),
        staircase_module(sz22, StaircaseSpec(1, 2, 2, ("a", "b"))),
    ):
        prof = module.min_presentation().profile
        dprof = auslander_bridger_dual(module).min_presentation().profile
        assert (dprof.gen, dprof.rel) == (prof.rel, prof.gen)


def test_ab_dual_additive(sz22):
    ra = from_presentation(sz22, 1, [["a"]])
    k = from_presentation(sz22, 1, [["a"], ["b"]])
    both = direct_sum(ra, k)
    dual_sum = auslander_bridger_dual(both)
    sum_duals = direct_sum(auslander_bridger_dual(ra), auslander_bridger_dual(k))
    assert is_isomorphic(dual_sum, sum_duals)


def test_ab_dual_refuses_free_summand(sz22):
    with pytest.raises(HasFreeSummandError) as info:
        auslander_bridger_dual(free_module(sz22, 1))
    assert info.value.witness is not None
    k = from_presentation(sz22, 1, [["a"], ["b"]])
    with pytest.raises(HasFreeSummandError):
        auslander_bridger_dual(direct_sum(free_module(sz22, 1), k))


def test_fq_dual_basics(sz22, tr222):
    m48 = from_presentation(sz22, 2, [["a", "b"]])
    dual = fq_dual(m48)
    assert dual.dim == m48.dim
    assert is_isomorphic(fq_dual(dual), m48)
    dual._validate()
    # quasi-Frobenius: the regular module is self-dual
    reg = free_module(tr222, 1)
    assert is_isomorphic(fq_dual(reg), reg)
    # square-zero regular module is NOT self-dual (socle too big)
    reg22 = free_module(sz22, 1)
    assert not is_isomorphic(fq_dual(reg22), reg22)
