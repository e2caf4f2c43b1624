import pytest

from wtop.errors import GuardExceeded
from wtop.lattice import (
    compose,
    enumerate_weak_topologies,
    heyting_implication,
    join,
    left_residual,
    leq,
    meet,
    reflection_by_meet,
    right_residual,
    topological_reflection,
)
from wtop.monoid import enumerate_monoids, left_zero_monoid, monoid_from_operation, trivial_monoid
from wtop.mset import omega
from wtop.topology import WeakTopology, double_negation, identity_topology, top_topology, weak_ideal_topology

MONOIDS3 = list(enumerate_monoids(3))
MONOIDS4 = list(enumerate_monoids(4, up_to_iso=True))


def _ids(M):
    return str(M.mult)


def test_counts(m3):
    assert len(enumerate_weak_topologies(trivial_monoid())) == 2
    assert len(enumerate_weak_topologies(m3)) == 4
    assert len(enumerate_weak_topologies(m3, lt_only=True)) == 3


def test_guard():
    M = left_zero_monoid(3)
    assert omega(M).size == 9
    with pytest.raises(GuardExceeded):
        enumerate_weak_topologies(M)
    assert enumerate_weak_topologies(M, max_omega=9)


def _brute_force(M):
    import itertools

    Om = omega(M)
    found = []
    for table in itertools.product(Om.elements, repeat=Om.size):
        try:
            found.append(WeakTopology(Om, table))
        except Exception:
            pass
    return found


@pytest.mark.parametrize("M", MONOIDS3, ids=_ids)
def test_enumeration_matches_brute_force(M):
    assert enumerate_weak_topologies(M) == sorted(_brute_force(M), key=lambda j: j.table)


@pytest.mark.parametrize("M", MONOIDS3, ids=_ids)
def test_bounds_and_filters(M):
    W = enumerate_weak_topologies(M)
    P = enumerate_weak_topologies(M, productive_only=True)
    T = enumerate_weak_topologies(M, lt_only=True)
    ident, top = identity_topology(M), top_topology(M)
    assert all(leq(ident, j) and leq(j, top) for j in W)
    assert set(T) <= set(P) <= set(W)
    assert ident in T and top in T


@pytest.mark.parametrize("M", MONOIDS4, ids=_ids)
def test_lattice_operations(M):
    W = enumerate_weak_topologies(M, max_omega=9)
    ident, top = identity_topology(M), top_topology(M)
    for j in W:
        assert meet(j, top) == j and join(j, ident) == j
        for k in W:
            meet(j, k), join(j, k)
            c = compose(j, k)
            if j.productive and k.productive:
                assert c.productive
            for l in W:
                assert meet(j, join(k, l)) == join(meet(j, k), meet(j, l))


def test_composition_of_ideal_topologies(m3):
    from wtop.monoid import enumerate_two_sided_ideals, ideal_product

    ideals = enumerate_two_sided_ideals(m3)
    for I in ideals:
        for J in ideals:
            assert compose(weak_ideal_topology(m3, I), weak_ideal_topology(m3, J)) == weak_ideal_topology(
                m3, ideal_product(m3, I, J)
            )


def test_join_of_ideal_and_double_negation(m3, jS):
    j = join(jS, double_negation(omega(m3)))
    assert j == double_negation(omega(m3))


def test_residual_examples(m3):
    W = enumerate_weak_topologies(m3)
    ident = identity_topology(m3)
    for j in W:
        assert left_residual(j, j) == ident
        assert left_residual(ident, j) == j
        assert heyting_implication(j, top_topology(m3)) == top_topology(m3)
        assert heyting_implication(top_topology(m3), j) == j


@pytest.mark.parametrize("M", MONOIDS3, ids=_ids)
def test_residuation_and_heyting(M):
    W = enumerate_weak_topologies(M)
    for j in W:
        for k in W:
            lr = left_residual(j, k)
            hi = heyting_implication(j, k)
            for jp in W:
                a = leq(k, compose(j, jp))
                assert a == leq(right_residual(k, jp), j)
                assert a == leq(lr, jp)
                assert leq(meet(jp, j), k) == leq(jp, hi)


def _four_element_counterexample():
    # {1, z, a, b}: z is a zero, a and b idempotent with ab = ba = z
    def op(x, y):
        if x == "1":
            return y
        if y == "1":
            return x
        return x if x == y else "z"

    return monoid_from_operation(["1", "z", "a", "b"], op, "1")


def test_left_residual_needs_productivity():
    M = _four_element_counterexample()
    W = enumerate_weak_topologies(M)
    bad = []
    for j in W:
        for k in W:
            lr = left_residual(j, k)
            if not leq(k, compose(j, lr)):
                bad.append((j, k))
    assert bad
    assert all(not j.productive for j, _ in bad)
    # right residuals and the Heyting implication still satisfy their laws
    for j in W:
        for k in W:
            for jp in W:
                assert leq(k, compose(j, jp)) == leq(right_residual(k, jp), j)
                assert leq(meet(jp, j), k) == leq(jp, heyting_implication(j, k))


def test_reflection_examples(m3, jS):
    r = topological_reflection(jS)
    Om = jS.omega
    assert [Om.names[v] for v in r.table] == ["{}", "{1,0,s}", "{1,0,s}", "{1,0,s}"]
    assert r == compose(jS, jS) == weak_ideal_topology(m3, m3.subset(["0"]))
    assert topological_reflection(identity_topology(m3)) == identity_topology(m3)
    for j in enumerate_weak_topologies(m3, lt_only=True):
        assert topological_reflection(j) == j


@pytest.mark.parametrize("M", MONOIDS4, ids=_ids)
def test_reflection_is_closure_operator(M):
    W = enumerate_weak_topologies(M, max_omega=9)
    refl = {j: topological_reflection(j) for j in W}
    for j in W:
        r = refl[j]
        assert r.idempotent and leq(j, r)
        assert refl[r] == r
        assert r == reflection_by_meet(j, max_omega=9)
        for k in W:
            if leq(j, k):
                assert leq(r, refl[k])


@pytest.mark.parametrize("M", MONOIDS4, ids=_ids)
def test_idempotent_implies_productive(M):
    # lt_only filters on idempotency alone, which relies on this
    for j in enumerate_weak_topologies(M, max_omega=9):
        if j.idempotent:
            assert j.productive
