import pytest

from wtop.errors import TopologyError
from wtop.lattice import compose, enumerate_weak_topologies
from wtop.monoid import (
    center,
    enumerate_left_ideals,
    enumerate_monoids,
    enumerate_two_sided_ideals,
    ideal_product,
    left_zero_monoid,
    trivial_monoid,
    zero_semigroup_monoid,
)
from wtop.mset import (
    MMap,
    SubMSet,
    char_map,
    enumerate_msets,
    enumerate_sub_msets,
    hom_set,
    hom_tables,
    inverse_image,
    omega,
    regular_act,
    sub_from_names,
)
from wtop.topology import (
    WeakTopology,
    act_by,
    cclosed_subobjects,
    central_element_topology,
    closed_subobjects,
    closed_topology,
    closure,
    dense_subobjects,
    double_negation,
    ideal_closure,
    ideal_idempotency_criterion,
    identity_topology,
    im_j,
    interior,
    is_bidense,
    is_closed,
    is_dense,
    is_weak_topology,
    l_j,
    least_dense_subobject,
    omega_j,
    open_topology,
    top_topology,
    weak_grothendieck,
    weak_ideal_topology,
)

MONOIDS3 = list(enumerate_monoids(3, up_to_iso=True))
TOPOLOGIES3 = [(M, j) for M in MONOIDS3 for j in enumerate_weak_topologies(M)]


def _names(Om, sub):
    return [Om.names[k] for k in sorted(sub.elements)]


def test_identity_and_top_are_weak_topologies(m3):
    Om = omega(m3)
    assert is_weak_topology(Om, list(Om.elements))
    assert is_weak_topology(Om, [Om.top] * Om.size)
    swapped = list(Om.elements)
    swapped[Om.top], swapped[Om.bottom] = Om.bottom, Om.top
    verdict = is_weak_topology(Om, swapped)
    assert not verdict and verdict.reason


def test_non_monotone_rejected(m3):
    Om = omega(m3)
    with pytest.raises(TopologyError):
        WeakTopology(Om, [Om.top, 0, Om.top, Om.top])


def test_ideal_topology_table(m3, jS):
    Om = jS.omega
    assert [Om.names[v] for v in jS.table] == ["{}", "{0,s}", "{1,0,s}", "{1,0,s}"]
    assert jS.productive and not jS.idempotent
    assert weak_ideal_topology(m3, m3.full) == identity_topology(m3)
    assert weak_ideal_topology(m3, frozenset()) == top_topology(m3)


def test_ideal_topology_needs_left_ideal(m3):
    with pytest.raises(TopologyError):
        weak_ideal_topology(m3, m3.subset(["s"]))


def test_closure_examples(m3, jS, regular):
    zero = sub_from_names(regular, ["0"])
    S = sub_from_names(regular, ["0", "s"])
    empty = SubMSet(regular, [])
    assert closure(jS, zero) == S
    assert closure(jS, S).is_full()
    assert closure(jS, SubMSet(regular, regular.elements)).is_full()
    assert not is_dense(jS, zero) and not is_closed(jS, zero)
    assert is_closed(jS, empty)
    assert is_dense(jS, S)


def test_omega_j_l_j(m3, jS):
    Om = jS.omega
    assert _names(Om, omega_j(jS)) == ["{}", "{1,0,s}"]
    assert _names(Om, l_j(jS)) == ["{}", "{0,s}", "{1,0,s}"]
    assert omega_j(identity_topology(m3)).is_full()


def test_idempotent_two_sided_ideal(m3):
    zero = m3.subset(["0"])
    j = weak_ideal_topology(m3, zero)
    assert ideal_product(m3, zero, zero) == zero and j.idempotent


def test_central_topologies(m3, jS):
    assert central_element_topology(m3, m3.identity) == identity_topology(m3)
    alpha0 = central_element_topology(m3, m3.index("0"))
    Om = alpha0.omega
    assert [Om.names[v] for v in alpha0.table] == ["{}", "{1,0,s}", "{1,0,s}", "{1,0,s}"]
    assert alpha0 == weak_ideal_topology(m3, m3.subset(["0"])) == double_negation(Om)
    assert central_element_topology(m3, m3.index("s")) == jS


def test_central_needs_center():
    L = left_zero_monoid(2)
    with pytest.raises(TopologyError):
        central_element_topology(L, L.index("a"))


def test_open_closed_double_negation(m3):
    Om = omega(m3)
    assert open_topology(Om, Om.bottom) == identity_topology(m3)
    assert closed_topology(Om, Om.bottom) == top_topology(m3)
    assert open_topology(Om, Om.top) == top_topology(m3)
    assert closed_topology(Om, Om.top) == identity_topology(m3)
    with pytest.raises(TopologyError):
        open_topology(Om, Om.idx(m3.subset(["0"])))
    nn = double_negation(Om)
    assert nn.idempotent
    for M in enumerate_monoids(4, up_to_iso=True):
        Om = omega(M)
        for u in Om.global_elements():
            assert open_topology(Om, u).idempotent and closed_topology(Om, u).idempotent
        assert double_negation(Om).idempotent


def test_weak_grothendieck(m3, S):
    assert [m3.subset_names(K) for K in weak_grothendieck(m3, S)] == [["0", "s"], ["1", "0", "s"]]
    assert weak_grothendieck(m3, frozenset()) == list(omega(m3).ideals)
    assert weak_grothendieck(m3, m3.full) == [m3.full]


def test_least_dense_and_interior(m3, jS, regular):
    U = least_dense_subobject(jS, regular)
    assert U.names() == ["0", "s"]
    assert least_dense_subobject(identity_topology(m3), regular).is_full()
    S = sub_from_names(regular, ["0", "s"])
    assert interior(jS, S).names() == ["0"]


@pytest.mark.parametrize("M", list(enumerate_monoids(4, up_to_iso=True)), ids=lambda M: str(M.mult))
def test_central_least_dense_is_image(M):
    for m in sorted(center(M)):
        alpha = central_element_topology(M, m)
        for E in enumerate_msets(M, 3):
            U = least_dense_subobject(alpha, E)
            assert U is not None
            assert U.elements == set(act_by(E, m).table)


@pytest.mark.parametrize("pair", TOPOLOGIES3, ids=lambda p: f"{p[0].mult}|{p[1].table}")
def test_closure_laws(pair):
    M, j = pair
    Om = j.omega
    # j is the characteristic map of the closure of true
    true = SubMSet(Om, [Om.top])
    assert char_map(closure(j, true)).table == j.table
    for E in enumerate_msets(M, 3):
        subs = enumerate_sub_msets(E)
        for A in subs:
            cl = closure(j, A)
            assert A <= cl
            assert is_closed(j, cl) == (closure(j, cl) == cl)
            for B in subs:
                if A <= B:
                    assert cl <= closure(j, B)
                if j.productive:
                    assert closure(j, A & B) == closure(j, A) & closure(j, B)
        for F in enumerate_msets(M, 3):
            for f in hom_set(F, E):
                for A in subs:
                    assert inverse_image(f, closure(j, A)) == closure(j, inverse_image(f, A))


@pytest.mark.parametrize("M", list(enumerate_monoids(4, up_to_iso=True)), ids=lambda M: str(M.mult))
def test_productivity_matches_intersections(M):
    R = regular_act(M)
    subs = enumerate_sub_msets(R)
    for j in enumerate_weak_topologies(M, max_omega=64):
        commutes = all(closure(j, A & B) == closure(j, A) & closure(j, B) for A in subs for B in subs)
        assert commutes == j.productive


def test_non_productive_weak_topology_exists():
    M = zero_semigroup_monoid(2)
    Om = omega(M)
    found = [j for j in enumerate_weak_topologies(M) if not j.productive]
    assert len(found) == 1
    j = found[0]
    s, t = Om.idx(M.subset(["0", "s1"])), Om.idx(M.subset(["0", "s2"]))
    assert j.table[s] == j.table[t] == Om.top
    assert j.table[Om.meet_table[s][t]] != Om.top
    # no monoid of order <= 3 carries one
    for N in enumerate_monoids(3):
        assert all(k.productive for k in enumerate_weak_topologies(N))


@pytest.mark.parametrize("pair", TOPOLOGIES3, ids=lambda p: f"{p[0].mult}|{p[1].table}")
def test_image_versus_fixed_points(pair):
    M, j = pair
    assert omega_j(j) <= im_j(j)
    assert j.idempotent == (omega_j(j) == im_j(j))
    assert omega_j(j).as_mset().size == len(omega_j(j))


@pytest.mark.parametrize("M", list(enumerate_monoids(4)), ids=lambda M: str(M.mult))
def test_ideal_topology_criteria(M):
    for I in enumerate_left_ideals(M):
        j = weak_ideal_topology(M, I)
        assert j.productive
        assert j.idempotent == ideal_idempotency_criterion(M, I)
        assert j == weak_ideal_topology(M, ideal_product(M, I, M.elements))
        R = regular_act(M)
        for A in enumerate_sub_msets(R):
            assert closure(j, A) == ideal_closure(M, I, A)
    ideals = enumerate_two_sided_ideals(M)
    for I in ideals:
        for J in ideals:
            assert compose(weak_ideal_topology(M, I), weak_ideal_topology(M, J)) == weak_ideal_topology(
                M, ideal_product(M, I, J)
            )


def test_dense_inclusions_do_not_compose(m3, jS, regular, S_obj):
    S = sub_from_names(regular, ["0", "s"])
    zero_in_S = sub_from_names(S_obj, ["0"])
    zero = sub_from_names(regular, ["0"])
    assert is_dense(jS, S) and is_dense(jS, zero_in_S) and not is_dense(jS, zero)


def test_classification_anchor(m3, jS, regular):
    assert [A.names() for A in closed_subobjects(jS, regular)] == [[], ["1", "0", "s"]]
    assert [A.names() for A in cclosed_subobjects(jS, regular)] == [[], ["0", "s"], ["1", "0", "s"]]
    assert len(hom_tables(regular, omega_j(jS).as_mset())) == 2
    assert len(hom_tables(regular, l_j(jS).as_mset())) == 3


@pytest.mark.parametrize("pair", TOPOLOGIES3, ids=lambda p: f"{p[0].mult}|{p[1].table}")
def test_interior_adjunction(pair):
    M, j = pair
    for E in enumerate_msets(M, 3):
        subs = enumerate_sub_msets(E)
        for U in subs:
            inner = interior(j, U)
            if inner is None:
                continue
            for V in subs:
                assert (inner <= V) == (U <= closure(j, V))


def test_bidense(m3, jS, regular):
    S = sub_from_names(regular, ["0", "s"])
    assert is_bidense(jS, S.inclusion())
    zero = sub_from_names(regular, ["0"])
    assert not is_bidense(jS, zero.inclusion())
    for E in enumerate_msets(m3, 3):
        for A in dense_subobjects(jS, E):
            assert is_bidense(jS, A.inclusion())


def test_trivial_monoid_topologies():
    M = trivial_monoid()
    tops = enumerate_weak_topologies(M)
    assert [j.table for j in tops] == [(0, 1), (1, 1)]


def test_weak_topology_maps_are_equivariant(m3):
    for j in enumerate_weak_topologies(m3):
        assert isinstance(j.as_map(), MMap)
