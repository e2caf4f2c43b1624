"""Named, exhaustively checked laws.  Each law has a stable identifier and a
default scale; ``max_order`` can only lower the monoid orders involved."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

from .lattice import (
    compose,
    enumerate_weak_topologies,
    left_residual,
    leq,
    meet,
    reflection_by_meet,
    right_residual,
    topological_reflection,
)
from .monoid import (
    center,
    enumerate_left_ideals,
    enumerate_monoids,
    enumerate_two_sided_ideals,
    ideal_product,
    zero_semigroup_monoid,
)
from .mset import MMap, enumerate_msets, hom_tables, regular_act, sub_from_names
from .reflection import (
    definitional_separated_check,
    diagonal_closure_report,
    extends_uniquely,
    is_separated,
    is_sheaf,
    is_sheaf_by_ideals,
    omega_j_object,
    separated_reflection,
    sheaf_intersection_check,
    sheafify_separated,
)
from .topology import (
    act_by,
    cclosed_subobjects,
    central_element_topology,
    closed_subobjects,
    im_j,
    is_bidense,
    is_dense,
    l_j,
    omega_j,
    weak_ideal_topology,
)


@dataclass(frozen=True)
class LawResult:
    law_id: str
    ok: bool
    detail: str
    checked: int
    seconds: float


@dataclass(frozen=True)
class Law:
    law_id: str
    summary: str
    check: Callable[[int | None], tuple[bool, str, int]]


def _cap(default: int, max_order: int | None) -> int:
    return default if max_order is None else min(default, max_order)


def _m3():
    M = zero_semigroup_monoid()
    return M, M.subset(["0", "s"]), weak_ideal_topology(M, M.subset(["0", "s"]))


def _names(Om, sub):
    return [Om.names[k] for k in sorted(sub.elements)]


def law_l_j(max_order):
    M, S, j = _m3()
    Om = j.omega
    got = {Om.ideals[k] for k in l_j(j).elements}
    want = {frozenset(), S, M.full}
    return got == want, "L_j = " + " ".join(_names(Om, l_j(j))), 1


def law_l_j_separated(max_order):
    M, S, j = _m3()
    Om = j.omega
    L = l_j(j).as_mset()
    v = definitional_separated_check(j, L)
    if v.ok:
        return False, "no pair of maps agreeing on a dense subobject was found", 1
    w = v.witness
    R = regular_act(M)
    one = M.identity
    images = {L.names[w.first(one)], L.names[w.second(one)]} if w.domain == R else set()
    witness_ok = (
        w.domain == R
        and w.dense.elements == S
        and images == {Om.names[Om.idx(S)], Om.names[Om.top]}
    )
    cl = {A.elements for A in closed_subobjects(j, R)}
    ccl = {A.elements for A in cclosed_subobjects(j, R)}
    sets_ok = cl == {frozenset(), M.full} and ccl == {frozenset(), S, M.full} and cl < ccl
    dense = "{" + ",".join(w.domain.names[x] for x in sorted(w.dense.elements)) + "}"
    detail = (
        f"f(1), g(1) = {' and '.join(sorted(images))} agree on {dense}; "
        f"|ClSub(M)| = {len(cl)}, |CClSub(M)| = {len(ccl)}"
    )
    return witness_ok and sets_ok, detail, 1


def law_ideal_idempotency(max_order):
    top = _cap(4, max_order)
    checked = 0
    for M in enumerate_monoids(top):
        IMs = {}
        for I in enumerate_left_ideals(M):
            j = weak_ideal_topology(M, I)
            IM = ideal_product(M, I, M.elements)
            if j.idempotent != (ideal_product(M, IM, IM) == IM):
                return False, f"left ideal {M.subset_names(I)} of {M.mult}", checked
            checked += 1
            IMs[I] = j
        for I in enumerate_two_sided_ideals(M):
            if IMs[I].idempotent != (ideal_product(M, I, I) == I):
                return False, f"two-sided ideal {M.subset_names(I)} of {M.mult}", checked
            checked += 1
    return True, f"monoids of order <= {top}", checked


def law_ideal_composition(max_order):
    top = _cap(4, max_order)
    checked = 0
    for M in enumerate_monoids(top):
        ideals = enumerate_two_sided_ideals(M)
        tops = {I: weak_ideal_topology(M, I) for I in ideals}
        for I in ideals:
            for J in ideals:
                lhs = compose(tops[I], tops[J])
                rhs = weak_ideal_topology(M, ideal_product(M, I, J))
                if lhs.table != rhs.table:
                    return False, f"I={M.subset_names(I)}, J={M.subset_names(J)} in {M.mult}", checked
                checked += 1
    return True, f"monoids of order <= {top}", checked


def law_image(max_order):
    top = _cap(3, max_order)
    checked = 0
    for M in enumerate_monoids(top):
        for j in enumerate_weak_topologies(M):
            fixed, image = omega_j(j), im_j(j)
            if not fixed <= image or j.idempotent != (fixed == image):
                return False, f"{j!r} on {M.mult}", checked
            checked += 1
    return True, f"all weak topologies, monoids of order <= {top}", checked


def law_classify(max_order):
    top = _cap(3, max_order)
    checked = 0
    for M in enumerate_monoids(top, up_to_iso=True):
        tops = enumerate_weak_topologies(M)
        objs = [(j, omega_j(j).as_mset(), l_j(j).as_mset()) for j in tops]
        for E in enumerate_msets(M, 4):
            for j, Oj, Lj in objs:
                if len(hom_tables(E, Oj)) != len(closed_subobjects(j, E)):
                    return False, f"Omega_j count for {j!r}, E={E.act}", checked
                if len(hom_tables(E, Lj)) != len(cclosed_subobjects(j, E)):
                    return False, f"L_j count for {j!r}, E={E.act}", checked
                checked += 1
    M, S, j = _m3()
    R = regular_act(M)
    anchor = (len(hom_tables(R, omega_j(j).as_mset())), len(hom_tables(R, l_j(j).as_mset())))
    return anchor == (2, 3), f"M-sets of size <= 4 over monoids of order <= {top}; anchor {anchor}", checked


def law_residuated(max_order):
    top = _cap(2, max_order)
    checked = 0
    for M in enumerate_monoids(top):
        W = enumerate_weak_topologies(M)
        lres = {(a, b): left_residual(a, b) for a in W for b in W}
        rres = {(a, b): right_residual(a, b) for a in W for b in W}
        for j in W:
            for jp in W:
                for k in W:
                    a = leq(k, compose(j, jp))
                    b = leq(rres[(k, jp)], j)
                    c = leq(lres[(j, k)], jp)
                    if not a == b == c:
                        return False, f"residuation fails at j={j.table}, j'={jp.table}, k={k.table}", checked
                    checked += 1
        P = [j for j in W if j.productive]
        for j in P:
            for jp in P:
                for k in P:
                    if compose(j, meet(jp, k)) != meet(compose(j, jp), compose(j, k)):
                        return False, f"left distribution fails at {j.table}, {jp.table}, {k.table}", checked
                    if compose(meet(jp, k), j) != meet(compose(jp, j), compose(k, j)):
                        return False, f"right distribution fails at {j.table}, {jp.table}, {k.table}", checked
                    checked += 1
    return True, f"monoids of order <= {top}", checked


def law_reflection(max_order):
    top = _cap(3, max_order)
    checked = 0
    for M in enumerate_monoids(top):
        for j in enumerate_weak_topologies(M):
            r = topological_reflection(j)
            if not (r.idempotent and leq(j, r) and r == reflection_by_meet(j)):
                return False, f"{j!r} on {M.mult}", checked
            checked += 1
    return True, f"all weak topologies, monoids of order <= {top}", checked


def law_intersection(max_order):
    M, _, _ = _m3()
    P = enumerate_weak_topologies(M, productive_only=True)
    checked = 0
    for j in P:
        for k in P:
            v = sheaf_intersection_check(j, k, 3)
            if not v:
                return False, f"{v.reason} for j={j.table}, k={k.table}: {v.witness!r}", checked
            checked += 1
    return True, f"{checked} pairs of productive topologies, M-sets of size <= 3", checked


def law_diagonal(max_order):
    M, S, j = _m3()
    R = regular_act(M)
    rep = diagonal_closure_report(j, R)
    idx = M.index
    want_bar = {(x, x) for x in M.elements} | {(idx("0"), idx("s")), (idx("s"), idx("0"))}
    ok_bar = rep.pairs(rep.delta_bar) == want_bar
    ok_barbar = rep.pairs(rep.delta_bar_bar) == {(a, b) for a in M.elements for b in M.elements}
    Sobj = sub_from_names(R, ["0", "s"]).as_mset()
    srep = diagonal_closure_report(j, Sobj)
    ok_s = srep.delta_bar == srep.delta_bar_bar and srep.in_c_j and not srep.is_separated
    ok_single = separated_reflection(j, Sobj)[0].size == 1
    v = definitional_separated_check(j, Sobj)
    w = v.witness
    ok_witness = (
        not v.ok
        and w.domain == R
        and w.dense.elements == S
        and {Sobj.names[w.first(M.identity)], Sobj.names[w.second(M.identity)]} == {"0", "s"}
        and _restrict_equal(w)
    )
    checks = {"bar": ok_bar, "barbar": ok_barbar, "S in C_j": ok_s, "S' singleton": ok_single, "witness": ok_witness}
    failed = [k for k, ok in checks.items() if not ok]
    return not failed, "failed: " + ", ".join(failed) if failed else "all diagonal values match", 1


def _restrict_equal(w) -> bool:
    return all(w.first(x) == w.second(x) for x in w.dense.elements) and w.first != w.second


def law_omega_j_sheaf(max_order):
    M, _, _ = _m3()
    checked = 0
    for j in enumerate_weak_topologies(M, productive_only=True):
        Oj, _ = omega_j_object(j)
        if not is_sheaf(j, Oj):
            return False, f"Omega_j is not a sheaf for {j.table}", checked
        checked += 1
    return True, f"{checked} productive topologies", checked


def law_sheafify(max_order):
    M, _, _ = _m3()
    objs = list(enumerate_msets(M, 3))
    checked = 0
    for j in enumerate_weak_topologies(M, productive_only=True):
        sheaves = [F for F in objs if is_sheaf(j, F)]
        for E in objs:
            if not is_separated(j, E):
                continue
            F, i = sheafify_separated(j, E)
            if not is_sheaf_by_ideals(j, F) or not is_dense(j, i.image()) or not i.is_injective():
                return False, f"sheafification of {E.act} under {j.table}", checked
            for G in sheaves:
                for t in hom_tables(E, G):
                    if not extends_uniquely(i, MMap(E, G, t)):
                        return False, f"map {t} from {E.act} does not extend uniquely", checked
                    checked += 1
    return True, f"{checked} maps into sheaves extended uniquely", checked


def law_central(max_order):
    top = _cap(4, max_order)
    checked = 0
    for M in enumerate_monoids(top):
        for m in sorted(center(M)):
            alpha = central_element_topology(M, m)
            if alpha.table != weak_ideal_topology(M, frozenset(M.mult[m])).table:
                return False, f"table mismatch for central {M.names[m]} in {M.mult}", checked
            checked += 1
    for M in enumerate_monoids(top, up_to_iso=True):
        objs = list(enumerate_msets(M, 3))
        for m in sorted(center(M)):
            alpha = central_element_topology(M, m)
            for E in objs:
                if not is_bidense(alpha, act_by(E, m)):
                    return False, f"act-by-{M.names[m]} not bidense on {E.act} over {M.mult}", checked
                checked += 1
    return True, f"monoids of order <= {top}", checked


def law_dense_composite(max_order):
    M, S, j = _m3()
    R = regular_act(M)
    zero = sub_from_names(R, ["0"])
    Ssub = sub_from_names(R, ["0", "s"])
    Sobj = Ssub.as_mset()
    zero_in_S = sub_from_names(Sobj, ["0"])
    a = is_dense(j, Ssub)
    b = is_dense(j, zero_in_S)
    c = is_dense(j, zero)
    yn = {True: "yes", False: "no"}
    detail = f"S dense in M: {yn[a]}; {{0}} dense in S: {yn[b]}; {{0}} dense in M: {yn[c]}"
    return a and b and not c, detail, 1


LAWS: tuple[Law, ...] = (
    Law("LAW-2.13-L", "L_j of the ideal topology of S on M3 is the empty ideal, S and M", law_l_j),
    Law("LAW-2.13-SEP", "L_j is not separated; CClSub(M) strictly contains ClSub(M)", law_l_j_separated),
    Law("LAW-2.8-IDEM", "j^I idempotent iff (IM)^2 = IM", law_ideal_idempotency),
    Law("LAW-2.X-COMP", "j^I . j^J = j^(IJ) for two-sided ideals", law_ideal_composition),
    Law("LAW-2.4-IM", "idempotent iff im j = Omega_j; Omega_j within im j", law_image),
    Law("LAW-EQ4-CLASSIFY", "Omega_j classifies closed and L_j closure-closed subobjects", law_classify),
    Law("LAW-4.1-RESIDUATED", "residuation and distribution laws of WTop", law_residuated),
    Law("LAW-4.3-REFLECT", "iterated composite is the least LT-topology above j", law_reflection),
    Law("LAW-4.4-INTERSECT", "sheaves for jk are the sheaves for both j and k", law_intersection),
    Law("LAW-5.5-DIAG", "diagonal closures and the separated reflection on M3", law_diagonal),
    Law("LAW-2.9-OMEGAJ", "Omega_j is a j-sheaf", law_omega_j_sheaf),
    Law("LAW-6.5-SHEAFIFY", "sheafification of separated objects and its universal property", law_sheafify),
    Law("LAW-3.6-CENTRAL", "central topologies are j^(mM); act-by-m is bidense", law_central),
    Law("LAW-DENSE-NOCOMP", "dense inclusions need not compose", law_dense_composite),
)

LAW_IDS = tuple(law.law_id for law in LAWS)


def get_law(law_id: str) -> Law:
    for law in LAWS:
        if law.law_id == law_id:
            return law
    raise KeyError(f"unknown law {law_id!r}")


def run_law(law: Law, max_order: int | None = None) -> LawResult:
    start = time.perf_counter()
    ok, detail, checked = law.check(max_order)
    return LawResult(law.law_id, bool(ok), detail, checked, time.perf_counter() - start)


def run_laws(ids=None, max_order: int | None = None) -> list[LawResult]:
    chosen = LAWS if ids is None else [get_law(i) for i in ids]
    return [run_law(law, max_order) for law in chosen]
