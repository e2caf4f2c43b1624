"""The ordered algebra of weak topologies on a fixed classifier.

``compose(j, k)`` always means ``j . k``: apply ``k`` first, then ``j``.
Residuals and the Heyting implication filter the full enumeration.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from .errors import GuardExceeded, TopologyError
from .monoid import Monoid
from .mset import Omega, omega
from .topology import WeakTopology

DEFAULT_MAX_OMEGA = 8


def enumerate_weak_topologies(
    M: Monoid,
    productive_only: bool = False,
    lt_only: bool = False,
    max_omega: int = DEFAULT_MAX_OMEGA,
) -> list[WeakTopology]:
    """All weak topologies on ``omega(M)`` sorted by table."""
    Om = omega(M)
    if Om.size > max_omega:
        raise GuardExceeded(f"Omega has {Om.size} elements, guard allows {max_omega}")
    out = list(_all_weak_topologies(M))
    if productive_only:
        out = [j for j in out if j.productive]
    if lt_only:
        out = [j for j in out if j.idempotent]
    return out


@lru_cache(maxsize=None)
def _all_weak_topologies(M: Monoid) -> tuple[WeakTopology, ...]:
    Om = omega(M)
    return tuple(WeakTopology(Om, t) for t in _weak_topology_tables(Om))


def _weak_topology_tables(Om: Omega) -> list[tuple[int, ...]]:
    # Backtrack over images of the generators of Omega; an image fixes the
    # whole orbit.  Inflation and monotonicity prune as soon as both ends of
    # a comparison are assigned.
    n = Om.size
    leq = Om.leq_table
    gens = [g for g in Om.generators if g != Om.top]
    t = [-1] * n
    t[Om.top] = Om.top
    out = []

    def consistent(changed) -> bool:
        for a in changed:
            ta = t[a]
            for b in range(n):
                tb = t[b]
                if tb < 0:
                    continue
                if leq[a][b] and not leq[ta][tb]:
                    return False
                if leq[b][a] and not leq[tb][ta]:
                    return False
        return True

    def rec(i: int):
        if i == len(gens):
            out.append(tuple(t))
            return
        g = gens[i]
        grow = Om.act[g]
        for v in range(n):
            if not leq[g][v]:
                continue
            vrow = Om.act[v]
            changed = []
            ok = True
            for m in Om.monoid.elements:
                x = grow[m]
                w = vrow[m]
                if t[x] < 0:
                    t[x] = w
                    changed.append(x)
                elif t[x] != w:
                    ok = False
                    break
            if ok and all(leq[x][t[x]] for x in changed) and consistent(changed):
                rec(i + 1)
            for x in changed:
                t[x] = -1

    rec(0)
    out.sort()
    return out


def _same_omega(j: WeakTopology, k: WeakTopology):
    if j.omega != k.omega:
        raise TopologyError("topologies live on different classifiers")


def leq(j: WeakTopology, k: WeakTopology) -> bool:
    _same_omega(j, k)
    L = j.omega.leq_table
    return all(L[a][b] for a, b in zip(j.table, k.table))


def meet(j: WeakTopology, k: WeakTopology) -> WeakTopology:
    _same_omega(j, k)
    mt = j.omega.meet_table
    return WeakTopology(j.omega, [mt[a][b] for a, b in zip(j.table, k.table)])


def join(j: WeakTopology, k: WeakTopology) -> WeakTopology:
    _same_omega(j, k)
    jt = j.omega.join_table
    return WeakTopology(j.omega, [jt[a][b] for a, b in zip(j.table, k.table)])


def compose(j: WeakTopology, k: WeakTopology) -> WeakTopology:
    """``j . k`` (``k`` applied first)."""
    _same_omega(j, k)
    return WeakTopology(j.omega, [j.table[b] for b in k.table])


def meet_all(family: Iterable[WeakTopology], Om: Omega) -> WeakTopology:
    mt = Om.meet_table
    table = [Om.top] * Om.size
    for j in family:
        table = [mt[a][b] for a, b in zip(table, j.table)]
    return WeakTopology(Om, table)


def join_all(family: Iterable[WeakTopology], Om: Omega) -> WeakTopology:
    jt = Om.join_table
    table = list(Om.elements)
    for j in family:
        table = [jt[a][b] for a, b in zip(table, j.table)]
    return WeakTopology(Om, table)


def left_residual(j: WeakTopology, k: WeakTopology, max_omega: int = DEFAULT_MAX_OMEGA) -> WeakTopology:
    """``j \\ k``: meet of all ``j'`` with ``j . j' >= k``."""
    _same_omega(j, k)
    cands = [
        jp for jp in enumerate_weak_topologies(j.monoid, max_omega=max_omega)
        if leq(k, compose(j, jp))
    ]
    return meet_all(cands, j.omega)


def right_residual(k: WeakTopology, j: WeakTopology, max_omega: int = DEFAULT_MAX_OMEGA) -> WeakTopology:
    """``k / j``: meet of all ``j'`` with ``j' . j >= k``."""
    _same_omega(j, k)
    cands = [
        jp for jp in enumerate_weak_topologies(j.monoid, max_omega=max_omega)
        if leq(k, compose(jp, j))
    ]
    return meet_all(cands, j.omega)


def heyting_implication(j1: WeakTopology, j2: WeakTopology, max_omega: int = DEFAULT_MAX_OMEGA) -> WeakTopology:
    """Join of all ``j`` with ``j and j1 <= j2``."""
    _same_omega(j1, j2)
    cands = [
        j for j in enumerate_weak_topologies(j1.monoid, max_omega=max_omega)
        if leq(meet(j, j1), j2)
    ]
    return join_all(cands, j1.omega)


def topological_reflection(j: WeakTopology) -> WeakTopology:
    """Iterate ``j, j^2, j^3, ...`` until the table stops changing."""
    current = j
    while True:
        nxt = compose(j, current)
        if nxt.table == current.table:
            return current
        current = nxt


def reflection_by_meet(j: WeakTopology, max_omega: int = DEFAULT_MAX_OMEGA) -> WeakTopology:
    """Meet of all LT-topologies above ``j``."""
    lts = enumerate_weak_topologies(j.monoid, lt_only=True, max_omega=max_omega)
    return meet_all((k for k in lts if leq(j, k)), j.omega)
