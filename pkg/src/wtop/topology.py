"""Weak topologies on the classifier of M-Sets and their closure operators.

A weak topology is stored as an endomap table on the carrier of
:class:`~wtop.mset.Omega`.  Constructors validate the table; the
inflationary law ``K <= j(K)`` is a consequence of the others and is
re-checked as a theorem.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterable, Sequence

from .errors import TheoremViolation, TopologyError
from .monoid import Monoid, center, is_left_ideal, ideal_product
from .mset import (
    MMap,
    MSet,
    Omega,
    Product,
    SubMSet,
    enumerate_sub_msets,
    image_factorization,
    kernel_pair,
    omega,
)


@dataclass(frozen=True)
class Verdict:
    """Truthy iff ``ok``; ``reason`` and ``witness`` describe a failure."""

    ok: bool
    reason: str = ""
    witness: Any = None

    def __bool__(self):
        return self.ok


class WeakTopology:
    def __init__(self, omega_obj: Omega, table: Sequence[int], name: str | None = None):
        verdict = is_weak_topology(omega_obj, table)
        if not verdict:
            raise TopologyError(verdict.reason)
        self.omega = omega_obj
        self.monoid = omega_obj.monoid
        self.table = tuple(table)
        self.name = name
        ideals = omega_obj.ideals
        for i, v in enumerate(self.table):
            if not ideals[i] <= ideals[v]:
                raise TheoremViolation(f"weak topology is not inflationary at {omega_obj.names[i]}")

    def __call__(self, i: int) -> int:
        return self.table[i]

    def apply(self, ideal: Iterable[int]) -> frozenset:
        return self.omega.ideals[self.table[self.omega.idx(ideal)]]

    def __eq__(self, other):
        if not isinstance(other, WeakTopology):
            return NotImplemented
        return self.table == other.table and self.omega == other.omega

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"WeakTopology{label}({self.table!r})"

    def as_map(self) -> MMap:
        return MMap(self.omega, self.omega, self.table)

    @cached_property
    def productive(self) -> bool:
        meet = self.omega.meet_table
        t = self.table
        return all(t[meet[a][b]] == meet[t[a]][t[b]] for a in self.omega.elements for b in self.omega.elements)

    @cached_property
    def idempotent(self) -> bool:
        t = self.table
        return all(t[t[a]] == t[a] for a in self.omega.elements)

    def rename(self, name: str) -> "WeakTopology":
        return WeakTopology(self.omega, self.table, name)


def is_weak_topology(omega_obj: Omega, table: Sequence[int]) -> Verdict:
    """Equivariant, top-preserving and monotone; the first failure is reported."""
    Om = omega_obj
    n = Om.size
    if len(table) != n:
        return Verdict(False, f"table has {len(table)} entries, Omega has {n}")
    for i, v in enumerate(table):
        if not (isinstance(v, int) and 0 <= v < n):
            return Verdict(False, f"image of {Om.names[i]} is out of range", i)
    for i in Om.elements:
        for m in Om.monoid.elements:
            if table[Om.act[i][m]] != Om.act[table[i]][m]:
                return Verdict(
                    False,
                    f"not equivariant at ({Om.names[i]}, {Om.monoid.names[m]})",
                    (i, m),
                )
    if table[Om.top] != Om.top:
        return Verdict(False, "top is not preserved", Om.top)
    for a in Om.elements:
        for b in Om.elements:
            if Om.leq(a, b) and not Om.leq(table[a], table[b]):
                return Verdict(False, f"not monotone: {Om.names[a]} <= {Om.names[b]}", (a, b))
    return Verdict(True)


def is_productive(j: WeakTopology) -> bool:
    return j.productive


def is_idempotent(j: WeakTopology) -> bool:
    return j.idempotent


# -- constructors -----------------------------------------------------------


def _from_function(Om: Omega, fn, name: str | None = None) -> WeakTopology:
    return WeakTopology(Om, [Om.idx(fn(K)) for K in Om.ideals], name)


def identity_topology(M: Monoid) -> WeakTopology:
    Om = omega(M)
    return WeakTopology(Om, list(Om.elements), "id")


def top_topology(M: Monoid) -> WeakTopology:
    Om = omega(M)
    return WeakTopology(Om, [Om.top] * Om.size, "top")


def _ideal_label(M: Monoid, I) -> str:
    return "{" + ",".join(M.subset_names(I)) + "}"


def weak_ideal_topology(M: Monoid, I: Iterable[int]) -> WeakTopology:
    """``K -> {m : mn in K for all n in I}`` for a left ideal ``I``."""
    I = frozenset(I)
    if not is_left_ideal(M, I):
        raise TopologyError(f"{_ideal_label(M, I)} is not a left ideal")
    mult = M.mult
    return _from_function(
        omega(M),
        lambda K: frozenset(m for m in M.elements if all(mult[m][n] in K for n in I)),
        "j^" + _ideal_label(M, I),
    )


def central_element_topology(M: Monoid, m: int) -> WeakTopology:
    """``K -> {n : nm in K}`` for a central element ``m``."""
    if m not in center(M):
        raise TopologyError(f"{M.names[m]} is not central")
    mult = M.mult
    return _from_function(
        omega(M),
        lambda K: frozenset(n for n in M.elements if mult[n][m] in K),
        f"alpha_{M.names[m]}",
    )


def _require_global(Om: Omega, u: int):
    if not all(v == u for v in Om.act[u]):
        raise TopologyError(f"{Om.names[u]} is not a global element of Omega")


def open_topology(Om: Omega, u: int) -> WeakTopology:
    """``K -> u or K``."""
    _require_global(Om, u)
    return WeakTopology(Om, [Om.join_table[u][k] for k in Om.elements], f"open {Om.names[u]}")


def closed_topology(Om: Omega, u: int) -> WeakTopology:
    """``K -> (u => K)``."""
    _require_global(Om, u)
    return WeakTopology(Om, [Om.heyting_table[u][k] for k in Om.elements], f"closed {Om.names[u]}")


def double_negation(Om: Omega) -> WeakTopology:
    neg = Om.negation_table
    return WeakTopology(Om, [neg[neg[k]] for k in Om.elements], "notnot")


def weak_grothendieck(M: Monoid, I: Iterable[int]) -> list[frozenset]:
    """Right ideals containing the left ideal ``I``."""
    I = frozenset(I)
    if not is_left_ideal(M, I):
        raise TopologyError(f"{_ideal_label(M, I)} is not a left ideal")
    return [K for K in omega(M).ideals if I <= K]


def ideal_idempotency_criterion(M: Monoid, I: Iterable[int]) -> bool:
    """``(IM)^2 = IM``."""
    IM = ideal_product(M, I, M.elements)
    return ideal_product(M, IM, IM) == IM


# -- closure ------------------------------------------------------------------


def _check_monoid(j: WeakTopology, E: MSet):
    if j.monoid != E.monoid:
        raise TopologyError("topology and M-set are over different monoids")


def closure(j: WeakTopology, A: SubMSet) -> SubMSet:
    """``{b : j(char_A(b)) = top}``."""
    E = A.ambient
    _check_monoid(j, E)
    Om = j.omega
    members = A.elements
    mrange = E.monoid.elements
    out = []
    for b in E.elements:
        row = E.act[b]
        K = frozenset(m for m in mrange if row[m] in members)
        if j.table[Om.ideal_index[K]] == Om.top:
            out.append(b)
    return SubMSet(E, out)


def ideal_closure(M: Monoid, I: Iterable[int], A: SubMSet) -> SubMSet:
    """Closure for ``j^I`` by the direct formula ``{b : b.n in A for n in I}``."""
    I = tuple(I)
    E = A.ambient
    return SubMSet(E, (b for b in E.elements if all(E.act[b][n] in A.elements for n in I)))


def is_dense(j: WeakTopology, A: SubMSet) -> bool:
    return closure(j, A).is_full()


def is_closed(j: WeakTopology, A: SubMSet) -> bool:
    return closure(j, A) == A


def closed_subobjects(j: WeakTopology, E: MSet) -> list[SubMSet]:
    return [A for A in enumerate_sub_msets(E) if is_closed(j, A)]


def cclosed_subobjects(j: WeakTopology, E: MSet) -> list[SubMSet]:
    """Subobjects whose closure is closed."""
    return [A for A in enumerate_sub_msets(E) if is_closed(j, closure(j, A))]


def dense_subobjects(j: WeakTopology, E: MSet) -> list[SubMSet]:
    return [A for A in enumerate_sub_msets(E) if is_dense(j, A)]


def dense_right_ideals(j: WeakTopology) -> list[frozenset]:
    return [j.omega.ideals[i] for i in j.omega.elements if j.table[i] == j.omega.top]


# -- distinguished subobjects of Omega ---------------------------------------


def omega_j(j: WeakTopology) -> SubMSet:
    return SubMSet(j.omega, (k for k in j.omega.elements if j.table[k] == k))


def l_j(j: WeakTopology) -> SubMSet:
    t = j.table
    return SubMSet(j.omega, (k for k in j.omega.elements if t[t[k]] == t[k]))


def im_j(j: WeakTopology) -> SubMSet:
    return SubMSet(j.omega, j.table)


# -- bidensity, principality --------------------------------------------------


def is_bidense(j: WeakTopology, f: MMap) -> bool:
    """Image dense in the target and the diagonal dense in the kernel pair."""
    _, im = image_factorization(f)
    if not is_dense(j, im):
        return False
    P = Product(f.source, f.source)
    kp = kernel_pair(f, P)
    kp_obj = kp.as_mset()
    members = sorted(kp.elements)
    diag = [i for i, p in enumerate(members) if P.split(p)[0] == P.split(p)[1]]
    return is_dense(j, SubMSet(kp_obj, diag))


def act_by(E: MSet, m: int) -> MMap:
    """``x -> x.m``; equivariant when ``m`` is central."""
    return MMap(E, E, [E.act[x][m] for x in E.elements])


def least_dense_subobject(j: WeakTopology, E: MSet) -> SubMSet | None:
    """The intersection of all dense subobjects when it is dense, else ``None``."""
    inter = frozenset(E.elements)
    for A in dense_subobjects(j, E):
        inter &= A.elements
    U = SubMSet(E, inter)
    return U if is_dense(j, U) else None


def interior(j: WeakTopology, A: SubMSet) -> SubMSet | None:
    """Least dense subobject of ``A`` taken as an object, embedded in the ambient."""
    sub = A.as_mset()
    U = least_dense_subobject(j, sub)
    if U is None:
        return None
    inc = A.inclusion()
    return SubMSet(A.ambient, (inc.table[x] for x in U.elements))
