"""Separated objects, sheaves and the reflections onto them.

Certified checks (diagonal closure, closedness in ``Omega_j^E``) sit next
to definitional ones that search a finite family of dense inclusions for a
counterexample.  The definitional checks are falsifiers: ``ok=True`` only
means no counterexample was found in the family.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import GuardExceeded, NotApplicable, TheoremViolation
from .lattice import compose
from .mset import (
    Exponential,
    MMap,
    MSet,
    Product,
    SubMSet,
    congruence_generated,
    enumerate_congruences,
    enumerate_msets,
    hom_tables,
    is_congruence,
    quotient,
    regular_act,
)
from .topology import Verdict, WeakTopology, closure, dense_subobjects, is_closed, omega_j

DEFAULT_MAX_EXP_DOMAIN = 12


@dataclass(frozen=True)
class DiagonalClosureReport:
    object: MSet
    product: Product
    delta: SubMSet
    delta_bar: SubMSet
    delta_bar_bar: SubMSet
    is_separated: bool
    in_c_j: bool

    def pairs(self, sub: SubMSet) -> set[tuple[int, int]]:
        return self.product.pairs(sub)

    def named_pairs(self, sub: SubMSet) -> list[tuple[str, str]]:
        names = self.object.names
        return sorted((names[a], names[b]) for a, b in self.product.pairs(sub))


def diagonal_closure_report(j: WeakTopology, E: MSet) -> DiagonalClosureReport:
    P = Product(E, E)
    delta = P.diagonal()
    bar = closure(j, delta)
    barbar = closure(j, bar)
    return DiagonalClosureReport(E, P, delta, bar, barbar, bar == delta, barbar == bar)


def is_separated(j: WeakTopology, E: MSet) -> bool:
    return is_closed(j, Product(E, E).diagonal())


def in_c_j(j: WeakTopology, E: MSet) -> bool:
    return diagonal_closure_report(j, E).in_c_j


# -- definitional checks --------------------------------------------------------

TestPair = tuple[MSet, SubMSet]


def regular_family(j: WeakTopology) -> list[TestPair]:
    """Dense right ideals of the regular act.  For both checks this family
    is already complete."""
    R = regular_act(j.monoid)
    return [(R, B) for B in dense_subobjects(j, R)]


def default_family(j: WeakTopology, E: MSet) -> list[TestPair]:
    """Dense subobjects of every quotient of the regular act, then of ``E x E``."""
    R = regular_act(j.monoid)
    family: list[TestPair] = []
    congs = sorted(enumerate_congruences(R), key=lambda c: (-c.num_classes, c.labels))
    for theta in congs:
        Q = R if theta.is_discrete() else quotient(R, theta)[0]
        family.extend((Q, B) for B in dense_subobjects(j, Q))
    P = Product(E, E)
    family.extend((P, B) for B in dense_subobjects(j, P))
    return family


def _restrict(table: Sequence[int], B: SubMSet) -> tuple[int, ...]:
    return tuple(table[x] for x in sorted(B.elements))


@dataclass(frozen=True)
class Counterexample:
    domain: MSet
    dense: SubMSet
    first: MMap
    second: MMap | None = None


def definitional_separated_check(
    j: WeakTopology, E: MSet, family: Iterable[TestPair] | None = None
) -> Verdict:
    """Look for ``g != g' : A -> E`` agreeing on a dense ``B <= A``."""
    if family is None:
        family = default_family(j, E)
    for A, B in family:
        seen: dict[tuple[int, ...], tuple[int, ...]] = {}
        for t in hom_tables(A, E):
            key = _restrict(t, B)
            if key in seen:
                w = Counterexample(A, B, MMap(A, E, seen[key]), MMap(A, E, t))
                return Verdict(False, "two maps agree on a dense subobject", w)
            seen[key] = t
    return Verdict(True)


def definitional_sheaf_check(
    j: WeakTopology, E: MSet, family: Iterable[TestPair] | None = None
) -> Verdict:
    """Look for a map from a dense ``B <= A`` into ``E`` without exactly one
    extension to ``A``."""
    if family is None:
        family = default_family(j, E)
    for A, B in family:
        counts: dict[tuple[int, ...], int] = {}
        for t in hom_tables(A, E):
            key = _restrict(t, B)
            counts[key] = counts.get(key, 0) + 1
        Bobj = B.as_mset()
        for h in hom_tables(Bobj, E):
            c = counts.get(h, 0)
            if c != 1:
                reason = "no extension" if c == 0 else f"{c} extensions"
                return Verdict(False, reason, Counterexample(A, B, MMap(Bobj, E, h)))
    return Verdict(True)


def is_sheaf_by_ideals(j: WeakTopology, E: MSet) -> bool:
    return bool(definitional_sheaf_check(j, E, regular_family(j)))


def is_separated_by_ideals(j: WeakTopology, E: MSet) -> bool:
    return bool(definitional_separated_check(j, E, regular_family(j)))


# -- gamma hat and sheaves ------------------------------------------------------


def _guard(j: WeakTopology, E: MSet, max_exp_domain: int):
    if j.monoid.order * E.size > max_exp_domain:
        raise GuardExceeded(
            f"exponential over |M|*|E| = {j.monoid.order * E.size} exceeds the guard {max_exp_domain}"
        )


def omega_j_object(j: WeakTopology) -> tuple[MSet, dict[int, int]]:
    """``Omega_j`` as a standalone M-set plus the position of each fixed ideal."""
    sub = omega_j(j)
    return sub.as_mset(), {k: i for i, k in enumerate(sorted(sub.elements))}


def gamma_hat(
    j: WeakTopology, E: MSet, max_exp_domain: int = DEFAULT_MAX_EXP_DOMAIN
) -> tuple[MMap, Exponential]:
    """``E -> Omega_j^E``, ``a -> ((n, b) -> delta(a.n, b))``, for separated ``E``."""
    if not is_separated(j, E):
        raise NotApplicable("gamma hat needs a separated object")
    _guard(j, E, max_exp_domain)
    Oj, pos = omega_j_object(j)
    exp = Exponential(E, Oj)
    Om = j.omega
    M = j.monoid
    table = []
    for a in E.elements:
        g = []
        for n in M.elements:
            an = E.act[a][n]
            for b in E.elements:
                d = Om.idx(m for m in M.elements if E.act[an][m] == E.act[b][m])
                if d not in pos:
                    raise TheoremViolation("diagonal character leaves Omega_j on a separated object")
                g.append(pos[d])
        table.append(exp.element_of(g))
    return MMap(E, exp, table), exp


def _require_productive(j: WeakTopology, what: str):
    if not j.productive:
        raise NotApplicable(f"{what} needs a productive weak topology")


def is_sheaf(j: WeakTopology, E: MSet, max_exp_domain: int = DEFAULT_MAX_EXP_DOMAIN) -> bool:
    """Separated and the image of gamma hat is closed in ``Omega_j^E``."""
    _require_productive(j, "the certified sheaf test")
    if not is_separated(j, E):
        return False
    g, _ = gamma_hat(j, E, max_exp_domain)
    return is_closed(j, g.image())


def separated_reflection(j: WeakTopology, E: MSet) -> tuple[MSet, MMap]:
    """``E -> E / closure(diagonal)`` for ``E`` in ``C_j``."""
    _require_productive(j, "separated reflection")
    rep = diagonal_closure_report(j, E)
    if not rep.in_c_j:
        raise NotApplicable("object is not in C_j: the closed diagonal is not closed")
    pairs = rep.pairs(rep.delta_bar)
    if not is_congruence(E, pairs):
        raise TheoremViolation("closure of the diagonal is not a congruence")
    theta = congruence_generated(E, pairs)
    Ep, proj = quotient(E, theta)
    if not is_separated(j, Ep):
        raise TheoremViolation("separated reflection produced a non-separated object")
    return Ep, proj


def sheafify_separated(
    j: WeakTopology, E: MSet, max_exp_domain: int = DEFAULT_MAX_EXP_DOMAIN
) -> tuple[MSet, MMap]:
    """Closure of the image of gamma hat in ``Omega_j^E``, with the corestricted map."""
    _require_productive(j, "sheafification")
    g, exp = gamma_hat(j, E, max_exp_domain)
    bar = closure(j, g.image())
    F = bar.as_mset()
    pos = {x: i for i, x in enumerate(sorted(bar.elements))}
    return F, MMap(E, F, [pos[y] for y in g.table])


def sheafify_cj(
    j: WeakTopology, E: MSet, max_exp_domain: int = DEFAULT_MAX_EXP_DOMAIN
) -> tuple[MSet, MMap]:
    Ep, theta = separated_reflection(j, E)
    F, i = sheafify_separated(j, Ep, max_exp_domain)
    return F, theta.then(i)


def sep_reflect_iterative(
    j: WeakTopology, E: MSet, trace: list | None = None
) -> tuple[MSet, MMap]:
    """Experimental: quotient by the congruence generated by the closed
    diagonal until the result is separated.

    Each non-final round merges at least one pair, so this stops after at
    most ``|E|`` rounds.
    """
    _require_productive(j, "iterative separated reflection")
    current = E
    proj = MMap(E, E, list(E.elements))
    while True:
        rep = diagonal_closure_report(j, current)
        if trace is not None:
            trace.append((current.size, sorted(rep.pairs(rep.delta_bar))))
        if rep.is_separated:
            return _relabel_by_fibres(E, current, proj)
        theta = congruence_generated(current, rep.pairs(rep.delta_bar))
        Q, q = quotient(current, theta)
        proj = proj.then(q)
        current = Q


def _relabel_by_fibres(E: MSet, Q: MSet, proj: MMap) -> tuple[MSet, MMap]:
    if Q is E:
        return E, proj
    fibres: list[list[str]] = [[] for _ in Q.elements]
    for x in E.elements:
        fibres[proj.table[x]].append(E.names[x])
    named = MSet(Q.monoid, Q.act, ["[" + ",".join(f) + "]" for f in fibres])
    return named, MMap(E, named, proj.table)


def sheaf_intersection_check(
    j: WeakTopology,
    k: WeakTopology,
    max_size: int = 3,
    max_exp_domain: int = DEFAULT_MAX_EXP_DOMAIN,
) -> Verdict:
    """Sheaves and separated objects for ``j.k`` and ``k.j`` are exactly
    those for both ``j`` and ``k``, over all M-sets up to ``max_size``."""
    _require_productive(j, "the intersection check")
    _require_productive(k, "the intersection check")
    jk = compose(j, k)
    kj = compose(k, j)
    for E in enumerate_msets(j.monoid, max_size):
        sep_both = is_separated(j, E) and is_separated(k, E)
        for c, label in ((jk, "jk"), (kj, "kj")):
            if is_separated(c, E) != sep_both:
                return Verdict(False, f"separated objects differ for {label}", E)
        sh_both = is_sheaf(j, E, max_exp_domain) and is_sheaf(k, E, max_exp_domain)
        for c, label in ((jk, "jk"), (kj, "kj")):
            if is_sheaf(c, E, max_exp_domain) != sh_both:
                return Verdict(False, f"sheaves differ for {label}", E)
    return Verdict(True)


def factors_uniquely(theta: MMap, f: MMap) -> bool:
    """Whether ``f`` factors through the surjection ``theta`` in exactly one way."""
    if f.source != theta.source:
        return False
    hits = [h for h in hom_tables(theta.target, f.target) if all(h[theta.table[x]] == f.table[x] for x in theta.source.elements)]
    return len(hits) == 1


def extends_uniquely(i: MMap, f: MMap) -> bool:
    """Whether ``f`` extends along ``i`` in exactly one way."""
    if f.source != i.source:
        return False
    hits = [h for h in hom_tables(i.target, f.target) if all(h[i.table[x]] == f.table[x] for x in i.source.elements)]
    return len(hits) == 1


def kernel_congruence_pairs(f: MMap) -> set[tuple[int, int]]:
    return {(a, b) for a in f.source.elements for b in f.source.elements if f.table[a] == f.table[b]}

