"""Finite monoids given by multiplication tables, and their ideals.

Elements are dense indices ``0..order-1``; subsets of a monoid are
``frozenset`` objects of indices.  Whenever a family of subsets is returned
it is in the canonical order given by :func:`subset_key` (size first, then
the membership vector read lexicographically).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations, product
from typing import Iterable, Iterator, Sequence

from .errors import MonoidError

Subset = frozenset


def subset_key(subset: Iterable[int], size: int) -> tuple:
    members = set(subset)
    return (len(members), tuple(1 if i in members else 0 for i in range(size)))


def sort_subsets(subsets: Iterable[frozenset], size: int) -> list[frozenset]:
    return sorted(set(subsets), key=lambda s: subset_key(s, size))


def union_closure(generators: Iterable[frozenset]) -> set[frozenset]:
    """All unions of subfamilies of ``generators`` (the empty union included)."""
    family = {frozenset()}
    for g in set(generators):
        family |= {s | g for s in family}
    return family


@dataclass(frozen=True)
class Monoid:
    mult: tuple[tuple[int, ...], ...]
    identity: int
    names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        mult = tuple(tuple(row) for row in self.mult)
        object.__setattr__(self, "mult", mult)
        if not self.names:
            object.__setattr__(self, "names", tuple(str(i) for i in range(len(mult))))
        else:
            object.__setattr__(self, "names", tuple(self.names))
        _check_monoid(self.mult, self.identity, self.names)

    @property
    def order(self) -> int:
        return len(self.mult)

    @property
    def elements(self) -> range:
        return range(len(self.mult))

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no element named {name!r}") from None

    def subset(self, names: Iterable[str]) -> frozenset:
        return frozenset(self.index(n) for n in names)

    def subset_names(self, subset: Iterable[int]) -> list[str]:
        return [self.names[i] for i in sorted(subset)]

    @cached_property
    def full(self) -> frozenset:
        return frozenset(self.elements)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A generating set, chosen greedily in index order (identity excluded)."""
        gens: list[int] = []
        reached = {self.identity}
        for a in self.elements:
            if a in reached:
                continue
            gens.append(a)
            reached = _submonoid(self, gens)
        return tuple(gens)

    @cached_property
    def words(self) -> tuple[tuple[int, int] | None, ...]:
        """For each element ``m`` a pair ``(prefix, generator)`` with
        ``m = prefix * generator``; ``None`` for the identity.

        Obtained by breadth-first search from the identity, so following
        prefixes back always terminates at the identity.
        """
        words: list[tuple[int, int] | None] = [None] * self.order
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for m in frontier:
                for g in self.generators:
                    p = self.mult[m][g]
                    if p not in seen:
                        seen.add(p)
                        words[p] = (m, g)
                        nxt.append(p)
            frontier = nxt
        return tuple(words)

    def __repr__(self):
        return f"Monoid(order={self.order}, names={self.names!r})"


def _submonoid(M: Monoid, gens: Sequence[int]) -> set[int]:
    reached = {M.identity}
    frontier = [M.identity]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                p = M.mult[m][g]
                if p not in reached:
                    reached.add(p)
                    nxt.append(p)
        frontier = nxt
    return reached


def _check_monoid(mult, identity, names):
    n = len(mult)
    if n == 0:
        raise MonoidError("a monoid needs at least one element")
    if len(names) != n:
        raise MonoidError(f"{len(names)} names given for {n} elements")
    if len(set(names)) != n:
        raise MonoidError("element names must be distinct")
    for i, row in enumerate(mult):
        if len(row) != n:
            raise MonoidError(f"row {names[i]} has {len(row)} entries, expected {n}")
        for k, v in enumerate(row):
            if not (isinstance(v, int) and 0 <= v < n):
                raise MonoidError(f"entry {names[i]}*{names[k]} = {v!r} out of range")
    if not (isinstance(identity, int) and 0 <= identity < n):
        raise MonoidError(f"identity {identity!r} out of range")
    e = identity
    for a in range(n):
        if mult[e][a] != a or mult[a][e] != a:
            raise MonoidError(
                f"{names[e]} is not an identity: fails for element {names[a]}"
            )
    for a, b, c in product(range(n), repeat=3):
        if mult[mult[a][b]][c] != mult[a][mult[b][c]]:
            raise MonoidError(
                f"not associative at ({names[a]}, {names[b]}, {names[c]})"
            )


def validate_monoid(order: int, mult, identity: int, names=None) -> Monoid:
    """Build a :class:`Monoid`, raising :class:`MonoidError` on the first
    violated law."""
    if len(mult) != order:
        raise MonoidError(f"table has {len(mult)} rows, expected {order}")
    return Monoid(tuple(tuple(r) for r in mult), identity, tuple(names or ()))


# -- ideals -----------------------------------------------------------------


def is_right_ideal(M: Monoid, A: Iterable[int]) -> bool:
    A = frozenset(A)
    return all(M.mult[a][m] in A for a in A for m in M.elements)


def is_left_ideal(M: Monoid, A: Iterable[int]) -> bool:
    A = frozenset(A)
    return all(M.mult[m][a] in A for a in A for m in M.elements)


def is_two_sided_ideal(M: Monoid, A: Iterable[int]) -> bool:
    return is_left_ideal(M, A) and is_right_ideal(M, A)


def ideal_product(M: Monoid, I: Iterable[int], J: Iterable[int]) -> frozenset:
    """``IJ = {mn : m in I, n in J}`` for arbitrary subsets."""
    J = tuple(J)
    return frozenset(M.mult[m][n] for m in I for n in J)


def principal_right_ideal(M: Monoid, a: int) -> frozenset:
    return frozenset(M.mult[a])


def principal_left_ideal(M: Monoid, a: int) -> frozenset:
    return frozenset(M.mult[m][a] for m in M.elements)


def enumerate_right_ideals(M: Monoid) -> list[frozenset]:
    principals = [principal_right_ideal(M, a) for a in M.elements]
    return sort_subsets(union_closure(principals), M.order)


def enumerate_left_ideals(M: Monoid) -> list[frozenset]:
    principals = [principal_left_ideal(M, a) for a in M.elements]
    return sort_subsets(union_closure(principals), M.order)


def enumerate_two_sided_ideals(M: Monoid) -> list[frozenset]:
    return [I for I in enumerate_left_ideals(M) if is_right_ideal(M, I)]


def center(M: Monoid) -> frozenset:
    return frozenset(
        m for m in M.elements
        if all(M.mult[m][a] == M.mult[a][m] for a in M.elements)
    )


# -- standard examples ------------------------------------------------------


def trivial_monoid() -> Monoid:
    return Monoid(((0,),), 0, ("1",))


def zero_semigroup_monoid(nonzero: int = 1) -> Monoid:
    """A zero semigroup ``S = {0, s...}`` (``S*S = 0``) with an identity
    adjoined.  Element 0 is the identity ``1``, element 1 is ``0``.

    With ``nonzero=1`` this is the three-element monoid ``{1, 0, s}``.
    """
    n = nonzero + 2
    names = ["1", "0"] + (["s"] if nonzero == 1 else [f"s{i}" for i in range(1, nonzero + 1)])
    mult = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            if a == 0:
                mult[a][b] = b
            elif b == 0:
                mult[a][b] = a
            else:
                mult[a][b] = 1
    return Monoid(tuple(map(tuple, mult)), 0, tuple(names))


def cyclic_group(n: int) -> Monoid:
    return Monoid(
        tuple(tuple((a + b) % n for b in range(n)) for a in range(n)),
        0,
        tuple(f"g{a}" if a else "1" for a in range(n)),
    )


def left_zero_monoid(k: int) -> Monoid:
    """``k`` left zeros (``ab = a``) with an identity adjoined."""
    n = k + 1
    mult = [[b if a == 0 else a for b in range(n)] for a in range(n)]
    names = ["1"] + [chr(ord("a") + i) for i in range(k)]
    return Monoid(tuple(map(tuple, mult)), 0, tuple(names))


def monoid_from_operation(elements: Sequence, op, identity) -> Monoid:
    index = {x: i for i, x in enumerate(elements)}
    mult = tuple(tuple(index[op(x, y)] for y in elements) for x in elements)
    return Monoid(mult, index[identity], tuple(str(x) for x in elements))


# -- enumeration ------------------------------------------------------------

MAX_ENUMERATION_ORDER = 5


def enumerate_monoids(max_order: int, min_order: int = 1, up_to_iso: bool = False) -> Iterator[Monoid]:
    """Yield every monoid table on ``{0..k-1}`` with identity 0, for
    ``min_order <= k <= max_order``.

    Tables with the identity elsewhere are relabelings of these and are
    not produced.  With ``up_to_iso`` only the lexicographically least
    table of each isomorphism class is yielded.
    """
    if max_order > MAX_ENUMERATION_ORDER:
        raise ValueError(f"monoid enumeration is limited to order {MAX_ENUMERATION_ORDER}")
    for k in range(max(1, min_order), max_order + 1):
        tables = _monoid_tables(k)
        if up_to_iso:
            tables = sorted({_canonical_table(t) for t in tables})
        for t in tables:
            yield Monoid(t, 0)


def _monoid_tables(n: int) -> list[tuple[tuple[int, ...], ...]]:
    t = [[-1] * n for _ in range(n)]
    for a in range(n):
        t[0][a] = a
        t[a][0] = a
    cells = [(a, b) for a in range(1, n) for b in range(1, n)]
    triples = list(product(range(1, n), repeat=3))
    out = []

    def consistent() -> bool:
        for x, y, z in triples:
            xy = t[x][y]
            yz = t[y][z]
            if xy < 0 or yz < 0:
                continue
            left = t[xy][z]
            right = t[x][yz]
            if left >= 0 and right >= 0 and left != right:
                return False
        return True

    def fill(i: int):
        if i == len(cells):
            out.append(tuple(tuple(row) for row in t))
            return
        a, b = cells[i]
        for v in range(n):
            t[a][b] = v
            if consistent():
                fill(i + 1)
        t[a][b] = -1

    fill(0)
    return out


def _canonical_table(table) -> tuple[tuple[int, ...], ...]:
    n = len(table)
    best = None
    for perm in permutations(range(1, n)):
        sigma = (0,) + perm
        relabeled = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                relabeled[sigma[a]][sigma[b]] = sigma[table[a][b]]
        cand = tuple(map(tuple, relabeled))
        if best is None or cand < best:
            best = cand
    return best


def is_commutative(M: Monoid) -> bool:
    return center(M) == M.full
