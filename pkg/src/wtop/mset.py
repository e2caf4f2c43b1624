"""The category of finite right M-sets.

An :class:`MSet` is a carrier ``0..size-1`` with an action table
``act[x][m] = x.m``.  Maps, sub-M-sets and congruences are value objects
that validate their invariants on construction.  The subobject classifier
is :class:`Omega`, whose elements are the right ideals of the monoid.
"""

from __future__ import annotations

from functools import cached_property, lru_cache
from itertools import permutations, product as cartesian
from typing import Iterable, Iterator, Sequence

from .errors import GuardExceeded, MSetError
from .monoid import Monoid, enumerate_right_ideals, subset_key, union_closure

DEFAULT_MAX_ASSIGNMENTS = 10**6


class MSet:
    """A finite set with a right action of ``monoid``."""

    def __init__(self, monoid: Monoid, act: Sequence[Sequence[int]], names: Sequence[str] | None = None):
        self.monoid = monoid
        self.act = tuple(tuple(row) for row in act)
        if names:
            self.names = tuple(str(n) for n in names)
        else:
            self.names = tuple(str(i) for i in range(len(self.act)))
        _check_action(monoid, self.act, self.names)
        self._hash = hash((monoid, self.act))

    @property
    def size(self) -> int:
        return len(self.act)

    @property
    def elements(self) -> range:
        return range(len(self.act))

    def __len__(self):
        return len(self.act)

    def __eq__(self, other):
        if not isinstance(other, MSet):
            return NotImplemented
        return self._hash == other._hash and self.monoid == other.monoid and self.act == other.act

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"MSet(size={self.size}, names={self.names!r})"

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no carrier element named {name!r}") from None

    def orbit(self, x: int) -> frozenset:
        """The sub-M-set generated by ``x``."""
        return frozenset(self.act[x])

    @cached_property
    def orbits(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(row) for row in self.act)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A minimal generating set: one element per maximal orbit."""
        orbits = self.orbits
        gens = []
        chosen: set[frozenset] = set()
        for x in self.elements:
            ox = orbits[x]
            if ox in chosen:
                continue
            if any(x in orbits[y] and orbits[y] != ox for y in self.elements):
                continue
            gens.append(x)
            chosen.add(ox)
        return tuple(gens)

    def fixed_points(self) -> list[int]:
        return [x for x in self.elements if all(y == x for y in self.act[x])]

    def closed_under_action(self, subset: Iterable[int]) -> bool:
        subset = frozenset(subset)
        return all(y in subset for x in subset for y in self.act[x])


def _check_action(M: Monoid, act, names):
    n = len(act)
    if len(names) != n:
        raise MSetError(f"{len(names)} names for carrier of size {n}")
    if len(set(names)) != n:
        raise MSetError("carrier names must be distinct")
    for x, row in enumerate(act):
        if len(row) != M.order:
            raise MSetError(f"action row of {names[x]} has {len(row)} entries, expected {M.order}")
        for m, y in enumerate(row):
            if not (isinstance(y, int) and 0 <= y < n):
                raise MSetError(f"{names[x]}.{M.names[m]} = {y!r} is out of range")
        if row[M.identity] != x:
            raise MSetError(f"identity does not fix {names[x]}")
    mult = M.mult
    for x in range(n):
        row = act[x]
        for a in M.elements:
            ra = act[row[a]]
            ma = mult[a]
            for b in M.elements:
                if ra[b] != row[ma[b]]:
                    raise MSetError(
                        f"({names[x]}.{M.names[a]}).{M.names[b]} != {names[x]}.({M.names[a]}{M.names[b]})"
                    )


class MMap:
    """An equivariant map ``source -> target``."""

    def __init__(self, source: MSet, target: MSet, table: Sequence[int]):
        if source.monoid != target.monoid:
            raise MSetError("source and target are over different monoids")
        self.source = source
        self.target = target
        self.table = tuple(table)
        if len(self.table) != source.size:
            raise MSetError(f"map table has {len(self.table)} entries, source has {source.size}")
        for x, y in enumerate(self.table):
            if not (isinstance(y, int) and 0 <= y < target.size):
                raise MSetError(f"image of {source.names[x]} out of range")
        for x in source.elements:
            fx = target.act[self.table[x]]
            for m in source.monoid.elements:
                if self.table[source.act[x][m]] != fx[m]:
                    raise MSetError(
                        f"not equivariant at ({source.names[x]}, {source.monoid.names[m]})"
                    )

    def __call__(self, x: int) -> int:
        return self.table[x]

    def __eq__(self, other):
        if not isinstance(other, MMap):
            return NotImplemented
        return self.table == other.table and self.source == other.source and self.target == other.target

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"MMap({self.table!r})"

    def then(self, other: "MMap") -> "MMap":
        """``other`` after ``self``."""
        if self.target != other.source:
            raise MSetError("maps are not composable")
        return MMap(self.source, other.target, [other.table[y] for y in self.table])

    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    def is_surjective(self) -> bool:
        return set(self.table) == set(self.target.elements)

    def image(self) -> "SubMSet":
        return SubMSet(self.target, self.table)


def identity_map(E: MSet) -> MMap:
    return MMap(E, E, list(E.elements))


class SubMSet:
    """An action-closed subset of ``ambient``."""

    def __init__(self, ambient: MSet, elements: Iterable[int]):
        self.ambient = ambient
        self.elements = frozenset(elements)
        for x in self.elements:
            if not 0 <= x < ambient.size:
                raise MSetError(f"{x!r} is not an element of the ambient M-set")
        if not ambient.closed_under_action(self.elements):
            raise MSetError("subset is not closed under the action")

    def __contains__(self, x):
        return x in self.elements

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(sorted(self.elements))

    def __eq__(self, other):
        if not isinstance(other, SubMSet):
            return NotImplemented
        return self.elements == other.elements and self.ambient == other.ambient

    def __hash__(self):
        return hash(self.elements)

    def __le__(self, other: "SubMSet") -> bool:
        return self.elements <= other.elements

    def __lt__(self, other: "SubMSet") -> bool:
        return self.elements < other.elements

    def __and__(self, other: "SubMSet") -> "SubMSet":
        return SubMSet(self.ambient, self.elements & other.elements)

    def __or__(self, other: "SubMSet") -> "SubMSet":
        return SubMSet(self.ambient, self.elements | other.elements)

    def __repr__(self):
        return "SubMSet({" + ", ".join(self.ambient.names[x] for x in sorted(self.elements)) + "})"

    def names(self) -> list[str]:
        return [self.ambient.names[x] for x in sorted(self.elements)]

    def is_full(self) -> bool:
        return len(self.elements) == self.ambient.size

    @cached_property
    def _restriction(self) -> tuple[MSet, MMap]:
        members = sorted(self.elements)
        pos = {x: i for i, x in enumerate(members)}
        A = self.ambient
        act = [[pos[A.act[x][m]] for m in A.monoid.elements] for x in members]
        sub = MSet(A.monoid, act, [A.names[x] for x in members])
        return sub, MMap(sub, A, members)

    def as_mset(self) -> MSet:
        """The subobject as a standalone M-set (restricted action)."""
        return self._restriction[0]

    def inclusion(self) -> MMap:
        return self._restriction[1]


def sub_from_names(E: MSet, names: Iterable[str]) -> SubMSet:
    return SubMSet(E, (E.index(n) for n in names))


# -- standard objects -------------------------------------------------------


def regular_act(M: Monoid) -> MSet:
    """``M`` acting on itself by right multiplication."""
    return MSet(M, M.mult, M.names)


def terminal(M: Monoid) -> MSet:
    return MSet(M, [[0] * M.order], ["*"])


def empty_mset(M: Monoid) -> MSet:
    return MSet(M, [])


def trivial_action(M: Monoid, size: int, names=None) -> MSet:
    return MSet(M, [[x] * M.order for x in range(size)], names)


class Omega(MSet):
    """The subobject classifier: right ideals ``K`` with ``K.m = {n : mn in K}``."""

    def __init__(self, monoid: Monoid):
        ideals = enumerate_right_ideals(monoid)
        index = {K: i for i, K in enumerate(ideals)}
        mult = monoid.mult
        act = [
            [index[frozenset(n for n in monoid.elements if mult[m][n] in K)] for m in monoid.elements]
            for K in ideals
        ]
        names = ["{" + ",".join(monoid.subset_names(K)) + "}" for K in ideals]
        super().__init__(monoid, act, names)
        self.ideals: tuple[frozenset, ...] = tuple(ideals)
        self.ideal_index: dict[frozenset, int] = index
        self.top = index[monoid.full]
        self.bottom = index[frozenset()]

    def __repr__(self):
        return f"Omega({self.names!r})"

    def idx(self, ideal: Iterable[int]) -> int:
        try:
            return self.ideal_index[frozenset(ideal)]
        except KeyError:
            raise MSetError(f"{set(ideal)!r} is not a right ideal") from None

    def ideal(self, i: int) -> frozenset:
        return self.ideals[i]

    @cached_property
    def leq_table(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(tuple(K <= L for L in self.ideals) for K in self.ideals)

    def leq(self, i: int, k: int) -> bool:
        return self.leq_table[i][k]

    @cached_property
    def meet_table(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.ideal_index[K & L] for L in self.ideals) for K in self.ideals)

    @cached_property
    def join_table(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.ideal_index[K | L] for L in self.ideals) for K in self.ideals)

    @cached_property
    def heyting_table(self) -> tuple[tuple[int, ...], ...]:
        # K => L = {m : K.m <= L.m}
        rows = []
        for i in self.elements:
            row = []
            for k in self.elements:
                members = frozenset(
                    m for m in self.monoid.elements
                    if self.ideals[self.act[i][m]] <= self.ideals[self.act[k][m]]
                )
                row.append(self.ideal_index[members])
            rows.append(tuple(row))
        return tuple(rows)

    @cached_property
    def negation_table(self) -> tuple[int, ...]:
        return tuple(self.heyting_table[i][self.bottom] for i in self.elements)

    def global_elements(self) -> list[int]:
        return self.fixed_points()


@lru_cache(maxsize=None)
def omega(M: Monoid) -> Omega:
    return Omega(M)


# -- limits and colimits ----------------------------------------------------


class Product(MSet):
    """Binary product with row-major pairing ``(x, y) -> x*|Y| + y``."""

    def __init__(self, left: MSet, right: MSet):
        if left.monoid != right.monoid:
            raise MSetError("factors are over different monoids")
        M = left.monoid
        ny = right.size
        act = [
            [left.act[x][m] * ny + right.act[y][m] for m in M.elements]
            for x in left.elements for y in right.elements
        ]
        names = [f"({a},{b})" for a in left.names for b in right.names]
        super().__init__(M, act, names)
        self.left = left
        self.right = right

    def pair(self, x: int, y: int) -> int:
        return x * self.right.size + y

    def split(self, p: int) -> tuple[int, int]:
        return divmod(p, self.right.size)

    @cached_property
    def proj1(self) -> MMap:
        return MMap(self, self.left, [self.split(p)[0] for p in self.elements])

    @cached_property
    def proj2(self) -> MMap:
        return MMap(self, self.right, [self.split(p)[1] for p in self.elements])

    def diagonal(self) -> SubMSet:
        if self.left != self.right:
            raise MSetError("diagonal needs equal factors")
        return SubMSet(self, (self.pair(x, x) for x in self.left.elements))

    def relation(self, pairs: Iterable[tuple[int, int]]) -> SubMSet:
        return SubMSet(self, (self.pair(x, y) for x, y in pairs))

    def pairs(self, sub: SubMSet) -> set[tuple[int, int]]:
        return {self.split(p) for p in sub.elements}


def product(X: MSet, Y: MSet) -> Product:
    return Product(X, Y)


def pairing(f: MMap, g: MMap, target: Product | None = None) -> MMap:
    if f.source != g.source:
        raise MSetError("pairing needs a common source")
    P = target or Product(f.target, g.target)
    return MMap(f.source, P, [P.pair(f.table[x], g.table[x]) for x in f.source.elements])


def product_map(f: MMap, g: MMap, source: Product | None = None, target: Product | None = None) -> MMap:
    """``f x g`` between products."""
    S = source or Product(f.source, g.source)
    T = target or Product(f.target, g.target)
    table = []
    for p in S.elements:
        a, b = S.split(p)
        table.append(T.pair(f.table[a], g.table[b]))
    return MMap(S, T, table)


def equalizer(f: MMap, g: MMap) -> SubMSet:
    if f.source != g.source or f.target != g.target:
        raise MSetError("equalizer needs parallel maps")
    return SubMSet(f.source, (x for x in f.source.elements if f.table[x] == g.table[x]))


def image_factorization(f: MMap) -> tuple[MMap, SubMSet]:
    """``f = inclusion . epi`` with the image as a sub-M-set of the target."""
    im = f.image()
    sub, _ = im.as_mset(), im.inclusion()
    pos = {x: i for i, x in enumerate(sorted(im.elements))}
    epi = MMap(f.source, sub, [pos[y] for y in f.table])
    return epi, im


def inverse_image(f: MMap, A: SubMSet) -> SubMSet:
    if A.ambient != f.target:
        raise MSetError("subobject does not live in the target")
    return SubMSet(f.source, (x for x in f.source.elements if f.table[x] in A.elements))


def graph(f: MMap, P: Product | None = None) -> SubMSet:
    P = P or Product(f.source, f.target)
    return SubMSet(P, (P.pair(x, f.table[x]) for x in f.source.elements))


def kernel_pair(f: MMap, P: Product | None = None) -> SubMSet:
    """``{(a, b) : f(a) = f(b)}`` inside ``source x source``."""
    P = P or Product(f.source, f.source)
    return SubMSet(
        P,
        (P.pair(a, b) for a in f.source.elements for b in f.source.elements if f.table[a] == f.table[b]),
    )


class Congruence:
    """An equivariant equivalence relation, stored as canonical class labels
    (classes numbered by first occurrence)."""

    def __init__(self, ambient: MSet, labels: Sequence[int]):
        if len(labels) != ambient.size:
            raise MSetError("one label per carrier element is required")
        relabel: dict[int, int] = {}
        canon = []
        for c in labels:
            if c not in relabel:
                relabel[c] = len(relabel)
            canon.append(relabel[c])
        self.ambient = ambient
        self.labels = tuple(canon)
        act = ambient.act
        for x in ambient.elements:
            for y in ambient.elements:
                if x < y and self.labels[x] == self.labels[y]:
                    for m in ambient.monoid.elements:
                        if self.labels[act[x][m]] != self.labels[act[y][m]]:
                            raise MSetError("relation is not compatible with the action")

    def __eq__(self, other):
        if not isinstance(other, Congruence):
            return NotImplemented
        return self.labels == other.labels and self.ambient == other.ambient

    def __hash__(self):
        return hash(self.labels)

    def related(self, x: int, y: int) -> bool:
        return self.labels[x] == self.labels[y]

    @property
    def num_classes(self) -> int:
        return max(self.labels, default=-1) + 1

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_classes)]
        for x, c in enumerate(self.labels):
            out[c].append(x)
        return out

    def pairs(self) -> set[tuple[int, int]]:
        return {(x, y) for x in self.ambient.elements for y in self.ambient.elements if self.related(x, y)}

    def is_discrete(self) -> bool:
        return self.num_classes == self.ambient.size


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def congruence_generated(E: MSet, pairs: Iterable[tuple[int, int]]) -> Congruence:
    """Smallest congruence containing ``pairs`` (union-find, then propagate
    merges along the action until stable)."""
    parent = list(E.elements)
    pending = list(pairs)
    while pending:
        x, y = pending.pop()
        rx, ry = _find(parent, x), _find(parent, y)
        if rx == ry:
            continue
        parent[max(rx, ry)] = min(rx, ry)
        for m in E.monoid.elements:
            pending.append((E.act[x][m], E.act[y][m]))
    return Congruence(E, [_find(parent, x) for x in E.elements])


def is_congruence(E: MSet, pairs: set[tuple[int, int]]) -> bool:
    """Whether a relation given as a set of pairs is an equivariant equivalence."""
    elems = E.elements
    if any((x, x) not in pairs for x in elems):
        return False
    for x, y in pairs:
        if (y, x) not in pairs:
            return False
        for m in E.monoid.elements:
            if (E.act[x][m], E.act[y][m]) not in pairs:
                return False
    for x, y in pairs:
        for z in elems:
            if (y, z) in pairs and (x, z) not in pairs:
                return False
    return True


def quotient(E: MSet, theta: Congruence) -> tuple[MSet, MMap]:
    if theta.ambient != E:
        raise MSetError("congruence lives on a different M-set")
    classes = theta.classes()
    act = [[theta.labels[E.act[cls[0]][m]] for m in E.monoid.elements] for cls in classes]
    names = ["[" + ",".join(E.names[x] for x in cls) + "]" for cls in classes]
    Q = MSet(E.monoid, act, names)
    return Q, MMap(E, Q, theta.labels)


def kernel_congruence(f: MMap) -> Congruence:
    return Congruence(f.source, f.table)


def enumerate_congruences(E: MSet) -> list[Congruence]:
    """All congruences, by brute force over set partitions."""
    out = []
    for labels in _partitions(E.size):
        try:
            out.append(Congruence(E, labels))
        except MSetError:
            pass
    return out


def _partitions(n: int) -> Iterator[list[int]]:
    def rec(prefix, k):
        if len(prefix) == n:
            yield list(prefix)
            return
        for c in range(k + 1):
            prefix.append(c)
            yield from rec(prefix, max(k, c + 1))
            prefix.pop()

    if n == 0:
        yield []
    else:
        yield from rec([], 0)


# -- hom-sets and exponentials ----------------------------------------------


def hom_tables(X: MSet, Y: MSet, max_assignments: int = DEFAULT_MAX_ASSIGNMENTS) -> list[tuple[int, ...]]:
    """Tables of all equivariant maps ``X -> Y``, sorted.

    Backtracks over the images of a minimal generating set of ``X``;
    choosing the image of a generator forces its whole orbit.
    """
    if X.monoid != Y.monoid:
        raise MSetError("hom-set between M-sets over different monoids")
    gens = X.generators
    f = [-1] * X.size
    out: list[tuple[int, ...]] = []
    nodes = 0
    mrange = X.monoid.elements
    xact, yact = X.act, Y.act

    def rec(i: int):
        nonlocal nodes
        if i == len(gens):
            out.append(tuple(f))
            return
        g = gens[i]
        grow = xact[g]
        for y in Y.elements:
            nodes += 1
            if nodes > max_assignments:
                raise GuardExceeded(
                    f"hom-set search exceeded {max_assignments} candidate assignments"
                )
            yrow = yact[y]
            changed = []
            ok = True
            for m in mrange:
                x2 = grow[m]
                v = yrow[m]
                cur = f[x2]
                if cur < 0:
                    f[x2] = v
                    changed.append(x2)
                elif cur != v:
                    ok = False
                    break
            if ok:
                rec(i + 1)
            for x2 in changed:
                f[x2] = -1

    rec(0)
    out.sort()
    return out


def hom_set(X: MSet, Y: MSet, max_assignments: int = DEFAULT_MAX_ASSIGNMENTS) -> list[MMap]:
    return [MMap(X, Y, t) for t in hom_tables(X, Y, max_assignments)]


class Exponential(MSet):
    """``Y^X``: equivariant maps ``g : M x X -> Y`` (``M`` the regular act),
    with ``(g.m)(n, x) = g(mn, x)`` and evaluation ``ev(g, x) = g(1, x)``."""

    def __init__(self, base: MSet, codomain: MSet, max_assignments: int = DEFAULT_MAX_ASSIGNMENTS):
        M = base.monoid
        domain = Product(regular_act(M), base)
        maps = hom_tables(domain, codomain, max_assignments)
        index = {t: i for i, t in enumerate(maps)}
        act = []
        for g in maps:
            row = []
            for m in M.elements:
                moved = tuple(
                    g[domain.pair(M.mult[m][n], x)] for n in M.elements for x in base.elements
                )
                row.append(index[moved])
            act.append(row)
        super().__init__(M, act, [f"e{i}" for i in range(len(maps))])
        self.base = base
        self.codomain = codomain
        self.domain = domain
        self.maps: tuple[tuple[int, ...], ...] = tuple(maps)
        self.map_index = index

    def __repr__(self):
        return f"Exponential(size={self.size})"

    def evaluate(self, element: int, m: int, x: int) -> int:
        return self.maps[element][self.domain.pair(m, x)]

    def ev(self, element: int, x: int) -> int:
        return self.evaluate(element, self.base.monoid.identity, x)

    def ev_map(self, P: Product | None = None) -> MMap:
        P = P or Product(self, self.base)
        table = []
        for p in P.elements:
            g, x = P.split(p)
            table.append(self.ev(g, x))
        return MMap(P, self.codomain, table)

    def element_of(self, table: Sequence[int]) -> int:
        return self.map_index[tuple(table)]

    def transpose(self, f: MMap) -> MMap:
        """For ``f : Z x X -> Y`` the unique ``h : Z -> Y^X`` with
        ``ev(h(z), x) = f(z, x)``."""
        P = f.source
        if not isinstance(P, Product) or P.right != self.base or f.target != self.codomain:
            raise MSetError("transpose needs a map Z x X -> Y matching the exponential")
        Z = P.left
        M = self.monoid
        table = []
        for z in Z.elements:
            g = tuple(
                f.table[P.pair(Z.act[z][n], x)] for n in M.elements for x in self.base.elements
            )
            table.append(self.map_index[g])
        return MMap(Z, self, table)

    def postcompose(self, h: MMap, target: "Exponential") -> MMap:
        """``h^X : Y^X -> Y'^X`` for ``h : Y -> Y'``."""
        table = [target.map_index[tuple(h.table[v] for v in g)] for g in self.maps]
        return MMap(self, target, table)


def exponential(X: MSet, Y: MSet, max_assignments: int = DEFAULT_MAX_ASSIGNMENTS) -> Exponential:
    """The exponential ``Y^X``."""
    return Exponential(X, Y, max_assignments)


def transpose(f: MMap, exp: Exponential | None = None) -> MMap:
    if exp is None:
        P = f.source
        if not isinstance(P, Product):
            raise MSetError("transpose needs a map out of a product")
        exp = Exponential(P.right, f.target)
    return exp.transpose(f)


# -- classifier maps ----------------------------------------------------------


def char_map(A: SubMSet) -> MMap:
    """``b -> {m : b.m in A}``."""
    E = A.ambient
    Om = omega(E.monoid)
    table = [Om.idx(m for m in E.monoid.elements if E.act[b][m] in A.elements) for b in E.elements]
    return MMap(E, Om, table)


def subobject_from_char(f: MMap) -> SubMSet:
    Om = f.target
    if not isinstance(Om, Omega):
        raise MSetError("characteristic maps land in Omega")
    return SubMSet(f.source, (b for b in f.source.elements if f.table[b] == Om.top))


def delta_map(E: MSet, P: Product | None = None) -> MMap:
    """Characteristic map of the diagonal: ``(a, b) -> {m : a.m = b.m}``."""
    P = P or Product(E, E)
    Om = omega(E.monoid)
    table = []
    for p in P.elements:
        a, b = P.split(p)
        table.append(Om.idx(m for m in E.monoid.elements if E.act[a][m] == E.act[b][m]))
    return MMap(P, Om, table)


def singleton_map(E: MSet, max_assignments: int = DEFAULT_MAX_ASSIGNMENTS) -> tuple[MMap, Exponential]:
    """The transpose ``E -> Omega^E`` of the diagonal's characteristic map."""
    Om = omega(E.monoid)
    exp = Exponential(E, Om, max_assignments)
    return exp.transpose(delta_map(E)), exp


def meet_arrow(Om: Omega) -> MMap:
    P = Product(Om, Om)
    return MMap(P, Om, [Om.meet_table[a][b] for a in Om.elements for b in Om.elements])


def join_arrow(Om: Omega) -> MMap:
    P = Product(Om, Om)
    return MMap(P, Om, [Om.join_table[a][b] for a in Om.elements for b in Om.elements])


def heyting_arrow(Om: Omega) -> MMap:
    P = Product(Om, Om)
    return MMap(P, Om, [Om.heyting_table[a][b] for a in Om.elements for b in Om.elements])


def negation(Om: Omega) -> MMap:
    return MMap(Om, Om, Om.negation_table)


# -- enumerations -------------------------------------------------------------


def enumerate_sub_msets(E: MSet) -> list[SubMSet]:
    family = union_closure(E.orbits)
    return [SubMSet(E, s) for s in sorted(family, key=lambda s: subset_key(s, E.size))]


def enumerate_msets(M: Monoid, max_size: int, min_size: int = 0, up_to_iso: bool = True) -> Iterator[MSet]:
    """All M-sets with carrier ``0..n-1``, ``min_size <= n <= max_size``.

    The action of each generator of ``M`` is chosen among the maps that
    respect the relations of the cyclic submonoid it generates; the rest of
    the table follows from ``M.words`` and the full action law is then
    checked.  With ``up_to_iso`` one canonical representative per
    isomorphism class is produced.
    """
    for n in range(min_size, max_size + 1):
        tables = _action_tables(M, n)
        if up_to_iso:
            tables = sorted({_canonical_action(t) for t in tables})
        for t in tables:
            yield MSet(M, t)


def _power_relation(M: Monoid, g: int) -> tuple[int, int]:
    """Smallest ``i < j`` with ``g^i = g^j`` (powers start at ``g^1``)."""
    seen = {}
    p, k = g, 1
    while p not in seen:
        seen[p] = k
        p = M.mult[p][g]
        k += 1
    return seen[p], k


def _action_tables(M: Monoid, n: int) -> list[tuple[tuple[int, ...], ...]]:
    if n == 0:
        return [()]
    gens = M.generators
    words = M.words
    order = _bfs_order(M)
    candidates = []
    for g in gens:
        i, j = _power_relation(M, g)
        good = []
        for f in cartesian(range(n), repeat=n):
            if all(_iterate(f, x, i) == _iterate(f, x, j) for x in range(n)):
                good.append(f)
        candidates.append(good)
    gen_pos = {g: k for k, g in enumerate(gens)}
    out = []
    mult = M.mult
    for choice in cartesian(*candidates):
        act = [[0] * M.order for _ in range(n)]
        for x in range(n):
            row = act[x]
            row[M.identity] = x
            for m in order:
                prefix, g = words[m]
                row[m] = choice[gen_pos[g]][row[prefix]]
        ok = True
        for x in range(n):
            row = act[x]
            for a in M.elements:
                ra = act[row[a]]
                ma = mult[a]
                for b in M.elements:
                    if ra[b] != row[ma[b]]:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            out.append(tuple(map(tuple, act)))
    return out


def _iterate(f, x, k):
    for _ in range(k):
        x = f[x]
    return x


def _bfs_order(M: Monoid) -> list[int]:
    order = []
    frontier = [M.identity]
    seen = {M.identity}
    while frontier:
        nxt = []
        for m in frontier:
            for g in M.generators:
                p = M.mult[m][g]
                if p not in seen:
                    seen.add(p)
                    order.append(p)
                    nxt.append(p)
        frontier = nxt
    return order


def _canonical_action(act) -> tuple[tuple[int, ...], ...]:
    n = len(act)
    best = None
    for sigma in permutations(range(n)):
        relabeled = [None] * n
        for x in range(n):
            relabeled[sigma[x]] = tuple(sigma[y] for y in act[x])
        cand = tuple(relabeled)
        if best is None or cand < best:
            best = cand
    return best


def is_isomorphic(X: MSet, Y: MSet) -> bool:
    if X.monoid != Y.monoid or X.size != Y.size:
        return False
    return _canonical_action(X.act) == _canonical_action(Y.act)
