"""Exhaustive subgroup lattices of small permutation groups."""

from __future__ import annotations

import heapq
import logging
from math import gcd

import numpy as np

from .permcore import DEFAULT_MAX_DEGREE, DEFAULT_MAX_ORDER, PermGroup, Permutation
from .table import ElementTable

log = logging.getLogger(__name__)


class NotNormal(ValueError):
    pass


class QuotientTooLarge(Exception):
    """Coset action would exceed the degree cap."""


class Subgroup:
    """A subgroup of a lattice's parent, stored as sorted element ranks."""

    __slots__ = ("lattice", "members", "generator_ranks", "index", "_mask")

    def __init__(self, lattice: "Lattice", members: np.ndarray, generator_ranks, index: int = -1):
        members = np.asarray(members, dtype=np.int32)
        members.flags.writeable = False
        self.lattice = lattice
        self.members = members
        self.generator_ranks = tuple(int(g) for g in generator_ranks)
        self.index = index
        self._mask = None
        n = lattice.table.size
        if members.size == 0 or members[0] != 0:
            raise ValueError("subgroup must contain the identity")
        if n % members.size:
            raise ValueError(f"subgroup order {members.size} does not divide {n}")
        if self.generator_ranks:
            m = self.mask
            if not m[list(self.generator_ranks)].all():
                raise ValueError("generators are not members")
            prod = lattice.table.mul(members[:, None], np.asarray(self.generator_ranks)[None, :])
            if not m[prod].all():
                raise ValueError("member set is not closed under multiplication")
        elif members.size != 1:
            raise ValueError("non-trivial subgroup without generators")

    @property
    def parent(self) -> PermGroup:
        return self.lattice.group

    @property
    def member_ranks(self) -> np.ndarray:
        return self.members

    @property
    def order(self) -> int:
        return int(self.members.size)

    @property
    def key(self) -> bytes:
        return self.members.tobytes()

    @property
    def mask(self) -> np.ndarray:
        if self._mask is None:
            m = np.zeros(self.lattice.table.size, dtype=bool)
            m[self.members] = True
            self._mask = m
        return self._mask

    def __contains__(self, rank) -> bool:
        return bool(self.mask[int(rank)])

    def issubset(self, other: "Subgroup") -> bool:
        if self.index >= 0 and other.index >= 0:
            return bool(self.lattice.contain[self.index, other.index])
        return bool(other.mask[self.members].all())

    def elements(self) -> list[Permutation]:
        return [self.lattice.table.element(int(r)) for r in self.members]

    def generators(self) -> list[Permutation]:
        return [self.lattice.table.element(r) for r in self.generator_ranks]

    def as_group(self) -> PermGroup:
        G = self.parent
        return PermGroup(G.degree, self.generators())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.lattice is other.lattice and np.array_equal(self.members, other.members)

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"<Subgroup #{self.index} order={self.order}>"


class Lattice:
    """All subgroups of ``group`` with the containment order and conjugacy classes.

    Subgroups are sorted by order, then by member ranks; index 0 is the
    trivial subgroup and the last index is the whole group.
    """

    def __init__(self, group: PermGroup, table: ElementTable, found: list[tuple], classes: list[list[int]]):
        self.group = group
        self.table = table
        order = sorted(range(len(found)), key=lambda i: (found[i][0].size, tuple(found[i][0])))
        pos = {old: new for new, old in enumerate(order)}
        self.subgroups: list[Subgroup] = []
        for new, old in enumerate(order):
            members, gens = found[old]
            self.subgroups.append(Subgroup(self, members, gens, new))
        self._by_key = {s.key: s.index for s in self.subgroups}
        self.class_of = np.empty(len(order), dtype=np.int64)
        cls = sorted(sorted(pos[i] for i in c) for c in classes)
        self.conj_classes: list[list[int]] = cls
        for cid, members in enumerate(cls):
            self.class_of[members] = cid
        self.orders = np.array([s.order for s in self.subgroups], dtype=np.int64)
        self._build_order()

    def _build_order(self) -> None:
        S, N = len(self.subgroups), self.table.size
        masks = np.zeros((S, N), dtype=bool)
        for s in self.subgroups:
            masks[s.index, s.members] = True
        contain = np.zeros((S, S), dtype=bool)
        for s in self.subgroups:
            if s.generator_ranks:
                contain[s.index] = masks[:, list(s.generator_ranks)].all(axis=1)
            else:
                contain[s.index] = True
        self.contain = contain
        strict = contain & ~np.eye(S, dtype=bool)
        f = strict.astype(np.float32)
        two_step = (f @ f) > 0
        self.cover = strict & ~two_step
        ii, jj = np.nonzero(self.cover)
        self.hasse = [(int(i), int(j)) for i, j in zip(ii, jj)]

    # lookups -------------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.subgroups)

    def __iter__(self):
        return iter(self.subgroups)

    def __getitem__(self, i: int) -> Subgroup:
        return self.subgroups[i]

    @property
    def parent(self) -> PermGroup:
        return self.group

    @property
    def trivial(self) -> Subgroup:
        return self.subgroups[0]

    @property
    def whole(self) -> Subgroup:
        return self.subgroups[-1]

    def find(self, members) -> Subgroup:
        members = np.sort(np.asarray(members, dtype=np.int32))
        try:
            return self.subgroups[self._by_key[members.tobytes()]]
        except KeyError:
            raise LookupError("member set is not a subgroup in this lattice") from None

    def below(self, H: Subgroup) -> list[Subgroup]:
        return [self.subgroups[i] for i in np.flatnonzero(self.contain[:, H.index])]

    def above(self, H: Subgroup) -> list[Subgroup]:
        return [self.subgroups[i] for i in np.flatnonzero(self.contain[H.index])]

    def lower_covers(self, H: Subgroup) -> list[Subgroup]:
        return [self.subgroups[i] for i in np.flatnonzero(self.cover[:, H.index])]

    def normal_subgroups(self) -> list[Subgroup]:
        """Subgroups normal in the parent: exactly the singleton conjugacy classes."""
        return [self.subgroups[c[0]] for c in self.conj_classes if len(c) == 1]

    def generate(self, ranks) -> Subgroup:
        return self.find(self.table.generate(ranks))


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _cyclic_seeds(T: ElementTable) -> list[np.ndarray]:
    N = T.size
    seen = np.zeros(N, dtype=bool)
    seen[0] = True
    out = []
    for g in range(1, N):
        if seen[g]:
            continue
        powers = [0]
        x = g
        while x != 0:
            powers.append(x)
            x = T.mul1(x, g)
        k = len(powers)
        for e in range(1, k):
            if gcd(e, k) == 1:
                seen[powers[e]] = True
        out.append((g, np.sort(np.array(powers, dtype=np.int32))))
    return out


def enumerate_subgroups(G: PermGroup, cap: int = DEFAULT_MAX_ORDER, table: ElementTable | None = None) -> Lattice:
    """Every subgroup of ``G``.

    Seeds are the trivial subgroup, all cyclic subgroups and ``G``; joins
    ``<H, c>`` are formed until nothing new appears.  Joins are evaluated for
    one representative per conjugacy class (every conjugate is registered
    with it) and for one ``c`` per double coset ``HcH``, both of which leave
    the set of joins unchanged.  A join that outgrows every proper subgroup
    order compatible with Lagrange is the whole group.
    """
    cached = G._cache.get(("lattice", cap))
    if cached is not None and table is None:
        return cached
    T = table or ElementTable(G, cap)
    N = T.size
    divs = _divisors(N)
    found: list[tuple[np.ndarray, tuple]] = []
    index: dict[bytes, int] = {}
    classes: list[list[int]] = []
    heap: list[tuple[int, int]] = []

    def register(members: np.ndarray, gens: tuple) -> None:
        key = members.tobytes()
        if key in index:
            return
        cls = []
        queue = [(members, gens)]
        index[key] = len(found)
        found.append((members, gens))
        cls.append(len(found) - 1)
        while queue:
            m, g = queue.pop()
            for x in T.gens:
                m2 = np.sort(T.conjugate(m, x)).astype(np.int32)
                k2 = m2.tobytes()
                if k2 not in index:
                    g2 = tuple(int(v) for v in T.conjugate(np.asarray(g, dtype=np.int64), x)) if g else ()
                    index[k2] = len(found)
                    found.append((m2, g2))
                    cls.append(len(found) - 1)
                    queue.append((m2, g2))
        classes.append(cls)
        heapq.heappush(heap, (members.size, cls[0]))

    register(np.zeros(1, dtype=np.int32), ())
    for g, members in _cyclic_seeds(T):
        register(members, (g,))
    register(np.arange(N, dtype=np.int32), tuple(int(x) for x in T.gens))

    joins = 0
    while heap:
        h, slot = heapq.heappop(heap)
        if h == 1 or h == N:
            continue
        admissible = [d for d in divs if d % h == 0 and h < d < N]
        if not admissible:
            continue
        bound = admissible[-1]
        members, gens = found[slot]
        seen = np.zeros(N, dtype=bool)
        seen[members] = True
        hm = members.astype(np.int64)
        for c in range(N):
            if seen[c]:
                continue
            hc = T.mul(hm, c)
            seen[T.mul(hc[:, None], hm[None, :])] = True
            joins += 1
            K = T.closure(hm, np.array(gens + (c,), dtype=np.int64), bound)
            if K is not None:
                register(K, gens + (c,))
    log.debug("lattice of order %d: %d subgroups, %d joins", N, len(found), joins)
    L = Lattice(G, T, found, classes)
    if table is None:
        G._cache[("lattice", cap)] = L
    return L


def maximal_subgroups_of(L: Lattice, H: Subgroup) -> list[Subgroup]:
    return L.lower_covers(H)


def two_maximals(L: Lattice) -> list[tuple[Subgroup, Subgroup]]:
    """All pairs ``(H, M)`` with ``M`` maximal in the parent and ``H`` maximal in ``M``."""
    pairs = []
    for M in L.lower_covers(L.whole):
        for H in L.lower_covers(M):
            pairs.append((H, M))
    return pairs


def is_normal(L: Lattice, H: Subgroup, in_: Subgroup) -> bool:
    if not H.issubset(in_):
        raise ValueError("subgroup is not contained in the ambient subgroup")
    mask = H.mask
    for x in in_.generator_ranks:
        if not mask[L.table.conjugate(H.members, x)].all():
            return False
    return True


def conjugacy_classes_of_subgroups(L: Lattice) -> list[list[Subgroup]]:
    return [[L.subgroups[i] for i in c] for c in L.conj_classes]


def quotient(G: PermGroup, N: Subgroup, max_degree: int = DEFAULT_MAX_DEGREE) -> PermGroup:
    """``G/N`` as a permutation group on the right cosets of ``N``."""
    L = N.lattice
    T = L.table
    if not is_normal(L, N, L.whole):
        raise NotNormal("quotient needs a normal subgroup")
    index = T.size // N.order
    if index > max_degree:
        raise QuotientTooLarge(f"coset action degree {index} exceeds degree cap {max_degree}")
    label = np.full(T.size, -1, dtype=np.int64)
    reps = []
    nm = N.members.astype(np.int64)
    for g in range(T.size):
        if label[g] >= 0:
            continue
        label[T.mul(nm, g)] = len(reps)
        reps.append(g)
    reps_arr = np.array(reps, dtype=np.int64)
    gens = []
    for x in T.gens:
        img = label[T.mul(reps_arr, int(x))]
        p = Permutation(img)
        if not p.is_identity():
            gens.append(p)
    name = f"{G.name}/{N.order}" if G.name else None
    return PermGroup(index, gens, name=name)


def normal_closure(T: ElementTable, members: np.ndarray, gens: list[int], by: list[int]) -> tuple[np.ndarray, list[int]]:
    """Smallest subgroup containing ``<members>`` and closed under conjugation by ``by``."""
    gens = list(gens)
    members = np.asarray(members, dtype=np.int64)
    changed = True
    while changed:
        changed = False
        mask = np.zeros(T.size, dtype=bool)
        mask[members] = True
        for x in list(gens):
            for y in by:
                z = int(T.conjugate(x, y))
                if not mask[z]:
                    gens.append(z)
                    members = T.closure(members, np.array(gens, dtype=np.int64)).astype(np.int64)
                    mask[members] = True
                    changed = True
    return members, gens


def derived_of(L: Lattice, H: Subgroup) -> Subgroup:
    """Commutator subgroup of ``H``, taken inside ``L``."""
    T = L.table
    g = H.generator_ranks
    comms = [T.commutator(a, b) for i, a in enumerate(g) for b in g[i + 1:]]
    comms = [c for c in comms if c != 0]
    if not comms:
        return L.trivial
    start = T.generate(comms)
    members, _ = normal_closure(T, start, comms, list(g))
    return L.find(members)


def derived_subgroup(G: PermGroup, L: Lattice | None = None) -> Subgroup:
    L = L or enumerate_subgroups(G)
    return derived_of(L, L.whole)
