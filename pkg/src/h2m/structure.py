"""Structural predicates and distinguished subgroups, computed from a lattice."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .arith import PrimePowerFactorization, factorize, is_prime, p_part
from .lattice import (
    Lattice,
    Subgroup,
    derived_of,
    enumerate_subgroups,
    is_normal,
    quotient,
)
from .permcore import DEFAULT_MAX_DEGREE, PermGroup

__all__ = [
    "PrimePowerFactorization", "PropertyViolation", "SigmaTau", "factorize",
    "sigma_tau", "is_hall", "sylow_subgroup", "hall_subgroup", "hall_subgroups",
    "is_elementary_abelian", "is_solvable", "solvable_radical", "is_nilpotent",
    "fitting_subgroup", "sylow_tower", "has_sylow_tower", "is_supersolvable",
    "supersolvable_residual", "gaschutz_subgroups", "huppert_supersolvable",
]


class PropertyViolation(AssertionError):
    """A computed object contradicts a theorem it must satisfy."""


@dataclass(frozen=True)
class SigmaTau:
    sigma: frozenset[int]
    tau: frozenset[int]

    @property
    def pi(self) -> frozenset[int]:
        return self.sigma | self.tau


def _lattice(G: PermGroup, L: Lattice | None) -> Lattice:
    return L if L is not None else enumerate_subgroups(G)


def sigma_tau(G: PermGroup | int) -> SigmaTau:
    n = G if isinstance(G, int) else G.order()
    f = factorize(n)
    return SigmaTau(frozenset(p for p, e in f.items() if e == 1),
                    frozenset(p for p, e in f.items() if e >= 2))


def is_hall(G: PermGroup | int, H: Subgroup | int) -> bool:
    n = G if isinstance(G, int) else G.order()
    h = H if isinstance(H, int) else H.order
    return gcd(h, n // h) == 1


def sylow_subgroup(L: Lattice, p: int) -> Subgroup:
    n = L.table.size
    if n % p:
        raise ValueError(f"{p} does not divide the group order {n}")
    target = p_part(n, p)
    for s in L.subgroups:
        if s.order == target:
            return s
    raise AssertionError(f"lattice has no Sylow {p}-subgroup; enumeration is incomplete")


def hall_subgroups(L: Lattice, primes) -> list[Subgroup]:
    target = factorize(L.table.size).part(primes)
    return [s for s in L.subgroups if s.order == target]


def hall_subgroup(L: Lattice, primes) -> Subgroup | None:
    found = hall_subgroups(L, primes)
    return found[0] if found else None


def _subgroup_of_sub(L: Lattice, H: Subgroup, order: int) -> list[Subgroup]:
    idx = np.flatnonzero(L.contain[:, H.index] & (L.orders == order))
    return [L.subgroups[i] for i in idx]


def is_elementary_abelian(H: Subgroup) -> bool:
    n = H.order
    f = factorize(n) if n > 1 else {}
    if len(f) > 1:
        return False
    if n == 1:
        return True
    (p,) = f
    T = H.lattice.table
    g = H.generator_ranks
    for i, a in enumerate(g):
        for b in g[i + 1:]:
            if T.commutator(a, b) != 0:
                return False
    return bool(np.all(T.power(H.members, p) == 0))


def _is_solvable_sub(L: Lattice, H: Subgroup) -> bool:
    while H.order > 1:
        D = derived_of(L, H)
        if D.order == H.order:
            return False
        H = D
    return True


def is_solvable(G: PermGroup, L: Lattice | None = None) -> bool:
    L = _lattice(G, L)
    return _is_solvable_sub(L, L.whole)


def _is_nilpotent_sub(L: Lattice, H: Subgroup) -> bool:
    n = H.order
    if n == 1:
        return True
    return all(len(_subgroup_of_sub(L, H, p_part(n, p))) == 1 for p in factorize(n))


def is_nilpotent(G: PermGroup, L: Lattice | None = None) -> bool:
    """Every Sylow subgroup is normal, i.e. unique."""
    L = _lattice(G, L)
    return _is_nilpotent_sub(L, L.whole)


def _largest_normal_with(L: Lattice, pred, what: str) -> Subgroup:
    good = [N for N in L.normal_subgroups() if pred(N)]
    best = max(good, key=lambda N: N.order)
    for N in good:
        if not N.issubset(best):
            raise PropertyViolation(f"{what} does not contain every normal {what} subgroup")
    return best


def solvable_radical(L: Lattice) -> Subgroup:
    return _largest_normal_with(L, lambda N: _is_solvable_sub(L, N), "solvable")


def fitting_subgroup(L: Lattice) -> Subgroup:
    return _largest_normal_with(L, lambda N: _is_nilpotent_sub(L, N), "nilpotent")


def sylow_tower(G: PermGroup, L: Lattice | None = None,
                max_degree: int = DEFAULT_MAX_DEGREE) -> list[int] | None:
    """Prime ordering of a Sylow tower, peeling normal Sylow subgroups off
    through quotients; ``None`` when no ordering works.  May raise
    :class:`~h2m.lattice.QuotientTooLarge`.
    """
    L = _lattice(G, L)
    primes = sorted(factorize(L.table.size)) if L.table.size > 1 else []
    if len(primes) <= 1:
        return primes
    normals = {N.order: N for N in L.normal_subgroups()}
    for p in primes:
        P = normals.get(p_part(L.table.size, p))
        if P is None:
            continue
        Q = quotient(G, P, max_degree)
        rest = sylow_tower(Q, None, max_degree)
        if rest is not None:
            return [p] + rest
    return None


def has_sylow_tower(G: PermGroup, L: Lattice | None = None,
                    max_degree: int = DEFAULT_MAX_DEGREE) -> bool:
    return sylow_tower(G, L, max_degree) is not None


def _normal_in(L: Lattice, W: Subgroup) -> list[Subgroup]:
    if W.index == len(L) - 1:
        return L.normal_subgroups()
    return [K for K in L.below(W) if is_normal(L, K, W)]


def _supersolvable_section(L: Lattice, top: Subgroup, bottom: Subgroup,
                           normals: list[Subgroup] | None = None) -> bool:
    """Whether ``top/bottom`` is supersolvable (``bottom`` normal in ``top``).

    Builds a chief series of the quotient from normal subgroups of ``top``
    lying over ``bottom``: each step takes a minimal one strictly above the
    current term and requires a prime index.
    """
    if normals is None:
        normals = _normal_in(L, top)
    over = [K for K in normals if bottom.issubset(K)]
    cur = bottom
    while cur.order != top.order:
        above = [K for K in over if cur.issubset(K) and K.order > cur.order]
        nxt = min(above, key=lambda K: (K.order, K.index))
        if not is_prime(nxt.order // cur.order):
            return False
        cur = nxt
    return True


def is_supersolvable(G: PermGroup, L: Lattice | None = None) -> bool:
    L = _lattice(G, L)
    return _supersolvable_section(L, L.whole, L.trivial)


def huppert_supersolvable(L: Lattice) -> bool:
    """Independent criterion: every maximal subgroup has prime index."""
    n = L.table.size
    return all(is_prime(n // M.order) for M in L.lower_covers(L.whole))


def supersolvable_residual(G: PermGroup, L: Lattice | None = None) -> Subgroup:
    L = _lattice(G, L)
    normals = L.normal_subgroups()
    good = [N for N in normals if _supersolvable_section(L, L.whole, N, normals)]
    mask = np.ones(L.table.size, dtype=bool)
    for N in good:
        mask &= N.mask
    meet = L.find(np.flatnonzero(mask))
    smallest = min(good, key=lambda N: (N.order, N.index))
    if smallest != meet or not all(smallest.issubset(N) for N in good):
        raise PropertyViolation("supersolvable residual is not the minimum qualifying normal subgroup")
    return smallest


def _prime_index_matrix(L: Lattice) -> np.ndarray:
    cached = getattr(L, "_prime_index", None)
    if cached is None:
        ratio = L.orders[None, :] // L.orders[:, None]
        prime_ratio = np.zeros_like(L.contain)
        for r in np.unique(ratio[L.contain]):
            if is_prime(int(r)):
                prime_ratio |= ratio == r
        cached = L.contain & prime_ratio
        L._prime_index = cached
    return cached


def gaschutz_subgroups(L: Lattice) -> list[Subgroup]:
    """Supersolvable ``W`` such that no ``W <= A < B`` has prime index ``|B:A|``.

    Pairs are checked literally; the covering-pair check must agree.
    """
    PI = _prime_index_matrix(L)
    cover_pi = PI & L.cover
    out = []
    for W in L.subgroups:
        up = np.flatnonzero(L.contain[W.index])
        literal = not PI[np.ix_(up, up)].any()
        fast = not cover_pi[np.ix_(up, up)].any()
        if literal != fast:
            raise PropertyViolation("literal and covering-pair Gaschütz checks disagree")
        if literal and _supersolvable_section(L, W, L.trivial):
            out.append(W)
    if not out and _is_solvable_sub(L, L.whole):
        raise PropertyViolation("solvable group without Gaschütz subgroups")
    return out
