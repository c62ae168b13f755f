"""Slow, independent reference computations used to check the fast paths.

Nothing here touches the rank tables, the kernels or the BSGS code.
"""

from itertools import combinations


def compose(p, q):
    """Apply ``p`` then ``q`` (tuples of images)."""
    return tuple(q[i] for i in p)


def naive_closure(gens, degree):
    """All elements generated by ``gens`` via breadth-first multiplication."""
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def generated(elems, degree):
    return frozenset(naive_closure(list(elems), degree))


def subsets_closed_under_product(elements):
    """Every subgroup by testing all subsets for closure (tiny groups only)."""
    elements = sorted(elements)
    ident = tuple(range(len(elements[0])))
    rest = [e for e in elements if e != ident]
    out = set()
    for r in range(len(rest) + 1):
        for combo in combinations(rest, r):
            s = set(combo) | {ident}
            if all(compose(a, b) in s for a in s for b in s):
                out.add(frozenset(s))
    return out


def cayley_table(elements):
    """Index map and full multiplication table built with tuple composition."""
    elements = sorted(elements)
    idx = {e: i for i, e in enumerate(elements)}
    table = [[idx[compose(a, b)] for b in elements] for a in elements]
    return elements, idx, table


def _int_closure(gens, table, start=None):
    seen = set(start) if start else {0}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            row = table[x]
            for g in gens:
                y = row[g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def pair_generated_subgroups(elements, degree=None):
    """Subgroups generated by pairs of elements, then extended one element at
    a time until nothing new appears (covers subgroups needing more generators).
    Returned as frozensets of image tuples."""
    elements, idx, table = cayley_table(elements)
    n = len(elements)
    subs = set()
    for a in range(n):
        for b in range(a, n):
            subs.add(_int_closure([a, b], table))
    frontier = set(subs)
    while frontier:
        nxt = set()
        for K in frontier:
            for g in range(n):
                if g in K:
                    continue
                J = _int_closure(list(K) + [g], table)
                if J not in subs:
                    subs.add(J)
                    nxt.add(J)
        frontier = nxt
    return {frozenset(elements[i] for i in K) for K in subs}


def element_order(p):
    ident = tuple(range(len(p)))
    k, x = 1, p
    while x != ident:
        x = compose(x, p)
        k += 1
    return k


def commutator_subgroup(elements, degree):
    inv = {}
    for p in elements:
        q = [0] * len(p)
        for i, x in enumerate(p):
            q[x] = i
        inv[p] = tuple(q)
    comms = {compose(compose(inv[a], inv[b]), compose(a, b)) for a in elements for b in elements}
    return generated(comms, degree)


def mat_mul(A, B, p):
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(2)) % p for j in range(2)) for i in range(2)
    )


def brute_irreducible_companion(p, m):
    """First companion ``[[0, b], [1, a]]`` in (a, b) order of exact order ``m``
    whose characteristic polynomial has no root, by repeated multiplication."""
    ident = ((1, 0), (0, 1))
    for a in range(p):
        for b in range(p):
            if b == 0:
                continue
            M = ((0, b), (1, a))
            if any((x * x - a * x - b) % p == 0 for x in range(p)):
                continue
            X, k = M, 1
            while X != ident:
                X = mat_mul(X, M, p)
                k += 1
            if k == m:
                return M
    return None


def mat_pow_apply(M, k, v, p):
    for _ in range(k):
        v = ((M[0][0] * v[0] + M[0][1] * v[1]) % p, (M[1][0] * v[0] + M[1][1] * v[1]) % p)
    return v


def affine_subgroup_count(p, M, m):
    """Number of subgroups of F_p^2 x| <M> (M of order m coprime to p).

    Coprime action: a subgroup meets V in a <M^k>-invariant subspace W and
    maps onto some D = <M^k>; the subgroups with that data are the
    complements of V/W in (V/W) x| D, all conjugate, numbering
    |V/W| / |fixed points of D on V/W|.  Everything is done on vectors.
    """
    vecs = [(x, y) for x in range(p) for y in range(p)]
    zero = frozenset([(0, 0)])
    lines = {frozenset(((t * a) % p, (t * b) % p) for t in range(p)) for (a, b) in vecs if (a, b) != (0, 0)}
    spaces = [zero, frozenset(vecs)] + sorted(lines, key=sorted)
    total = 0
    for d in [d for d in range(1, m + 1) if m % d == 0]:
        k = m // d
        for W in spaces:
            if any(mat_pow_apply(M, k, w, p) not in W for w in W):
                continue
            fixed = sum(
                1 for v in vecs
                if (lambda u: ((u[0] - v[0]) % p, (u[1] - v[1]) % p))(mat_pow_apply(M, k, v, p)) in W
            ) // len(W)
            total += (p * p // len(W)) // fixed
    return total
