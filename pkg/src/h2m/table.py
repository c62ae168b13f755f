"""Ranked element table: group elements as integers 0..N-1."""

from __future__ import annotations

import numpy as np

from . import kernels
from .permcore import DEFAULT_MAX_ORDER, PermGroup, Permutation

_HASH_MULT = 0x9E3779B97F4A7C15


class ElementTable:
    """All elements of a group, ranked in lexicographic image-table order.

    Rank 0 is the identity.  Multiplication is done on ranks through the
    active kernel backend; ``impl`` may pin a specific backend module.
    """

    def __init__(self, group: PermGroup, cap: int = DEFAULT_MAX_ORDER, impl=None):
        self.group = group
        self.perms = np.ascontiguousarray(group.element_array(cap), dtype=np.int32)
        self.size, self.degree = self.perms.shape
        self.base = np.asarray(group.base, dtype=np.int64)
        self.bimg = np.ascontiguousarray(self.perms[:, self.base], dtype=np.int32)
        if self.bimg.ndim == 1:
            self.bimg = self.bimg.reshape(self.size, 0)
        k = self.base.size
        radix = self.degree if self.degree ** k < 2**64 else _HASH_MULT
        self.pw = np.array([pow(radix, i, 2**64) for i in range(k)], dtype=np.uint64)
        keys = np.zeros(self.size, dtype=np.uint64)
        for i in range(k):
            keys += self.bimg[:, i].astype(np.uint64) * self.pw[i]
        order = np.argsort(keys, kind="stable")
        self.skeys = np.ascontiguousarray(keys[order])
        if self.size > 1 and np.any(self.skeys[1:] == self.skeys[:-1]):
            raise RuntimeError("base-image keys collide; element table cannot be built")
        self.sranks = np.ascontiguousarray(order, dtype=np.int32)
        self._impl = impl or kernels
        self._args = (self.perms, self.bimg, self.pw, self.skeys, self.sranks)
        self.inv = self._inverses()
        self.gens = np.array(
            [self.rank(g) for g in group.generators if not g.is_identity()], dtype=np.int64
        )

    def _inverses(self) -> np.ndarray:
        inv_bimg = np.empty_like(self.bimg)
        for i, b in enumerate(self.base):
            inv_bimg[:, i] = np.argmax(self.perms == b, axis=1)
        keys = np.zeros(self.size, dtype=np.uint64)
        for i in range(self.base.size):
            keys += inv_bimg[:, i].astype(np.uint64) * self.pw[i]
        return self.sranks[np.searchsorted(self.skeys, keys)].astype(np.int64)

    def rank(self, p: Permutation) -> int:
        img = p.array.astype(np.int64)
        key = np.uint64(0)
        for i, b in enumerate(self.base):
            key += np.uint64(img[b]) * self.pw[i]
        pos = int(np.searchsorted(self.skeys, key))
        r = int(self.sranks[pos]) if pos < self.size else -1
        if r < 0 or self.skeys[pos] != key or not np.array_equal(self.perms[r], img):
            raise ValueError("permutation is not an element of the group")
        return r

    def element(self, r: int) -> Permutation:
        return Permutation._raw(self.perms[r])

    def mul(self, a, b) -> np.ndarray:
        """Elementwise ranks of ``a[i] * b[i]`` (broadcasting)."""
        return self._impl.mul_pairs(*self._args, a, b)

    def mul1(self, a: int, b: int) -> int:
        return int(self.mul(np.array([a]), np.array([b]))[0])

    def conjugate(self, members, x: int) -> np.ndarray:
        """Ranks of ``x^-1 * m * x`` for each member ``m``."""
        left = self.mul(self.inv[x], members)
        return self.mul(left, x)

    def commutator(self, a: int, b: int) -> int:
        ia, ib = self.inv[a], self.inv[b]
        return int(self.mul(self.mul(ia, ib), self.mul(a, b)))

    def power(self, members, k: int) -> np.ndarray:
        members = np.asarray(members, dtype=np.int64)
        result = np.zeros_like(members)
        base = members
        while k:
            if k & 1:
                result = self.mul(result, base).astype(np.int64)
            base = self.mul(base, base).astype(np.int64)
            k >>= 1
        return result

    def closure(self, members, gens, bound: int | None = None):
        """Members of ``<members, gens>`` where ``members`` is already a subgroup."""
        if bound is None:
            bound = self.size
        return self._impl.closure(*self._args, np.asarray(members, dtype=np.int64),
                                  np.asarray(gens, dtype=np.int64), int(bound))

    def generate(self, gens) -> np.ndarray:
        gens = np.asarray(gens, dtype=np.int64)
        return self.closure(np.zeros(1, dtype=np.int64), gens[gens != 0])

    def element_order(self, r: int) -> int:
        k, x = 1, r
        while x != 0:
            x = self.mul1(x, r)
            k += 1
        return k
