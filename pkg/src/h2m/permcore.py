"""Permutations and a deterministic Schreier-Sims engine.

Points are 0-based internally.  Cycle notation in all external text is
1-based.  Products act on the right: ``(p * q)[i] == q[p[i]]``, i.e. ``p``
is applied first.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

DEFAULT_MAX_DEGREE = 1024
DEFAULT_MAX_ORDER = 20000
_MAX_IMAGE_DEGREE = 65535


class CapExceeded(Exception):
    """A group is too large for the requested operation."""


class Permutation:
    """Immutable bijection of ``{0, ..., degree-1}`` stored as an image table."""

    __slots__ = ("_img", "_hash")

    def __init__(self, images: Iterable[int]):
        arr = np.asarray(list(images) if not isinstance(images, np.ndarray) else images)
        n = arr.shape[0] if arr.ndim == 1 else -1
        if n < 0 or n > _MAX_IMAGE_DEGREE:
            raise ValueError("images must be a 1-d sequence of at most 65535 points")
        if n and (arr.min() < 0 or arr.max() >= n or np.unique(arr).size != n):
            raise ValueError("images do not form a bijection")
        self._img = arr.astype(np.uint16)
        self._img.flags.writeable = False
        self._hash = None

    @classmethod
    def _raw(cls, arr: np.ndarray) -> "Permutation":
        p = object.__new__(cls)
        a = np.ascontiguousarray(arr, dtype=np.uint16)
        a.flags.writeable = False
        p._img = a
        p._hash = None
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._raw(np.arange(degree))

    @property
    def degree(self) -> int:
        return self._img.shape[0]

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self._img)

    @property
    def array(self) -> np.ndarray:
        """Read-only ``uint16`` image table."""
        return self._img

    def __call__(self, point: int) -> int:
        return int(self._img[point])

    def __mul__(self, other: "Permutation") -> "Permutation":
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Permutation._raw(other._img[self._img])

    def inverse(self) -> "Permutation":
        inv = np.empty_like(self._img)
        inv[self._img] = np.arange(self.degree, dtype=np.uint16)
        return Permutation._raw(inv)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = np.arange(self.degree, dtype=np.uint16)
        base = self._img
        while k:
            if k & 1:
                result = base[result]
            base = base[base]
            k >>= 1
        return Permutation._raw(result)

    def is_identity(self) -> bool:
        return bool(np.array_equal(self._img, np.arange(self.degree)))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, 0-based, each starting at its smallest point."""
        seen = np.zeros(self.degree, dtype=bool)
        out = []
        img = self._img
        for i in range(self.degree):
            if seen[i] or img[i] == i:
                continue
            cyc = [i]
            seen[i] = True
            j = int(img[i])
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = int(img[j])
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        from math import lcm

        result = 1
        for c in self.cycles():
            result = lcm(result, len(c))
        return result

    def to_cycle_string(self) -> str:
        """1-based cycle notation; ``()`` for the identity."""
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cyc)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.degree == other.degree and bool(np.array_equal(self._img, other._img))

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._img.tobytes())
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation({self.to_cycle_string()}, degree={self.degree})"


def from_cycles(degree: int, cycles: Sequence[Sequence[int]]) -> Permutation:
    """Build a permutation from 1-based cycles; unmentioned points are fixed."""
    if degree < 0 or degree > _MAX_IMAGE_DEGREE:
        raise ValueError(f"degree {degree} out of range")
    img = np.arange(degree)
    seen = set()
    for cyc in cycles:
        pts = [int(x) for x in cyc]
        for x in pts:
            if x < 1 or x > degree:
                raise ValueError(f"point {x} out of range 1..{degree}")
            if x in seen:
                raise ValueError(f"point {x} repeated")
            seen.add(x)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a - 1] = b - 1
    return Permutation._raw(img)


@dataclass(frozen=True)
class BSGS:
    """Base, strong generators and per-level transversals.

    ``transversals[i]`` maps each point of the orbit of ``base[i]`` under the
    ``i``-th stabilizer to a coset representative sending ``base[i]`` there.
    """

    base: tuple[int, ...]
    strong_generators: tuple[Permutation, ...]
    transversals: tuple[dict[int, Permutation], ...]

    @property
    def order(self) -> int:
        result = 1
        for t in self.transversals:
            result *= len(t)
        return result


class _Level:
    __slots__ = ("point", "gens", "reps", "inv_reps", "checked")

    def __init__(self, point: int):
        self.point = point
        self.gens: list[np.ndarray] = []
        self.reps: dict[int, np.ndarray] = {}
        self.inv_reps: dict[int, np.ndarray] = {}
        self.checked: set[tuple[int, int]] = set()


def _inverse(a: np.ndarray) -> np.ndarray:
    inv = np.empty_like(a)
    inv[a] = np.arange(a.shape[0], dtype=a.dtype)
    return inv


def _extend_orbit(level: _Level, ident: np.ndarray) -> None:
    if not level.reps:
        level.reps[level.point] = ident
        level.inv_reps[level.point] = ident
    queue = list(level.reps)
    while queue:
        nxt = []
        for beta in queue:
            u = level.reps[beta]
            for g in level.gens:
                gamma = int(g[beta])
                if gamma not in level.reps:
                    v = g[u]
                    level.reps[gamma] = v
                    level.inv_reps[gamma] = _inverse(v)
                    nxt.append(gamma)
        queue = nxt


def _strip(levels: list[_Level], g: np.ndarray, start: int) -> tuple[np.ndarray, int]:
    for j in range(start, len(levels)):
        lev = levels[j]
        beta = int(g[lev.point])
        inv = lev.inv_reps.get(beta)
        if inv is None:
            return g, j
        g = inv[g]
    return g, len(levels)


def _first_moved(g: np.ndarray) -> int:
    moved = np.nonzero(g != np.arange(g.shape[0]))[0]
    return int(moved[0]) if moved.size else -1


def _schreier_sims(degree: int, gens: Sequence[np.ndarray]) -> list[_Level]:
    ident = np.arange(degree, dtype=np.int32)
    gens = [np.asarray(g, dtype=np.int32) for g in gens]
    gens = [g for g in gens if _first_moved(g) >= 0]
    levels: list[_Level] = []
    for g in gens:
        if all(g[lev.point] == lev.point for lev in levels):
            levels.append(_Level(_first_moved(g)))
    for g in gens:
        for lev in levels:
            lev.gens.append(g)
            if g[lev.point] != lev.point:
                break
    for lev in levels:
        _extend_orbit(lev, ident)

    i = len(levels) - 1
    while i >= 0:
        lev = levels[i]
        restarted = False
        for beta in list(lev.reps):
            u = lev.reps[beta]
            for gi, x in enumerate(lev.gens):
                if (beta, gi) in lev.checked:
                    continue
                ux = x[u]
                target = int(x[beta])
                schreier = lev.inv_reps[target][ux]
                lev.checked.add((beta, gi))
                if np.array_equal(schreier, ident):
                    continue
                h, j = _strip(levels, schreier, i + 1)
                if j < len(levels) or not np.array_equal(h, ident):
                    if j == len(levels):
                        levels.append(_Level(_first_moved(h)))
                    for lvl in range(i + 1, j + 1):
                        levels[lvl].gens.append(h)
                        _extend_orbit(levels[lvl], ident)
                    # the pair is rechecked once higher levels are complete
                    lev.checked.discard((beta, gi))
                    i = j
                    restarted = True
                    break
            if restarted:
                break
        if not restarted:
            i -= 1
    return levels


class PermGroup:
    """A permutation group given by generators, with a lazily built BSGS."""

    def __init__(self, degree: int, generators: Sequence[Permutation], name: str | None = None):
        if degree < 1:
            raise ValueError("degree must be positive")
        gens = tuple(generators)
        for g in gens:
            if g.degree != degree:
                raise ValueError(f"generator of degree {g.degree} in group of degree {degree}")
        self.degree = degree
        self.generators = gens
        self.name = name
        self._levels: list[_Level] | None = None
        self._chain: BSGS | None = None
        self._lock = threading.Lock()
        self._cache: dict = {}

    def _built_levels(self) -> list[_Level]:
        levels = self._levels
        if levels is None:
            with self._lock:
                if self._levels is None:
                    self._levels = _schreier_sims(self.degree, [g.array for g in self.generators])
                levels = self._levels
        return levels

    @property
    def chain(self) -> BSGS:
        if self._chain is None:
            levels = self._built_levels()
            strong = []
            seen = set()
            for lev in levels:
                for g in lev.gens:
                    key = g.tobytes()
                    if key not in seen:
                        seen.add(key)
                        strong.append(Permutation._raw(g))
            trans = tuple(
                {b: Permutation._raw(u) for b, u in sorted(lev.reps.items())} for lev in levels
            )
            self._chain = BSGS(tuple(lev.point for lev in levels), tuple(strong), trans)
        return self._chain

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(lev.point for lev in self._built_levels())

    def order(self) -> int:
        result = 1
        for lev in self._built_levels():
            result *= len(lev.reps)
        return result

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise ValueError("degree mismatch")
        levels = self._built_levels()
        g, j = _strip(levels, p.array.astype(np.int32), 0)
        return j == len(levels) and bool(np.array_equal(g, np.arange(self.degree)))

    def element_array(self, cap: int = DEFAULT_MAX_ORDER) -> np.ndarray:
        """All elements as an ``(order, degree)`` int32 array, sorted lexicographically."""
        cached = self._cache.get("elements")
        if cached is not None:
            return cached
        n = self.order()
        if n > cap:
            raise CapExceeded(f"group order {n} exceeds element cap {cap}")
        levels = self._built_levels()
        cur = np.arange(self.degree, dtype=np.int32)[None, :]
        for lev in reversed(levels):
            reps = [lev.reps[b] for b in sorted(lev.reps)]
            cur = np.concatenate([u[cur] for u in reps], axis=0)
        order = np.lexsort(cur.T[::-1])
        arr = np.ascontiguousarray(cur[order])
        arr.flags.writeable = False
        self._cache["elements"] = arr
        return arr

    def elements(self, cap: int = DEFAULT_MAX_ORDER) -> list[Permutation]:
        return [Permutation._raw(row) for row in self.element_array(cap)]

    def orbit(self, point: int) -> set[int]:
        if not 0 <= point < self.degree:
            raise ValueError(f"point {point} out of range")
        seen = {point}
        frontier = [point]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = g(x)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1:])

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<PermGroup{label} degree={self.degree} gens={len(self.generators)}>"


def schreier_sims(G: PermGroup) -> BSGS:
    return G.chain


def order(G: PermGroup) -> int:
    return G.order()


def contains(G: PermGroup, p: Permutation) -> bool:
    return G.contains(p)


def elements(G: PermGroup, cap: int = DEFAULT_MAX_ORDER) -> list[Permutation]:
    return G.elements(cap)


def orbit(G: PermGroup, point: int) -> set[int]:
    return G.orbit(point)
