"""Deterministic builders for the group corpus and the group file format."""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import factorial

from .arith import factorize
from .permcore import (
    DEFAULT_MAX_DEGREE,
    CapExceeded,
    PermGroup,
    Permutation,
    from_cycles,
)


class GroupFormatError(ValueError):
    """Malformed group file or builtin spec."""


class NotFound(LookupError):
    pass


# --- 2x2 matrices over F_p ---------------------------------------------------


@dataclass(frozen=True)
class Matrix2p:
    """Invertible 2x2 matrix over F_p, rows ``((a, b), (c, d))``."""

    a: int
    b: int
    c: int
    d: int
    p: int

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, getattr(self, name) % self.p)
        if self.det() == 0:
            raise ValueError("matrix is singular mod p")

    @classmethod
    def companion(cls, a: int, b: int, p: int) -> "Matrix2p":
        """Companion matrix ``[[0, b], [1, a]]`` of ``x^2 - a x - b``."""
        return cls(0, b, 1, a, p)

    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.p

    def trace(self) -> int:
        return (self.a + self.d) % self.p

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __matmul__(self, o: "Matrix2p") -> "Matrix2p":
        p = self.p
        return Matrix2p(
            self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d, p,
        )

    def __pow__(self, k: int) -> "Matrix2p":
        result = Matrix2p(1, 0, 0, 1, self.p)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return (self.a, self.b, self.c, self.d) == (1, 0, 0, 1)

    def order(self) -> int:
        n = self.p * self.p - 1
        # the order divides |GL_2(p)| = (p^2-1)(p^2-p)
        bound = n * (self.p * self.p - self.p)
        k = bound
        for q, e in factorize(bound).items():
            for _ in range(e):
                if (self ** (k // q)).is_identity():
                    k //= q
        return k

    def apply(self, x: int, y: int) -> tuple[int, int]:
        return (self.a * x + self.b * y) % self.p, (self.c * x + self.d * y) % self.p

    def char_poly_has_root(self) -> bool:
        """Whether ``x^2 - tr x + det`` has a root in F_p."""
        p, t, dt = self.p, self.trace(), self.det()
        if p == 2:
            return any((x * x - t * x + dt) % 2 == 0 for x in range(2))
        disc = (t * t - 4 * dt) % p
        return disc == 0 or pow(disc, (p - 1) // 2, p) == 1


def find_irreducible_element(p: int, m: int) -> Matrix2p:
    """First companion matrix ``[[0, b], [1, a]]`` in (a, b) order with exact
    order ``m`` and no eigenvalue in F_p."""
    if m < 1 or (p * p - 1) % m:
        raise ValueError(f"{m} does not divide {p}^2 - 1")
    for a in range(p):
        for b in range(1, p):
            M = Matrix2p.companion(a, b, p)
            if M.char_poly_has_root():
                continue
            if not (M ** m).is_identity():
                continue
            if all(not (M ** (m // q)).is_identity() for q in factorize(m)):
                return M
    raise NotFound(f"no irreducible element of order {m} in GL_2({p})")


# --- families ------------------------------------------------------------------


def _check_degree(n: int, max_degree: int) -> None:
    if n > max_degree:
        raise CapExceeded(f"degree {n} exceeds degree cap {max_degree}")


def cyclic(n: int, max_degree: int = DEFAULT_MAX_DEGREE) -> PermGroup:
    if n < 1:
        raise ValueError("cyclic(n) needs n >= 1")
    _check_degree(n, max_degree)
    gens = [from_cycles(n, [range(1, n + 1)])] if n > 1 else []
    return PermGroup(n, gens, name=f"c{n}")


def dihedral(n: int, max_degree: int = DEFAULT_MAX_DEGREE) -> PermGroup:
    """Dihedral group of order ``2n``."""
    if n < 1:
        raise ValueError("dihedral(n) needs n >= 1")
    if n == 1:
        return PermGroup(2, [from_cycles(2, [(1, 2)])], name="d1")
    if n == 2:
        return PermGroup(4, [from_cycles(4, [(1, 2), (3, 4)]), from_cycles(4, [(1, 3), (2, 4)])],
                         name="d2")
    _check_degree(n, max_degree)
    rot = from_cycles(n, [range(1, n + 1)])
    refl = Permutation([(-i) % n for i in range(n)])
    return PermGroup(n, [rot, refl], name=f"d{n}")


def symmetric(n: int, max_degree: int = DEFAULT_MAX_DEGREE) -> PermGroup:
    if n < 1:
        raise ValueError("symmetric(n) needs n >= 1")
    _check_degree(n, max_degree)
    gens = []
    if n >= 2:
        gens.append(from_cycles(n, [(1, 2)]))
    if n >= 3:
        gens.insert(0, from_cycles(n, [range(1, n + 1)]))
    return PermGroup(n, gens, name=f"s{n}")


def alternating(n: int, max_degree: int = DEFAULT_MAX_DEGREE) -> PermGroup:
    if n < 1:
        raise ValueError("alternating(n) needs n >= 1")
    _check_degree(n, max_degree)
    gens = [from_cycles(n, [(1, 2, i)]) for i in range(3, n + 1)]
    return PermGroup(n, gens, name=f"a{n}")


def elementary_abelian(p: int, k: int, max_degree: int = DEFAULT_MAX_DEGREE) -> PermGroup:
    """``(Z_p)^k`` acting on ``k`` disjoint blocks of ``p`` points."""
    if k < 1:
        raise ValueError("elementary_abelian needs k >= 1")
    if set(factorize(p)) != {p}:
        raise ValueError(f"{p} is not prime")
    n = p * k
    _check_degree(n, max_degree)
    gens = [from_cycles(n, [range(i * p + 1, (i + 1) * p + 1)]) for i in range(k)]
    return PermGroup(n, gens, name=f"ea{p}^{k}")


def direct_product(G: PermGroup, H: PermGroup, max_degree: int = DEFAULT_MAX_DEGREE) -> PermGroup:
    n = G.degree + H.degree
    _check_degree(n, max_degree)
    gens = []
    for g in G.generators:
        gens.append(Permutation._raw(list(g.images) + list(range(G.degree, n))))
    for h in H.generators:
        gens.append(Permutation._raw(list(range(G.degree)) + [x + G.degree for x in h.images]))
    name = f"{G.name}*{H.name}" if G.name and H.name else None
    return PermGroup(n, gens, name=name)


def semidirect_affine(p: int, M: Matrix2p, max_degree: int = DEFAULT_MAX_DEGREE) -> PermGroup:
    """``F_p^2 ⋊ <M>`` on the ``p^2`` vectors, vector ``(x, y)`` being point ``x + p*y``."""
    if M.p != p:
        raise ValueError("matrix is over a different field")
    n = p * p
    _check_degree(n, max_degree)
    t1 = [((x + 1) % p) + p * y for y in range(p) for x in range(p)]
    t2 = [x + p * ((y + 1) % p) for y in range(p) for x in range(p)]
    lin = []
    for y in range(p):
        for x in range(p):
            u, v = M.apply(x, y)
            lin.append(u + p * v)
    gens = [Permutation(t1), Permutation(t2)]
    if not M.is_identity():
        gens.append(Permutation(lin))
    return PermGroup(n, gens, name=f"affine:{p},{M.a},{M.b},{M.c},{M.d}")


def paper_example(max_degree: int = DEFAULT_MAX_DEGREE) -> PermGroup:
    """``E_{29^2} ⋊ Z_15`` with an irreducibly acting ``Z_15``; order 12615."""
    G = semidirect_affine(29, find_irreducible_element(29, 15), max_degree)
    G.name = "example"
    return G


_PSL2_Q = (5, 7, 11)


def psl2(q: int, max_degree: int = DEFAULT_MAX_DEGREE) -> PermGroup:
    """``PSL(2, q)`` on the projective line; point ``q`` is infinity."""
    if q not in _PSL2_Q:
        raise ValueError(f"psl2 supports q in {_PSL2_Q}, got {q}")
    _check_degree(q + 1, max_degree)
    inf = q
    shift = [(x + 1) % q for x in range(q)] + [inf]
    invert = []
    for x in range(q):
        invert.append(inf if x == 0 else (-pow(x, -1, q)) % q)
    invert.append(0)
    return PermGroup(q + 1, [Permutation(shift), Permutation(invert)], name=f"psl2:{q}")


# --- builtin spec strings ---------------------------------------------------------

_SHORT = re.compile(r"^([csad])(\d+)$")
_FAMILIES = {"c": "cyclic", "s": "symmetric", "a": "alternating", "d": "dihedral"}


def _ints(text: str, name: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")] if text else []
    except ValueError:
        raise GroupFormatError(f"bad parameters for {name}: {text!r}") from None


def builtin(spec: str, max_degree: int = DEFAULT_MAX_DEGREE) -> PermGroup:
    """Build a group from a spec such as ``a4``, ``dihedral:6``, ``ea:29,2``,
    ``psl2:7``, ``affine:29,15`` (irreducible order-15 element),
    ``affine:5,0,4,1,0`` (explicit matrix rows), ``example`` or ``s3*c5``."""
    spec = spec.strip()
    if "*" in spec:
        parts = [builtin(s, max_degree) for s in spec.split("*")]
        G = parts[0]
        for H in parts[1:]:
            G = direct_product(G, H, max_degree)
        G.name = spec
        return G
    m = _SHORT.match(spec)
    if m:
        family, params = _FAMILIES[m.group(1)], [int(m.group(2))]
    else:
        family, _, rest = spec.partition(":")
        params = _ints(rest, family)
    try:
        G = _build(family, params, max_degree)
    except (ValueError, NotFound) as exc:
        if isinstance(exc, GroupFormatError):
            raise
        raise GroupFormatError(f"{spec}: {exc}") from None
    G.name = spec
    return G


def _build(family: str, params: list[int], max_degree: int) -> PermGroup:
    one = {"cyclic": cyclic, "dihedral": dihedral, "symmetric": symmetric,
           "alternating": alternating, "psl2": psl2}
    if family in one:
        if len(params) != 1:
            raise GroupFormatError(f"{family} takes one parameter")
        return one[family](params[0], max_degree)
    if family in ("ea", "elementary_abelian"):
        if len(params) != 2:
            raise GroupFormatError("elementary_abelian takes p,k")
        return elementary_abelian(params[0], params[1], max_degree)
    if family == "affine":
        if len(params) == 2:
            p, m = params
            return semidirect_affine(p, find_irreducible_element(p, m), max_degree)
        if len(params) == 5:
            p, a, b, c, d = params
            return semidirect_affine(p, Matrix2p(a, b, c, d, p), max_degree)
        raise GroupFormatError("affine takes p,m or p,a,b,c,d")
    if family == "example" and not params:
        return paper_example(max_degree)
    raise GroupFormatError(f"unknown builtin family {family!r}")


def expected_order(spec: str) -> int | None:
    """Closed-form order for simple family specs (used for cap checks before building)."""
    m = _SHORT.match(spec)
    if not m:
        return None
    n = int(m.group(2))
    return {"c": n, "d": 2 * n, "s": factorial(n), "a": max(1, factorial(n) // 2)}[m.group(1)]


# --- group files ---------------------------------------------------------------

_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_group_file(text: str, max_degree: int = DEFAULT_MAX_DEGREE) -> PermGroup:
    degree = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        word, _, rest = line.partition(" ")
        if degree is None:
            if word != "degree":
                raise GroupFormatError(f"line {lineno}: expected 'degree N'")
            try:
                degree = int(rest.strip())
            except ValueError:
                raise GroupFormatError(f"line {lineno}: bad degree {rest.strip()!r}") from None
            if degree < 1:
                raise GroupFormatError(f"line {lineno}: degree must be positive")
            if degree > max_degree:
                raise CapExceeded(f"degree {degree} exceeds degree cap {max_degree}")
            continue
        if word != "gen":
            raise GroupFormatError(f"line {lineno}: expected 'gen <cycles>'")
        gens.append(_parse_cycles(rest.strip(), degree, lineno))
    if degree is None:
        raise GroupFormatError("missing 'degree N' line")
    if not gens:
        raise GroupFormatError("no 'gen' lines")
    return PermGroup(degree, gens)


def _parse_cycles(text: str, degree: int, lineno: int) -> Permutation:
    if not text:
        raise GroupFormatError(f"line {lineno}: empty generator")
    pos = 0
    cycles = []
    for m in _CYCLE.finditer(text):
        if text[pos:m.start()].strip():
            raise GroupFormatError(f"line {lineno}: malformed cycle near {text[pos:m.start()]!r}")
        pos = m.end()
        body = m.group(1).split()
        try:
            pts = [int(x) for x in body]
        except ValueError:
            raise GroupFormatError(f"line {lineno}: non-integer point in ({m.group(1)})") from None
        if pts:
            cycles.append(pts)
    if pos == 0 or text[pos:].strip():
        raise GroupFormatError(f"line {lineno}: malformed cycle in {text!r}")
    try:
        return from_cycles(degree, cycles)
    except ValueError as exc:
        raise GroupFormatError(f"line {lineno}: {exc}") from None


def serialize_group(G: PermGroup) -> str:
    lines = [f"degree {G.degree}"]
    lines += [f"gen {g.to_cycle_string()}" for g in G.generators]
    return "\n".join(lines) + "\n"
