"""Check the Hall 2-maximal hypothesis and the theorem's conclusions on concrete groups."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd, prod

from . import structure as st
from .arith import factorize, is_squarefree
from .constructors import GroupFormatError, builtin, parse_group_file, psl2
from .lattice import Lattice, QuotientTooLarge, enumerate_subgroups, two_maximals
from .permcore import DEFAULT_MAX_DEGREE, DEFAULT_MAX_ORDER, CapExceeded, PermGroup

log = logging.getLogger(__name__)

PRIMARY = "primary-group"
HYPOTHESIS_FAILS = "hypothesis-fails"
SUPERSOLVABLE = "supersolvable-branch"
MAIN = "main-branch"
SKIPPED = "skipped"
ERROR = "error"


@dataclass
class HypothesisResult:
    holds: bool
    witness: dict | None = None

    def to_dict(self) -> dict:
        d = {"holds": self.holds}
        if self.witness is not None:
            d["witness"] = dict(self.witness)
        return d


@dataclass
class TheoremReport:
    name: str
    order: int
    degree: int
    pi: list[int] = field(default_factory=list)
    sigma: list[int] = field(default_factory=list)
    tau: list[int] = field(default_factory=list)
    applicability: str = PRIMARY
    hypothesis: HypothesisResult | None = None
    conclusions: dict | None = None
    squarefree: dict | None = None
    derived: dict | None = None
    construction: str | None = None
    skipped_reason: str | None = None

    def violations(self) -> list[str]:
        """Names of failed conclusion entries (an explicit ``False``)."""
        out = []
        if self.applicability == SUPERSOLVABLE and self.squarefree and self.squarefree["pass"] is False:
            out.append("squarefree")
        if self.applicability == MAIN:
            if self.derived and self.derived.get("solvable") is False:
                out.append("solvable")
            for k, v in (self.conclusions or {}).items():
                if v.get("pass") is False:
                    out.append(k)
        return out

    def indeterminate(self) -> list[str]:
        return [k for k, v in (self.conclusions or {}).items() if v.get("pass") is None]

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "order": self.order,
            "degree": self.degree,
            "pi": list(self.pi),
            "sigma": list(self.sigma),
            "tau": list(self.tau),
            "applicability": self.applicability,
        }
        if self.hypothesis is not None:
            d["hypothesis"] = self.hypothesis.to_dict()
        if self.conclusions is not None:
            d["conclusions"] = {k: dict(v) for k, v in self.conclusions.items()}
        if self.squarefree is not None:
            d["squarefree"] = dict(self.squarefree)
        if self.derived is not None:
            d["derived"] = dict(self.derived)
        if self.construction is not None:
            d["construction"] = self.construction
        if self.skipped_reason is not None:
            d["skipped_reason"] = self.skipped_reason
        return d


def check_hypothesis(G: PermGroup, L: Lattice | None = None) -> HypothesisResult:
    """Whether every 2-maximal subgroup is Hall; the first failure is the witness."""
    L = L if L is not None else enumerate_subgroups(G)
    n = L.table.size
    for H, M in sorted(two_maximals(L), key=lambda hm: (hm[0].index, hm[1].index)):
        if not st.is_hall(n, H):
            idx = n // H.order
            return HypothesisResult(False, {"h_order": H.order, "m_order": M.order,
                                            "index": idx, "gcd": gcd(H.order, idx)})
    return HypothesisResult(True)


def _first_non_hall_maximal(L: Lattice) -> dict | None:
    n = L.table.size
    for M in L.lower_covers(L.whole):
        if not st.is_hall(n, M):
            idx = n // M.order
            return {"m_order": M.order, "index": idx, "gcd": gcd(M.order, idx)}
    return None


def _gsigma_in_gaschutz(L: Lattice, sigma: list[int]) -> dict:
    halls = st.hall_subgroups(L, sigma)
    gas = st.gaschutz_subgroups(L)
    for Hs in halls:
        for W in gas:
            if Hs.issubset(W):
                return {"pass": True, "hall_sigma_order": Hs.order, "gaschutz_order": W.order}
    return {"pass": False,
            "hall_sigma_order": halls[0].order if halls else None,
            "gaschutz_order": gas[0].order if gas else None,
            "witness": {"hall_sigma_count": len(halls), "gaschutz_count": len(gas)}}


def _describe(G: PermGroup) -> str | None:
    name = G.name or ""
    if name == "example" or name.startswith("affine:"):
        gen = G.generators[-1] if len(G.generators) == 3 else None
        if gen is not None:
            # the linear generator fixes the zero vector; recover matrix columns
            p = int(round(G.degree ** 0.5))
            c1, c2 = gen(1), gen(p)
            return f"F_{p}^2 semidirect <[[{c1 % p},{c2 % p}],[{c1 // p},{c2 // p}]]>"
    return None


def verify_theorem(G: PermGroup, name: str | None = None, cap: int = DEFAULT_MAX_ORDER,
                   max_degree: int = DEFAULT_MAX_DEGREE) -> TheoremReport:
    n = G.order()
    f = factorize(n)
    stau = st.sigma_tau(n)
    rep = TheoremReport(
        name=name or G.name or "group", order=n, degree=G.degree,
        pi=sorted(f), sigma=sorted(stau.sigma), tau=sorted(stau.tau),
        construction=_describe(G),
    )
    if n > cap:
        rep.applicability = SKIPPED
        rep.skipped_reason = f"order {n} exceeds element cap {cap}"
        return rep
    if len(f) < 2:
        rep.applicability = PRIMARY
        return rep
    L = enumerate_subgroups(G, cap)
    rep.hypothesis = check_hypothesis(G, L)
    if not rep.hypothesis.holds:
        rep.applicability = HYPOTHESIS_FAILS
        return rep
    if st.is_supersolvable(G, L):
        rep.applicability = SUPERSOLVABLE
        ok = is_squarefree(n) and stau.pi == stau.sigma
        rep.squarefree = {"pass": ok}
        if not ok:
            rep.squarefree["witness"] = {"tau": sorted(stau.tau)}
        return rep

    rep.applicability = MAIN
    sigma, tau = sorted(stau.sigma), sorted(stau.tau)
    rep.derived = {"solvable": st.is_solvable(G, L)}
    c: dict = {}
    try:
        ordering = st.sylow_tower(G, L, max_degree)
        c["sylow_tower"] = {"pass": ordering is not None, "ordering": ordering or []}
        if ordering is None:
            c["sylow_tower"]["witness"] = {"normal_sylow_primes": [
                p for p in sorted(f) if any(N.order == f.part([p]) for N in L.normal_subgroups())]}
    except QuotientTooLarge as exc:
        c["sylow_tower"] = {"pass": None, "ordering": [], "error": str(exc)}
    bad = _first_non_hall_maximal(L)
    c["maximals_hall"] = {"pass": bad is None}
    if bad is not None:
        c["maximals_hall"]["witness"] = bad
    c["sylows_elementary_abelian"] = {"pass": True}
    for p in sorted(f):
        P = st.sylow_subgroup(L, p)
        if not st.is_elementary_abelian(P):
            c["sylows_elementary_abelian"] = {"pass": False, "witness": {"prime": p, "order": P.order}}
            break
    c["sigma_ge_2"] = {"pass": len(sigma) >= 2}
    if len(sigma) < 2:
        c["sigma_ge_2"]["witness"] = {"sigma": sigma}
    c["gsigma_in_gaschutz"] = _gsigma_in_gaschutz(L, sigma)
    c["tau_ge_1"] = {"pass": len(tau) >= 1}
    if not tau:
        c["tau_ge_1"]["witness"] = {"tau": tau}
    R = st.supersolvable_residual(G, L)
    tau_part = f.part(tau)
    ok = R.order == tau_part and st.is_hall(n, R)
    c["residual_is_hall_tau"] = {"pass": ok, "residual_order": R.order, "tau_part": tau_part}
    if not ok:
        c["residual_is_hall_tau"]["witness"] = {"index": n // R.order, "gcd": gcd(R.order, n // R.order)}
    rep.conclusions = c
    return rep


# --- PSL witnesses -----------------------------------------------------------------


def psl_order(n: int, q: int) -> int:
    """``|PSL(n, q)| = q^(n(n-1)/2) * prod_{i=2..n} (q^i - 1) / gcd(n, q-1)``."""
    return q ** (n * (n - 1) // 2) * prod(q**i - 1 for i in range(2, n + 1)) // gcd(n, q - 1)


def _lattice_witness(G: PermGroup, h_order: int, m_order: int) -> dict:
    L = enumerate_subgroups(G)
    n = L.table.size
    for H, M in two_maximals(L):
        if H.order == h_order and M.order == m_order:
            idx = n // H.order
            g = gcd(H.order, idx)
            return {"pass": g != 1, "group_order": n, "m_order": M.order, "h_order": H.order,
                    "index": idx, "gcd": g}
    return {"pass": False, "group_order": n, "m_order": None, "h_order": None,
            "index": None, "gcd": None}


def verify_psl_witnesses() -> dict:
    """Non-Hall 2-maximal chains in PSL(2,7), PSL(2,11) (lattice) and PSL(5,2) (arithmetic)."""
    out = {
        "psl2_7": _lattice_witness(psl2(7), 12, 24),
        "psl2_11": _lattice_witness(psl2(11), 6, 12),
    }
    g = psl_order(5, 2)
    l32 = psl_order(3, 2)
    m = 2**6 * 6 * l32
    h = 2**6 * 3 * l32
    idx = g // h
    out["psl5_2"] = {
        "pass": gcd(h, idx) != 1 and factorize(h) == {2: 9, 3: 2, 7: 1} and factorize(idx) == {2: 1, 5: 1, 31: 1},
        "group_order": g, "m_order": m, "h_order": h, "index": idx, "gcd": gcd(h, idx),
    }
    return out


# --- corpus -----------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupSpec:
    name: str
    source: str
    kind: str = "builtin"

    def build(self, max_degree: int = DEFAULT_MAX_DEGREE) -> PermGroup:
        if self.kind == "file":
            with open(self.source, encoding="utf-8") as fh:
                G = parse_group_file(fh.read(), max_degree)
            G.name = self.name
            return G
        return builtin(self.source, max_degree)


DEFAULT_CORPUS = [
    "c6", "c12", "c15", "c30", "c60", "c105",
    "d3", "d4", "d5", "d6", "d10", "d15",
    "s3", "s4", "a4", "a5",
    "ea:2,2", "ea:3,2", "ea:5,2",
    "psl2:5", "psl2:7", "psl2:11",
    "affine:5,0,4,1,0", "affine:5,3", "affine:7,0,6,1,6",
    "s3*c5", "d5*c3", "a4*c5",
]
LARGE_CORPUS = ["example"]


def default_corpus(include_large: bool = False) -> list[GroupSpec]:
    names = DEFAULT_CORPUS + (LARGE_CORPUS if include_large else [])
    return [GroupSpec(s, s) for s in names]


def _run_spec(args) -> TheoremReport:
    spec, cap, max_degree = args
    try:
        G = spec.build(max_degree)
    except CapExceeded as exc:
        return TheoremReport(spec.name, 0, 0, applicability=SKIPPED, skipped_reason=str(exc))
    except (GroupFormatError, OSError) as exc:
        return TheoremReport(spec.name, 0, 0, applicability=ERROR, skipped_reason=str(exc))
    try:
        return verify_theorem(G, spec.name, cap, max_degree)
    except CapExceeded as exc:
        return TheoremReport(spec.name, G.order(), G.degree, applicability=SKIPPED,
                             skipped_reason=str(exc))


def summarize(reports: list[TheoremReport]) -> dict:
    count = lambda tag: sum(r.applicability == tag for r in reports)  # noqa: E731
    return {
        "groups": len(reports),
        "applicable": count(SUPERSOLVABLE) + count(MAIN),
        "main_branch": count(MAIN),
        "supersolvable_branch": count(SUPERSOLVABLE),
        "hypothesis_fails": count(HYPOTHESIS_FAILS),
        "primary": count(PRIMARY),
        "skipped": count(SKIPPED),
        "errors": count(ERROR),
        "indeterminate": sum(bool(r.indeterminate()) for r in reports),
        "violations": sum(len(r.violations()) for r in reports),
    }


def scan_corpus(specs: list[GroupSpec], cap: int = DEFAULT_MAX_ORDER,
                max_degree: int = DEFAULT_MAX_DEGREE, jobs: int = 1) -> list[TheoremReport]:
    work = [(s, cap, max_degree) for s in specs]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_spec, work))
    return [_run_spec(w) for w in work]
