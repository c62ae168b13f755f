import pytest

from h2m import structure as st
from h2m.arith import factorize, is_squarefree, p_part

from conftest import group, lattice

SOLVABLE = ["c6", "c12", "c30", "d4", "d5", "d6", "s3", "s4", "a4", "ea:2,2", "ea:5,2",
            "affine:5,3", "affine:5,0,4,1,0", "affine:7,0,6,1,6", "s3*c5", "a4*c5", "d10"]
UNSOLVABLE = ["a5", "psl2:7", "psl2:11", "psl2:5"]


def by_order(L, n):
    return [s for s in L if s.order == n]


def test_factorize():
    assert factorize(12615) == {3: 1, 5: 1, 29: 2}
    assert factorize(12615).value == 12615
    assert factorize(9999360) == {2: 10, 3: 2, 5: 1, 7: 1, 31: 1}
    assert factorize(1) == {}
    assert p_part(12615, 29) == 841
    assert is_squarefree(30) and not is_squarefree(12)


@pytest.mark.parametrize("n,sigma,tau", [
    (6, {2, 3}, set()), (12615, {3, 5}, {29}), (12, {3}, {2}), (1, set(), set()), (8, set(), {2}),
])
def test_sigma_tau(n, sigma, tau):
    s = st.sigma_tau(n)
    assert s.sigma == sigma and s.tau == tau
    assert s.pi == set(factorize(n))
    assert not (s.sigma & s.tau)


def test_is_hall():
    L = lattice("psl2:7")
    H = by_order(L, 12)[0]
    assert not st.is_hall(168, H)
    assert st.is_hall(168, L.trivial) and st.is_hall(168, L.whole)


def test_sylow_and_hall():
    assert st.sylow_subgroup(lattice("a4"), 2).order == 4
    assert st.sylow_subgroup(lattice("s3"), 3).order == 3
    with pytest.raises(ValueError):
        st.sylow_subgroup(lattice("s3"), 5)
    L = lattice("a5")
    assert st.hall_subgroup(L, {2, 5}) is None
    assert st.hall_subgroup(L, {2, 3}).order == 12
    assert st.hall_subgroup(L, {2, 3, 5}) is L.whole


def test_elementary_abelian():
    L = lattice("a4")
    assert st.is_elementary_abelian(by_order(L, 4)[0])
    assert st.is_elementary_abelian(L.trivial)
    assert not st.is_elementary_abelian(L.whole)
    L = lattice("c12")
    assert not st.is_elementary_abelian(by_order(L, 4)[0])
    assert st.is_elementary_abelian(by_order(L, 2)[0])


@pytest.mark.parametrize("spec", SOLVABLE)
def test_solvable(spec):
    assert st.is_solvable(group(spec), lattice(spec))
    assert st.solvable_radical(lattice(spec)) is lattice(spec).whole


@pytest.mark.parametrize("spec", UNSOLVABLE)
def test_unsolvable(spec):
    assert not st.is_solvable(group(spec), lattice(spec))
    assert st.solvable_radical(lattice(spec)).order == 1


@pytest.mark.parametrize("spec,expected", [
    ("c12", True), ("s3", False), ("ea:2,2", True), ("d4", True), ("a4", False), ("c30", True),
])
def test_nilpotent(spec, expected):
    assert st.is_nilpotent(group(spec), lattice(spec)) is expected


@pytest.mark.parametrize("spec,order", [("a4", 4), ("s3", 3), ("c12", 12), ("s4", 4), ("a5", 1), ("d6", 6)])
def test_fitting(spec, order):
    assert st.fitting_subgroup(lattice(spec)).order == order


@pytest.mark.parametrize("spec,expected", [
    ("a4", [2, 3]), ("s4", None), ("s3", [3, 2]), ("c12", [2, 3]), ("a5", None), ("c7", [7]),
])
def test_sylow_tower(spec, expected):
    assert st.sylow_tower(group(spec), lattice(spec)) == expected


@pytest.mark.parametrize("spec,expected", [
    ("s3", True), ("a4", False), ("s4", False), ("c30", True), ("d5", True),
    ("affine:7,0,6,1,6", True), ("affine:5,3", False), ("a5", False),
])
def test_supersolvable(spec, expected):
    L = lattice(spec)
    assert st.is_supersolvable(group(spec), L) is expected
    assert st.huppert_supersolvable(L) is expected


@pytest.mark.parametrize("spec,order", [("s3", 1), ("a4", 4), ("s4", 4), ("c30", 1), ("affine:5,3", 25)])
def test_residual(spec, order):
    R = st.supersolvable_residual(group(spec), lattice(spec))
    assert R.order == order


def test_gaschutz_a4():
    L = lattice("a4")
    W = st.gaschutz_subgroups(L)
    assert [w.order for w in W] == [3, 3, 3, 3]
    assert len({int(L.class_of[w.index]) for w in W}) == 1


def test_gaschutz_supersolvable_includes_whole():
    for spec in ["s3", "c30", "d5"]:
        L = lattice(spec)
        assert L.whole in st.gaschutz_subgroups(L)


# invariants over the small corpus


@pytest.mark.parametrize("spec", SOLVABLE + UNSOLVABLE)
def test_invariants(spec):
    G, L = group(spec), lattice(spec)
    ss = st.is_supersolvable(G, L)
    assert ss == st.huppert_supersolvable(L)
    R = st.supersolvable_residual(G, L)
    assert ss == (R.order == 1)
    normals = L.normal_subgroups()
    for N in normals:
        if st._supersolvable_section(L, L.whole, N, normals):
            assert R.issubset(N)
    F = st.fitting_subgroup(L)
    S = st.solvable_radical(L)
    for N in normals:
        if st.is_nilpotent(N.as_group()):
            assert N.issubset(F)
        if st.is_solvable(N.as_group()):
            assert N.issubset(S)
    if st.is_nilpotent(G, L):
        assert st.has_sylow_tower(G, L)
    if st.is_solvable(G, L):
        W = st.gaschutz_subgroups(L)
        assert W and len({int(L.class_of[w.index]) for w in W}) == 1


def test_sylow_subgroups_have_p_part_order():
    for spec in ["s4", "psl2:7", "a4*c5"]:
        L = lattice(spec)
        n = L.table.size
        for p in factorize(n):
            assert st.sylow_subgroup(L, p).order == p_part(n, p)


# the order-12615 group


def test_example_structure(example_group, example_lattice):
    G, L = example_group, example_lattice
    assert st.sigma_tau(G) == st.SigmaTau(frozenset({3, 5}), frozenset({29}))
    P = st.sylow_subgroup(L, 29)
    assert P.order == 841 and st.is_elementary_abelian(P)
    assert st.hall_subgroup(L, {3, 5}).order == 15
    assert st.sylow_tower(G, L) == [29, 3, 5]
    assert not st.is_supersolvable(G, L)
    assert not st.huppert_supersolvable(L)
    assert st.supersolvable_residual(G, L) == P
    W = st.gaschutz_subgroups(L)
    assert len(W) == 841 and {w.order for w in W} == {15}
    assert len({int(L.class_of[w.index]) for w in W}) == 1
