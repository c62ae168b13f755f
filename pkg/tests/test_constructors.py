import pytest

from h2m.constructors import (
    GroupFormatError,
    Matrix2p,
    NotFound,
    builtin,
    cyclic,
    dihedral,
    elementary_abelian,
    find_irreducible_element,
    paper_example,
    parse_group_file,
    psl2,
    semidirect_affine,
    serialize_group,
)
from h2m.permcore import CapExceeded

from oracles import brute_irreducible_companion, element_order, mat_mul


def test_family_orders():
    assert cyclic(15).order() == 15
    assert dihedral(6).order() == 12
    assert dihedral(1).order() == 2 and dihedral(2).order() == 4
    E = elementary_abelian(29, 2)
    assert E.order() == 841 and E.is_abelian()
    assert all(g.order() == 29 for g in E.generators)


@pytest.mark.parametrize("q,n", [(5, 60), (7, 168), (11, 660)])
def test_psl2(q, n):
    G = psl2(q)
    assert G.order() == n == q * (q * q - 1) // 2
    assert G.degree == q + 1


def test_psl2_rejects_other_q():
    with pytest.raises(ValueError):
        psl2(13)


@pytest.mark.parametrize("p,m", [(29, 15), (5, 3), (7, 3), (5, 4), (3, 8)])
def test_irreducible_element_matches_brute_force(p, m):
    expected = brute_irreducible_companion(p, m)
    if expected is None:
        with pytest.raises(NotFound):
            find_irreducible_element(p, m)
        return
    M = find_irreducible_element(p, m)
    assert tuple(map(tuple, M.rows())) == expected
    assert M.order() == m
    assert not M.char_poly_has_root()


def test_frozen_matrices():
    assert find_irreducible_element(29, 15).rows() == [[0, 28], [1, 4]]
    # x^2 + x + 1 over F_5 is x^2 - 4x - 4
    assert find_irreducible_element(5, 3).rows() == [[0, 4], [1, 4]]


def test_irreducible_element_bad_order():
    with pytest.raises(ValueError):
        find_irreducible_element(5, 7)


def test_matrix_arithmetic_against_tuples():
    M = Matrix2p(3, 1, 4, 1, 7)
    N = Matrix2p(2, 0, 5, 6, 7)
    assert tuple(map(tuple, (M @ N).rows())) == mat_mul(tuple(map(tuple, M.rows())),
                                                        tuple(map(tuple, N.rows())), 7)
    with pytest.raises(ValueError):
        Matrix2p(1, 2, 2, 4, 7)


def test_semidirect_orders():
    M = find_irreducible_element(29, 15)
    assert semidirect_affine(29, M, 841).order() == 12615
    assert semidirect_affine(3, Matrix2p(1, 0, 0, 1, 3)).order() == 9
    R = Matrix2p(0, 4, 1, 0, 5)
    assert R.order() == 4
    assert semidirect_affine(5, R).order() == 100


def test_linear_generator_order():
    G = paper_example(841)
    lin = G.generators[-1]
    assert element_order(lin.images) == 15
    assert lin(0) == 0


def test_example_degree_cap():
    with pytest.raises(CapExceeded):
        paper_example(100)
    assert paper_example(841).name == "example"


@pytest.mark.parametrize("spec,n", [
    ("c6", 6), ("d5", 10), ("s4", 24), ("a5", 60), ("ea:2,3", 8), ("psl2:7", 168),
    ("affine:5,3", 75), ("affine:5,0,4,1,0", 100), ("s3*c5", 30), ("a4*c5", 60), ("cyclic:9", 9),
])
def test_builtin(spec, n):
    G = builtin(spec)
    assert G.order() == n
    assert G.name == spec


@pytest.mark.parametrize("spec", ["q5", "psl2:13", "affine:5,7", "ea:2", "cyclic:x", "affine:5,1,2,2,4"])
def test_builtin_errors(spec):
    with pytest.raises(GroupFormatError):
        builtin(spec)


def test_parse_examples():
    G = parse_group_file("degree 3\ngen (1 2 3)\n")
    assert G.order() == 3
    G = parse_group_file("# heptagon\ndegree 8\ngen (1 2 3 4 5 6 7)\ngen (1 2)(3 4)\n")
    assert len(G.generators) == 2
    G = parse_group_file("degree 2\ngen ()\n")
    assert G.order() == 1


@pytest.mark.parametrize("text", [
    "degree 3\ngen (1 4)",
    "degree 3\ngen (1 2",
    "degree 3\ngen (1 a)",
    "gen (1 2)",
    "degree x\ngen (1 2)",
    "degree 3",
    "degree 3\ngen (1 2)(2 3)",
    "degree 3\nfoo (1 2)",
    "degree 3\ngen 1 2",
])
def test_parse_errors(text):
    with pytest.raises(GroupFormatError):
        parse_group_file(text)


def test_parse_degree_cap():
    with pytest.raises(CapExceeded):
        parse_group_file("degree 2000\ngen (1 2)", max_degree=1024)


@pytest.mark.parametrize("spec", ["s4", "psl2:7", "affine:5,3", "d6"])
def test_serialize_round_trip(spec):
    G = builtin(spec)
    H = parse_group_file(serialize_group(G))
    assert [g.images for g in H.generators] == [g.images for g in G.generators]
    assert H.order() == G.order()


def test_deterministic():
    a = serialize_group(builtin("affine:29,15", 841))
    b = serialize_group(paper_example(841))
    assert a == b


def test_corpus_affine_orders_and_round_trip():
    from h2m.verifier import DEFAULT_CORPUS

    for spec in DEFAULT_CORPUS + ["example"]:
        G = builtin(spec, 841)
        if spec.startswith("affine:") or spec == "example":
            lin = G.generators[-1] if len(G.generators) == 3 else None
            m = lin.order() if lin is not None else 1
            assert G.order() == G.degree * m
        H = parse_group_file(serialize_group(G), 841)
        assert [g.images for g in H.generators] == [g.images for g in G.generators]
