import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles as O
from serrekit.catalog import CATALOG, catalog_algebra
from serrekit.pathalg import AlgebraError, load_algebra


def _monomial(desc):
    arrows = [(a["name"], a["from"], a["to"]) for a in desc["arrows"]]
    forbidden = [tuple(t["path"]) for r in desc["relations"] for t in r]
    return desc["vertices"], arrows, forbidden


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_dimension_matches_path_enumeration(name):
    vs, arrows, forbidden = _monomial(CATALOG[name])
    assert catalog_algebra(name).dimension == len(O.paths(vs, arrows, forbidden))


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_projective_dims_match_path_counts(name):
    from serrekit import projective

    A = catalog_algebra(name)
    P = O.projective_dims(*_monomial(CATALOG[name]))
    for i, v in enumerate(A.vertices):
        assert list(projective(A, v).dims) == P[i]


def test_a2_basis():
    assert sorted(catalog_algebra("a2").basis_names()) == ["a", "e1", "e2"]


def test_n3_basis_drops_the_relation_path():
    assert sorted(catalog_algebra("n3").basis_names()) == ["a", "b", "e1", "e2", "e3"]


def test_loop_is_rejected():
    with pytest.raises(AlgebraError, match="oriented cycle"):
        load_algebra({"vertices": ["1"], "arrows": [{"name": "x", "from": "1", "to": "1"}]})


def test_two_cycle_is_rejected():
    desc = {"vertices": ["1", "2"], "arrows": [{"name": "a", "from": "1", "to": "2"}, {"name": "b", "from": "2", "to": "1"}]}
    with pytest.raises(AlgebraError, match="oriented cycle"):
        load_algebra(desc)


def test_unknown_arrow_in_relation():
    desc = dict(CATALOG["a2"], relations=[[{"coeff": "1", "path": ["zz"]}]])
    with pytest.raises(AlgebraError):
        load_algebra(desc)


def test_opposite():
    A = catalog_algebra("a2")
    Aop = A.opposite()
    (a,) = Aop.arrows
    assert (Aop.vertices[a.source], Aop.vertices[a.target]) == ("2", "1")
    assert Aop.dimension == A.dimension
    assert Aop.opposite() == A


@pytest.mark.parametrize("name,expected", [("a2", 1), ("a3", 1), ("n3", 2), ("d4", 1)])
def test_global_dimension(name, expected):
    assert catalog_algebra(name).global_dimension() == expected


def test_semisimple_has_global_dimension_zero():
    A = load_algebra({"vertices": ["1", "2"], "arrows": []})
    assert A.global_dimension() == 0
    assert A.dimension == 2


def test_prime_field_algebra():
    A = load_algebra(dict(CATALOG["a3"], field={"kind": "prime", "p": 5}))
    assert A.field.p == 5 and A.dimension == 6


def test_json_round_trip():
    for name in CATALOG:
        A = catalog_algebra(name)
        assert load_algebra(A.to_json()) == A


@st.composite
def linear_quivers(draw):
    n = draw(st.integers(2, 5))
    arrows = []
    for i in range(1, n):
        a = (f"x{i}", str(i), str(i + 1)) if draw(st.booleans()) else (f"x{i}", str(i + 1), str(i))
        arrows.append(a)
    # zero relations on consecutive composable arrows
    rels = []
    for (a, s, t), (b, s2, t2) in zip(arrows, arrows[1:]):
        if t == s2 and draw(st.booleans()):
            rels.append((a, b))
        if t2 == s and draw(st.booleans()):
            rels.append((b, a))
    return [str(i) for i in range(1, n + 1)], arrows, rels


@given(linear_quivers())
def test_random_monomial_dimension(q):
    vs, arrows, rels = q
    desc = {
        "vertices": vs,
        "arrows": [{"name": a, "from": s, "to": t} for a, s, t in arrows],
        "relations": [[{"coeff": "1", "path": list(r)}] for r in rels],
    }
    A = load_algebra(desc)
    assert A.dimension == len(O.paths(vs, arrows, rels))
    assert A.opposite().dimension == A.dimension
