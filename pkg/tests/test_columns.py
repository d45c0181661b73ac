import itertools

import pytest

import oracles as O
from serrekit.catalog import CATALOG, catalog_algebra, load_entry
from serrekit.columns import (
    ProjectiveResolutionKind,
    SerreKind,
    TransposeKind,
    inj_resolve_complex,
    is_quasi_isomorphism,
    nakayama,
    phi,
    proj_resolve_complex,
    serre_U,
    totalize,
    transpose_column,
)
from serrekit.homotopy import (
    Complex,
    homotopy_equivalent,
    is_contractible,
    minimize,
    shift,
    stalk,
    zero_complex,
)
from serrekit.modrep import dual_D, free_module, hom_basis, injective, is_injective, projective, simple, zero_module
from serrekit.serrear import lam

A2 = catalog_algebra("a2")
A2op = A2.opposite()
A3 = catalog_algebra("a3")
S1, S2, P1, P2 = simple(A2, "1"), simple(A2, "2"), projective(A2, "1"), projective(A2, "2")
I1, I2 = injective(A2, "1"), injective(A2, "2")


def regular(A):
    return free_module(A, range(len(A.vertices)))


def two_term(M, N, deg=0):
    (f,) = hom_basis(M, N)
    return Complex(M.algebra, {deg: M, deg + 1: N}, {deg: f})


def assert_equivalent(X, Y):
    e = homotopy_equivalent(X, Y)
    assert e, e.witness
    assert O.certificate_ok(e.certificate)


def test_totalize_trivial_cases():
    kind = ProjectiveResolutionKind(A2)
    assert totalize(zero_complex(A2), kind).is_zero()
    col = kind.column(S1).complex
    T = totalize(shift(stalk(S1), -1), kind)
    assert T == shift(col, -1)


def test_totalize_window():
    kind = ProjectiveResolutionKind(A2)
    X = two_term(P1, S1, deg=0)
    T = totalize(X, kind)
    lo = min(kind.column(X[n]).complex.lo + n for n in X.degrees)
    hi = max(kind.column(X[n]).complex.hi + n for n in X.degrees)
    assert (T.lo, T.hi) == (lo, hi)


def test_projective_resolution_examples():
    X = stalk(P1)
    P, pi = proj_resolve_complex(X)
    assert P == X and pi == X.identity()
    P, pi = proj_resolve_complex(stalk(S1))
    assert is_quasi_isomorphism(pi)
    assert_equivalent(P, two_term(P2, P1, deg=-1))
    P, _ = proj_resolve_complex(lam(S1))
    assert is_contractible(P).contractible


def test_injective_resolution_examples():
    X = stalk(I1)
    I, iota = inj_resolve_complex(X)
    assert I == X and iota == X.identity()
    I, iota = inj_resolve_complex(stalk(S2))
    assert is_quasi_isomorphism(iota)
    assert_equivalent(I, two_term(I2, I1, deg=0))
    I, _ = inj_resolve_complex(lam(S1))
    assert is_contractible(I).contractible


def test_transpose_column_examples():
    assert transpose_column(zero_module(A2op), A2).is_zero()
    C = transpose_column(simple(A2op, "2"), A2)
    assert (C.lo, C.hi) == (0, 2)
    assert_equivalent(C, shift(lam(S1), -2))
    C = transpose_column(regular(A2op), A2)
    assert_equivalent(C, stalk(regular(A2)))


def test_phi_examples():
    assert phi(zero_complex(A2op)).is_zero()
    Y = phi(stalk(simple(A2op, "2")))
    assert Y.algebra == A2
    assert_equivalent(Y, shift(lam(S1), -2))
    assert_equivalent(phi(stalk(regular(A2op))), stalk(regular(A2)))


def test_nakayama():
    nu = nakayama(P1)
    assert nu.dims == I1.dims and is_injective(nu)
    assert nakayama(zero_module(A2)).dim == 0
    L = regular(A2)
    assert nakayama(L).dims == dual_D(regular(A2op)).dims


def test_serre_U_examples():
    assert serre_U(zero_complex(A2)).is_zero()
    Y, c = minimize(serre_U(stalk(P1)))
    assert Y.lo == Y.hi == 0 and Y[0].dims == I1.dims and O.certificate_ok(c)
    (f,) = hom_basis(S2, I2)
    (g,) = hom_basis(I2, I1)
    target = Complex(A2, {-2: S2, -1: I2, 0: I1}, {-2: f, -1: g})
    assert_equivalent(serre_U(stalk(S1)), target)


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_serre_U_sends_projectives_to_injectives(name):
    A = catalog_algebra(name)
    for v in A.vertices:
        Y, _ = minimize(serre_U(stalk(projective(A, v))))
        assert (Y.lo, Y.hi) == (0, 0)
        assert Y[0].dims == injective(A, v).dims


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_phi_of_projectives_is_projective(name):
    A = catalog_algebra(name)
    Aop = A.opposite()
    for v in A.vertices:
        Y, _ = minimize(phi(stalk(projective(Aop, v))))
        assert (Y.lo, Y.hi) == (0, 0)
        assert Y[0].dims == projective(A, v).dims


def _composable(mods):
    for M, N, L in itertools.product(mods, repeat=3):
        for f in hom_basis(M, N):
            for g in hom_basis(N, L):
                yield f, g


@pytest.mark.parametrize("Kind", [ProjectiveResolutionKind, SerreKind])
def test_covariant_columns_respect_composition(Kind):
    kind = Kind(A3)
    for f, g in _composable([M for _, M in load_entry("a3").indecomposables()]):
        assert kind.map(g * f) == kind.map(g) * kind.map(f)


def test_transpose_columns_reverse_composition():
    kind = TransposeKind(A3)
    mods = [dual_D(M) for _, M in load_entry("a3").indecomposables()]
    for f, g in _composable(mods):
        assert kind.map(g * f) == kind.map(f) * kind.map(g)
