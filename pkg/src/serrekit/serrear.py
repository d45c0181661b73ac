"""The acyclic homotopy category: embeddings, the Serre functor and AR triangles."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from flint import fmpq_poly

from .columns import inj_resolve_complex, proj_resolve_complex, serre_U
from .exactlinalg import kernel_matrix, rank
from .homotopy import (
    ChainMap,
    Complex,
    ComplexError,
    HomSpace,
    cone,
    cone_data,
    dual_chain_map,
    dual_complex,
    hom_K,
    induced_matrix,
    is_acyclic,
    minimize,
    shift,
    shift_map,
    stalk,
)
from .modrep import Module, dual_D, minimal_proj_resolution


def lam(M: Module) -> Complex:
    """cone of the minimal projective resolution P_M -> M."""
    if M.dim == 0:
        return Complex(M.algebra, {})
    R = minimal_proj_resolution(M)
    P = R.to_complex()
    return cone(ChainMap(P, stalk(M), {0: R.augmentation}, check=False))


def lam_prime(M: Module) -> Complex:
    """cone(M -> E_M) shifted by -1, so M sits in degree 0."""
    if M.dim == 0:
        return Complex(M.algebra, {})
    R = minimal_proj_resolution(dual_D(M))
    E = dual_complex(R.to_complex())
    iota = dual_chain_map(ChainMap(R.to_complex(), stalk(dual_D(M)), {0: R.augmentation}, check=False))
    X = stalk(M)
    iota = ChainMap(X, E, {0: iota[0]}, check=False)
    return shift(cone(iota), -1)


def quotient_model(X: Complex, side: str = "prj") -> Complex:
    """An acyclic complex representing X in the quotient by K^b(prj) or K^b(inj)."""
    if side in ("prj", "projective"):
        _, pi = proj_resolve_complex(X)
        return cone(pi)
    if side in ("inj", "injective"):
        _, iota = inj_resolve_complex(X)
        return shift(cone(iota), -1)
    raise ValueError(f"unknown side {side!r}")


def i_rho(X: Complex) -> Complex:
    return quotient_model(X, "inj")


def serre_S(X: Complex, seed: int = 0) -> Complex:
    """Serre functor on acyclic complexes, minimized."""
    if not is_acyclic(X):
        raise ComplexError("serre_S expects an acyclic complex")
    # minimizing before i_rho keeps the injective resolution small; both
    # steps are isomorphisms in K^b
    U, _ = minimize(serre_U(X), seed=seed)
    Y, _ = minimize(i_rho(U), seed=seed)
    return Y


# -- endomorphism algebras ---------------------------------------------------------


@dataclass
class EndAlgebra:
    space: HomSpace
    basis: list          # chain maps
    table: list          # table[i][j] = coordinates of b_i * b_j
    radical: list        # coordinate vectors spanning the radical

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def field(self):
        return self.space.field

    def multiply(self, x, y) -> list:
        F = self.field
        out = [F.scalar(0)] * self.dimension
        for i, a in enumerate(x):
            if a == 0:
                continue
            for j, b in enumerate(y):
                if b == 0:
                    continue
                ab = a * b
                for k, c in enumerate(self.table[i][j]):
                    if c != 0:
                        out[k] += ab * c
        return out

    def left_matrix(self, x):
        n = self.dimension
        cols = [self.multiply(x, _unit(self.field, n, j)) for j in range(n)]
        return self.field.from_columns(cols, n)

    def one(self) -> list:
        return self.space.class_coords(self.space.X.identity())

    def element(self, x) -> ChainMap:
        f = ChainMap.zero(self.space.X, self.space.X)
        for c, b in zip(x, self.basis):
            if c != 0:
                f = f + b * c
        return f


def _unit(F, n, j):
    v = [F.scalar(0)] * n
    v[j] = F.scalar(1)
    return v


def end_algebra(X: Complex) -> EndAlgebra:
    S = hom_K(X, X)
    basis = S.basis()
    F = S.field
    table = [[S.class_coords(a * b) for b in basis] for a in basis]
    E = EndAlgebra(S, basis, table, [])
    n = len(basis)
    if n:
        if not F.is_rational:
            raise ValueError("radical computation needs a field of characteristic zero")
        Ls = [E.left_matrix(_unit(F, n, i)) for i in range(n)]
        T = F.from_rows([[_trace(Ls[i] * Ls[j]) for j in range(n)] for i in range(n)])
        K = kernel_matrix(T)
        E.radical = K.columns() if K.cols else []
    return E


def _trace(M):
    return sum((M[i, i] for i in range(M.rows)), M.field.scalar(0))


@dataclass
class Indecomposability:
    status: str                      # "yes" | "no" | "inconclusive"
    idempotent: list | None = None   # coordinates in the End basis
    ranks: tuple | None = None       # dims of e End and (1 - e) End

    def __bool__(self):
        return self.status == "yes"


def _charpoly(M) -> fmpq_poly:
    return fmpq_poly(M.m.charpoly().coeffs())


def _eval_poly(E: EndAlgebra, coeffs, x):
    """Horner evaluation of a polynomial at an algebra element."""
    F = E.field
    one = E.one()
    acc = [F.scalar(0)] * E.dimension
    for c in reversed(list(coeffs)):
        acc = E.multiply(acc, x)
        acc = [a + F.scalar(c) * u for a, u in zip(acc, one)]
    return acc


def _idempotent_from(E: EndAlgebra, x):
    """A nontrivial idempotent in k[x], or None if the characteristic polynomial is primary."""
    chi = _charpoly(E.left_matrix(x))
    facs = chi.factor()[1]
    if len(facs) < 2:
        return None
    f1 = facs[0][0] ** facs[0][1]
    rest = chi // f1
    _, _, v = f1.xgcd(rest)
    # u f1 + v rest = 1, so v rest is 1 mod f1 and 0 mod rest
    e_poly = (v * rest) % chi
    e = _eval_poly(E, e_poly.coeffs(), x)
    return e


def is_indecomposable(X: Complex, seed: int = 0, trials: int = 12) -> Indecomposability:
    E = end_algebra(X)
    if E.dimension == 0:
        raise ValueError("the zero object has no indecomposability status")
    if E.dimension - len(E.radical) == 1:
        return Indecomposability("yes")
    F = E.field
    rng = random.Random(seed)
    n = E.dimension
    candidates = [_unit(F, n, i) for i in range(n)]
    candidates += [[F.random_scalar(rng) for _ in range(n)] for _ in range(trials)]
    one = E.one()
    for x in candidates:
        e = _idempotent_from(E, x)
        if e is None or all(c == 0 for c in e) or e == one:
            continue
        if E.multiply(e, e) != e:
            continue
        r1 = rank(E.left_matrix(e))
        return Indecomposability("no", e, (r1, n - r1))
    return Indecomposability("inconclusive")


# -- Auslander-Reiten triangles -----------------------------------------------------


@dataclass
class ARTriangleReport:
    Z: Complex
    SZ: Complex                          # serre_S(Z); the left end is SZ[-1]
    w: ChainMap                          # Z -> SZ
    Y: Complex                           # cone(w)[-1]
    checks: dict = dc_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.get("pass") for c in self.checks.values())


def _nonretractions(W: Complex, Z: Complex, HWZ: HomSpace, EZ: EndAlgebra) -> list:
    """Coordinates (in HWZ's basis) spanning the maps W -> Z that are not split epis."""
    F = HWZ.field
    n = HWZ.dimension
    if n == 0:
        return []
    HZW = hom_K(Z, W)
    if HZW.dimension == 0:
        return [_unit(F, n, i) for i in range(n)]
    # t is a non-retraction iff t s lies in rad End(Z) for every s: Z -> W
    # (Z is indecomposable, so End(Z) is local)
    rad = EZ.radical
    m = EZ.dimension
    Rm = F.from_columns(rad, m) if rad else F.zeros(m, 0)
    # a functional vanishing exactly on the radical
    Q = kernel_matrix(Rm.T) if Rm.cols else F.identity(m)
    rows = []
    tbasis = HWZ.basis()
    for s in HZW.basis():
        cols = [EZ.space.class_coords(t * s) for t in tbasis]
        A = F.from_columns(cols, m)
        rows.append(Q.T * A)
    big = rows[0]
    for r in rows[1:]:
        big = big.vstack(r)
    K = kernel_matrix(big)
    return K.columns() if K.cols else []


def ar_triangle(Z: Complex, probes=None, seed: int = 0) -> ARTriangleReport:
    """Build the AR triangle ending in Z and verify it against probe objects."""
    if not Z.field.is_rational:
        raise ValueError("AR triangles need a field of characteristic zero")
    ind = is_indecomposable(Z, seed)
    if ind.status != "yes":
        raise ValueError(f"ar_triangle expects an indecomposable object (status: {ind.status})")
    EZ = end_algebra(Z)
    SZ = serre_S(Z, seed)
    H = hom_K(Z, SZ)
    F = H.field
    if H.dimension == 0:
        raise ValueError("Hom(Z, SZ) vanishes; no connecting map")
    conds = []
    for r in EZ.radical:
        rmap = EZ.element(r)
        conds.append(induced_matrix(rmap, H, H, side="pre"))
    if conds:
        big = conds[0]
        for c in conds[1:]:
            big = big.vstack(c)
        K = kernel_matrix(big)
        ann = K.columns() if K.cols else []
    else:
        ann = [_unit(F, H.dimension, i) for i in range(H.dimension)]
    if not ann:
        raise ValueError("the annihilator of the radical is empty")
    reps = H.basis()
    w = ChainMap.zero(Z, SZ)
    for c, b in zip(ann[0], reps):
        if c != 0:
            w = w + b * c
    Y = shift(cone(w), -1)
    report = ARTriangleReport(Z, SZ, w, Y)
    report.checks["w_nonzero"] = {
        "pass": not H.is_null_homotopic(w),
        "annihilator_dimension": len(ann),
        "coordinates": [F.format(c) for c in H.class_coords(w)],
    }
    left = shift(SZ, -1)
    ends = {"right": is_indecomposable(Z, seed).status, "left": is_indecomposable(left, seed).status}
    report.checks["endterm_indecomposable"] = {"pass": all(s == "yes" for s in ends.values()), **ends}
    results = []
    ok = True
    for label, W in probes or []:
        HWZ = hom_K(W, Z)
        nonret = _nonretractions(W, Z, HWZ, EZ)
        if not nonret:
            results.append({"probe": label, "nonretractions": 0, "pass": True})
            continue
        HWS = hom_K(W, SZ)
        tb = HWZ.basis()
        cols = [HWS.class_coords(w * t) for t in tb]
        Mw = F.from_columns(cols, HWS.dimension)
        Nr = F.from_columns(nonret, HWZ.dimension)
        r = rank(Mw * Nr) if Mw.rows and Nr.cols else 0
        results.append({"probe": label, "nonretractions": len(nonret), "rank_w_t": r, "pass": r == 0})
        ok = ok and r == 0
    report.checks["factorization"] = {"pass": ok, "probes": results}
    return report


def probe_catalog(modules, window=(-2, 2)) -> list:
    """λ-images of the given modules and their shifts, skipping zero objects."""
    out = []
    for name, M in modules:
        L = lam(M)
        if L.is_zero() or hom_K(L, L).dimension == 0:
            continue
        for s in range(window[0], window[1] + 1):
            out.append((f"shift(lambda({name}),{s})", shift(L, s)))
    return out


def verify_suite(name: str, algebra="a2", seed: int = 0, trials: int = 50):
    """Run a named verification battery; see :mod:`serrekit.suites`."""
    from .suites import verify_suite as run

    return run(name, algebra, seed, trials)
