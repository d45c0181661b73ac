"""Bounded complexes of modules and the homotopy category.

Conventions: differentials raise degree, ``shift(X, n)^m = X^(m+n)`` with the
differential multiplied by ``(-1)^n``, and ``cone(f)^n = X^(n+1) ⊕ Y^n`` with
differential ``[[-d_X, 0], [f, d_Y]]``.  A homotopy from ``X`` to ``Y`` is a
dict ``n -> (X^n -> Y^(n-1))``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .exactlinalg import Matrix, _rref, column_space, kernel_matrix, rank, solve
from .modrep import (
    Module,
    ModuleMap,
    dual_D,
    dual_map,
    direct_sum,
    fitting_split,
    hom_space,
    simple,
    zero_module,
)
from .pathalg import Algebra


class ComplexError(ValueError):
    pass


def _zero_map(S: Module, T: Module) -> ModuleMap:
    return ModuleMap.zero(S, T)


class Complex:
    """A bounded complex; zero terms at either end are trimmed."""

    def __init__(self, algebra: Algebra, terms: dict, differentials: dict | None = None, check: bool = True):
        self.algebra = algebra
        self._zero = zero_module(algebra)
        differentials = differentials or {}
        nz = [int(n) for n, M in terms.items() if M.dim]
        if not nz:
            self.lo, self.hi = 0, -1
            self.terms, self.diffs = {}, {}
            return
        self.lo, self.hi = min(nz), max(nz)
        self.terms = {}
        for n in range(self.lo, self.hi + 1):
            M = terms.get(n)
            if M is not None and M.algebra != algebra:
                raise ComplexError(f"term in degree {n} lives over a different algebra")
            self.terms[n] = M if M is not None and M.dim else self._zero
        self.diffs = {}
        for n in range(self.lo, self.hi):
            d = differentials.get(n)
            S, T = self.terms[n], self.terms[n + 1]
            if d is None or S.dim == 0 or T.dim == 0:
                d = _zero_map(S, T)
            elif d.source.dims != S.dims or d.target.dims != T.dims:
                raise ComplexError(f"differential {n} has the wrong shape")
            else:
                d = ModuleMap(S, T, d.maps, check=check)
            self.diffs[n] = d
        if check:
            for n in range(self.lo, self.hi - 1):
                if not (self.diffs[n + 1] * self.diffs[n]).is_zero():
                    raise ComplexError(f"d^{n + 1} d^{n} is not zero")

    @property
    def field(self):
        return self.algebra.field

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def __getitem__(self, n: int) -> Module:
        return self.terms.get(n, self._zero)

    def d(self, n: int) -> ModuleMap:
        """Differential X^n -> X^(n+1)."""
        got = self.diffs.get(n)
        return got if got is not None else _zero_map(self[n], self[n + 1])

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_dim(self) -> int:
        return sum(M.dim for M in self.terms.values())

    def __eq__(self, other):
        if not isinstance(other, Complex):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and (self.lo, self.hi) == (other.lo, other.hi)
            and all(self.terms[n] == other.terms[n] for n in self.terms)
            and all(self.diffs[n] == other.diffs[n] for n in self.diffs)
        )

    def __hash__(self):
        return hash((self.lo, self.hi, tuple(M.dims for M in self.terms.values())))

    def __repr__(self):
        if self.is_zero():
            return "<Complex 0>"
        body = ", ".join(f"{n}:{self.terms[n].dims}" for n in self.degrees)
        return f"<Complex {body}>"

    def identity(self) -> "ChainMap":
        return ChainMap(self, self, {n: M.identity() for n, M in self.terms.items()}, check=False)

    def cohomology_dims(self) -> dict:
        """``n -> dimension vector of H^n``, nonzero degrees only."""
        out = {}
        for n in self.degrees:
            M = self[n]
            vec = []
            for v in range(len(M.dims)):
                r_out = rank(self.d(n).maps[v])
                r_in = rank(self.d(n - 1).maps[v])
                vec.append(M.dims[v] - r_out - r_in)
            if any(vec):
                out[n] = tuple(vec)
        return out


def stalk(M: Module, n: int = 0) -> Complex:
    return Complex(M.algebra, {n: M})


def zero_complex(A: Algebra) -> Complex:
    return Complex(A, {})


class ChainMap:
    def __init__(self, source: Complex, target: Complex, components: dict, check: bool = True):
        self.source, self.target = source, target
        self.components = {}
        for n in source.degrees:
            if target[n].dim == 0:
                continue
            c = components.get(n)
            if c is None:
                continue
            if c.source.dims != source[n].dims or c.target.dims != target[n].dims:
                raise ComplexError(f"chain map component {n} has the wrong shape")
            self.components[n] = c
        if check and not self.commutes():
            raise ComplexError("chain map does not commute with the differentials")

    def __getitem__(self, n: int) -> ModuleMap:
        c = self.components.get(n)
        return c if c is not None else _zero_map(self.source[n], self.target[n])

    def commutes(self) -> bool:
        X, Y = self.source, self.target
        for n in range(min(X.lo, Y.lo) - 1, max(X.hi, Y.hi) + 1):
            if X[n].dim == 0 or Y[n + 1].dim == 0:
                continue
            if Y.d(n) * self[n] != self[n + 1] * X.d(n):
                return False
        return True

    @staticmethod
    def zero(X: Complex, Y: Complex) -> "ChainMap":
        return ChainMap(X, Y, {}, check=False)

    def __mul__(self, other):
        if isinstance(other, ChainMap):
            comps = {n: self[n] * other[n] for n in other.source.degrees}
            return ChainMap(other.source, self.target, comps, check=False)
        return ChainMap(self.source, self.target, {n: c * other for n, c in self.components.items()}, check=False)

    def __rmul__(self, scalar):
        return self * scalar

    def _combine(self, other, op):
        degs = set(self.components) | set(other.components)
        return ChainMap(self.source, self.target, {n: op(self[n], other[n]) for n in degs}, check=False)

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __neg__(self):
        return self * -1

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components.values())

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        degs = set(self.components) | set(other.components)
        return all(self[n] == other[n] for n in degs)

    __hash__ = None

    def __repr__(self):
        return f"<ChainMap {self.source!r} -> {self.target!r}>"


# -- homotopies ---------------------------------------------------------------


def homotopy_boundary(h: dict, X: Complex, Y: Complex) -> ChainMap:
    """The null-homotopic map ``d_Y h + h d_X``."""
    comps = {}
    for n in X.degrees:
        if Y[n].dim == 0:
            continue
        acc = _zero_map(X[n], Y[n])
        hn = h.get(n)
        if hn is not None:
            acc = acc + Y.d(n - 1) * hn
        hn1 = h.get(n + 1)
        if hn1 is not None:
            acc = acc + hn1 * X.d(n)
        comps[n] = acc
    return ChainMap(X, Y, comps, check=False)


def sandwich(g: ChainMap, h: dict, f: ChainMap) -> dict:
    """``g h f`` for a homotopy ``h`` between the target of f and the source of g."""
    return {n: g[n - 1] * hn * f[n] for n, hn in h.items()}


def _hsum(*hs) -> dict:
    out = {}
    for h in hs:
        for n, m in h.items():
            out[n] = out[n] + m if n in out else m
    return out


def _hscale(h: dict, c) -> dict:
    return {n: m * c for n, m in h.items()}


@dataclass
class Certificate:
    """Witness that ``f: X -> Y`` is a homotopy equivalence with inverse ``g``.

    ``g f - 1 = d h_X + h_X d`` and ``f g - 1 = d h_Y + h_Y d``.
    """

    f: ChainMap
    g: ChainMap
    h_X: dict
    h_Y: dict

    @property
    def source(self) -> Complex:
        return self.f.source

    @property
    def target(self) -> Complex:
        return self.f.target

    def verify(self) -> bool:
        X, Y = self.source, self.target
        if self.g.source is not Y and self.g.source != Y:
            return False
        if not (self.f.commutes() and self.g.commutes()):
            return False
        lhs = self.g * self.f - X.identity()
        if lhs != homotopy_boundary(self.h_X, X, X):
            return False
        rhs = self.f * self.g - Y.identity()
        return rhs == homotopy_boundary(self.h_Y, Y, Y)

    def inverse(self) -> "Certificate":
        return Certificate(self.g, self.f, self.h_Y, self.h_X)

    def then(self, other: "Certificate") -> "Certificate":
        """Compose ``X ≃ Y`` (self) with ``Y ≃ Z`` (other)."""
        f1, g1, f2, g2 = self.f, self.g, other.f, other.g
        f = f2 * f1
        g = g1 * g2
        hX = _hsum(sandwich(g1, other.h_X, f1), self.h_X)
        hZ = _hsum(sandwich(f2, self.h_Y, g2), other.h_Y)
        return Certificate(f, g, hX, hZ)

    @staticmethod
    def identity(X: Complex) -> "Certificate":
        return Certificate(X.identity(), X.identity(), {}, {})


@dataclass
class Triangle:
    X: Complex
    Y: Complex
    Z: Complex
    u: ChainMap
    v: ChainMap
    w: ChainMap
    certificate: Certificate | None = None


# -- constructions --------------------------------------------------------------


def shift(X: Complex, n: int) -> Complex:
    sign = -1 if n % 2 else 1
    terms = {m - n: X[m] for m in X.degrees}
    diffs = {m - n: X.d(m) * sign for m in X.degrees}
    return Complex(X.algebra, terms, diffs, check=False)


def shift_map(f: ChainMap, n: int) -> ChainMap:
    X, Y = shift(f.source, n), shift(f.target, n)
    return ChainMap(X, Y, {m - n: c for m, c in f.components.items()}, check=False)


def shift_homotopy(h: dict, n: int) -> dict:
    sign = -1 if n % 2 else 1
    return {m - n: c * sign for m, c in h.items()}


def shift_certificate(c: Certificate, n: int) -> Certificate:
    return Certificate(shift_map(c.f, n), shift_map(c.g, n), shift_homotopy(c.h_X, n), shift_homotopy(c.h_Y, n))


@dataclass
class DirectSum:
    complex: Complex
    injections: list
    projections: list


def direct_sum_complexes(Xs, algebra: Algebra | None = None) -> DirectSum:
    Xs = list(Xs)
    A = Xs[0].algebra if Xs else algebra
    lo = min((X.lo for X in Xs if not X.is_zero()), default=0)
    hi = max((X.hi for X in Xs if not X.is_zero()), default=-1)
    terms, diffs, inj, proj = {}, {}, {}, {}
    for n in range(lo, hi + 1):
        S, i, p = direct_sum([X[n] for X in Xs], A)
        terms[n], inj[n], proj[n] = S, i, p
    for n in range(lo, hi):
        diffs[n] = sum(
            (inj[n + 1][k] * X.d(n) * proj[n][k] for k, X in enumerate(Xs)),
            start=_zero_map(terms[n], terms[n + 1]),
        )
    S = Complex(A, terms, diffs, check=False)
    injections = [ChainMap(X, S, {n: inj[n][k] for n in X.degrees}, check=False) for k, X in enumerate(Xs)]
    projections = [ChainMap(S, X, {n: proj[n][k] for n in X.degrees}, check=False) for k, X in enumerate(Xs)]
    return DirectSum(S, injections, projections)


def direct_sum_of(*Xs) -> Complex:
    return direct_sum_complexes(Xs).complex


@dataclass
class ConeData:
    complex: Complex
    map: ChainMap
    # degree n -> (iX, pX, iY, pY) with the X-part being X^(n+1)
    parts: dict = dc_field(default_factory=dict)

    def triangle(self) -> Triangle:
        f, C = self.map, self.complex
        X, Y = f.source, f.target
        v = ChainMap(Y, C, {n: self.parts[n][2] for n in Y.degrees if n in self.parts}, check=False)
        X1 = shift(X, 1)
        w = ChainMap(C, X1, {n: self.parts[n][1] for n in C.degrees if n in self.parts}, check=False)
        return Triangle(X, Y, C, f, v, w, Certificate.identity(C))


def cone_data(f: ChainMap) -> ConeData:
    X, Y = f.source, f.target
    A = X.algebra
    lo = min(X.lo - 1, Y.lo) if not X.is_zero() else Y.lo
    hi = max(X.hi - 1, Y.hi) if not X.is_zero() else Y.hi
    if X.is_zero() and Y.is_zero():
        lo, hi = 0, -1
    terms, parts = {}, {}
    for n in range(lo, hi + 2):
        S, (iX, iY), (pX, pY) = direct_sum([X[n + 1], Y[n]], A)
        terms[n], parts[n] = S, (iX, pX, iY, pY)
    diffs = {}
    for n in range(lo, hi + 1):
        iX1, _, iY1, _ = parts[n + 1]
        _, pX, _, pY = parts[n]
        diffs[n] = iX1 * (-X.d(n + 1)) * pX + iY1 * f[n + 1] * pX + iY1 * Y.d(n) * pY
    terms.pop(hi + 1)
    C = Complex(A, terms, diffs)
    return ConeData(C, f, parts)


def cone(f: ChainMap) -> Complex:
    return cone_data(f).complex


def dual_complex(X: Complex) -> Complex:
    """Termwise D with degrees negated: (DX)^n = D(X^-n)."""
    A = X.algebra.opposite()
    terms = {-n: dual_D(X[n]) for n in X.degrees}
    diffs = {-n - 1: dual_map(X.d(n)) for n in X.degrees}
    return Complex(A, terms, diffs, check=False)


def dual_chain_map(f: ChainMap) -> ChainMap:
    X, Y = dual_complex(f.target), dual_complex(f.source)
    return ChainMap(X, Y, {-n: dual_map(c) for n, c in f.components.items()}, check=False)


def is_acyclic(X: Complex) -> bool:
    return not X.cohomology_dims()


# -- Hom in the homotopy category ---------------------------------------------


class _Blocks:
    """Coordinates on a direct sum of module hom spaces, one per degree."""

    def __init__(self, pairs):
        self.spaces = {}
        self.offs = {}
        total = 0
        for n, H in pairs:
            if H.dim:
                self.spaces[n] = H
                self.offs[n] = total
                total += H.dim
        self.dim = total

    def coords_into(self, vec: list, n: int, f: ModuleMap, sign=1):
        H = self.spaces.get(n)
        if H is None:
            return
        o = self.offs[n]
        for k, c in enumerate(H.coords(f)):
            if c != 0:
                vec[o + k] += c * sign

    def maps(self, vec) -> dict:
        out = {}
        for n, H in self.spaces.items():
            o = self.offs[n]
            coeffs = vec[o:o + H.dim]
            if any(c != 0 for c in coeffs):
                out[n] = H.combine(coeffs)
        return out

    def basis_elements(self):
        for n, H in self.spaces.items():
            for k, b in enumerate(H.basis):
                yield self.offs[n] + k, n, b


def _homotopy_image(X: Complex, Y: Complex, H0: _Blocks, F):
    """Matrix of h -> d h + h d in H0-coordinates, plus the homotopy blocks."""
    pairs = [(n, hom_space(X[n], Y[n - 1])) for n in X.degrees if Y[n - 1].dim]
    Hm = _Blocks(pairs)
    cols = []
    zero = F.scalar(0)
    for _, n, h in Hm.basis_elements():
        vec = [zero] * H0.dim
        if n in H0.spaces:
            H0.coords_into(vec, n, Y.d(n - 1) * h)
        if n - 1 in H0.spaces:
            H0.coords_into(vec, n - 1, h * X.d(n - 1))
        cols.append(vec)
    return F.from_columns(cols, H0.dim), Hm


class HomSpace:
    """Hom in the homotopy category: chain maps modulo null-homotopic maps."""

    def __init__(self, X: Complex, Y: Complex):
        if X.algebra != Y.algebra:
            raise ComplexError("algebra mismatch")
        self.X, self.Y = X, Y
        F = self.field = X.field
        self.blocks = _Blocks([(n, hom_space(X[n], Y[n])) for n in X.degrees if Y[n].dim])
        B = self.blocks
        rows = _Blocks([(n, hom_space(X[n], Y[n + 1])) for n in X.degrees if Y[n + 1].dim])
        zero = F.scalar(0)
        cols = []
        for _, n, b in B.basis_elements():
            vec = [zero] * rows.dim
            rows.coords_into(vec, n, Y.d(n) * b)
            rows.coords_into(vec, n - 1, b * X.d(n - 1), sign=-1)
            cols.append(vec)
        C = F.from_columns(cols, rows.dim)
        self.Z = kernel_matrix(C) if rows.dim else F.identity(B.dim)
        self.N, self._hblocks = _homotopy_image(X, Y, B, F)
        self.null_rank = rank(self.N) if self.N.cols and self.N.rows else 0
        self._kbasis = None

    @property
    def chain_dimension(self) -> int:
        return self.Z.cols

    @property
    def dimension(self) -> int:
        return self.Z.cols - self.null_rank

    hom_K_dimension = dimension

    def from_coords(self, vec) -> ChainMap:
        return ChainMap(self.X, self.Y, self.blocks.maps(list(vec)), check=False)

    def coords(self, f: ChainMap) -> list:
        vec = [self.field.scalar(0)] * self.blocks.dim
        for n in self.blocks.spaces:
            self.blocks.coords_into(vec, n, f[n])
        return vec

    def chain_maps(self) -> list[ChainMap]:
        return [self.from_coords(c) for c in self.Z.columns()] if self.Z.cols else []

    def null_homotopic(self) -> list[ChainMap]:
        if not self.N.cols or not self.N.rows:
            return []
        return [self.from_coords(c) for c in column_space(self.N).columns()]

    def _setup_kbasis(self):
        if self._kbasis is not None:
            return
        F = self.field
        Nb = column_space(self.N) if self.N.cols and self.N.rows else F.zeros(self.blocks.dim, 0)
        if self.Z.cols:
            pivots, _ = _rref(Nb.hstack(self.Z))
            sel = [j - Nb.cols for j in pivots if j >= Nb.cols]
        else:
            sel = []
        Zs = F.from_columns([self.Z.column(j) for j in sel], self.blocks.dim)
        self._kbasis = Zs
        self._W = Zs.hstack(Nb)

    def basis(self) -> list[ChainMap]:
        """Chain maps whose classes form a basis of the quotient."""
        self._setup_kbasis()
        return [self.from_coords(c) for c in self._kbasis.columns()] if self._kbasis.cols else []

    def class_coords(self, f: ChainMap) -> list:
        """Coordinates of the class of ``f`` in the basis of :meth:`basis`."""
        self._setup_kbasis()
        x = solve(self._W, self.coords(f)) if self._W.cols else []
        if x is None:
            raise ComplexError("not a chain map in this hom space")
        return list(x[: self._kbasis.cols])

    def is_null_homotopic(self, f: ChainMap) -> bool:
        return all(c == 0 for c in self.class_coords(f))

    def null_homotopy(self, f: ChainMap) -> dict | None:
        """A homotopy h with ``d h + h d = f``, or None."""
        if not self.blocks.dim:
            return {}
        if not self.N.cols:
            return {} if f.is_zero() else None
        x = solve(self.N, self.coords(f))
        return None if x is None else self._hblocks.maps(list(x))


def hom_K(X: Complex, Y: Complex) -> HomSpace:
    return HomSpace(X, Y)


def induced_matrix(u: ChainMap, S1: HomSpace, S2: HomSpace, side: str = "post") -> Matrix:
    """Matrix of ``[a] -> [u a]`` (post) or ``[a] -> [a u]`` (pre) between hom spaces."""
    cols = []
    for a in S1.basis():
        b = u * a if side == "post" else a * u
        cols.append(S2.class_coords(b))
    return S1.field.from_columns(cols, S2.dimension)


# -- contractibility and equivalence --------------------------------------------


@dataclass
class Contraction:
    contractible: bool
    homotopy: dict | None = None


def is_contractible(X: Complex) -> Contraction:
    """Solve ``d h + h d = 1``; the system is linear so the answer is definitive."""
    if X.is_zero():
        return Contraction(True, {})
    F = X.field
    B = _Blocks([(n, hom_space(X[n], X[n])) for n in X.degrees])
    N, Hm = _homotopy_image(X, X, B, F)
    rhs = [F.scalar(0)] * B.dim
    for n in X.degrees:
        B.coords_into(rhs, n, X[n].identity())
    if not N.cols:
        return Contraction(False)
    x = solve(N, rhs)
    if x is None:
        return Contraction(False)
    return Contraction(True, Hm.maps(list(x)))


def certificate_from_cone(data: ConeData, h: dict) -> Certificate:
    """Turn a contraction of cone(f) into an inverse of f with homotopies."""
    f = data.map
    X, Y = f.source, f.target
    parts = data.parts
    g, hX, hY = {}, {}, {}
    for n, Hn in h.items():
        if n not in parts or n - 1 not in parts:
            continue
        iX, _, iY, _ = parts[n]
        _, pX1, _, pY1 = parts[n - 1]
        # blocks of H^n: cone^n = X^(n+1) + Y^n  ->  cone^(n-1) = X^n + Y^(n-1)
        if X[n].dim and Y[n].dim:
            g[n] = pX1 * Hn * iY
        if X[n].dim and X[n + 1].dim:
            hX[n + 1] = pX1 * Hn * iX
        if Y[n - 1].dim and Y[n].dim:
            hY[n] = -(pY1 * Hn * iY)
    gmap = ChainMap(Y, X, g, check=False)
    return Certificate(f, gmap, hX, hY)


@dataclass
class Equivalence:
    status: str                      # "equivalent" | "not-equivalent" | "inconclusive"
    certificate: Certificate | None = None
    witness: dict | None = None

    def __bool__(self):
        return self.status == "equivalent"


def default_probes(X: Complex, Y: Complex) -> list[Complex]:
    A = X.algebra
    lo = min(X.lo, Y.lo) if not (X.is_zero() and Y.is_zero()) else 0
    hi = max(X.hi, Y.hi) if not (X.is_zero() and Y.is_zero()) else 0
    return [stalk(simple(A, v), n) for v in A.vertices for n in range(lo - 1, hi + 2)]


def invariant_witness(X: Complex, Y: Complex, probes=None) -> dict | None:
    hx, hy = X.cohomology_dims(), Y.cohomology_dims()
    if hx != hy:
        return {"invariant": "cohomology", "lhs": _jsonable(hx), "rhs": _jsonable(hy)}
    for k, T in enumerate(probes if probes is not None else default_probes(X, Y)):
        a, b = hom_K(T, X).dimension, hom_K(T, Y).dimension
        if a != b:
            return {"invariant": "hom_K(probe, -)", "probe": _probe_label(T, k), "lhs": a, "rhs": b}
        a, b = hom_K(X, T).dimension, hom_K(Y, T).dimension
        if a != b:
            return {"invariant": "hom_K(-, probe)", "probe": _probe_label(T, k), "lhs": a, "rhs": b}
    return None


def _probe_label(T: Complex, k: int) -> str:
    if len(T.terms) == 1:
        (n, M), = T.terms.items()
        return f"stalk {M.name or M.dims} in degree {n}"
    return f"probe {k}"


def _jsonable(coh: dict) -> dict:
    return {str(n): list(v) for n, v in coh.items()}


def homotopy_equivalent(X: Complex, Y: Complex, seed: int = 0, trials: int = 8, probes=None) -> Equivalence:
    if X.algebra != Y.algebra:
        raise ComplexError("algebra mismatch")
    if X == Y:
        return Equivalence("equivalent", Certificate.identity(X))
    witness = invariant_witness(X, Y, probes)
    if witness is not None:
        return Equivalence("not-equivalent", witness=witness)
    S = hom_K(X, Y)
    F = X.field
    rng = random.Random(seed)
    reps = S.basis()
    if not reps:
        reps = [ChainMap.zero(X, Y)]
    for _ in range(trials):
        f = ChainMap.zero(X, Y)
        for r in reps:
            f = f + r * F.random_scalar(rng)
        data = cone_data(f)
        c = is_contractible(data.complex)
        if c.contractible:
            cert = certificate_from_cone(data, c.homotopy)
            if cert.verify():
                return Equivalence("equivalent", cert)
    return Equivalence("inconclusive")


# -- minimization ---------------------------------------------------------------


def _replace(X: Complex, n: int, U: Module, V: Module, dn: ModuleMap, dprev: ModuleMap, dnext: ModuleMap) -> Complex:
    terms = dict(X.terms)
    diffs = dict(X.diffs)
    terms[n], terms[n + 1] = U, V
    diffs[n] = dn
    diffs[n - 1] = dprev
    diffs[n + 1] = dnext
    return Complex(X.algebra, terms, diffs)


def _generalized_inverse(d: ModuleMap):
    """Solve ``d g d = d`` for a module map g, or return None."""
    H = hom_space(d.target, d.source)
    if not H.dim:
        return None
    R = hom_space(d.source, d.target)
    F = d.source.field
    cols = []
    for b in H.basis:
        cols.append(R.coords(d * b * d))
    M = F.from_columns(cols, R.dim)
    x = solve(M, R.coords(d)) if R.dim else None
    return None if x is None else H.combine(x)


def _cancel(X: Complex, n: int, g: ModuleMap):
    """Gaussian elimination of the part of d^n made invertible by g."""
    d = X.d(n)
    U, iU, pU, U2, iU2, pU2 = fitting_split(g * d)
    if U.dim == 0:
        return None
    V, iV, pV, V2, iV2, pV2 = fitting_split(d * g)
    if V.dims != U.dims:
        return None
    alpha = pV * d * iU
    try:
        ainv = ModuleMap(V, U, [m.inverse() for m in alpha.maps], check=False)
    except ZeroDivisionError:
        return None
    beta = pV * d * iU2
    gamma = pV2 * d * iU
    delta = pV2 * d * iU2
    dn = delta - gamma * ainv * beta
    Y = _replace(X, n, U2, V2, dn, pU2 * X.d(n - 1), X.d(n + 1) * iV2)
    fc = {m: X[m].identity() for m in X.degrees}
    gc = dict(fc)
    fc[n] = pU2
    fc[n + 1] = pV2 - gamma * ainv * pV
    gc[n] = iU2 - iU * ainv * beta
    gc[n + 1] = iV2
    f = ChainMap(X, Y, {m: _rebase(c, X[m], Y[m]) for m, c in fc.items()}, check=False)
    gm = ChainMap(Y, X, {m: _rebase(c, Y[m], X[m]) for m, c in gc.items()}, check=False)
    hX = {n + 1: -(iU * ainv * pV)}
    return Certificate(f, gm, hX, {})


def _rebase(m: ModuleMap, S: Module, T: Module) -> ModuleMap:
    return ModuleMap(S, T, m.maps, check=False)


def minimize(X: Complex, seed: int = 0, trials: int = 3) -> tuple[Complex, Certificate]:
    """Cancel split pieces of the differentials; returns (Y, certificate X ≃ Y)."""
    rng = random.Random(seed)
    cert = Certificate.identity(X)
    cur = X
    progress = True
    while progress:
        progress = False
        for n in list(cur.degrees):
            while n in cur.diffs and not cur.d(n).is_zero():
                d = cur.d(n)
                step = None
                g = _generalized_inverse(d)
                if g is not None:
                    step = _cancel(cur, n, g)
                attempts = 0
                while step is None and attempts < trials:
                    H = hom_space(d.target, d.source)
                    if not H.dim:
                        break
                    g = H.combine([cur.field.random_scalar(rng) for _ in range(H.dim)])
                    step = _cancel(cur, n, g)
                    attempts += 1
                if step is None:
                    break
                cert = cert.then(step)
                cur = step.target
                progress = True
    return cur, cert
