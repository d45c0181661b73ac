"""Column constructions glued by strict functoriality.

A column kind assigns to every module a bounded complex and to every module
map a chain map, strictly compatible with composition.  Applying it termwise
to a complex gives a bicomplex whose total complex is returned by
:func:`totalize`.  Contravariant kinds place the column of ``X^n`` at
horizontal position ``-n``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .homotopy import ChainMap, Complex, ComplexError, cone, dual_chain_map, dual_complex, is_acyclic
from .modrep import (
    Module,
    ModuleMap,
    direct_sum,
    free_cover_map,
    functorial_P0_map,
    functorial_presentation,
    is_injective,
    is_projective,
    kernel,
    lift_to_presentations,
    nakayama_module,
    restrict,
    top_dims,
    transpose_data,
    transpose_map,
    _left_inverse,
    _standard_gens,
)
from .pathalg import Algebra


class ColumnKind:
    """Base class: ``column(M)`` returns a data object with a ``.complex``."""

    tag = "abstract"
    contravariant = False

    def __init__(self):
        self._cache = {}

    def data(self, M: Module):
        hit = self._cache.get(id(M))
        if hit is not None and hit[0] is M:
            return hit[1]
        d = self.column(M)
        self._cache[id(M)] = (M, d)
        return d

    def column(self, M: Module):
        raise NotImplementedError

    def map(self, t: ModuleMap) -> ChainMap:
        raise NotImplementedError


# -- functorial projective resolution ---------------------------------------------


@dataclass
class _ResStage:
    module: Module          # K_k (K_0 = M)
    cover: ModuleMap        # P0(K_k) -> K_k
    incl: ModuleMap         # K_(k+1) -> P0(K_k)
    left: list              # left inverses of incl, vertexwise


@dataclass
class ResolutionColumn:
    module: Module
    stages: list
    complex: Complex
    augmentation: ModuleMap  # column^0 -> M


class ProjectiveResolutionKind(ColumnKind):
    """Functorial resolution ``K_d -> P0(K_(d-1)) -> ... -> P0(M)``, d = gldim.

    The d-th syzygy of a functorial resolution is projective, so stopping
    there keeps the column bounded without giving up strict functoriality.
    """

    tag = "full-projective-resolution"

    def __init__(self, algebra: Algebra):
        super().__init__()
        self.algebra = algebra
        self.length = algebra.global_dimension()

    def column(self, M: Module) -> ResolutionColumn:
        A = self.algebra
        if self.length == 0:
            C = Complex(A, {0: M})
            return ResolutionColumn(M, [], C, M.identity())
        stages = []
        K = M
        for _ in range(self.length):
            cover = free_cover_map(K, _standard_gens(K))
            Kn, incl = kernel(cover)
            stages.append(_ResStage(K, cover, incl, [_left_inverse(m) for m in incl.maps]))
            K = Kn
        terms = {-k: s.cover.source for k, s in enumerate(stages)}
        terms[-self.length] = K
        diffs = {}
        for k in range(1, self.length):
            diffs[-k] = stages[k - 1].incl * stages[k].cover
        diffs[-self.length] = stages[-1].incl
        C = Complex(A, terms, diffs, check=False)
        return ResolutionColumn(M, stages, C, stages[0].cover)

    def map(self, t: ModuleMap) -> ChainMap:
        ds, dt = self.data(t.source), self.data(t.target)
        if self.length == 0:
            return ChainMap(ds.complex, dt.complex, {0: t}, check=False)
        comps = {}
        cur = t
        for k, (ss, st) in enumerate(zip(ds.stages, dt.stages)):
            t0 = functorial_P0_map(cur, ss.cover.source, st.cover.source)
            comps[-k] = t0
            cur = restrict(t0, ss.incl, st.incl, st.left)
        comps[-self.length] = cur
        return ChainMap(ds.complex, dt.complex, comps, check=False)


# -- transpose column -------------------------------------------------------------


@dataclass
class TransposeColumn:
    module: Module
    data: object
    complex: Complex


class TransposeKind(ColumnKind):
    """``P0* -> P1* -> Tr M`` in degrees 0, 1, 2 for a module M over the opposite algebra."""

    tag = "transpose-column"
    contravariant = True

    def __init__(self, algebra: Algebra):
        # ``algebra`` is the algebra the columns live over
        super().__init__()
        self.algebra = algebra

    def column(self, M: Module) -> TransposeColumn:
        if M.algebra != self.algebra.opposite():
            raise ComplexError("transpose columns take modules over the opposite algebra")
        if M.dim == 0:
            return TransposeColumn(M, None, Complex(self.algebra, {}))
        td = transpose_data(M)
        fd = td.f_dual
        C = Complex(self.algebra, {0: fd.source, 1: fd.target, 2: td.module}, {0: fd, 1: td.projection}, check=False)
        return TransposeColumn(M, td, C)

    def map(self, t: ModuleMap) -> ChainMap:
        """Chain map column(target) -> column(source)."""
        ds, dt = self.data(t.source), self.data(t.target)
        if ds.data is None or dt.data is None:
            return ChainMap.zero(dt.complex, ds.complex)
        a, b = ds.data, dt.data
        lift = lift_to_presentations(t, a.presentation, b.presentation)
        c0 = lift.t0_path.dual().to_map(b.f_dual.source, a.f_dual.source)
        c1 = lift.t1_path.dual().to_map(b.f_dual.target, a.f_dual.target)
        c2 = transpose_map(t, a, b)
        return ChainMap(dt.complex, ds.complex, {0: c0, 1: c1, 2: c2}, check=False)


# -- Serre column -------------------------------------------------------------------


@dataclass
class SerreColumn:
    module: Module
    presentation: object
    nf: ModuleMap            # ν P1 -> ν P0
    incl: ModuleMap          # τ'M -> ν P1
    left: list
    complex: Complex


class SerreKind(ColumnKind):
    """``τ'M -> νP1 -> νP0`` in degrees -2..0 from the functorial presentation."""

    tag = "serre-column"

    def __init__(self, algebra: Algebra):
        super().__init__()
        self.algebra = algebra

    def column(self, M: Module) -> SerreColumn:
        A = self.algebra
        if M.dim == 0:
            return SerreColumn(M, None, None, None, None, Complex(A, {}))
        pres = functorial_presentation(M)
        nP1 = nakayama_module(A, pres.gens1)
        nP0 = nakayama_module(A, pres.gens0)
        nf = pres.f_path.nakayama()
        nf = ModuleMap(nP1, nP0, nf.maps, check=False)
        T, incl = kernel(nf)
        C = Complex(A, {-2: T, -1: nP1, 0: nP0}, {-2: incl, -1: nf}, check=False)
        return SerreColumn(M, pres, nf, incl, [_left_inverse(m) for m in incl.maps], C)

    def map(self, t: ModuleMap) -> ChainMap:
        ds, dt = self.data(t.source), self.data(t.target)
        if ds.presentation is None or dt.presentation is None:
            return ChainMap.zero(ds.complex, dt.complex)
        lift = lift_to_presentations(t, ds.presentation, dt.presentation)
        n0 = ModuleMap(ds.nf.target, dt.nf.target, lift.t0_path.nakayama().maps, check=False)
        n1 = ModuleMap(ds.nf.source, dt.nf.source, lift.t1_path.nakayama().maps, check=False)
        nt = restrict(n1, ds.incl, dt.incl, dt.left)
        return ChainMap(ds.complex, dt.complex, {-2: nt, -1: n1, 0: n0}, check=False)


# -- totalization ---------------------------------------------------------------------


@dataclass
class Total:
    complex: Complex
    # degree k -> list of (p, m, injection, projection)
    summands: dict


def totalize_bicomplex(algebra: Algebra, cols: dict, hmaps: dict) -> Total:
    """Total complex of columns ``cols[p]`` joined by chain maps ``hmaps[p]: cols[p] -> cols[p+1]``.

    The differential on the (p, m) summand is ``h + (-1)^p v``.
    """
    cells = {}
    for p, C in cols.items():
        for m in C.degrees:
            if C[m].dim:
                cells.setdefault(p + m, []).append((p, m))
    terms, summands = {}, {}
    for k, lst in cells.items():
        lst.sort()
        S, inj, proj = direct_sum([cols[p][m] for p, m in lst], algebra)
        terms[k] = S
        summands[k] = [(p, m, i, q) for (p, m), i, q in zip(lst, inj, proj)]
    diffs = {}
    for k, src in summands.items():
        tgt = summands.get(k + 1)
        if not tgt:
            continue
        index = {(p, m): (i, q) for p, m, i, q in tgt}
        acc = ModuleMap.zero(terms[k], terms[k + 1])
        for p, m, _, q in src:
            h = hmaps.get(p)
            if h is not None and (p + 1, m) in index:
                acc = acc + index[(p + 1, m)][0] * h[m] * q
            if (p, m + 1) in index:
                v = cols[p].d(m)
                if p % 2:
                    v = -v
                acc = acc + index[(p, m + 1)][0] * v * q
        diffs[k] = acc
    return Total(Complex(algebra, terms, diffs), summands)


def totalize(X: Complex, kind: ColumnKind) -> Complex:
    return _totalize(X, kind).complex


def _totalize(X: Complex, kind: ColumnKind) -> Total:
    cols, hmaps = {}, {}
    if kind.contravariant:
        for n in X.degrees:
            cols[-n] = kind.data(X[n]).complex
        for n in X.degrees:
            if n + 1 in X.terms:
                hmaps[-n - 1] = kind.map(X.d(n))
    else:
        for n in X.degrees:
            cols[n] = kind.data(X[n]).complex
        for n in X.degrees:
            if n + 1 in X.terms:
                hmaps[n] = kind.map(X.d(n))
    return totalize_bicomplex(kind.algebra, cols, hmaps)


# -- resolutions of complexes -------------------------------------------------------


def _all_terms(X: Complex, pred) -> bool:
    return all(pred(M) for M in X.terms.values())


def proj_resolve_complex(X: Complex, kind: ProjectiveResolutionKind | None = None) -> tuple[Complex, ChainMap]:
    """A bounded complex of projectives P with a quasi-isomorphism P -> X."""
    if _all_terms(X, is_projective):
        return X, X.identity()
    kind = kind or ProjectiveResolutionKind(X.algebra)
    tot = _totalize(X, kind)
    P = tot.complex
    comps = {}
    for k, lst in tot.summands.items():
        for p, m, _, q in lst:
            if m == 0 and X[p].dim:
                comps[k] = kind.data(X[p]).augmentation * q
    pi = ChainMap(P, X, {k: ModuleMap(P[k], X[k], c.maps, check=False) for k, c in comps.items()}, check=False)
    return P, pi


def inj_resolve_complex(X: Complex) -> tuple[Complex, ChainMap]:
    """A bounded complex of injectives I with a quasi-isomorphism X -> I."""
    if _all_terms(X, is_injective):
        return X, X.identity()
    DX = dual_complex(X)
    P, pi = proj_resolve_complex(DX)
    I = dual_complex(P)
    iota = dual_chain_map(pi)
    # D D X has the same matrices as X
    iota = ChainMap(X, I, {n: ModuleMap(X[n], I[n], c.maps, check=False) for n, c in iota.components.items()}, check=False)
    return I, iota


def is_quasi_isomorphism(f: ChainMap) -> bool:
    return is_acyclic(cone(f))


# -- the dualities ------------------------------------------------------------------


def transpose_column(M: Module, algebra: Algebra | None = None) -> Complex:
    """``P0* -> P1* -> Tr M`` for M over the opposite of ``algebra``."""
    A = algebra or M.algebra.opposite()
    return TransposeKind(A).data(M).complex


def phi(X: Complex) -> Complex:
    """The contravariant duality from complexes over the opposite algebra."""
    return totalize(X, TransposeKind(X.algebra.opposite()))


def phi_map(f: ChainMap, kind: TransposeKind | None = None) -> tuple[Complex, Complex, ChainMap]:
    """phi on a chain map f: X -> Y, returning (phi Y, phi X, phi f)."""
    kind = kind or TransposeKind(f.source.algebra.opposite())
    return _totalized_map(f, kind)


def serre_U(X: Complex) -> Complex:
    return totalize(X, SerreKind(X.algebra))


def serre_U_map(f: ChainMap, kind: SerreKind | None = None):
    kind = kind or SerreKind(f.source.algebra)
    return _totalized_map(f, kind)


def _totalized_map(f: ChainMap, kind: ColumnKind):
    X, Y = f.source, f.target
    tx, ty = _totalize(X, kind), _totalize(Y, kind)
    if kind.contravariant:
        src, tgt = ty, tx
    else:
        src, tgt = tx, ty
    comps = {}
    for k, lst in src.summands.items():
        tindex = {(p, m): i for p, m, i, _ in tgt.summands.get(k, [])}
        acc = ModuleMap.zero(src.complex[k], tgt.complex[k])
        for p, m, _, q in lst:
            n = -p if kind.contravariant else p
            if (p, m) not in tindex or n not in f.components:
                continue
            c = kind.map(f[n])
            acc = acc + tindex[(p, m)] * c[m] * q
        comps[k] = acc
    return src.complex, tgt.complex, ChainMap(src.complex, tgt.complex, comps, check=False)


def nakayama(P: Module) -> Module:
    """ν P = D Hom(P, Λ) for a projective module, as a sum of I(i)."""
    if not is_projective(P):
        raise ValueError("nakayama expects a projective module")
    gens = [v for v, k in enumerate(top_dims(P)) for _ in range(k)]
    return nakayama_module(P.algebra, gens)
