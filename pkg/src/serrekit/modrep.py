"""Finite-dimensional right modules over a bound quiver algebra.

A module is a representation: a vector space per vertex and a matrix per
arrow (columns are source coordinates).  Maps between sums of
indecomposable projectives are stored as :class:`PathMatrix` objects so
that ``Hom(-, Λ)`` and the Nakayama functor can be applied to them
directly.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .exactlinalg import (
    Matrix,
    _rref,
    block_diag,
    column_space,
    complement_columns,
    hstack,
    kernel_matrix,
    kernel_with_free,
    rank,
    vstack,
)
from .pathalg import Algebra


class ModuleError(ValueError):
    pass


class Module:
    __slots__ = ("algebra", "dims", "actions", "name", "_paths", "_homs")

    def __init__(self, algebra: Algebra, dims, actions, name: str | None = None, check: bool = True):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        self.actions = tuple(actions)
        self.name = name
        self._paths = {}
        self._homs = {}
        if check:
            self._check()

    def _check(self):
        A = self.algebra
        if len(self.dims) != A.n_vertices:
            raise ModuleError("dimension vector has the wrong length")
        if len(self.actions) != len(A.arrows):
            raise ModuleError("one matrix per arrow is required")
        for a, m in zip(A.arrows, self.actions):
            if m.shape != (self.dims[a.target], self.dims[a.source]):
                raise ModuleError(f"arrow {a.name}: matrix shape {m.shape} does not match dimensions")
        for rel in A.relations:
            total = None
            for c, p in rel:
                term = self.path_action(p) * c
                total = term if total is None else total + term
            if total is not None and not total.is_zero():
                raise ModuleError("representation does not satisfy the relations")

    @property
    def field(self):
        return self.algebra.field

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.dim == 0

    def path_action(self, path, start: int | None = None) -> Matrix:
        """Matrix of a path acting on the module (identity for the trivial path at ``start``)."""
        m = self._paths.get((path, start) if not path else path)
        if m is not None:
            return m
        if not path:
            m = self.field.identity(self.dims[start])
            self._paths[(path, start)] = m
            return m
        m = self.actions[path[0]]
        for k in path[1:]:
            m = self.actions[k] * m
        self._paths[path] = m
        return m

    def __eq__(self, other):
        if not isinstance(other, Module):
            return NotImplemented
        return self.algebra == other.algebra and self.dims == other.dims and self.actions == other.actions

    def __hash__(self):
        return hash((self.dims, self.actions))

    def __repr__(self):
        label = f"{self.name} " if self.name else ""
        return f"<Module {label}dims={self.dims}>"

    def identity(self) -> "ModuleMap":
        F = self.field
        return ModuleMap(self, self, [F.identity(d) for d in self.dims], check=False)


class ModuleMap:
    __slots__ = ("source", "target", "maps")

    def __init__(self, source: Module, target: Module, maps, check: bool = True):
        self.source = source
        self.target = target
        self.maps = tuple(maps)
        if check:
            self._check()

    def _check(self):
        S, T = self.source, self.target
        if S.algebra != T.algebra:
            raise ModuleError("algebra mismatch")
        for v, m in enumerate(self.maps):
            if m.shape != (T.dims[v], S.dims[v]):
                raise ModuleError(f"vertex map {v} has shape {m.shape}, expected {(T.dims[v], S.dims[v])}")
        for k, a in enumerate(S.algebra.arrows):
            lhs = T.actions[k] * self.maps[a.source]
            rhs = self.maps[a.target] * S.actions[k]
            if lhs != rhs:
                raise ModuleError(f"map does not commute with arrow {a.name}")

    @property
    def algebra(self):
        return self.source.algebra

    @staticmethod
    def zero(source: Module, target: Module) -> "ModuleMap":
        F = source.field
        return ModuleMap(source, target, [F.zeros(t, s) for s, t in zip(source.dims, target.dims)], check=False)

    def __mul__(self, other: "ModuleMap") -> "ModuleMap":
        """Composition: ``(self * other)(x) = self(other(x))``."""
        if isinstance(other, ModuleMap):
            return ModuleMap(other.source, self.target, [a * b for a, b in zip(self.maps, other.maps)], check=False)
        return ModuleMap(self.source, self.target, [m * other for m in self.maps], check=False)

    def __rmul__(self, scalar):
        return ModuleMap(self.source, self.target, [m * scalar for m in self.maps], check=False)

    def __add__(self, other):
        return ModuleMap(self.source, self.target, [a + b for a, b in zip(self.maps, other.maps)], check=False)

    def __sub__(self, other):
        return ModuleMap(self.source, self.target, [a - b for a, b in zip(self.maps, other.maps)], check=False)

    def __neg__(self):
        return ModuleMap(self.source, self.target, [-m for m in self.maps], check=False)

    def __eq__(self, other):
        if not isinstance(other, ModuleMap):
            return NotImplemented
        return self.maps == other.maps and self.source == other.source and self.target == other.target

    def __hash__(self):
        return hash(self.maps)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.maps)

    def flat(self) -> list:
        out = []
        for m in self.maps:
            out.extend(m.entries())
        return out

    def power(self, n: int) -> "ModuleMap":
        return ModuleMap(self.source, self.target, [m.power(n) for m in self.maps], check=False)

    def __repr__(self):
        return f"<ModuleMap {self.source.dims} -> {self.target.dims}>"


def zero_module(A: Algebra) -> Module:
    F = A.field
    return Module(A, [0] * A.n_vertices, [F.zeros(0, 0) for _ in A.arrows], check=False)


def direct_sum(mods, algebra: Algebra | None = None):
    """Direct sum with its injections and projections."""
    mods = list(mods)
    if not mods:
        return zero_module(algebra), [], []
    A = mods[0].algebra
    F = A.field
    dims = [sum(m.dims[v] for m in mods) for v in range(A.n_vertices)]
    actions = [block_diag([m.actions[k] for m in mods], F) for k in range(len(A.arrows))]
    S = Module(A, dims, actions, check=False)
    inj, proj = [], []
    offs = [0] * A.n_vertices
    for m in mods:
        ims, pms = [], []
        for v in range(A.n_vertices):
            d, o = m.dims[v], offs[v]
            i = F.zeros(dims[v], d)
            for r in range(d):
                i.m[o + r, r] = 1
            ims.append(i)
            pms.append(i.T)
            offs[v] += d
        inj.append(ModuleMap(m, S, ims, check=False))
        proj.append(ModuleMap(S, m, pms, check=False))
    return S, inj, proj


def direct_sum_maps(maps):
    """Block-diagonal sum of module maps."""
    maps = list(maps)
    S, _, _ = direct_sum([f.source for f in maps])
    T, _, _ = direct_sum([f.target for f in maps])
    F = S.field
    return ModuleMap(S, T, [block_diag([f.maps[v] for f in maps], F) for v in range(len(S.dims))], check=False)


# -- homomorphisms ----------------------------------------------------------


def _hom_system(M: Module, N: Module):
    """Linear conditions on the flattened vertex maps M -> N."""
    A = M.algebra
    F = A.field
    offs, o = [], 0
    for v in range(A.n_vertices):
        offs.append(o)
        o += N.dims[v] * M.dims[v]
    nvars = o
    nrows = sum(N.dims[a.target] * M.dims[a.source] for a in A.arrows)
    sysm = F._raw(nrows, nvars) if nrows and nvars else None
    row = 0
    for k, a in enumerate(A.arrows):
        s, t = a.source, a.target
        Na = N.actions[k].tolist()
        Ma = M.actions[k].tolist()
        ms, mt, ns, nt = M.dims[s], M.dims[t], N.dims[s], N.dims[t]
        for r in range(nt):
            for c in range(ms):
                # (N(a) f_s)[r, c] - (f_t M(a))[r, c]
                for kk in range(ns):
                    x = Na[r][kk]
                    if x != 0:
                        sysm[row, offs[s] + kk * ms + c] += x
                for kk in range(mt):
                    x = Ma[kk][c]
                    if x != 0:
                        sysm[row, offs[t] + r * mt + kk] -= x
                row += 1
    if sysm is None:
        return F.zeros(nrows, nvars), offs
    return Matrix(F, sysm), offs


def _unflatten(M: Module, N: Module, vec, offs) -> ModuleMap:
    F = M.field
    maps = []
    for v in range(len(M.dims)):
        r, c = N.dims[v], M.dims[v]
        o = offs[v]
        maps.append(F.matrix(r, c, vec[o:o + r * c]))
    return ModuleMap(M, N, maps, check=False)


class ModHomSpace:
    """Hom(M, N) with a basis in reduced form.

    Each basis vector has a 1 at its own free coordinate and 0 at the other
    free coordinates, so the coordinates of any homomorphism are read off
    its flattened entries at ``free``.
    """

    def __init__(self, M: Module, N: Module):
        if M.algebra != N.algebra:
            raise ModuleError("algebra mismatch")
        self.source, self.target = M, N
        S, self.offs = _hom_system(M, N)
        self.nvars = S.cols
        self._basis = None
        if S.cols == 0:
            self.free, self._K = [], None
        else:
            self._K, self.free = kernel_with_free(S)

    @property
    def dim(self) -> int:
        return len(self.free)

    @property
    def basis(self) -> list:
        if self._basis is None:
            cols = self._K.columns() if self.free else []
            self._basis = [_unflatten(self.source, self.target, c, self.offs) for c in cols]
        return self._basis

    def coords(self, f: ModuleMap) -> list:
        flat = f.flat()
        return [flat[j] for j in self.free]

    def combine(self, coeffs) -> ModuleMap:
        F = self.source.field
        n = self.nvars
        vec = [F.scalar(0)] * n
        K = self._K
        for k, c in enumerate(coeffs):
            if c != 0:
                for j in range(n):
                    x = K[j, k]
                    if x != 0:
                        vec[j] += c * x
        return _unflatten(self.source, self.target, vec, self.offs)


def hom_space(M: Module, N: Module) -> ModHomSpace:
    """Cached :class:`ModHomSpace` (modules are treated as immutable)."""
    hit = M._homs.get(id(N))
    if hit is not None and hit[0] is N:
        return hit[1]
    H = ModHomSpace(M, N)
    M._homs[id(N)] = (N, H)
    return H


def hom_basis(M: Module, N: Module) -> list[ModuleMap]:
    """A basis of Hom(M, N): the kernel of the commuting-square system."""
    return list(hom_space(M, N).basis)


def hom_dimension(M: Module, N: Module) -> int:
    S, _ = _hom_system(M, N)
    return S.cols - rank(S)


def random_hom(M: Module, N: Module, rng, basis=None) -> ModuleMap:
    basis = hom_basis(M, N) if basis is None else basis
    f = ModuleMap.zero(M, N)
    for b in basis:
        c = M.field.random_scalar(rng)
        if c != 0:
            f = f + b * c
    return f


# -- sub, quotient, kernel, cokernel ---------------------------------------


def _left_inverse(B: Matrix) -> Matrix:
    """A left inverse of a matrix with independent columns."""
    if B.cols == 0:
        return B.field.zeros(0, B.rows)
    C = complement_columns(B)
    T = B.hstack(C).inverse()
    return T.submatrix(range(B.cols), range(B.rows))


def submodule(M: Module, bases) -> tuple[Module, ModuleMap]:
    """The submodule spanned vertexwise by the columns of ``bases`` (assumed invariant)."""
    A = M.algebra
    lefts = [_left_inverse(B) for B in bases]
    actions = []
    for k, a in enumerate(A.arrows):
        actions.append(lefts[a.target] * (M.actions[k] * bases[a.source]))
    S = Module(A, [B.cols for B in bases], actions, check=False)
    return S, ModuleMap(S, M, list(bases), check=False)


@dataclass
class Quotient:
    module: Module
    projection: ModuleMap
    sections: list  # per vertex: columns of a complement, projection * section = 1


def quotient(M: Module, bases) -> Quotient:
    """M modulo the submodule spanned by ``bases``."""
    A = M.algebra
    projs, secs = [], []
    for B in bases:
        C = complement_columns(B) if B.cols else M.field.identity(B.rows)
        if B.cols:
            T = B.hstack(C).inverse()
            P = T.submatrix(range(B.cols, B.rows), range(B.rows))
        else:
            P = M.field.identity(B.rows)
        projs.append(P)
        secs.append(C)
    actions = [projs[a.target] * (M.actions[k] * secs[a.source]) for k, a in enumerate(A.arrows)]
    Q = Module(A, [P.rows for P in projs], actions, check=False)
    return Quotient(Q, ModuleMap(M, Q, projs, check=False), secs)


def kernel(f: ModuleMap) -> tuple[Module, ModuleMap]:
    return submodule(f.source, [kernel_matrix(m) if m.cols else m.field.zeros(0, 0) for m in f.maps])


def image(f: ModuleMap) -> tuple[Module, ModuleMap, ModuleMap]:
    """Image with its inclusion into the target and the corestriction of ``f``."""
    bases = [column_space(m) for m in f.maps]
    Im, inc = submodule(f.target, bases)
    lefts = [_left_inverse(B) for B in bases]
    core = ModuleMap(f.source, Im, [L * m for L, m in zip(lefts, f.maps)], check=False)
    return Im, inc, core


def cokernel(f: ModuleMap) -> tuple[Module, ModuleMap]:
    q = quotient(f.target, [column_space(m) for m in f.maps])
    return q.module, q.projection


def restrict(t: ModuleMap, inc_src: ModuleMap, inc_tgt: ModuleMap, left_tgt=None) -> ModuleMap:
    """The map between submodules induced by ``t`` (assumed to preserve them)."""
    if left_tgt is None:
        left_tgt = [_left_inverse(m) for m in inc_tgt.maps]
    maps = [L * (tv * iv) for L, tv, iv in zip(left_tgt, t.maps, inc_src.maps)]
    return ModuleMap(inc_src.source, inc_tgt.source, maps, check=False)


# -- duality ---------------------------------------------------------------


def dual_D(M: Module) -> Module:
    """k-linear dual: a module over the opposite algebra."""
    op = M.algebra.opposite()
    return Module(op, M.dims, [m.T for m in M.actions], name=_dual_name(M.name), check=False)


def dual_map(f: ModuleMap) -> ModuleMap:
    """D(f): D(target) -> D(source)."""
    return ModuleMap(dual_D(f.target), dual_D(f.source), [m.T for m in f.maps], check=False)


def _dual_name(name):
    if not name:
        return None
    return name[2:-1] if name.startswith("D(") and name.endswith(")") else f"D({name})"


def double_dual_map(M: Module) -> ModuleMap:
    """The canonical map M -> DDM (an isomorphism in finite dimension)."""
    DD = dual_D(dual_D(M))
    return ModuleMap(M, DD, [M.field.identity(d) for d in M.dims], check=True)


# -- projectives, injectives, simples ----------------------------------------


def free_module(A: Algebra, gens) -> Module:
    """The direct sum of P(g) over the generator vertices ``gens`` (indices)."""
    gens = tuple(gens)
    F = A.field
    dims = [sum(A.dim_e(g, w) for g in gens) for w in range(A.n_vertices)]
    actions = []
    for k, a in enumerate(A.arrows):
        actions.append(block_diag([A.right_arrow_matrix(g, k) for g in gens], F) if gens else F.zeros(0, 0))
    return Module(A, dims, actions, check=False)


def projective(A: Algebra, i) -> Module:
    v = A.vertex(i)
    M = free_module(A, (v,))
    M.name = f"P{A.vertices[v]}"
    return M


def injective(A: Algebra, i) -> Module:
    v = A.vertex(i)
    M = dual_D(free_module(A.opposite(), (v,)))
    M.name = f"I{A.vertices[v]}"
    return M


def simple(A: Algebra, i) -> Module:
    v = A.vertex(i)
    F = A.field
    dims = [1 if w == v else 0 for w in range(A.n_vertices)]
    return Module(A, dims, [F.zeros(dims[a.target], dims[a.source]) for a in A.arrows], name=f"S{A.vertices[v]}", check=False)


def radical_basis(M: Module, v: int) -> Matrix:
    ims = [M.actions[k] for k, a in enumerate(M.algebra.arrows) if a.target == v]
    if not ims:
        return M.field.zeros(M.dims[v], 0)
    return column_space(hstack(ims, M.dims[v], M.field))


def top_dims(M: Module) -> tuple[int, ...]:
    return tuple(M.dims[v] - radical_basis(M, v).cols for v in range(len(M.dims)))


def is_projective(M: Module) -> bool:
    A = M.algebra
    top = top_dims(M)
    return M.dim == sum(top[v] * sum(A.dim_e(v, w) for w in range(A.n_vertices)) for v in range(A.n_vertices))


def is_injective(M: Module) -> bool:
    return is_projective(dual_D(M))


class PathMatrix:
    """A map between sums of indecomposable projectives.

    ``tgt`` and ``src`` are tuples of vertex indices; ``entries[(k, l)]`` is
    the coordinate vector of an element of e_{tgt[k]} Λ e_{src[l]}.  The
    generator of the l-th source summand goes to sum_k entries[(k, l)].
    """

    def __init__(self, algebra: Algebra, tgt, src, entries):
        self.algebra = algebra
        self.tgt = tuple(tgt)
        self.src = tuple(src)
        self.entries = {kl: x for kl, x in entries.items() if any(c != 0 for c in x)}

    def to_map(self, source: Module | None = None, target: Module | None = None) -> ModuleMap:
        A = self.algebra
        F = A.field
        source = source or free_module(A, self.src)
        target = target or free_module(A, self.tgt)
        maps = []
        for w in range(A.n_vertices):
            roffs, o = [], 0
            for g in self.tgt:
                roffs.append(o)
                o += A.dim_e(g, w)
            coffs, c = [], 0
            for g in self.src:
                coffs.append(c)
                c += A.dim_e(g, w)
            M = F._raw(o, c) if o and c else None
            if M is not None:
                for (k, l), x in self.entries.items():
                    blk = A.left_mult_matrix(self.tgt[k], self.src[l], w, x)
                    if blk.rows == 0 or blk.cols == 0:
                        continue
                    be = blk.entries()
                    bc = blk.cols
                    for i in range(blk.rows):
                        for j in range(bc):
                            e = be[i * bc + j]
                            if e != 0:
                                M[roffs[k] + i, coffs[l] + j] = e
                maps.append(Matrix(F, M))
            else:
                maps.append(F.zeros(o, c))
        return ModuleMap(source, target, maps, check=False)

    def dual(self) -> "PathMatrix":
        """Hom(-, Λ) of this map: a map of projectives over the opposite algebra."""
        return PathMatrix(self.algebra.opposite(), self.src, self.tgt, {(l, k): x for (k, l), x in self.entries.items()})

    def nakayama(self) -> ModuleMap:
        """ν(f) = D Hom(f, Λ): a map between sums of indecomposable injectives."""
        return dual_map(self.dual().to_map())


def nakayama_module(A: Algebra, gens) -> Module:
    """ν of the free module on ``gens``: the sum of the injectives I(g)."""
    return dual_D(free_module(A.opposite(), gens))


def free_cover_map(M: Module, gens) -> ModuleMap:
    """The map ⊕ P(v_k) -> M sending the k-th generator to the vector ``gens[k][1]`` in M_{v_k}."""
    A = M.algebra
    F = A.field
    P = free_module(A, [g for g, _ in gens])
    maps = []
    for w in range(A.n_vertices):
        cols = []
        for g, vec in gens:
            vm = F.matrix(len(vec), 1, list(vec))
            for p in A.basis[(g, w)]:
                cols.append((M.path_action(p, g) * vm).entries())
        maps.append(F.from_columns(cols, M.dims[w]) if cols else F.zeros(M.dims[w], 0))
    return ModuleMap(P, M, maps, check=False)


def _element_to_path_column(A: Algebra, gens, w: int, vec) -> list:
    """Split an element of free(gens)_w into its coordinates per summand."""
    out, o = [], 0
    for g in gens:
        d = A.dim_e(g, w)
        out.append(list(vec[o:o + d]))
        o += d
    return out


# -- functorial presentations --------------------------------------------------


@dataclass
class Presentation:
    """P1 --f--> P0 --eps--> M -> 0 with P0 = ⊕_i P(i)^{dim M_i}."""

    module: Module
    gens0: tuple
    gens1: tuple
    P0: Module
    P1: Module
    eps: ModuleMap
    K: Module
    incl: ModuleMap
    f: ModuleMap
    f_path: PathMatrix
    _incl_left: list = dc_field(default=None, repr=False)

    def incl_left(self):
        if self._incl_left is None:
            self._incl_left = [_left_inverse(m) for m in self.incl.maps]
        return self._incl_left


def _standard_gens(M: Module):
    F = M.field
    gens = []
    for v in range(len(M.dims)):
        for r in range(M.dims[v]):
            vec = [F.scalar(0)] * M.dims[v]
            vec[r] = F.scalar(1)
            gens.append((v, vec))
    return gens


def functorial_presentation(M: Module) -> Presentation:
    A = M.algebra
    gens0 = _standard_gens(M)
    eps = free_cover_map(M, gens0)
    K, incl = kernel(eps)
    gens1 = _standard_gens(K)
    epsK = free_cover_map(K, gens1)
    f = incl * epsK
    g0 = tuple(g for g, _ in gens0)
    g1 = tuple(g for g, _ in gens1)
    entries = {}
    for l, (w, kvec) in enumerate(gens1):
        col = (incl.maps[w] * M.field.matrix(len(kvec), 1, kvec)).entries()
        for k, x in enumerate(_element_to_path_column(A, g0, w, col)):
            if x and any(c != 0 for c in x):
                entries[(k, l)] = x
    fp = PathMatrix(A, g0, g1, entries)
    P0 = eps.source
    P1 = epsK.source
    f = ModuleMap(P1, P0, f.maps, check=False)
    return Presentation(M, g0, g1, P0, P1, eps, K, incl, f, fp)


def functorial_P0_path(t: ModuleMap, gs: tuple, gt: tuple) -> PathMatrix:
    """P0(t) as a path matrix between the standard generator lists."""
    A = t.algebra
    F = A.field
    S, T = t.source, t.target
    soff, toff = [], []
    o = 0
    for v in range(A.n_vertices):
        soff.append(o)
        o += S.dims[v]
    o = 0
    for v in range(A.n_vertices):
        toff.append(o)
        o += T.dims[v]
    entries = {}
    one = A.idempotent
    for v in range(A.n_vertices):
        tv = t.maps[v]
        e = one(v)
        for r in range(T.dims[v]):
            for c in range(S.dims[v]):
                x = tv[r, c]
                if x != 0:
                    entries[(toff[v] + r, soff[v] + c)] = [x * y for y in e]
    return PathMatrix(A, gt, gs, entries)


def functorial_P0_map(t: ModuleMap, P0s: Module, P0t: Module) -> ModuleMap:
    """P0(t) as a module map: blockwise t_i ⊗ id on the copies of P(i)."""
    A = t.algebra
    F = A.field
    S, T = t.source, t.target
    maps = []
    for w in range(A.n_vertices):
        rows = sum(T.dims[i] * A.dim_e(i, w) for i in range(A.n_vertices))
        cols = sum(S.dims[i] * A.dim_e(i, w) for i in range(A.n_vertices))
        M = F._raw(rows, cols) if rows and cols else None
        if M is not None:
            ro = co = 0
            for i in range(A.n_vertices):
                d = A.dim_e(i, w)
                tv = t.maps[i]
                if d:
                    for r in range(T.dims[i]):
                        for c in range(S.dims[i]):
                            x = tv[r, c]
                            if x != 0:
                                for q in range(d):
                                    M[ro + r * d + q, co + c * d + q] = x
                ro += T.dims[i] * d
                co += S.dims[i] * d
            maps.append(Matrix(F, M))
        else:
            maps.append(F.zeros(rows, cols))
    return ModuleMap(P0s, P0t, maps, check=False)


@dataclass
class PresentationLift:
    t0: ModuleMap
    t1: ModuleMap
    tK: ModuleMap
    t0_path: PathMatrix
    t1_path: PathMatrix


def lift_to_presentations(t: ModuleMap, ps: Presentation, pt: Presentation) -> PresentationLift:
    """The canonical strictly functorial lift of ``t`` to the presentations."""
    t0 = functorial_P0_map(t, ps.P0, pt.P0)
    tK = restrict(t0, ps.incl, pt.incl, pt.incl_left())
    t1 = functorial_P0_map(tK, ps.P1, pt.P1)
    return PresentationLift(
        t0, t1, tK,
        functorial_P0_path(t, ps.gens0, pt.gens0),
        functorial_P0_path(tK, ps.gens1, pt.gens1),
    )


# -- transpose and AR translate ---------------------------------------------


@dataclass
class TransposeData:
    presentation: Presentation
    f_dual: ModuleMap        # P0* -> P1*, over the opposite algebra
    module: Module           # Tr M = coker(f_dual)
    projection: ModuleMap    # P1* -> Tr M
    sections: list


def transpose_data(M: Module) -> TransposeData:
    pres = functorial_presentation(M)
    fd = pres.f_path.dual().to_map()
    q = quotient(fd.target, [column_space(m) for m in fd.maps])
    return TransposeData(pres, fd, q.module, q.projection, q.sections)


def transpose(M: Module) -> Module:
    """Auslander transpose Tr M = coker Hom(f, Λ), a module over the opposite algebra."""
    return transpose_data(M).module


def transpose_map(t: ModuleMap, ds: TransposeData, dt: TransposeData) -> ModuleMap:
    """Tr(t): Tr(target) -> Tr(source) induced by the lift of ``t``."""
    lift = lift_to_presentations(t, ds.presentation, dt.presentation)
    t1d = lift.t1_path.dual().to_map(dt.f_dual.target, ds.f_dual.target)
    maps = [p * (m * s) for p, m, s in zip(ds.projection.maps, t1d.maps, dt.sections)]
    return ModuleMap(dt.module, ds.module, maps, check=False)


def fitting_split(e: ModuleMap):
    """Fitting decomposition of an endomorphism: M = im e^N ⊕ ker e^N.

    Returns (U, iU, pU, V, iV, pV) where U = im e^N, V = ker e^N.
    """
    M = e.source
    F = M.field
    N = max(M.dims) if M.dims else 0
    E = e.power(max(N, 1))
    Ub, Vb, pU, pV = [], [], [], []
    for v, m in enumerate(E.maps):
        B = column_space(m)
        C = kernel_matrix(m) if m.cols else F.zeros(0, 0)
        T = B.hstack(C)
        Ti = T.inverse() if T.rows else T
        pU.append(Ti.submatrix(range(B.cols), range(T.rows)))
        pV.append(Ti.submatrix(range(B.cols, T.rows), range(T.rows)))
        Ub.append(B)
        Vb.append(C)
    A = M.algebra
    U = Module(A, [B.cols for B in Ub], [pU[a.target] * (M.actions[k] * Ub[a.source]) for k, a in enumerate(A.arrows)], check=False)
    V = Module(A, [B.cols for B in Vb], [pV[a.target] * (M.actions[k] * Vb[a.source]) for k, a in enumerate(A.arrows)], check=False)
    return (U, ModuleMap(U, M, Ub, check=False), ModuleMap(M, U, pU, check=False),
            V, ModuleMap(V, M, Vb, check=False), ModuleMap(M, V, pV, check=False))


def strip_projective_summands(M: Module, seed: int = 0, trials: int = 4) -> Module:
    """Split off projective direct summands (best effort, exact splitting).

    Endomorphisms factoring through the projective cover are sampled; the
    Fitting image of such an endomorphism is a projective summand.
    """
    rng = random.Random(seed)
    failures = 0
    while M.dim and failures < trials:
        if is_projective(M):
            return zero_module(M.algebra)
        pres = functorial_presentation(M)
        basis = hom_basis(M, pres.P0)
        if not basis:
            return M
        s = random_hom(M, pres.P0, rng, basis)
        U, _, _, V, _, _ = fitting_split(pres.eps * s)
        if U.dim == 0:
            failures += 1
            continue
        M = V
        failures = 0
    return M


def strip_injective_summands(M: Module, seed: int = 0, trials: int = 4) -> Module:
    return dual_D(strip_projective_summands(dual_D(M), seed, trials))


def tau(M: Module, seed: int = 0) -> Module:
    """AR translate D Tr M, with projective junk removed from Tr M first."""
    out = dual_D(strip_projective_summands(transpose(M), seed))
    out.name = f"tau({M.name})" if M.name else None
    return out


def tau_minus(M: Module, seed: int = 0) -> Module:
    out = strip_projective_summands(transpose(dual_D(M)), seed)
    out.name = f"tau-({M.name})" if M.name else None
    return out


# -- stable homomorphisms -----------------------------------------------------


@dataclass
class StableHom:
    dimension: int
    basis: list          # representatives of a basis of the quotient
    hom_dimension: int
    factoring_rank: int


def _quotient_basis(hom: list[ModuleMap], factoring: list[ModuleMap]) -> tuple[list, int]:
    if not hom:
        return [], 0
    F = hom[0].source.field
    n = len(hom[0].flat())
    cols = [f.flat() for f in factoring] + [h.flat() for h in hom]
    if n == 0:
        return [], 0
    Mx = F.from_columns(cols, n)
    pivots, _ = _rref(Mx)
    nf = len(factoring)
    r = sum(1 for p in pivots if p < nf)
    return [hom[p - nf] for p in pivots if p >= nf], r


def stable_hom(M: Module, N: Module, side: str = "projective") -> StableHom:
    """Hom(M, N) modulo maps factoring through projectives (or injectives)."""
    if M.algebra != N.algebra:
        raise ModuleError("algebra mismatch")
    hom = hom_basis(M, N)
    if side in ("projective", "prj", "through-projectives"):
        pres = functorial_presentation(N)
        factoring = [pres.eps * phi for phi in hom_basis(M, pres.P0)]
    elif side in ("injective", "inj", "through-injectives"):
        eta = injective_copresentation_map(M)
        factoring = [psi * eta for psi in hom_basis(eta.target, N)]
    else:
        raise ModuleError(f"unknown side {side!r}")
    basis, r = _quotient_basis(hom, factoring)
    return StableHom(len(basis), basis, len(hom), r)


def injective_copresentation_map(M: Module) -> ModuleMap:
    """The functorial injective embedding M -> D P0(DM)."""
    pres = functorial_presentation(dual_D(M))
    eta = dual_map(pres.eps)
    return ModuleMap(M, eta.target, eta.maps, check=False)


# -- minimal projective resolutions -------------------------------------------


def projective_cover(M: Module):
    """(free module on top generators, cover map, generator list)."""
    F = M.field
    gens = []
    for v in range(len(M.dims)):
        R = radical_basis(M, v)
        C = complement_columns(R)
        for col in C.columns() if C.cols else []:
            gens.append((v, col))
    return free_cover_map(M, gens), gens


@dataclass
class Resolution:
    """Minimal projective resolution ... -> P_1 -> P_0 -> M.

    ``terms[k]`` is P_k (a free module on ``gens[k]``); ``maps[k]`` is
    P_{k+1} -> P_k; ``paths[k]`` the same map as a :class:`PathMatrix`.
    """

    module: Module
    terms: list
    gens: list
    maps: list
    paths: list
    augmentation: ModuleMap

    @property
    def length(self) -> int:
        return max(len(self.terms) - 1, 0)

    def to_complex(self):
        """The resolution as a complex in degrees -length..0."""
        from .homotopy import Complex
        n = len(self.terms)
        terms = {-k: self.terms[k] for k in range(n)}
        diffs = {-(k + 1): self.maps[k] for k in range(len(self.maps))}
        return Complex(self.module.algebra, terms, diffs)


def minimal_proj_resolution(M: Module) -> Resolution:
    A = M.algebra
    cover, gens = projective_cover(M)
    terms, gl, maps, paths = [cover.source], [tuple(g for g, _ in gens)], [], []
    aug = cover
    cur_map = cover
    while True:
        K, incl = kernel(cur_map)
        if K.dim == 0:
            break
        c2, g2 = projective_cover(K)
        d = incl * c2
        prev_gens = gl[-1]
        entries = {}
        for l, (w, kvec) in enumerate(g2):
            col = (incl.maps[w] * A.field.matrix(len(kvec), 1, kvec)).entries()
            for k, x in enumerate(_element_to_path_column(A, prev_gens, w, col)):
                if x and any(c != 0 for c in x):
                    entries[(k, l)] = x
        pm = PathMatrix(A, prev_gens, tuple(g for g, _ in g2), entries)
        terms.append(c2.source)
        gl.append(pm.src)
        maps.append(ModuleMap(c2.source, terms[-2], d.maps, check=False))
        paths.append(pm)
        cur_map = c2
    if M.dim == 0:
        terms, gl = [], []
    return Resolution(M, terms, gl, maps, paths, aug)


def projective_dimension(M: Module) -> int:
    r = minimal_proj_resolution(M)
    return max(len(r.terms) - 1, 0)


def global_dimension(A: Algebra) -> int:
    return max((projective_dimension(simple(A, v)) for v in A.vertices), default=0)
