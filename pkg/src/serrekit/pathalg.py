"""Bound quiver algebras kQ/I for acyclic quivers.

Paths are tuples of arrow indices read left to right: ``(a, b)`` means
"first a, then b", so ``s(b) == t(a)``.  Right modules are representations
whose linear maps point along the arrows; the indecomposable projective
``P(i) = e_i Λ`` has the paths starting at ``i`` as its basis.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path as FsPath

from .exactlinalg import Field, QQ, Matrix, _rref


class AlgebraError(ValueError):
    """Raised for malformed or unsupported algebra descriptions."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


class Quiver:
    """A finite acyclic quiver; vertices are referred to by index internally."""

    def __init__(self, vertices, arrows):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("vertex names must be unique")
        index = {v: i for i, v in enumerate(self.vertices)}
        arrs = []
        for a in arrows:
            name, s, t = (a["name"], a["from"], a["to"]) if isinstance(a, dict) else a
            s, t = str(s), str(t)
            if s not in index or t not in index:
                raise AlgebraError(f"arrow {name!r} uses an unknown vertex")
            arrs.append(Arrow(str(name), index[s], index[t]))
        self.arrows = tuple(arrs)
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise AlgebraError("arrow names must be unique")
        self.vertex_index = index
        self.arrow_index = {a.name: k for k, a in enumerate(self.arrows)}
        self.order = self._topological_order()

    def _topological_order(self) -> tuple[int, ...]:
        n = len(self.vertices)
        indeg = [0] * n
        for a in self.arrows:
            indeg[a.target] += 1
        ready = [v for v in range(n) if indeg[v] == 0]
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for a in self.arrows:
                if a.source == v:
                    indeg[a.target] -= 1
                    if indeg[a.target] == 0:
                        ready.append(a.target)
        if len(order) != n:
            raise AlgebraError("quiver has an oriented cycle")
        return tuple(order)

    def vertex(self, v) -> int:
        """Index of the vertex named ``v`` (names are compared as strings)."""
        try:
            return self.vertex_index[str(v)]
        except KeyError:
            raise AlgebraError(f"unknown vertex {v!r}") from None

    def reversed(self) -> "Quiver":
        return Quiver(self.vertices, [(a.name, self.vertices[a.target], self.vertices[a.source]) for a in self.arrows])

    def __eq__(self, other):
        return isinstance(other, Quiver) and self.vertices == other.vertices and self.arrows == other.arrows

    def __hash__(self):
        return hash((self.vertices, self.arrows))


class Algebra:
    """A bound quiver algebra with an explicit basis of paths modulo relations.

    ``basis[(i, j)]`` lists the basis paths from ``i`` to ``j``; every other
    path has a normal form in ``nf[(i, j)]``.
    """

    def __init__(self, quiver: Quiver, field: Field = QQ, relations=(), name: str | None = None, _basis=None):
        self.quiver = quiver
        self.field = field
        self.name = name
        self.relations = tuple(self._check_relation(r) for r in relations)
        self._op = None
        self._mult_cache = {}
        self._gldim = None
        if _basis is None:
            self._compute_basis()
        else:
            self.paths, self.basis, self.nf = _basis

    # construction -----------------------------------------------------
    def _check_relation(self, rel):
        terms = []
        ends = set()
        for coeff, path in rel:
            path = tuple(self.quiver.arrow_index[a] if isinstance(a, str) else a for a in path)
            if len(path) < 2:
                raise AlgebraError("relation not admissible: term of length < 2")
            arrs = self.quiver.arrows
            for x, y in zip(path, path[1:]):
                if arrs[x].target != arrs[y].source:
                    raise AlgebraError("relation term is not a path")
            ends.add((arrs[path[0]].source, arrs[path[-1]].target))
            c = self.field.scalar(coeff)
            if c != 0:
                terms.append((c, path))
        if len(ends) > 1:
            raise AlgebraError("relation not admissible: combines non-parallel paths")
        if not terms:
            raise AlgebraError("relation not admissible: empty relation")
        return tuple(terms)

    def _source(self, path, i=None):
        return self.quiver.arrows[path[0]].source if path else i

    def _compute_basis(self):
        arrows = self.quiver.arrows
        n = len(self.quiver.vertices)
        paths = {(i, j): [] for i in range(n) for j in range(n)}
        for i in range(n):
            stack = [((), i)]
            while stack:
                p, end = stack.pop()
                paths[(i, end)].append(p)
                for k, a in enumerate(arrows):
                    if a.source == end:
                        stack.append((p + (k,), a.target))
        for key in paths:
            paths[key].sort(key=lambda p: (-len(p), p))
        ideal = {key: [] for key in paths}
        for rel in self.relations:
            c0, p0 = rel[0]
            s, t = arrows[p0[0]].source, arrows[p0[-1]].target
            for i in range(n):
                for left in paths[(i, s)]:
                    for j in range(n):
                        for right in paths[(t, j)]:
                            ideal[(i, j)].append({left + p + right: c for c, p in rel})
        basis, nf = {}, {}
        F = self.field
        for key, plist in paths.items():
            col = {p: k for k, p in enumerate(plist)}
            gens = ideal[key]
            if gens:
                M = F.matrix(len(gens), len(plist), [0] * (len(gens) * len(plist)))
                for r, g in enumerate(gens):
                    for p, c in g.items():
                        M.m[r, col[p]] += c
                pivots, rows = _rref(M)
            else:
                pivots, rows = [], []
            pivset = set(pivots)
            bas = [p for k, p in enumerate(plist) if k not in pivset]
            bcol = {p: k for k, p in enumerate(bas)}
            forms = {}
            for p in bas:
                v = [F.scalar(0)] * len(bas)
                v[bcol[p]] = F.scalar(1)
                forms[p] = v
            for r, pc in enumerate(pivots):
                row = rows[r]
                forms[plist[pc]] = [-row[col[b]] for b in bas]
            basis[key] = bas
            nf[key] = forms
        self.paths = paths
        self.basis = basis
        self.nf = nf

    # basic data -------------------------------------------------------
    @property
    def n_vertices(self) -> int:
        return len(self.quiver.vertices)

    @property
    def vertices(self):
        return self.quiver.vertices

    @property
    def arrows(self):
        return self.quiver.arrows

    def vertex(self, v) -> int:
        return self.quiver.vertex(v)

    @property
    def dimension(self) -> int:
        return sum(len(b) for b in self.basis.values())

    def dim_e(self, i: int, j: int) -> int:
        """dim e_i Λ e_j."""
        return len(self.basis[(i, j)])

    def path_name(self, path, i=None) -> str:
        if not path:
            return f"e{self.vertices[i]}"
        return "".join(self.arrows[k].name for k in path) if all(len(self.arrows[k].name) == 1 for k in path) \
            else "*".join(self.arrows[k].name for k in path)

    def basis_names(self) -> list[str]:
        out = []
        for (i, j), bas in sorted(self.basis.items()):
            out.extend(self.path_name(p, i) for p in bas)
        return out

    # multiplication ---------------------------------------------------
    def mult_table(self, i: int, j: int, k: int):
        """table[a][b] = normal form of basis(i,j)[a] * basis(j,k)[b]."""
        key = (i, j, k)
        t = self._mult_cache.get(key)
        if t is None:
            forms = self.nf[(i, k)]
            t = [[forms[x + y] for y in self.basis[(j, k)]] for x in self.basis[(i, j)]]
            self._mult_cache[key] = t
        return t

    def multiply(self, i: int, j: int, k: int, x, y):
        """Product of x in e_iΛe_j and y in e_jΛe_k, as coordinates."""
        F = self.field
        out = [F.scalar(0)] * self.dim_e(i, k)
        table = self.mult_table(i, j, k)
        for a, xa in enumerate(x):
            if xa == 0:
                continue
            row = table[a]
            for b, yb in enumerate(y):
                if yb == 0:
                    continue
                c = xa * yb
                for r, z in enumerate(row[b]):
                    if z != 0:
                        out[r] += c * z
        return out

    def idempotent(self, i: int):
        F = self.field
        return [F.scalar(1) if p == () else F.scalar(0) for p in self.basis[(i, i)]]

    def left_mult_matrix(self, i: int, j: int, w: int, x) -> Matrix:
        """Matrix of p -> x*p from basis(j, w) to basis(i, w), for x in e_iΛe_j."""
        F = self.field
        src = self.dim_e(j, w)
        tgt = self.dim_e(i, w)
        if src == 0 or tgt == 0:
            return F.zeros(tgt, src)
        table = self.mult_table(i, j, w)
        M = F._raw(tgt, src)
        for a, xa in enumerate(x):
            if xa == 0:
                continue
            for b in range(src):
                for r, z in enumerate(table[a][b]):
                    if z != 0:
                        M[r, b] += xa * z
        return Matrix(F, M)

    def right_arrow_matrix(self, i: int, arrow: int) -> Matrix:
        """Action of an arrow on P(i): basis(i, s) -> basis(i, t), p -> p*a."""
        a = self.arrows[arrow]
        F = self.field
        src = self.basis[(i, a.source)]
        tgt_forms = self.nf[(i, a.target)]
        tgt = self.dim_e(i, a.target)
        M = F._raw(tgt, len(src))
        for b, p in enumerate(src):
            for r, z in enumerate(tgt_forms[p + (arrow,)]):
                if z != 0:
                    M[r, b] = z
        return Matrix(F, M)

    # opposite ---------------------------------------------------------
    def opposite(self) -> "Algebra":
        """The opposite algebra: arrows reversed, relations and basis paths reversed."""
        if self._op is None:
            rev = lambda p: tuple(reversed(p))
            paths = {(j, i): [rev(p) for p in ps] for (i, j), ps in self.paths.items()}
            basis = {(j, i): [rev(p) for p in bs] for (i, j), bs in self.basis.items()}
            nf = {(j, i): {rev(p): v for p, v in f.items()} for (i, j), f in self.nf.items()}
            rels = [[(c, rev(p)) for c, p in r] for r in self.relations]
            op = Algebra(self.quiver.reversed(), self.field, rels, name=_op_name(self.name), _basis=(paths, basis, nf))
            op._op = self
            self._op = op
        return self._op

    # equality / serialization ----------------------------------------
    def _key(self):
        rels = tuple(tuple((self.field.format(c), p) for c, p in r) for r in self.relations)
        return (self.field, self.quiver, rels)

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, Algebra) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"Algebra({self.name or '?'}, dim={self.dimension}, {self.field!r})"

    def to_json(self) -> dict:
        F = self.field
        return {
            "field": F.to_json(),
            "vertices": list(self.vertices),
            "arrows": [{"name": a.name, "from": self.vertices[a.source], "to": self.vertices[a.target]} for a in self.arrows],
            "relations": [[{"coeff": F.format(c), "path": [self.arrows[k].name for k in p]} for c, p in r] for r in self.relations],
        }

    def global_dimension(self) -> int:
        if self._gldim is None:
            from .modrep import global_dimension
            self._gldim = global_dimension(self)
        return self._gldim


def _op_name(name):
    if name is None:
        return None
    return name[:-3] if name.endswith("^op") else name + "^op"


def load_algebra(description, name: str | None = None) -> Algebra:
    """Build an :class:`Algebra` from its JSON description (dict, JSON text or path)."""
    if isinstance(description, (str, FsPath)):
        text = str(description)
        if text.lstrip().startswith("{"):
            description = json.loads(text)
        else:
            p = FsPath(text)
            description = json.loads(p.read_text())
            name = name or p.stem
    if not isinstance(description, dict):
        raise AlgebraError("algebra description must be a JSON object")
    try:
        field = Field.from_json(description.get("field"))
        quiver = Quiver(description.get("vertices", []), description.get("arrows", []))
        rels = []
        for r in description.get("relations", []):
            terms = []
            for t in r:
                path = t["path"]
                if isinstance(path, str):
                    path = path.split()
                for a in path:
                    if a not in quiver.arrow_index:
                        raise AlgebraError(f"relation uses unknown arrow {a!r}")
                terms.append((t.get("coeff", "1"), path))
            rels.append(terms)
    except (KeyError, TypeError) as e:
        raise AlgebraError(f"malformed algebra description: {e}") from None
    return Algebra(quiver, field, rels, name=name or description.get("name"))


def opposite(A: Algebra) -> Algebra:
    return A.opposite()
