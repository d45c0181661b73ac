"""JSON persistence for algebras, modules, maps, complexes and certificates.

Scalars are decimal-integer or "a/b" strings; matrices are row-major lists
of rows.  An ``"algebra"`` field holds either a catalog name (optionally
suffixed with ``^op``), a path to an algebra file, or an inline description.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from .exactlinalg import Field, Matrix
from .homotopy import Certificate, ChainMap, Complex
from .modrep import Module, ModuleMap
from .pathalg import Algebra, load_algebra


class FormatError(ValueError):
    pass


# -- algebras -----------------------------------------------------------------


def algebra_ref(A: Algebra):
    from .catalog import CATALOG

    base = A.name[:-3] if A.name and A.name.endswith("^op") else A.name
    if base in CATALOG:
        return A.name
    return A.to_json()


def resolve_algebra(ref, context: Algebra | None = None) -> Algebra:
    """Turn an algebra reference into an :class:`Algebra`.

    ``context`` is used when the reference is absent or names it.
    """
    if context is not None and (ref is None or ref == context.name or ref == context.to_json()):
        return context
    if isinstance(ref, Algebra):
        return ref
    if isinstance(ref, dict):
        return load_algebra(ref)
    if isinstance(ref, str):
        from .catalog import CATALOG, catalog_algebra

        base, op = (ref[:-3], True) if ref.endswith("^op") else (ref, False)
        if base in CATALOG:
            A = catalog_algebra(base)
        elif Path(base).exists():
            A = load_algebra(base)
        else:
            raise FormatError(f"unknown algebra {ref!r}")
        return A.opposite() if op else A
    raise FormatError("missing algebra reference")


# -- matrices -------------------------------------------------------------------


def matrix_to_json(m: Matrix) -> list:
    F = m.field
    return [[F.format(x) for x in row] for row in m.tolist()]


def matrix_from_json(rows, shape: tuple[int, int], F: Field) -> Matrix:
    r, c = shape
    if not isinstance(rows, list) or len(rows) != r:
        raise FormatError(f"expected {r} rows")
    ents = []
    for row in rows:
        if not isinstance(row, list) or len(row) != c:
            raise FormatError(f"expected rows of length {c}")
        ents.extend(F.scalar(x) for x in row)
    return F.matrix(r, c, ents)


# -- modules and maps -------------------------------------------------------------


def module_to_json(M: Module, embed_algebra: bool = True) -> dict:
    A = M.algebra
    out = {
        "dims": {v: d for v, d in zip(A.vertices, M.dims)},
        "arrows": {a.name: matrix_to_json(m) for a, m in zip(A.arrows, M.actions)},
    }
    if embed_algebra:
        out = {"algebra": algebra_ref(A), **out}
    if M.name:
        out["name"] = M.name
    return out


def module_from_json(d: dict, algebra: Algebra | None = None) -> Module:
    try:
        A = resolve_algebra(d.get("algebra"), algebra)
        F = A.field
        dims_in = d["dims"]
        if isinstance(dims_in, list):
            dims = [int(x) for x in dims_in]
        else:
            dims = [int(dims_in.get(v, 0)) for v in A.vertices]
            unknown = set(dims_in) - set(A.vertices)
            if unknown:
                raise FormatError(f"unknown vertices {sorted(unknown)}")
        arrows = d.get("arrows", {})
        acts = []
        for a in A.arrows:
            shape = (dims[a.target], dims[a.source])
            rows = arrows.get(a.name)
            if rows is None:
                if shape[0] and shape[1]:
                    raise FormatError(f"missing matrix for arrow {a.name}")
                rows = [[] for _ in range(shape[0])]
            acts.append(matrix_from_json(rows, shape, F))
        return Module(A, dims, acts, name=d.get("name"))
    except (KeyError, TypeError) as e:
        raise FormatError(f"malformed module: {e}") from None


def map_to_json(f: ModuleMap) -> dict:
    A = f.algebra
    return {"vertex_maps": {v: matrix_to_json(m) for v, m in zip(A.vertices, f.maps)}}


def map_from_json(d: dict, source: Module, target: Module, check: bool = True) -> ModuleMap:
    A = source.algebra
    vm = d.get("vertex_maps", {})
    maps = []
    for k, v in enumerate(A.vertices):
        shape = (target.dims[k], source.dims[k])
        rows = vm.get(v)
        if rows is None:
            maps.append(A.field.zeros(*shape))
        else:
            maps.append(matrix_from_json(rows, shape, A.field))
    return ModuleMap(source, target, maps, check=check)


def module_map_to_json(f: ModuleMap) -> dict:
    return {
        "algebra": algebra_ref(f.algebra),
        "source": module_to_json(f.source, embed_algebra=False),
        "target": module_to_json(f.target, embed_algebra=False),
        **map_to_json(f),
    }


def module_map_from_json(d: dict, algebra: Algebra | None = None) -> ModuleMap:
    A = resolve_algebra(d.get("algebra"), algebra)
    S = module_from_json(d["source"], A)
    T = module_from_json(d["target"], A)
    return map_from_json(d, S, T)


# -- complexes ------------------------------------------------------------------


def complex_to_json(X: Complex, embed_algebra: bool = True) -> dict:
    out = {
        "terms": {str(n): module_to_json(X[n], embed_algebra=False) for n in X.degrees},
        "differentials": {str(n): map_to_json(X.d(n)) for n in X.degrees if n + 1 in X.terms},
    }
    if embed_algebra:
        out = {"algebra": algebra_ref(X.algebra), **out}
    return out


def complex_from_json(d: dict, algebra: Algebra | None = None) -> Complex:
    try:
        A = resolve_algebra(d.get("algebra"), algebra)
        terms = {int(n): module_from_json(m, A) for n, m in d.get("terms", {}).items()}
        diffs = {}
        for n, m in d.get("differentials", {}).items():
            n = int(n)
            if n not in terms or n + 1 not in terms:
                raise FormatError(f"differential {n} has no source or target term")
            diffs[n] = map_from_json(m, terms[n], terms[n + 1])
        return Complex(A, terms, diffs)
    except (KeyError, TypeError, AttributeError) as e:
        raise FormatError(f"malformed complex: {e}") from None


def chain_map_to_json(f: ChainMap) -> dict:
    return {
        "algebra": algebra_ref(f.source.algebra),
        "source": complex_to_json(f.source, embed_algebra=False),
        "target": complex_to_json(f.target, embed_algebra=False),
        "components": {str(n): map_to_json(c) for n, c in sorted(f.components.items())},
    }


def _components(d: dict, X: Complex, Y: Complex, shift: int = 0) -> dict:
    return {int(n): map_from_json(m, X[int(n)], Y[int(n) - shift], check=False) for n, m in d.items()}


def chain_map_from_json(d: dict, algebra: Algebra | None = None) -> ChainMap:
    A = resolve_algebra(d.get("algebra"), algebra)
    X = complex_from_json(d["source"], A)
    Y = complex_from_json(d["target"], A)
    return ChainMap(X, Y, _components(d.get("components", {}), X, Y))


def certificate_to_json(c: Certificate) -> dict:
    return {
        "f": chain_map_to_json(c.f),
        "g": {str(n): map_to_json(m) for n, m in sorted(c.g.components.items())},
        "h_X": {str(n): map_to_json(m) for n, m in sorted(c.h_X.items())},
        "h_Y": {str(n): map_to_json(m) for n, m in sorted(c.h_Y.items())},
    }


def certificate_from_json(d: dict, algebra: Algebra | None = None) -> Certificate:
    f = chain_map_from_json(d["f"], algebra)
    X, Y = f.source, f.target
    g = ChainMap(Y, X, _components(d.get("g", {}), Y, X))
    hX = _components(d.get("h_X", {}), X, X, shift=1)
    hY = _components(d.get("h_Y", {}), Y, Y, shift=1)
    return Certificate(f, g, hX, hY)


# -- files ------------------------------------------------------------------------


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise FormatError(f"no such file: {path}") from None
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: invalid JSON ({e})") from None


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_json(path, obj) -> None:
    """Write atomically: a temporary file in the same directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(dumps(obj))
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
