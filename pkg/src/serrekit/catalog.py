"""Bundled algebras and their fixture data.

Fixtures list every indecomposable module together with the AR translate.
They are produced by :func:`generate_fixture`, a knitting procedure that
starts at the indecomposable projectives and applies the inverse translate
until it vanishes.  The translate used here comes from minimal presentations
and never touches the column engine, so it can serve as an oracle for it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .io import dumps, module_from_json, module_to_json
from .modrep import (
    Module,
    dual_D,
    hom_dimension,
    injective,
    is_injective,
    is_projective,
    minimal_proj_resolution,
    projective,
    quotient,
    zero_module,
)
from .exactlinalg import column_space
from .pathalg import Algebra, AlgebraError, load_algebra

_Q = {"kind": "rationals"}


def _chain(n: int, relations=()):
    names = "abcdefgh"
    return {
        "field": _Q,
        "vertices": [str(i) for i in range(1, n + 1)],
        "arrows": [{"name": names[i], "from": str(i + 1), "to": str(i + 2)} for i in range(n - 1)],
        "relations": [list(r) for r in relations],
    }


CATALOG = {
    "a2": _chain(2),
    "a3": _chain(3),
    "n3": _chain(3, [[{"coeff": "1", "path": ["a", "b"]}]]),
    # D4 with the three outer vertices mapping to the centre 4
    "d4": {
        "field": _Q,
        "vertices": ["1", "2", "3", "4"],
        "arrows": [
            {"name": "a", "from": "1", "to": "4"},
            {"name": "b", "from": "2", "to": "4"},
            {"name": "c", "from": "3", "to": "4"},
        ],
        "relations": [],
    },
}

LINEAR = {"a2", "a3", "n3"}


@lru_cache(maxsize=None)
def catalog_algebra(name: str) -> Algebra:
    if name not in CATALOG:
        raise AlgebraError(f"{name!r} is not a bundled algebra (choose from {', '.join(CATALOG)})")
    return load_algebra(CATALOG[name], name=name)


# -- the knitting oracle -------------------------------------------------------------


def minimal_transpose(M: Module) -> Module:
    """Tr M from a minimal projective presentation (zero for projective M)."""
    A = M.algebra
    R = minimal_proj_resolution(M)
    if len(R.paths) == 0:
        return zero_module(A.opposite())
    fd = R.paths[0].dual().to_map()
    return quotient(fd.target, [column_space(m) for m in fd.maps]).module


def minimal_tau(M: Module) -> Module:
    return dual_D(minimal_transpose(M))


def minimal_tau_inverse(M: Module) -> Module:
    return minimal_transpose(dual_D(M))


def _names(A: Algebra, M: Module, linear: bool) -> list[str]:
    dims = M.dims
    names = []
    if sum(dims) == 1:
        names.append(f"S{A.vertices[dims.index(1)]}")
    for v in A.vertices:
        if projective(A, v).dims == dims and is_projective(M):
            names.append(f"P{v}")
    for v in A.vertices:
        if injective(A, v).dims == dims and is_injective(M):
            names.append(f"I{v}")
    if linear and set(dims) <= {0, 1}:
        support = [k for k, d in enumerate(dims) if d]
        if support == list(range(support[0], support[-1] + 1)):
            names.append(f"[{A.vertices[support[0]]},{A.vertices[support[-1]]}]")
    names.append("M" + "".join(str(d) for d in dims))
    return names


def generate_fixture(name: str) -> dict:
    """Knit the AR quiver of a bundled algebra and tabulate τ."""
    A = catalog_algebra(name)
    seen = {}
    order = []
    queue = [projective(A, v) for v in A.vertices]
    while queue:
        M = queue.pop(0)
        if M.dim == 0 or M.dims in seen:
            continue
        if hom_dimension(M, M) != 1:
            raise AssertionError(f"knitting produced a non-brick {M.dims}")
        seen[M.dims] = M
        order.append(M)
        queue.append(minimal_tau_inverse(M))
    linear = name in LINEAR
    entries, names = [], {}
    for M in order:
        nm = _names(A, M, linear)
        names[M.dims] = M.name = nm[0]
        entries.append({
            "name": nm[0],
            "aliases": nm[1:],
            "dims": list(M.dims),
            "projective": is_projective(M),
            "injective": is_injective(M),
            "module": module_to_json(M, embed_algebra=False),
        })
    tau = {}
    for M in order:
        if is_projective(M):
            continue
        T = minimal_tau(M)
        if T.dims not in names:
            raise AssertionError(f"τ of {names[M.dims]} is not in the list")
        tau[names[M.dims]] = names[T.dims]
    return {
        "algebra": name,
        "dimension": A.dimension,
        "global_dimension": A.global_dimension(),
        "indecomposables": entries,
        "tau": tau,
    }


def fixture_text(name: str) -> str:
    return dumps(generate_fixture(name))


def shipped_fixture_text(name: str) -> str:
    return resources.files("serrekit").joinpath("data", f"{name}.json").read_text()


# -- loaded fixtures ----------------------------------------------------------------------


@dataclass
class CatalogEntry:
    name: str
    algebra: Algebra
    modules: dict            # name -> Module
    aliases: dict            # alias -> name
    tau: dict
    global_dimension: int
    order: list

    def module(self, name: str) -> Module:
        return self.modules[self.aliases.get(name, name)]

    def indecomposables(self) -> list[tuple[str, Module]]:
        return [(n, self.modules[n]) for n in self.order]

    def non_projective(self) -> list[tuple[str, Module]]:
        return [(n, M) for n, M in self.indecomposables() if not is_projective(M)]


@lru_cache(maxsize=None)
def load_entry(name: str) -> CatalogEntry:
    A = catalog_algebra(name)
    data = json.loads(shipped_fixture_text(name))
    modules, aliases, order = {}, {}, []
    for e in data["indecomposables"]:
        M = module_from_json(e["module"], A)
        M.name = e["name"]
        modules[e["name"]] = M
        order.append(e["name"])
        for a in e["aliases"]:
            aliases.setdefault(a, e["name"])
    return CatalogEntry(name, A, modules, aliases, dict(data["tau"]), data["global_dimension"], order)
