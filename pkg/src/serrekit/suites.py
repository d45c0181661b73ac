"""Verification batteries producing JSON reports."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field as dc_field

from . import __version__
from .catalog import CATALOG, CatalogEntry, load_entry
from .columns import phi, serre_U
from .exactlinalg import kernel_matrix
from .homotopy import Complex, dual_complex, hom_K, homotopy_equivalent, minimize, shift, stalk
from .io import certificate_to_json, resolve_algebra
from .modrep import (
    Module,
    ModuleMap,
    direct_sum,
    dual_D,
    hom_space,
    injective,
    is_projective,
    projective,
    simple,
    stable_hom,
    tau,
    transpose,
)
from .pathalg import Algebra
from .serrear import ar_triangle, lam, lam_prime, probe_catalog, quotient_model, serre_S

SUITES = (
    "serre-duality",
    "phi-duality",
    "lambda-embedding",
    "comm-tr",
    "final-diagram",
    "ar-triangles",
    "d-duality",
)

SHIFT_WINDOW = range(-4, 5)


class SuiteError(ValueError):
    pass


@dataclass
class Report:
    suite: str
    algebra: str
    seed: int
    cases: list = dc_field(default_factory=list)
    constants: dict = dc_field(default_factory=dict)
    elapsed_ms: int = 0

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.cases)

    def add(self, description: str, lhs, rhs, ok: bool | None = None, certificate=None, **extra):
        case = {"description": description, "lhs": lhs, "rhs": rhs, "pass": bool(lhs == rhs if ok is None else ok)}
        if certificate is not None:
            case["certificate"] = certificate_to_json(certificate)
        case.update(extra)
        self.cases.append(case)
        return case["pass"]

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "algebra": self.algebra,
            "seed": self.seed,
            "version": __version__,
            "cases": self.cases,
            "constants": self.constants,
            "elapsed_ms": self.elapsed_ms,
            "pass": self.passed,
        }


# -- object batteries ----------------------------------------------------------------


@dataclass
class Battery:
    algebra: Algebra
    modules: list          # (name, Module), indecomposables
    label: str

    @staticmethod
    def for_algebra(ref) -> "Battery":
        if isinstance(ref, str) and ref in CATALOG:
            e = load_entry(ref)
            return Battery(e.algebra, e.indecomposables(), ref)
        A = resolve_algebra(ref)
        mods = []
        for v in A.vertices:
            for nm, f in (("S", simple), ("P", projective), ("I", injective)):
                M = f(A, v)
                if all(M != N for _, N in mods):
                    mods.append((f"{nm}{v}", M))
        return Battery(A, mods, A.name or "algebra")

    def opposite(self) -> "Battery":
        mods = []
        for n, M in self.modules:
            DM = dual_D(M)
            DM.name = f"D{n}"
            mods.append((f"D{n}", DM))
        return Battery(self.algebra.opposite(), mods, f"{self.label}^op")


def random_complex(A: Algebra, modules, rng: random.Random) -> Complex:
    """A three-term complex of sums of the given modules with random differentials."""
    F = A.field

    def pick():
        parts = [rng.choice(modules)[1] for _ in range(rng.choice((1, 1, 2)))]
        return direct_sum(parts, A)[0] if len(parts) > 1 else parts[0]

    M0, M1, M2 = pick(), pick(), pick()
    H0 = hom_space(M0, M1)
    d0 = H0.combine([F.random_scalar(rng) for _ in range(H0.dim)]) if H0.dim else ModuleMap.zero(M0, M1)
    H1 = hom_space(M1, M2)
    if H1.dim:
        # maps g with g d0 = 0, as a kernel in H1-coordinates
        R = hom_space(M0, M2)
        if R.dim:
            C = F.from_columns([R.coords(b * d0) for b in H1.basis], R.dim)
            K = kernel_matrix(C)
            basis = K.columns() if K.cols else []
        else:
            basis = [[F.scalar(int(i == j)) for i in range(H1.dim)] for j in range(H1.dim)]
        coeffs = [F.scalar(0)] * H1.dim
        for vec in basis:
            c = F.random_scalar(rng)
            coeffs = [a + c * b for a, b in zip(coeffs, vec)]
        d1 = H1.combine(coeffs)
    else:
        d1 = ModuleMap.zero(M1, M2)
    lo = rng.choice((-1, 0))
    return Complex(A, {lo: M0, lo + 1: M1, lo + 2: M2}, {lo: d0, lo + 1: d1})


def general_objects(b: Battery, rng: random.Random, n_random: int = 6) -> list:
    objs = []
    for name, M in b.modules:
        for s in (-2, -1, 0, 1, 2):
            objs.append((f"shift(stalk({name}),{s})", shift(stalk(M), s)))
        if not is_projective(M):
            objs.append((f"lambda({name})", lam(M)))
    for k in range(n_random):
        objs.append((f"random#{k}", random_complex(b.algebra, b.modules, rng)))
    return objs


def acyclic_objects(b: Battery) -> list:
    objs = []
    for name, M in b.modules:
        L = lam(M)
        if hom_K(L, L).dimension:
            for s in (-1, 0, 1):
                objs.append((f"shift(lambda({name}),{s})", shift(L, s)))
        Lp = lam_prime(M)
        if hom_K(Lp, Lp).dimension:
            objs.append((f"lambda_prime({name})", Lp))
    return objs


def _pairs(objs, rng, n):
    return [(rng.choice(objs), rng.choice(objs)) for _ in range(n)]


def _memo(fn):
    cache = {}

    def get(label, X):
        if label not in cache:
            cache[label] = fn(X)
        return cache[label]

    return get


# -- suites ---------------------------------------------------------------------------------


def suite_serre_duality(b: Battery, rep: Report, rng, trials: int):
    SU = _memo(serre_U)
    for (lx, X), (ly, Y) in _pairs(general_objects(b, rng), rng, trials):
        rep.add(f"K^b: hom({lx}, {ly}) = hom({ly}, U {lx})", hom_K(X, Y).dimension, hom_K(Y, SU(lx, X)).dimension)
    SS = _memo(serre_S)
    acyc = acyclic_objects(b)
    for (lx, X), (ly, Y) in _pairs(acyc, rng, trials):
        rep.add(f"K^b_ac: hom({lx}, {ly}) = hom({ly}, S {lx})", hom_K(X, Y).dimension, hom_K(Y, SS(lx, X)).dimension)


def suite_phi_duality(b: Battery, rep: Report, rng, trials: int, seed: int):
    ob = b.opposite()
    PH = _memo(phi)
    for (lx, X), (ly, Y) in _pairs(general_objects(ob, rng), rng, trials):
        rep.add(f"hom({lx}, {ly}) = hom(phi {ly}, phi {lx})", hom_K(X, Y).dimension, hom_K(PH(ly, Y), PH(lx, X)).dimension)
    A, Aop = b.algebra, ob.algebra
    reg_op = direct_sum([projective(Aop, v) for v in Aop.vertices], Aop)[0]
    reg = direct_sum([projective(A, v) for v in A.vertices], A)[0]
    e = homotopy_equivalent(phi(stalk(reg_op)), stalk(reg), seed=seed)
    rep.add("phi(stalk of the regular module over the opposite) ~ stalk of the regular module",
            e.status, "equivalent", certificate=e.certificate)
    for v in Aop.vertices:
        P = projective(Aop, v)
        Y, cert = minimize(phi(stalk(P)), seed=seed)
        ok = cert.verify() and all(is_projective(M) for M in Y.terms.values())
        rep.add(f"phi(stalk P{v}^op) is equivalent to a complex of projectives",
                [list(M.dims) for M in Y.terms.values()], "projective terms", ok=ok, certificate=cert)


def suite_lambda_embedding(b: Battery, rep: Report):
    lams = {n: lam(M) for n, M in b.modules}
    lamps = {n: lam_prime(M) for n, M in b.modules}
    for n1, M in b.modules:
        for n2, N in b.modules:
            rep.add(f"hom(lambda {n1}, lambda {n2}) = stable hom mod projectives",
                    hom_K(lams[n1], lams[n2]).dimension, stable_hom(M, N, "projective").dimension)
            rep.add(f"hom(lambda' {n1}, lambda' {n2}) = stable hom mod injectives",
                    hom_K(lamps[n1], lamps[n2]).dimension, stable_hom(M, N, "injective").dimension)


def _search_shift(F, G, seed: int):
    """All s in the window with F ~ G[s], each with its certificate."""
    out = {}
    for s in SHIFT_WINDOW:
        e = homotopy_equivalent(F, shift(G, s), seed=seed)
        if e:
            out[s] = e.certificate
    return out


def _comm_tr_pair(M: Module):
    return quotient_model(phi(stalk(M)), "prj"), lam(transpose(M))


def calibrate_t0(seed: int = 0) -> int | None:
    """Calibrate on a2: the simple at the sink, viewed over the opposite algebra."""
    e = load_entry("a2")
    M = dual_D(e.module("S2"))
    found = _search_shift(*_comm_tr_pair(M), seed)
    return min(found) if len(found) == 1 else None


def calibrate_s0(seed: int = 0) -> int | None:
    e = load_entry("a2")
    S1 = e.module("S1")
    found = _search_shift(serre_S(lam(S1), seed), lam_prime(e.module(e.tau["S1"])), seed)
    # F[s] ~ G  <=>  F ~ G[-s]
    return -min(found) if len(found) == 1 else None


def suite_comm_tr(b: Battery, rep: Report, seed: int):
    t0 = calibrate_t0(seed)
    rep.constants["t0"] = t0
    ob = b.opposite()
    for name, M in ob.modules:
        if is_projective(M):
            continue
        Q, T = _comm_tr_pair(M)
        if t0 is None:
            rep.add(f"quotient_model(phi({name})) ~ lambda(Tr {name})[t0]", "no calibration", "calibrated", ok=False)
            continue
        e = homotopy_equivalent(Q, shift(T, t0), seed=seed)
        rep.add(f"quotient_model(phi(stalk {name}), prj) ~ lambda(Tr {name})[{t0}]", e.status, "equivalent",
                certificate=e.certificate, witness=e.witness)


def suite_final_diagram(b: Battery, rep: Report, seed: int, entry: CatalogEntry | None):
    s0 = calibrate_s0(seed)
    rep.constants["s0"] = s0
    for name, M in b.modules:
        if is_projective(M):
            continue
        TM = tau(M, seed)
        if entry is not None:
            known = entry.module(entry.tau[name])
            rep.add(f"tau({name}) agrees with the knitting table ({entry.tau[name]})", list(TM.dims), list(known.dims))
            target = known
        else:
            target = TM
        if s0 is None:
            rep.add(f"S(lambda {name})[s0] ~ lambda'(tau {name})", "no calibration", "calibrated", ok=False)
            continue
        e = homotopy_equivalent(shift(serre_S(lam(M), seed), s0), lam_prime(target), seed=seed)
        rep.add(f"S(lambda {name})[{s0}] ~ lambda'(tau {name})", e.status, "equivalent",
                certificate=e.certificate, witness=e.witness)


def suite_ar_triangles(b: Battery, rep: Report, seed: int):
    probes = probe_catalog(b.modules)
    for name, M in b.modules:
        if is_projective(M):
            continue
        r = ar_triangle(lam(M), probes, seed)
        summary = {k: v["pass"] for k, v in r.checks.items()}
        rep.add(f"AR triangle ending in lambda({name})", summary, {k: True for k in summary},
                ok=r.passed, checks=r.checks)


def suite_d_duality(b: Battery, rep: Report, rng, trials: int):
    DX = _memo(dual_complex)
    for (lx, X), (ly, Y) in _pairs(general_objects(b, rng), rng, trials):
        rep.add(f"hom({lx}, {ly}) = hom(D {ly}, D {lx})", hom_K(X, Y).dimension, hom_K(DX(ly, Y), DX(lx, X)).dimension)


def verify_suite(name: str, algebra="a2", seed: int = 0, trials: int = 50) -> Report:
    if name not in SUITES:
        raise SuiteError(f"unknown suite {name!r} (choose from {', '.join(SUITES)})")
    b = Battery.for_algebra(algebra)
    entry = load_entry(algebra) if isinstance(algebra, str) and algebra in CATALOG else None
    rep = Report(name, b.label, seed)
    rng = random.Random(seed)
    t = time.perf_counter()
    if name == "serre-duality":
        suite_serre_duality(b, rep, rng, trials)
    elif name == "phi-duality":
        suite_phi_duality(b, rep, rng, trials, seed)
    elif name == "lambda-embedding":
        suite_lambda_embedding(b, rep)
    elif name == "comm-tr":
        suite_comm_tr(b, rep, seed)
    elif name == "final-diagram":
        suite_final_diagram(b, rep, seed, entry)
    elif name == "ar-triangles":
        suite_ar_triangles(b, rep, seed)
    elif name == "d-duality":
        suite_d_duality(b, rep, rng, trials)
    rep.elapsed_ms = int((time.perf_counter() - t) * 1000)
    return rep
