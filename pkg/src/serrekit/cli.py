"""Command-line entry point.

Every subcommand prints its result to stdout (or writes ``-o``/``--out``
atomically).  Failures are reported as a JSON object on stderr and the exit
status is 0 on success, 1 when a verification fails and 2 for bad input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .catalog import CATALOG, catalog_algebra, fixture_text, load_entry, shipped_fixture_text
from .columns import phi, proj_resolve_complex, serre_U
from .homotopy import Complex, ComplexError, hom_K, minimize, shift, stalk
from .io import (
    FormatError,
    chain_map_to_json,
    complex_from_json,
    complex_to_json,
    dumps,
    module_from_json,
    module_to_json,
    read_json,
    resolve_algebra,
    write_json,
)
from .modrep import Module, ModuleError, dual_D, injective, projective, simple, strip_projective_summands, tau, tau_minus, transpose
from .pathalg import Algebra, AlgebraError, load_algebra
from .serrear import ar_triangle, lam, lam_prime, probe_catalog, serre_S
from .suites import SUITES, Battery, SuiteError, verify_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    """Bad command-line input (arguments, files or expressions)."""


class ExpressionError(InputError):
    pass


# -- object expressions ---------------------------------------------------------------
#
#   expr  := NAME '(' arg (',' arg)* ')' | atom
#   arg   := expr | INT
#   atom  := module name (S1, P2, I3, [1,2], M0101, ...) | "path/to/file.json"
#
# Module-valued functions: tau, tau_minus.  Complex-valued functions:
# lambda, lambda_prime, stalk(M, n), shift(X, n), serre_s, serre_u, minimize.
# A module used where a complex is expected becomes a stalk in degree 0.

_TOKEN = re.compile(
    r"""\s*(?:
        (?P<int>[+-]?\d+(?![\w\]]))
      | (?P<interval>\[\s*\w+\s*,\s*\w+\s*\])
      | (?P<string>"[^"]*")
      | (?P<name>[A-Za-z_][\w^]*)
      | (?P<punct>[(),])
    )""",
    re.VERBOSE,
)


@dataclass
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExpressionError(f"unexpected character at position {pos}: {text[pos:pos + 10]!r}")
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


@dataclass
class Call:
    func: str
    args: list


@dataclass
class Atom:
    text: str
    quoted: bool = False


class Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self) -> Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, kind=None, text=None) -> Token:
        t = self.peek()
        if t is None:
            raise ExpressionError(f"unexpected end of expression {self.text!r}")
        if (kind and t.kind != kind) or (text and t.text != text):
            want = text or kind
            raise ExpressionError(f"expected {want!r} at position {t.pos}, found {t.text!r}")
        self.i += 1
        return t

    def parse(self):
        node = self.expr()
        if self.peek() is not None:
            t = self.peek()
            raise ExpressionError(f"trailing input at position {t.pos}: {t.text!r}")
        return node

    def expr(self):
        t = self.peek()
        if t is None:
            raise ExpressionError("empty expression")
        if t.kind == "name":
            self.take()
            nxt = self.peek()
            if nxt is not None and nxt.text == "(":
                self.take(text="(")
                args = [self.arg()]
                while self.peek() is not None and self.peek().text == ",":
                    self.take(text=",")
                    args.append(self.arg())
                self.take(text=")")
                return Call(t.text, args)
            return Atom(t.text)
        if t.kind == "interval":
            self.take()
            return Atom(re.sub(r"\s+", "", t.text))
        if t.kind == "string":
            self.take()
            return Atom(t.text[1:-1], quoted=True)
        raise ExpressionError(f"unexpected {t.text!r} at position {t.pos}")

    def arg(self):
        t = self.peek()
        if t is not None and t.kind == "int":
            self.take()
            return int(t.text)
        return self.expr()


def parse_expression(text: str):
    return Parser(text).parse()


class Evaluator:
    """Evaluates parsed expressions against one algebra."""

    MODULE_FUNCS = {"tau", "tau_minus"}
    COMPLEX_FUNCS = {"lambda", "lambda_prime", "stalk", "shift", "serre_s", "serre_u", "minimize"}

    def __init__(self, algebra: Algebra, modules: dict, seed: int = 0):
        self.algebra = algebra
        self.modules = modules
        self.seed = seed

    @classmethod
    def for_algebra(cls, ref, seed: int = 0) -> "Evaluator":
        if isinstance(ref, str) and ref in CATALOG:
            e = load_entry(ref)
            mods = dict(e.modules)
            mods.update({a: e.modules[n] for a, n in e.aliases.items()})
            return cls(e.algebra, mods, seed)
        A = resolve_algebra(ref)
        mods = {}
        for v in A.vertices:
            for prefix, f in (("S", simple), ("P", projective), ("I", injective)):
                mods[f"{prefix}{v}"] = f(A, v)
        return cls(A, mods, seed)

    def module(self, node) -> Module:
        val = self.eval(node)
        if not isinstance(val, Module):
            raise ExpressionError(f"{_show(node)} is a complex where a module is expected")
        return val

    def complex(self, node) -> Complex:
        val = self.eval(node)
        return stalk(val) if isinstance(val, Module) else val

    def eval(self, node):
        if isinstance(node, int):
            raise ExpressionError(f"integer {node} where an object is expected")
        if isinstance(node, Atom):
            return self.atom(node)
        f, args = node.func, node.args
        if f not in self.MODULE_FUNCS | self.COMPLEX_FUNCS:
            raise ExpressionError(f"unknown function {f!r}")
        arity = 2 if f in ("stalk", "shift") else 1
        if len(args) != arity:
            raise ExpressionError(f"{f} takes {arity} argument(s), got {len(args)}")
        if arity == 2 and not isinstance(args[1], int):
            raise ExpressionError(f"the second argument of {f} must be an integer")
        if f == "tau":
            return tau(self.module(args[0]), self.seed)
        if f == "tau_minus":
            return tau_minus(self.module(args[0]), self.seed)
        if f == "lambda":
            return lam(self.module(args[0]))
        if f == "lambda_prime":
            return lam_prime(self.module(args[0]))
        if f == "stalk":
            return stalk(self.module(args[0]), args[1])
        if f == "shift":
            return shift(self.complex(args[0]), args[1])
        if f == "serre_s":
            return serre_S(self.complex(args[0]), self.seed)
        if f == "serre_u":
            return serre_U(self.complex(args[0]))
        return minimize(self.complex(args[0]), seed=self.seed)[0]

    def atom(self, node: Atom):
        if node.quoted or node.text.endswith(".json"):
            return load_object(node.text, self.algebra)
        if node.text in self.modules:
            return self.modules[node.text]
        known = ", ".join(sorted(self.modules))
        raise ExpressionError(f"unknown module {node.text!r} (known: {known})")


def _show(node) -> str:
    if isinstance(node, Call):
        return f"{node.func}({', '.join(_show(a) for a in node.args)})"
    if isinstance(node, Atom):
        return node.text
    return str(node)


def load_object(path, algebra: Algebra | None = None):
    """A module or complex stored as JSON (complexes have a "terms" field)."""
    data = read_json(path)
    if not isinstance(data, dict):
        raise FormatError(f"{path}: expected a JSON object")
    if "terms" in data:
        return complex_from_json(data, algebra)
    return module_from_json(data, algebra)


def evaluate(text: str, algebra="a2", seed: int = 0):
    """Parse and evaluate an object expression over a catalog algebra or algebra file."""
    return Evaluator.for_algebra(algebra, seed).eval(parse_expression(text))


# -- output -----------------------------------------------------------------------------


def emit(obj, out=None) -> None:
    if out:
        write_json(out, obj)
    else:
        sys.stdout.write(obj if isinstance(obj, str) else dumps(obj))


def _module_label(M: Module) -> str:
    A = M.algebra
    if A.name in CATALOG:
        for n, N in load_entry(A.name).indecomposables():
            # bundled indecomposables are determined by their dimension vectors
            if N.dims == M.dims:
                return n
    return M.name or "M" + "".join(map(str, M.dims))


def _dot(name: str, edges) -> str:
    lines = [f"digraph {json.dumps(name)} {{"]
    for a, b, attrs in edges:
        extra = ", ".join(f"{k}={json.dumps(v)}" for k, v in attrs.items())
        lines.append(f"  {json.dumps(a)} -> {json.dumps(b)}" + (f" [{extra}]" if extra else "") + ";")
    lines.append("}")
    return "\n".join(lines) + "\n"


def tau_dot(pairs, name="tau") -> str:
    return _dot(name, [(m, t, {"style": "dashed", "label": "tau"}) for m, t in pairs])


# -- subcommands ------------------------------------------------------------------------


def cmd_check(args) -> int:
    A = load_algebra(args.algebra) if args.algebra not in CATALOG else catalog_algebra(args.algebra)
    info = {"algebra": A.name, "dim": A.dimension, "gldim": A.global_dimension()}
    if args.json:
        emit(info)
    else:
        print(f"dim={info['dim']}, gldim={info['gldim']}")
    return EXIT_OK


def _read_module(args) -> Module:
    A = resolve_algebra(args.algebra) if args.algebra else None
    M = load_object(args.module, A)
    if not isinstance(M, Module):
        raise InputError(f"{args.module} holds a complex, not a module")
    return M


def cmd_module(args) -> int:
    M = _read_module(args)
    if args.command == "tau":
        out = tau(M, args.seed)
    elif args.command == "tr":
        out = transpose(M) if args.functorial else strip_projective_summands(transpose(M), args.seed)
    else:
        out = dual_D(M)
    if args.dot:
        if args.command != "tau":
            raise InputError("--dot is available for tau only")
        emit(tau_dot([(_module_label(M), _module_label(out) if out.dim else "0")]), args.out)
        return EXIT_OK
    out.name = None
    emit(module_to_json(out), args.out)
    return EXIT_OK


def _read_complex(args) -> Complex:
    A = resolve_algebra(args.algebra) if args.algebra else None
    X = load_object(args.complex, A)
    return stalk(X) if isinstance(X, Module) else X


def cmd_complex(args) -> int:
    X = _read_complex(args)
    if args.command == "resolve":
        P, pi = proj_resolve_complex(X)
        if args.minimize:
            P, c = minimize(P, seed=args.seed)
            pi = pi * c.g
        emit({"resolution": complex_to_json(P), "augmentation": chain_map_to_json(pi)}, args.out)
        return EXIT_OK
    if args.command == "phi":
        Y = phi(X)
    elif args.command == "serre-u":
        Y = serre_U(X)
    else:
        Y = serre_S(X, args.seed)
    if args.minimize and args.command != "serre-s":
        Y, _ = minimize(Y, seed=args.seed)
    emit(complex_to_json(Y), args.out)
    return EXIT_OK


def _object(text: str, ev: Evaluator) -> Complex:
    if text.endswith(".json") and Path(text).exists():
        X = load_object(text, ev.algebra)
        return stalk(X) if isinstance(X, Module) else X
    return ev.complex(parse_expression(text))


def cmd_hom(args) -> int:
    ev = Evaluator.for_algebra(args.algebra, args.seed)
    X, Y = _object(args.x, ev), _object(args.y, ev)
    d = hom_K(X, Y).dimension
    if args.json:
        emit({"x": args.x, "y": args.y, "hom_K": d})
    else:
        print(d)
    return EXIT_OK


def cmd_ar(args) -> int:
    ev = Evaluator.for_algebra(args.algebra, args.seed)
    Z = _object(args.object, ev)
    if Z.algebra != ev.algebra:
        raise InputError("the object does not live over the chosen algebra")
    probes = probe_catalog(Battery.for_algebra(args.algebra).modules, window=(-args.window, args.window))
    rep = ar_triangle(Z, probes, seed=args.seed)
    if args.dot:
        right = args.object
        left = f"serre_s({right})[-1]"
        edges = [
            (left, "Y", {"label": "u"}),
            ("Y", right, {"label": "v"}),
            (right, f"serre_s({right})", {"label": "w", "style": "dashed"}),
        ]
        emit(_dot("ar_triangle", edges), args.out)
    else:
        emit({
            "object": args.object,
            "algebra": args.algebra,
            "seed": args.seed,
            "version": __version__,
            "pass": rep.passed,
            "checks": rep.checks,
            "left": complex_to_json(shift(rep.SZ, -1), embed_algebra=False),
            "middle": complex_to_json(rep.Y, embed_algebra=False),
            "w": chain_map_to_json(rep.w),
        }, args.out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def _algebra_arg(text: str):
    """A catalog name stays a name; anything else is read as an algebra file."""
    if text in CATALOG or text.removesuffix("^op") in CATALOG:
        return text
    if not Path(text).exists():
        raise InputError(f"unknown algebra {text!r}: neither a catalog name nor a file")
    return load_algebra(text)


def cmd_verify(args) -> int:
    rep = verify_suite(args.suite, _algebra_arg(args.algebra), args.seed, args.trials)
    data = rep.to_json()
    if args.out:
        write_json(args.out, data)
        failed = sum(not c["pass"] for c in rep.cases)
        print(f"{rep.suite} on {rep.algebra}: {len(rep.cases) - failed}/{len(rep.cases)} cases pass")
    else:
        emit(data)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_catalog(args) -> int:
    if args.action == "list":
        for name in CATALOG:
            A = catalog_algebra(name)
            print(f"{name}\tdim={A.dimension}\tgldim={A.global_dimension()}\tindecomposables={len(load_entry(name).order)}")
        return EXIT_OK
    if not args.name:
        raise InputError("catalog emit needs an algebra name")
    if args.name not in CATALOG:
        raise InputError(f"{args.name!r} is not a bundled algebra")
    if args.dot:
        e = load_entry(args.name)
        emit(tau_dot(sorted(e.tau.items()), name=f"tau_{args.name}"), args.out)
    elif args.fixture:
        emit(shipped_fixture_text(args.name), args.out)
    else:
        emit(CATALOG[args.name], args.out)
    return EXIT_OK


def cmd_fixtures(args) -> int:
    names = list(CATALOG) if args.name == "all" else [args.name]
    for n in names:
        if n not in CATALOG:
            raise InputError(f"{n!r} is not a bundled algebra")
    target = Path(args.dir) if args.dir else Path(__file__).parent / "data"
    stale = []
    for n in names:
        text = fixture_text(n)
        path = target / f"{n}.json"
        if args.check:
            if not path.exists() or path.read_text() != text:
                stale.append(n)
            continue
        write_json(path, json.loads(text))
        print(f"wrote {path}")
    if args.check:
        print(json.dumps({"checked": names, "stale": stale}))
        return EXIT_FAIL if stale else EXIT_OK
    return EXIT_OK


# -- argument parsing -------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="serrekit", description="Homotopy categories, Serre functors and AR triangles of bound quiver algebras.")
    p.add_argument("--version", action="version", version=f"serrekit {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="validate an algebra and print its dimension and global dimension")
    c.add_argument("algebra", help="algebra JSON file or catalog name")
    c.add_argument("--json", action="store_true")
    c.set_defaults(run=cmd_check)

    for name, text in (("tau", "AR translate D Tr M"), ("tr", "Auslander transpose"), ("dual", "k-dual D M")):
        s = sub.add_parser(name, help=text)
        s.add_argument("-m", "--module", required=True, help="module JSON file")
        s.add_argument("-a", "--algebra", help="algebra when the file does not name one")
        s.add_argument("-o", "--out")
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--dot", action="store_true", help="emit the translate as a DOT edge")
        if name == "tr":
            s.add_argument("--functorial", action="store_true", help="keep the projective summands of the functorial transpose")
        s.set_defaults(run=cmd_module)

    for name, text in (
        ("resolve", "projective resolution of a complex"),
        ("phi", "the duality to the opposite algebra"),
        ("serre-u", "Serre functor on K^b"),
        ("serre-s", "Serre functor on acyclic complexes (minimized)"),
    ):
        s = sub.add_parser(name, help=text)
        s.add_argument("-c", "--complex", required=True, help="complex (or module) JSON file")
        s.add_argument("-a", "--algebra")
        s.add_argument("-o", "--out")
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--minimize", action="store_true", help="strip contractible summands from the result")
        s.set_defaults(run=cmd_complex)

    h = sub.add_parser("hom", help="dimension of Hom in the homotopy category")
    h.add_argument("-x", required=True, help="object expression or JSON file")
    h.add_argument("-y", required=True, help="object expression or JSON file")
    h.add_argument("-a", "--algebra", default="a2")
    h.add_argument("--seed", type=int, default=0)
    h.add_argument("--json", action="store_true")
    h.set_defaults(run=cmd_hom)

    a = sub.add_parser("ar", help="AR triangle ending in an object, verified against probes")
    a.add_argument("--object", required=True, help="object expression, e.g. lambda(S1)")
    a.add_argument("-a", "--algebra", default="a2")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--window", type=int, default=2, help="probe shifts range over [-window, window]")
    a.add_argument("-o", "--out")
    a.add_argument("--dot", action="store_true")
    a.set_defaults(run=cmd_ar)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES)
    v.add_argument("--algebra", default="a2")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int, default=50)
    v.add_argument("--out")
    v.set_defaults(run=cmd_verify)

    k = sub.add_parser("catalog", help="bundled algebras")
    k.add_argument("action", choices=("list", "emit"))
    k.add_argument("name", nargs="?")
    k.add_argument("--fixture", action="store_true", help="emit the shipped fixture instead of the algebra")
    k.add_argument("--dot", action="store_true", help="emit the fixture's τ-table as DOT")
    k.add_argument("-o", "--out")
    k.set_defaults(run=cmd_catalog)

    f = sub.add_parser("fixtures", help="regenerate fixtures with the knitting oracle")
    f.add_argument("action", choices=("regen",))
    f.add_argument("name", help="catalog name or 'all'")
    f.add_argument("--dir", help="output directory (default: the package data directory)")
    f.add_argument("--check", action="store_true", help="compare with the files on disk instead of writing")
    f.set_defaults(run=cmd_fixtures)
    return p


_INPUT_ERRORS = (InputError, FormatError, AlgebraError, ModuleError, ComplexError, SuiteError, OSError)


def _fail(kind: str, exc: BaseException, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "type": type(exc).__name__, "message": str(exc), "exit": code}) + "\n")
    return code


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.run(args)
    except _INPUT_ERRORS as e:
        return _fail("input", e, EXIT_INPUT)
    except (ValueError, ArithmeticError) as e:
        # module-level refusals such as non-acyclic input to serre-s
        return _fail("input", e, EXIT_INPUT)


def main() -> None:
    sys.exit(run())
