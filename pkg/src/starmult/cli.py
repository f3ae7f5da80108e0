"""Command-line interface: JSON in, JSON out.

Exit codes: 0 success (or a true check), 1 a false check or disagreement,
2 bad input. Errors go to stderr as ``{"error": kind, "message": text}``.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from . import linalg, serialize as ser
from .complex_case import (JordanSpecC, decompose_by_eigenvalue, embed, extend_solution,
                           general_solution, nilpotent_system, reconstruct_star_series, verify_gradient)
from .errors import SchemaError, StarmultError
from .poly import Poly
from .real_case import (JordanSpecR, basis_matrix, extend_real, general_solution_real, n_power_formula,
                        normalize_real, real_jordan_matrix, real_system, reconstruct_real, s_mu, s_system)
from .real_hypothesis import MODES, hypothesis_check, hypothesis_check_pair, phis_from_table, report_to_json
from .staralg import check_solution, star_power, star_product
from .verify import SUITES, VerifyConfig, run_suite


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(obj) -> None:
    sys.stdout.write(ser.dumps(obj) + "\n")


def _load(path):
    return ser.load_json(path)


def _pair(args):
    if args.pair:
        return ser.pair_from_json(_load(args.pair))
    if not (args.f and args.g):
        raise SchemaError("give --pair or both --f and --g")
    return ser.poly_from_json(_load(args.f)), ser.poly_from_json(_load(args.g))


def _common_field(*ps: Poly):
    field = "complex" if any(p.field == "complex" for p in ps) else "real"
    return [p.as_field(field) for p in ps]


def _forms_json(forms):
    return [[ser.poly_to_json(c) for c in form.components] for form in forms]


def _spec(args):
    return ser.spec_from_json(_load(args.spec))


def _single_c(spec: JordanSpecC) -> JordanSpecC:
    if not spec.is_single:
        raise SchemaError("this operation needs a single-eigenvalue complex spec")
    return spec


def _phis(args, spec):
    if getattr(args, "phis", None):
        return ser.genfuncs_from_json(_load(args.phis))
    if getattr(args, "table", None):
        table = ser.table_from_json(_load(args.table))
        return phis_from_table(table, spec if isinstance(spec, JordanSpecR) else _single_c(spec).only())
    raise SchemaError("give --phis or --table")


def _truncate(phis: List[Poly], N: Optional[int]) -> List[Poly]:
    if N is None:
        return phis
    return [Poly(p.vars, {e: c for e, c in p.terms.items() if sum(e) <= N}, p.field) for p in phis]


# -- subcommands --------------------------------------------------------------


def cmd_star_mul(args):
    sys_ = ser.system_from_json(_load(args.system))
    a = ser.mupoly_from_json(_load(args.a))
    b = ser.mupoly_from_json(_load(args.b))
    if a.field != b.field:
        a, b = a.as_field("complex"), b.as_field("complex")
    _emit(ser.mupoly_to_json(star_product(a.with_vars(sys_.vars), b.with_vars(sys_.vars), sys_.modulus)))
    return 0


def cmd_star_pow(args):
    sys_ = ser.system_from_json(_load(args.system))
    a = ser.mupoly_from_json(_load(args.a)).with_vars(sys_.vars)
    if args.k < 0:
        raise SchemaError("--k must be nonnegative")
    _emit(ser.mupoly_to_json(star_power(a, args.k, sys_.modulus)))
    return 0


def cmd_check(args):
    sys_ = ser.system_from_json(_load(args.system))
    V = ser.mupoly_from_json(_load(args.v)).with_vars(sys_.vars)
    res = check_solution(sys_, V)
    _emit({"is_solution": res.is_solution, "remainder": _forms_json(res.remainder)})
    return 0 if res.is_solution else 1


def cmd_check_grad(args):
    M = ser.matrix_from_json(_load(args.matrix))
    f, g = _common_field(*_pair(args))
    if f.vars != g.vars:
        raise SchemaError("f and g must share the variable list")
    if len(M) != f.nvars:
        raise SchemaError(f"matrix has {len(M)} rows but there are {f.nvars} variables")
    ok = verify_gradient(M, f, g)
    _emit({"is_solution": ok})
    return 0 if ok else 1


def cmd_extend(args):
    spec = _spec(args)
    f, g = _pair(args)
    if isinstance(spec, JordanSpecC):
        spec = _single_c(spec)
        f, g = f.with_vars(spec.vars), g.with_vars(spec.vars)
        V = extend_solution(spec, f, g)
        _emit({"system": ser.system_to_json(nilpotent_system(spec)), "v": ser.mupoly_to_json(V)})
        return 0
    f, g = [p.as_field("real").with_vars(spec.vars) for p in (f, g)]
    out = {}
    if not spec.is_normalized:
        norm = normalize_real(spec, f, g)
        spec, f, g = norm.spec, norm.f, norm.g
        out["normalized"] = {"spec": ser.spec_r_to_json(spec), **ser.pair_to_json(f, g)}
    V = extend_real(spec, f, g)
    out.update({"system": ser.system_to_json(real_system(spec)), "v": ser.mupoly_to_json(V)})
    _emit(out)
    return 0


def cmd_embed(args):
    target = ser.system_from_json(_load(args.system))
    V = ser.mupoly_from_json(_load(args.v))
    W = embed(V, args.s, target, factor=args.factor)
    _emit(ser.mupoly_to_json(W))
    return 0


def cmd_gensol(args):
    spec = _spec(args)
    phis = _truncate(_phis(args, spec), args.truncation)
    if isinstance(spec, JordanSpecC):
        sol = general_solution(_single_c(spec), phis)
        _emit(ser.pair_to_json(sol.f, sol.g, h=sol.h))
    else:
        res = general_solution_real(spec, phis)
        _emit({**ser.pair_to_json(res.f, res.g), "F": ser.poly_to_json(res.F)})
    return 0


def cmd_reconstruct(args):
    spec = _spec(args)
    if isinstance(spec, JordanSpecC):
        phis = _truncate(_phis(args, spec), args.truncation)
        V = reconstruct_star_series(_single_c(spec), phis)
        _emit({"system": ser.system_to_json(nilpotent_system(spec)), "v": ser.mupoly_to_json(V)})
        return 0
    if len(spec.blocks) != 1 or not spec.is_normalized:
        raise SchemaError("real reconstruction needs a normalized single-block spec; see 'hypothesis'")
    if not args.table:
        raise SchemaError("real reconstruction takes --table")
    n = spec.ns[0]
    V = reconstruct_real(ser.table_from_json(_load(args.table)), n, args.truncation)
    _emit({"system": ser.system_to_json(s_system(n)), "v": ser.mupoly_to_json(V)})
    return 0


def cmd_real_basis(args):
    if args.n < 0:
        raise SchemaError("--n must be nonnegative")
    basis = basis_matrix(args.n)
    M = real_jordan_matrix(JordanSpecR.normalized_single(args.n))
    checks = {
        "conjugation": linalg.matmul(basis.N, basis.B) == linalg.matmul(basis.B, basis.C),
        "power_formula": all(linalg.mat_pow(basis.N, a) == n_power_formula(args.n, a) for a in range(7)),
        "s_mu_solution": check_solution(s_system(args.n), s_mu(args.n)).is_solution,
    }
    _emit({"n": args.n, "B": ser.matrix_to_json(basis.B), "C": ser.matrix_to_json(basis.C),
           "M": ser.matrix_to_json(M), "checks": checks})
    return 0 if all(checks.values()) else 1


def cmd_decompose(args):
    spec = _spec(args)
    if not isinstance(spec, JordanSpecC):
        raise SchemaError("decompose takes a complex spec")
    f, g = _pair(args)
    parts = decompose_by_eigenvalue(spec, f.with_vars(spec.vars), g.with_vars(spec.vars))
    _emit({"components": [{"lambda": ser.scalar_to_json(ev.lam), **ser.pair_to_json(p.f, p.g)}
                          for ev, p in zip(spec.eigenvalues, parts)]})
    return 0


def cmd_hypothesis(args):
    spec = _spec(args)
    if not isinstance(spec, JordanSpecR):
        raise SchemaError("hypothesis takes a real spec")
    if args.truncation is None or args.truncation < 0:
        raise SchemaError("hypothesis needs --truncation N with N >= 0")
    if args.pair or args.f:
        if not spec.is_normalized:
            raise SchemaError("--pair input must be in s coordinates of a normalized spec")
        f, g = [p.as_field("real").with_vars(spec.svars) for p in _pair(args)]
        rep = hypothesis_check_pair(spec, f, g, args.truncation, args.mode)
    else:
        rep = hypothesis_check(spec, _phis(args, spec), args.truncation, args.mode)
    _emit(report_to_json(rep))
    return 0 if rep.agree else 1


def cmd_verify(args):
    try:
        cfg = VerifyConfig(args.suite, args.seed, args.trials, args.max_degree)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None
    rep = run_suite(cfg)
    _emit(rep.to_json())
    return 0 if rep.passed else 1


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="starmult", description="Exact star multiplication for grad f = M grad g.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(fn=fn)
        return sp

    def pair_opts(sp):
        sp.add_argument("--pair", help="JSON {'f': poly, 'g': poly}")
        sp.add_argument("--f", help="polynomial JSON for f")
        sp.add_argument("--g", help="polynomial JSON for g")

    sp = add("star-mul", cmd_star_mul, "star product of two mu-vectors")
    sp.add_argument("--system", required=True)
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)

    sp = add("star-pow", cmd_star_pow, "k-th star power of a mu-vector")
    sp.add_argument("--system", required=True)
    sp.add_argument("--a", required=True)
    sp.add_argument("--k", type=int, required=True)

    sp = add("check", cmd_check, "check a mu-vector against an extended system")
    sp.add_argument("--system", required=True)
    sp.add_argument("--v", required=True)

    sp = add("check-grad", cmd_check_grad, "check grad f = M grad g")
    sp.add_argument("--matrix", required=True)
    pair_opts(sp)

    sp = add("extend", cmd_extend, "extend a solution (f, g) to a mu-vector")
    sp.add_argument("--spec", required=True)
    pair_opts(sp)

    sp = add("embed", cmd_embed, "embed a mu-vector into a larger system")
    sp.add_argument("--system", required=True)
    sp.add_argument("--v", required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--factor", choices=["mu", "one_plus_mu2"], default="mu")

    for name, fn, help in (("gensol", cmd_gensol, "solution from generating functions"),
                           ("reconstruct", cmd_reconstruct, "star power series from generating functions")):
        sp = add(name, fn, help)
        sp.add_argument("--spec", required=True)
        sp.add_argument("--phis", help="list of polynomial JSON objects")
        sp.add_argument("--table", help='coefficient table {"k,j": scalar}')
        sp.add_argument("--truncation", type=int)

    sp = add("real-basis", cmd_real_basis, "basis matrix B and its checks")
    sp.add_argument("--n", type=int, required=True)

    sp = add("decompose", cmd_decompose, "split a solution by eigenvalue")
    sp.add_argument("--spec", required=True)
    pair_opts(sp)

    sp = add("hypothesis", cmd_hypothesis, "fit a nested star series for several real blocks")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--phis")
    sp.add_argument("--table")
    pair_opts(sp)
    sp.add_argument("--truncation", type=int, required=True)
    sp.add_argument("--mode", choices=MODES, default="minimal")

    sp = add("verify", cmd_verify, "randomized invariant suites")
    sp.add_argument("--suite", choices=SUITES, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--max-degree", type=int, default=3)
    return p


def _fail(kind: str, message: str) -> int:
    sys.stderr.write(ser.dumps({"error": kind, "message": message}) + "\n")
    return 2


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return _fail("usage", str(exc))
    try:
        return args.fn(args)
    except SchemaError as exc:
        return _fail("schema", str(exc))
    except StarmultError as exc:
        return _fail(type(exc).__name__, str(exc))
    except (ValueError, ZeroDivisionError) as exc:
        return _fail("invalid", str(exc))


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
