"""Randomized invariant suites with a fixed seed.

Each property draws its own ``random.Random`` from ``(seed, suite, property)``,
so the report does not depend on which other properties ran.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional

from . import linalg, randgen
from .complex_case import (Eigenvalue, JordanSpecC, extend_solution, general_solution, nilpotent_system,
                           reconstruct_star_series)
from .poly import Poly, gradient, integrate_exact
from .real_case import (JordanSpecR, basis_matrix, direct_real_solution, extend_real, general_solution_real,
                        n_power_formula, normalize_real, real_system, reconstruct_real, s_mu, s_system,
                        to_s_coordinates)
from .scalar import I
from .staralg import MuPoly, check_solution, star_power, star_product

SUITES = ("cr", "complex", "real")


@dataclass(frozen=True)
class VerifyConfig:
    suite: str = "cr"
    seed: int = 0
    trials: int = 20
    max_degree: int = 3

    def __post_init__(self):
        if self.suite not in SUITES:
            raise ValueError(f"unknown suite {self.suite!r}; expected one of {SUITES}")
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if self.max_degree < 0:
            raise ValueError("max_degree must be nonnegative")


@dataclass
class PropertyResult:
    name: str
    trials: int
    passed: bool
    failure: Optional[str] = None


@dataclass
class VerifyReport:
    config: VerifyConfig
    results: List[PropertyResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self) -> dict:
        return {
            "suite": self.config.suite,
            "seed": self.config.seed,
            "trials": self.config.trials,
            "max_degree": self.config.max_degree,
            "passed": self.passed,
            "properties": [{"name": r.name, "trials": r.trials, "passed": r.passed, "failure": r.failure}
                           for r in self.results],
        }


Trial = Callable[[random.Random, VerifyConfig], Optional[str]]


def _run(cfg: VerifyConfig, name: str, trial: Trial) -> PropertyResult:
    rng = random.Random(f"{cfg.seed}:{cfg.suite}:{name}")
    for t in range(cfg.trials):
        msg = trial(rng, cfg)
        if msg is not None:
            return PropertyResult(name, t + 1, False, f"trial {t}: {msg}")
    return PropertyResult(name, cfg.trials, True)


# -- Cauchy-Riemann ----------------------------------------------------------

CR = JordanSpecR(Fraction(0), Fraction(1), (1,))


def _holomorphic_phi(rng, deg) -> Poly:
    terms = {(j,): randgen.rational(rng) + randgen.rational(rng) * I for j in range(rng.randint(0, deg) + 1)}
    return Poly(("s1",), terms, "complex")


def _cr_pair(phi: Poly) -> MuPoly:
    res = general_solution_real(CR, [phi])
    return MuPoly((res.f, res.g))


def _cr_product(rng, cfg):
    p, q = _holomorphic_phi(rng, cfg.max_degree), _holomorphic_phi(rng, cfg.max_degree)
    sys = real_system(CR)
    got = star_product(_cr_pair(p), _cr_pair(q), sys.modulus)
    if got != _cr_pair(p * q):
        return "star product differs from the product of holomorphic functions"
    if not check_solution(sys, got).is_solution:
        return "star product is not a solution"
    return None


def _cr_power(rng, cfg):
    k = rng.randint(0, 8)
    sys = real_system(CR)
    z = Poly(("s1",), {(1,): 1}, "complex")
    if star_power(_cr_pair(z), k, sys.modulus) != _cr_pair(z ** k):
        return f"(x, y)^{k} differs from the split of (x + iy)^{k}"
    return None


def _integration(rng, cfg):
    vars = tuple(f"x{i}" for i in range(rng.randint(1, 6)))
    p = randgen.random_poly(rng, vars, cfg.max_degree + 1, 5, rng.choice(["real", "complex"]))
    if integrate_exact(gradient(p)) != p - Poly.const(vars, p.constant_term(), p.field):
        return f"integration of grad({p}) does not return p - p(0)"
    return None


# -- complex case -------------------------------------------------------------

BLOCK_SHAPES = ((1,), (2,), (3,), (4,), (2, 1), (3, 1), (2, 2), (3, 2, 1))


def _random_spec_c(rng) -> JordanSpecC:
    return JordanSpecC((Eigenvalue(randgen.scalar(rng, "complex", 3, 2), rng.choice(BLOCK_SHAPES)),))


def _complex_extension(rng, cfg):
    spec = _random_spec_c(rng)
    sol = randgen.complex_solution(rng, spec, cfg.max_degree)
    V = extend_solution(spec, sol.f, sol.g)
    lam = spec.only().lam
    if V[V.m - 1] != sol.g or (V.m > 1 and V[V.m - 2] != sol.f - sol.g.scale(lam)):
        return f"extension for blocks {spec.only().blocks} lost (f - lambda g, g)"
    if not check_solution(nilpotent_system(spec), V).is_solution:
        return "extension fails the solution check"
    return None


def _complex_reconstruction(rng, cfg):
    spec = _random_spec_c(rng)
    phis = randgen.complex_phis(rng, spec, cfg.max_degree)
    sol = general_solution(spec, phis)
    V = reconstruct_star_series(spec, phis)
    if V[V.m - 1] != sol.g or (V.m > 1 and V[V.m - 2] != sol.h):
        return f"star series for blocks {spec.only().blocks} differs from the direct solution"
    return None


def _complex_closure(rng, cfg):
    spec = _random_spec_c(rng)
    sys = nilpotent_system(spec)
    a = randgen.complex_solution(rng, spec, cfg.max_degree)
    b = randgen.complex_solution(rng, spec, cfg.max_degree)
    V = star_product(extend_solution(spec, a.f, a.g), extend_solution(spec, b.f, b.g), sys.modulus)
    if not check_solution(sys, V).is_solution:
        return f"product of extended solutions for blocks {spec.only().blocks} is not a solution"
    return None


# -- real case ----------------------------------------------------------------

REAL_SHAPES = ((1,), (2,), (3,), (2, 1))


def _real_basis(rng, cfg):
    n = rng.randint(0, 3)
    basis = basis_matrix(n)
    a = rng.randint(0, 6)
    if linalg.mat_pow(basis.N, a) != n_power_formula(n, a):
        return f"N^{a} block formula fails for n={n}"
    if not check_solution(s_system(n), s_mu(n)).is_solution:
        return f"s_mu is not a solution for n={n}"
    return None


def _real_extension(rng, cfg):
    spec = JordanSpecR(Fraction(0), Fraction(1), rng.choice(REAL_SHAPES))
    sol = randgen.real_solution(rng, spec, cfg.max_degree)
    V = extend_real(spec, sol.f, sol.g)
    if V[0] != sol.f or V[V.m - 1] != sol.g:
        return f"extension for blocks {spec.blocks} lost (f, g)"
    return None


def _real_closure(rng, cfg):
    spec = JordanSpecR(Fraction(0), Fraction(1), rng.choice(REAL_SHAPES))
    sys = real_system(spec)
    a = randgen.real_solution(rng, spec, cfg.max_degree)
    b = randgen.real_solution(rng, spec, cfg.max_degree)
    V = star_product(extend_real(spec, a.f, a.g), extend_real(spec, b.f, b.g), sys.modulus)
    if not check_solution(sys, V).is_solution:
        return f"product of extended solutions for blocks {spec.blocks} is not a solution"
    return None


def _real_reconstruction(rng, cfg):
    n = rng.randint(0, 2)
    table = randgen.real_table(rng, n, cfg.max_degree)
    spec = JordanSpecR.normalized_single(n)
    V = reconstruct_real(table, n)
    direct = direct_real_solution(table, n)
    if V[0] != to_s_coordinates(direct.f, spec) or V[V.m - 1] != to_s_coordinates(direct.g, spec):
        return f"star series differs from the direct solution for n={n}, table {sorted(table.items())}"
    return None


def _real_normalization(rng, cfg):
    beta = Fraction(0)
    while beta == 0:
        beta = randgen.rational(rng, 3, 2)
    spec = JordanSpecR(randgen.rational(rng, 3, 2), beta, rng.choice(REAL_SHAPES))
    sol = randgen.real_solution(rng, spec, cfg.max_degree)
    normalize_real(spec, sol.f, sol.g)  # re-verifies the normalized pair
    return None


PROPERTIES = {
    "cr": [("cr_star_product", _cr_product), ("cr_star_power", _cr_power), ("integration", _integration)],
    "complex": [("extension_roundtrip", _complex_extension), ("star_series", _complex_reconstruction),
                ("star_closure", _complex_closure)],
    "real": [("basis_matrix", _real_basis), ("extension_roundtrip", _real_extension),
             ("star_closure", _real_closure), ("star_series", _real_reconstruction),
             ("normalization", _real_normalization)],
}


def run_suite(cfg: VerifyConfig) -> VerifyReport:
    report = VerifyReport(cfg)
    for name, trial in PROPERTIES[cfg.suite]:
        try:
            report.results.append(_run(cfg, name, trial))
        except (ArithmeticError, ValueError, AssertionError) as exc:
            report.results.append(PropertyResult(name, 0, False, f"{type(exc).__name__}: {exc}"))
    return report
