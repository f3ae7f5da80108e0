"""Seeded random inputs for property checks. Every generator takes a ``random.Random``."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Sequence

from .complex_case import JordanSpecC, SolutionPair, general_solution
from .poly import Poly
from .real_case import FkResult, JordanSpecR, general_solution_real
from .scalar import cq


def rational(rng: random.Random, bound: int = 5, den: int = 3) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, den))


def scalar(rng: random.Random, field: str = "real", bound: int = 5, den: int = 3):
    if field == "real":
        return rational(rng, bound, den)
    return cq(rational(rng, bound, den), rational(rng, bound, den))


def random_exponent(rng: random.Random, nvars: int, max_degree: int):
    d = rng.randint(0, max_degree)
    e = [0] * nvars
    for _ in range(d):
        if nvars:
            e[rng.randrange(nvars)] += 1
    return tuple(e)


def random_poly(rng: random.Random, vars: Sequence[str], max_degree: int = 3, terms: int = 4,
                field: str = "real") -> Poly:
    data = {}
    for _ in range(rng.randint(0, terms)):
        e = random_exponent(rng, len(vars), max_degree)
        data[e] = data.get(e, 0) + scalar(rng, field)
    return Poly(vars, data, field)


def random_phis(rng: random.Random, nus: Sequence[int], max_degree: int = 3, terms: int = 3,
                field: str = "complex") -> List[Poly]:
    """One generating function per ``k`` over ``s1..s_nu``."""
    return [random_poly(rng, tuple(f"s{i + 1}" for i in range(nu)), max_degree, terms, field) for nu in nus]


def complex_phis(rng: random.Random, spec: JordanSpecC, max_degree: int = 3, terms: int = 3,
                 field: str = "complex") -> List[Poly]:
    ev = spec.only()
    return random_phis(rng, [ev.nu(k) for k in range(ev.blocks[0])], max_degree, terms, field)


def complex_solution(rng: random.Random, spec: JordanSpecC, max_degree: int = 3) -> SolutionPair:
    """Random solution for a single eigenvalue, with a random additive constant in ``f``."""
    sol = general_solution(spec, complex_phis(rng, spec, max_degree))
    c = scalar(rng, "complex")
    return SolutionPair(sol.f + Poly.const(sol.f.vars, c, sol.f.field), sol.g, sol.h)


def real_phis(rng: random.Random, spec: JordanSpecR, max_degree: int = 3, terms: int = 3,
              field: str = "real") -> List[Poly]:
    """Generating functions for the real case; rational coefficients keep ``phis`` tabulable."""
    return random_phis(rng, [spec.nu(k) for k in range(spec.blocks[0])], max_degree, terms, field)


def real_solution(rng: random.Random, spec: JordanSpecR, max_degree: int = 3,
                  field: str = "complex") -> FkResult:
    return general_solution_real(spec, [p.as_field("complex") for p in real_phis(rng, spec, max_degree, field=field)])


def real_table(rng: random.Random, n: int, max_degree: int = 3, entries: int = 3):
    table = {}
    for _ in range(rng.randint(1, entries)):
        key = (rng.randint(0, n), rng.randint(0, max_degree))
        table[key] = table.get(key, 0) + rational(rng)
    return table
