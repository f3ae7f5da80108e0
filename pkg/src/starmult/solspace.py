"""Homogeneous polynomial solutions of grad f = M grad g by linear algebra.

This is a brute-force oracle independent of any generating-function formula:
the coefficients of ``f`` and ``g`` in a fixed degree are unknowns and the
equation is imposed monomial by monomial.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, List, Sequence, Tuple

from . import linalg
from .poly import Exp, Poly, gradient


def monomials(nvars: int, degree: int) -> List[Exp]:
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def pair_vector(f: Poly, g: Poly, monos: Sequence[Exp]) -> List:
    return [f.coefficient(e) for e in monos] + [g.coefficient(e) for e in monos]


def pair_from_vector(vars: Sequence[str], monos: Sequence[Exp], v: Sequence, field: str = "real") -> Tuple[Poly, Poly]:
    K = len(monos)
    f = Poly(vars, {e: v[i] for i, e in enumerate(monos)}, field)
    g = Poly(vars, {e: v[K + i] for i, e in enumerate(monos)}, field)
    return f, g


def equation_matrix(M: linalg.Matrix, vars: Sequence[str], degree: int) -> Tuple[List[List], List[Exp]]:
    """Rows express ``grad f - M grad g`` on the coefficient vector of ``(f, g)``."""
    monos = monomials(len(vars), degree)
    K = len(monos)
    negM = linalg.scale(M, -1)
    rows: Dict[Tuple[int, Exp], Dict[int, Fraction]] = {}
    for u in range(2 * K):
        p = Poly.monomial(vars, monos[u % K], 1)
        form = gradient(p) if u < K else gradient(p).apply(negM)
        for a, comp in enumerate(form.components):
            for e, c in comp.terms.items():
                rows.setdefault((a, e), {})[u] = c
    A = [[r.get(u, Fraction(0)) for u in range(2 * K)] for _, r in sorted(rows.items())]
    return A, monos


def homogeneous_solutions(M: linalg.Matrix, vars: Sequence[str], degree: int) -> List[Tuple[Poly, Poly]]:
    """A basis of solution pairs with ``f`` and ``g`` homogeneous of the given degree."""
    A, monos = equation_matrix(M, vars, degree)
    return [pair_from_vector(vars, monos, v) for v in linalg.nullspace(A, 2 * len(monos))]
