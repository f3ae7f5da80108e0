"""Print the real-case constants a_{m,mu} and check each against the direct solution.

    python scripts/real_constants_table.py [--n-max 3]
"""

import argparse

from starmult.poly import Poly
from starmult.real_case import (F_k_eval, JordanSpecR, closed_form_first_power, real_constant,
                                reconstruct_real, to_s_coordinates)


def mu_str(coeffs):
    parts = [f"{c}*mu^{i}" for i, c in enumerate(coeffs) if c]
    return " + ".join(parts) or "0"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=3)
    args = ap.parse_args()
    for n in range(args.n_max + 1):
        spec = JordanSpecR.normalized_single(n)
        for m in range(n + 1):
            V = reconstruct_real({(m, 1): 1}, n)
            F = F_k_eval(Poly(("s1",), {(1,): 1}, "complex"), m, spec)
            ok = (V[0], V[V.m - 1]) == (to_s_coordinates(F.f, spec), to_s_coordinates(F.g, spec))
            print(f"n={n} m={m}  a = {mu_str(real_constant(m, n))}  matches direct: {ok}")
        V = reconstruct_real({(n, 1): 1}, n)
        print(f"n={n} closed form for phi_n = s matches: {closed_form_first_power(n) == (V[0], V[V.m - 1])}")


if __name__ == "__main__":
    main()
