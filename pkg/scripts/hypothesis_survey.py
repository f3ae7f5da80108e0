"""Survey of the multi-block real harness.

For each block structure and degree, count how many basis vectors of the
homogeneous solution space of grad f = M grad g (computed by brute force)
are reproduced by the star-series ansatz in each mode.

    python scripts/hypothesis_survey.py [--max-degree 3]
"""

import argparse
import time

from starmult.real_case import JordanSpecR
from starmult.real_hypothesis import MODES, hypothesis_check_pair, s_matrix_multi
from starmult.solspace import homogeneous_solutions

CASES = [(2, 1), (2, 2), (3, 1), (3, 2), (2, 1, 1)]
MAX_DEGREE = {(3, 2): 2}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-degree", type=int, default=3)
    args = ap.parse_args()
    print(f"{'blocks':<10}{'degree':>7}{'dim':>6}" + "".join(f"{m:>13}" for m in MODES) + f"{'seconds':>9}")
    for blocks in CASES:
        spec = JordanSpecR(0, 1, blocks)
        M = s_matrix_multi(spec)
        for d in range(1, min(args.max_degree, MAX_DEGREE.get(blocks, args.max_degree)) + 1):
            t0 = time.perf_counter()
            sols = homogeneous_solutions(M, spec.svars, d)
            hits = [sum(hypothesis_check_pair(spec, f, g, d, mode).agree for f, g in sols) for mode in MODES]
            print(f"{str(blocks):<10}{d:>7}{len(sols):>6}" + "".join(f"{h:>13}" for h in hits)
                  + f"{time.perf_counter() - t0:>9.2f}")


if __name__ == "__main__":
    main()
