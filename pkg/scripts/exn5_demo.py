"""Walk through the 5x5 worked example: check, split by eigenvalue, rebuild from star products."""

from starmult.complex_case import build_matrices, decompose_by_eigenvalue, verify_gradient
from starmult.worked_examples import exn5, exn5_reassembled, exn5_star_expression


def main():
    ex = exn5()
    print("spec blocks:", [(str(ev.lam), ev.blocks) for ev in ex.spec.eigenvalues])
    print("f =", ex.f)
    print("g =", ex.g)
    print("grad f = M grad g:", verify_gradient(build_matrices(ex.spec).M, ex.f, ex.g))
    for ev, part in zip(ex.spec.eigenvalues, decompose_by_eigenvalue(ex.spec, ex.f, ex.g)):
        print(f"component lambda={ev.lam}: g = {part.g}   h = {part.h}")
    first, second = exn5_star_expression()
    print("mu*(x0+mu x1)^3 + (x0+mu x1)^2       =", first)
    print("(mu w0^2)*(y0+mu y1) + (y0+mu y1)    =", second)
    print("reassembly equals (f, g):", exn5_reassembled() == (ex.f, ex.g))


if __name__ == "__main__":
    main()
