"""Compare solver feasibility with the polynomiality test for n = 1."""

import argparse
import random
from fractions import Fraction

from nablakit.linsolve import Feasible
from nablakit.nabla import IsPolynomial, TabulatedFunction, polynomiality_test
from nablakit.obstruction import RetractionProblem, solve_problem


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-size", type=int, default=8)
    ap.add_argument("--max-D", type=int, default=4)
    ap.add_argument("--trials", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    agree = total = 0
    for _ in range(args.trials):
        nodes = [Fraction(v) for v in rng.sample(range(-20, 20), args.max_size)]
        H = {s: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for s in nodes}
        for size in range(1, args.max_size + 1):
            S = nodes[:size]
            for D in range(args.max_D + 1):
                feas = isinstance(solve_problem(RetractionProblem(1, [S], H, D)), Feasible)
                expect = size < D + 2 or isinstance(
                    polynomiality_test(TabulatedFunction.line(S, [H[s] for s in S]), D),
                    IsPolynomial)
                agree += feas == expect
                total += 1
    print(f"{agree}/{total} instances agree")


if __name__ == "__main__":
    main()
