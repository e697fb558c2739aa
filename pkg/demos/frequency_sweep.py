"""Error against frequency: the method improves as w grows.

With n fixed and tiny, the absolute error decays like
w^{-(s+1+min(1+alpha,1))} (times a logarithmic factor for the log
weight). Multiplying it back by that rate gives a flat column, so the
decay exponent is visible without plotting. Raising s steepens the
decay without touching the grid.
"""

import numpy as np

from oscquad import Method, builtin_problem, compute, delta_alpha, reference_oracle

ALPHA = -0.5
ORDER1 = 1.0 + min(1.0 + ALPHA, 1.0)


def main():
    print("ex52 (log weight), alpha=-0.5, n=4 physical nodes, s=0")
    print(f"{'w':>9}  {'abs err':>10}  {'err * w^%.1f / delta':>20}" % ORDER1)
    for w in 10.0 ** np.arange(2.0, 4.01, 0.5):
        spec = builtin_problem("ex52", ALPHA, w)
        ref = reference_oracle(spec)
        err = abs(compute(spec, Method.LEVIN_PHYSICAL, 4, 0).value - ref)
        scaled = err * w ** ORDER1 / delta_alpha(ALPHA, w)
        print(f"{w:9.0f}  {err:10.2e}  {scaled:20.3e}")

    print()
    print("same problem, frequency route with 3 points, s=1")
    order = 2.0 + min(1.0 + ALPHA, 1.0)
    print(f"{'w':>9}  {'abs err':>10}  {'err * w^%.1f / delta':>20}" % order)
    for w in 10.0 ** np.arange(2.0, 4.01, 0.5):
        spec = builtin_problem("ex52", ALPHA, w)
        ref = reference_oracle(spec)
        err = abs(compute(spec, Method.LEVIN_FREQ, 3, 1).value - ref)
        scaled = err * w ** order / delta_alpha(ALPHA, w)
        print(f"{w:9.0f}  {err:10.2e}  {scaled:20.3e}")


if __name__ == "__main__":
    main()
