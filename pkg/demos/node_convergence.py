"""Spectral convergence in the node count at fixed frequency.

The collocated quantity is non-oscillatory by construction, so the
error falls superalgebraically in n until it hits round-off, a few
nodes after machine precision. The oscillation and the singularity are
both carried by closed-form factors, not by the grid.
"""

from oscquad import Method, builtin_problem, compute, reference_oracle


def main():
    spec = builtin_problem("ex51", alpha=0.5, w=1000.0)
    ref = reference_oracle(spec)
    print("ex51, alpha=0.5, w=1000, physical route, s=0")
    print(f"{'n':>3}  {'abs err':>10}   gain")
    prev = None
    for n in range(4, 21, 2):
        err = abs(compute(spec, Method.LEVIN_PHYSICAL, n, 0).value - ref)
        gain = f"{prev / err:8.1f}x" if prev and err > 0 else ""
        print(f"{n:3d}  {err:10.2e}  {gain}")
        prev = err


if __name__ == "__main__":
    main()
