"""Contrast and rate scaling with dimension.

The inverted image keeps contrast -1 / (b (d - 1)) and the positive one
+1 / (b (d + 1)): resolution is bought with contrast. Meanwhile every
extra loss factor t on one arm costs t^4 in fourfold rate, which is the
practical limit on pushing d up.
"""

from __future__ import annotations

from ghostswap import Projection, analytic_contrast, rate_budget


def main() -> None:
    budget = 2
    print(f"mask budget fixed at {budget}\n")
    print(f"{'d':>4} {'anti-symmetric':>16} {'symmetric':>12} {'|ratio to d=4|':>15}")
    reference = None
    for d in (4, 8, 16, 32, 64, 128):
        negative = analytic_contrast(d, budget, Projection.ANTI_SYMMETRIC).value
        positive = analytic_contrast(d, budget, Projection.SYMMETRIC).value
        if reference is None:
            reference = negative
        print(f"{d:>4} {negative:>+16.6f} {positive:>+12.6f} {abs(reference / negative):>15.1f}")

    print("\nfourfold rate fraction left after per-photon transmission t:")
    for transmission in (1.0, 0.9, 0.75, 0.5, 0.25):
        print(f"  t = {transmission:4.2f}  ->  {rate_budget(transmission):.8f}")


if __name__ == "__main__":
    main()
