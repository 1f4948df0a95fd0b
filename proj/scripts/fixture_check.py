#!/usr/bin/env python3
"""Brute-force audit of the worked 3-run example.

Recomputes every fixture number with plain loops over the expanded
per-evaluation sequences, so the values asserted by the C++ suites can be
checked by hand (or by running this script). No third-party packages.

Fixture: linear quality scale on [0, 10], budget t_max = 8, runs
    R1 = (1,8) (3,4) (6,2)
    R2 = (1,9) (2,5) (7,1)
    R3 = (1,7) (4,6) (5,3)
"""

import sys
from fractions import Fraction

T_MAX = 8
Z_MIN, Z_MAX = Fraction(0), Fraction(10)
RUNS = [
    [(1, 8), (3, 4), (6, 2)],
    [(1, 9), (2, 5), (7, 1)],
    [(1, 7), (4, 6), (5, 3)],
]
TARGETS = [Fraction(v) for v in (2, 4, 6, 8, 10)]


def best_so_far(run, t):
    """Minimum recorded value within the first t evaluations; None if none."""
    values = [Fraction(z) for (te, z) in run if te <= t]
    return min(values) if values else None


def eaf(t, z):
    """Fraction of runs attaining (t, z)."""
    count = 0
    for run in RUNS:
        v = best_so_far(run, t)
        if v is not None and v <= z:
            count += 1
    return Fraction(count, len(RUNS))


def ecdf_targets(t):
    """Fraction of (run, target) pairs attained by budget t."""
    attained = 0
    for run in RUNS:
        v = best_so_far(run, t)
        for z in TARGETS:
            if v is not None and v <= z:
                attained += 1
    return Fraction(attained, len(RUNS) * len(TARGETS))


def ecdf_eaf(t):
    """Mean clipped distance to z_max, normalized by the axis range."""
    total = Fraction(0)
    for run in RUNS:
        v = best_so_far(run, t)
        if v is not None:
            total += Z_MAX - min(max(v, Z_MIN), Z_MAX)
    return total / (len(RUNS) * (Z_MAX - Z_MIN))


def aocc(run):
    """Sum over t = 1 .. t_max-1 of max(0, z_max - V(t))."""
    area = Fraction(0)
    for t in range(1, T_MAX):
        v = best_so_far(run, t)
        if v is not None:
            area += max(Fraction(0), Z_MAX - min(max(v, Z_MIN), Z_MAX))
    return area


def check(name, got, expected):
    ok = got == expected
    print(f"{'ok  ' if ok else 'FAIL'} {name}: {got}" +
          ("" if ok else f" (expected {expected})"))
    return ok


def main():
    results = [
        check("EAF(t=4, z=5)", eaf(4, 5), Fraction(2, 3)),
        check("target ECDF(t=4), Z={2,4,6,8,10}", ecdf_targets(4), Fraction(2, 3)),
        check("EAF-based ECDF(t=4)", ecdf_eaf(4), Fraction(1, 2)),
        check("AOCC(R1)", aocc(RUNS[0]), 38),
        check("AOCC(R2)", aocc(RUNS[1]), 35),
        check("AOCC(R3)", aocc(RUNS[2]), 34),
    ]
    mean_aocc = sum(aocc(r) for r in RUNS) / len(RUNS)
    results.append(check("mean AOCC", mean_aocc, Fraction(107, 3)))
    results.append(check("auc_eaf = mean AOCC / (z_max - z_min)",
                         mean_aocc / (Z_MAX - Z_MIN), Fraction(107, 30)))
    results.append(check("auc_normalized = auc_eaf / (t_max - 1)",
                         mean_aocc / (Z_MAX - Z_MIN) / (T_MAX - 1), Fraction(107, 210)))

    # cross-check: integrating the EAF over z at t = 4 equals the per-run form
    cuts = sorted({Z_MIN, Z_MAX} | {Fraction(z) for run in RUNS for (_, z) in run})
    area = sum((b - a) * eaf(4, a) for a, b in zip(cuts, cuts[1:]))
    results.append(check("Lebesgue integral of EAF(4, .) / range",
                         area / (Z_MAX - Z_MIN), Fraction(1, 2)))

    if not all(results):
        sys.exit(1)
    print("all fixture values verified")


if __name__ == "__main__":
    main()
