#!/usr/bin/env python3
"""Line and conic counts by torus localization (Bott's residue formula).

Independent of the library's Chern-root / Segre-class evaluation: the
integrals are summed over torus-fixed points of G(2, n+1), resp. of the
projective bundle of plane conics over G(3, n+1), with exact fractions.
Each count is evaluated for two unrelated weight vectors, which must agree.

Usage: bott_counts.py [--check counts.json]   (writes JSON to stdout)
"""
import argparse
import itertools
import json
import sys
from fractions import Fraction
from math import prod


def monomials(nvars, degree):
    return [e for e in itertools.product(range(degree + 1), repeat=nvars) if sum(e) == degree]


def line_count(n, degrees, weights):
    total = Fraction(0)
    for pair in itertools.combinations(range(n + 1), 2):
        dual = [-weights[i] for i in pair]
        num = 1
        for d in degrees:
            for m in monomials(2, d):
                num *= m[0] * dual[0] + m[1] * dual[1]
        tangent = prod(weights[j] - weights[i] for i in pair for j in range(n + 1) if j not in pair)
        total += Fraction(num, tangent)
    return total


def conic_count(n, degrees, weights):
    total = Fraction(0)
    for triple in itertools.combinations(range(n + 1), 3):
        dual = [-weights[i] for i in triple]
        base_tangent = prod(weights[j] - weights[i] for i in triple for j in range(n + 1) if j not in triple)
        quadrics = monomials(3, 2)
        chars = {q: sum(e * w for e, w in zip(q, dual)) for q in quadrics}
        for q in quadrics:
            fibre_tangent = prod(chars[o] - chars[q] for o in quadrics if o != q)
            num = 1
            for d in degrees:
                for m in monomials(3, d):
                    if all(mi >= qi for mi, qi in zip(m, q)):
                        continue  # divisible by the conic's equation
                    num *= sum(e * w for e, w in zip(m, dual))
            total += Fraction(num, base_tangent * fibre_tangent)
    return total


WEIGHTS = ([0, 3, 7, 18, 42, 95, 211, 505], [2, -11, 5, 29, -37, 61, 143, -300])

LINE_TYPES = [(3, [3]), (4, [2, 2]), (4, [5]), (5, [7]), (5, [2, 4]), (5, [3, 3]), (6, [2, 2, 3]), (6, [4, 4])]
CONIC_TYPES = [(4, [5]), (5, [3, 3]), (5, [2, 4]), (6, [2, 2, 3]), (7, [2, 2, 2, 2])]


def expected_dims(n, degrees):
    s, c = sum(degrees), len(degrees)
    return 2 * n - 2 - (s + c), 3 * n - 1 - 2 * s - c


def evaluate(fn, n, degrees):
    values = {fn(n, degrees, w) for w in WEIGHTS}
    if len(values) != 1:
        raise SystemExit(f"weight dependence for n={n} d={degrees}: {values}")
    value = values.pop()
    if value.denominator != 1:
        raise SystemExit(f"non-integral count for n={n} d={degrees}: {value}")
    return value.numerator


def compute():
    out = {"lines": [], "conics": []}
    for n, degrees in LINE_TYPES:
        assert expected_dims(n, degrees)[0] == 0, (n, degrees)
        out["lines"].append({"n": n, "degrees": degrees, "count": str(evaluate(line_count, n, degrees))})
    for n, degrees in CONIC_TYPES:
        assert expected_dims(n, degrees)[1] == 0, (n, degrees)
        out["conics"].append({"n": n, "degrees": degrees, "count": str(evaluate(conic_count, n, degrees))})
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--check", help="compare against a stored JSON file instead of printing")
    args = ap.parse_args()
    result = compute()
    if args.check:
        with open(args.check) as f:
            stored = json.load(f)
        if stored != result:
            print("stored counts differ from the oracle", file=sys.stderr)
            return 1
        print("oracle counts match", args.check)
        return 0
    json.dump(result, sys.stdout, indent=1, sort_keys=True)
    print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
