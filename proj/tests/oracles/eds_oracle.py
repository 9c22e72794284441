#!/usr/bin/env python3
"""Independent oracle for EDS fixtures.

Uses plain Fraction chord-tangent arithmetic and sympy factorization; shares
no code with the C++ library.  Run once to regenerate frozen test values.
"""
import math
import sys
from fractions import Fraction

import sympy


def add(a, P, R):
    # short Weierstrass y^2 = x^3 + a4 x + a6 with a = (a4, a6)
    if P is None:
        return R
    if R is None:
        return P
    (x1, y1), (x2, y2) = P, R
    if x1 == x2 and y1 == -y2:
        return None
    if P == R:
        lam = (3 * x1 * x1 + a[0]) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - x1 - x2
    return (x3, lam * (x1 - x3) - y1)


def multiples(a, Q, N):
    out, P = [], None
    for _ in range(N):
        P = add(a, P, Q)
        out.append(P)
    return out


def denom_root(P):
    d = P[0].denominator
    r = math.isqrt(d)
    assert r * r == d
    assert P[1].denominator == r ** 3
    return r


def primitive_part_bruteforce(B, n):
    v = B[n]
    for m in range(1, n):
        g = math.gcd(v, B[m])
        while g > 1:
            v //= g
            g = math.gcd(v, B[m])
    return v


def main():
    N = int(sys.argv[1]) if len(sys.argv) > 1 else 40
    a = (0, -4)
    Q = (Fraction(2), Fraction(2))
    mult = multiples(a, Q, N)
    B = [None] + [denom_root(P) for P in mult]
    print("B_1..B_8", B[1:9])
    print("3Q", mult[2], "4Q", mult[3])
    ap = (0, 108)
    Qp = (Fraction(6), Fraction(18))
    bm = multiples(ap, Qp, 3 * N)
    b = [None] + [denom_root(P) for P in bm]
    print("b_1..b_8", b[1:9])
    print("2Q'", bm[1], "3Q'", bm[2])
    bad = {2, 3}
    for n in range(1, N + 1):
        if math.gcd(n, 3) != 1:
            continue
        s = primitive_part_bruteforce(B, n)
        if s == 1:
            cls = "Zero"
        else:
            f = sympy.factorint(s)
            cls = "ExactlyOne" if len(f) == 1 else "AtLeastTwo"
            goodf = {p: e for p, e in f.items() if p not in bad}
        good = s
        for p in bad:
            while good % p == 0:
                good //= p
        if good == 1:
            gcls = "Zero"
        else:
            gcls = "ExactlyOne" if len(sympy.factorint(good)) == 1 else "AtLeastTwo"
        print(f"n={n} digits={len(str(s))} class={cls} good={gcls}")


if __name__ == "__main__":
    main()
