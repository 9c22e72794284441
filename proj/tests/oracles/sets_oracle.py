"""Oracle for the index sets U, U' on y^2 = x^3 - 4, Q = (2, 2), and the
ranks of the fragment primes.

y(lQ) comes from an elliptic logarithm computed by mpmath quadrature and
inverted with findroot, which shares no code path with the AGM/Landen
route in src/analytic.cpp.  Multiples with l <= 50 are also checked with
exact Fraction arithmetic."""
from fractions import Fraction as F
import sys
import mpmath as mp

mp.mp.dps = 60
A4, A6 = 0, -4


def f(t):
    return t ** 3 + A4 * t + A6


E1 = mp.cbrt(4)
# substitute t = e1 + s^2 to remove the endpoint singularity
OMEGA = mp.re(mp.quad(lambda s: 2 * s / mp.sqrt(f(E1 + s * s)), [0, 1, mp.inf]))
# integral of dt/(2 sqrt f) from x to infinity
def tail(x):
    s0 = mp.sqrt(x - E1)
    return mp.re(mp.quad(lambda s: s / mp.sqrt(f(E1 + s * s)), [s0, s0 + 1, mp.inf]))


HALF = OMEGA / 2  # tail(e1) == OMEGA / 2


def y_of_multiple(z, l):
    w = mp.fmod(l * z, OMEGA)
    sign = 1
    if w > HALF:
        w, sign = OMEGA - w, -1
    # tail is decreasing in x; solve tail(x) = w by bisection on log scale
    lo, hi = E1, E1 + 1
    while tail(hi) > w:
        hi = E1 + 2 * (hi - E1)
    for _ in range(12):
        mid = (lo + hi) / 2
        if tail(mid) > w:
            lo = mid
        else:
            hi = mid
    x = (lo + hi) / 2
    for _ in range(40):
        step = (tail(x) - w) * 2 * mp.sqrt(f(x))
        x = max(x + step, (x + E1) / 2)
        if abs(step) < mp.mpf(10) ** -50 * (1 + abs(x)):
            break
    return sign * mp.sqrt(f(x))


def add(P, R):
    if P is None: return R
    if R is None: return P
    (x1, y1), (x2, y2) = P, R
    if x1 == x2:
        if y1 + y2 == 0: return None
        lam = (3 * x1 * x1 + A4) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - x1 - x2
    return (x3, lam * (x1 - x3) - y1)


def mul(P, n):
    R = None
    while n:
        if n & 1: R = add(R, P)
        P = add(P, P); n >>= 1
    return R


def isprime(n):
    if n < 2: return False
    i = 2
    while i * i <= n:
        if n % i == 0: return False
        i += 1
    return True


Q = (F(2), F(2))
ZQ = tail(mp.mpf(2))


def y_approx(l):
    return y_of_multiple(ZQ, l)


def index_set(tol, count, exclude=(), L=(2,), q=3, b=4, bound=2000):
    out, i = [], 1
    for l in range(b + 1, bound):
        if len(out) == count: break
        if not isprime(l) or l in L or l == q or l in exclude: continue
        y = y_approx(l)
        if l <= 50:
            ye = mul(Q, l)[1]
            assert abs(mp.mpf(ye.numerator) / ye.denominator - y) < mp.mpf(10) ** -25 * (1 + abs(y)), l
        if abs(y - i) < tol(i):
            out.append(l); i += 1
    return out


def order_mod_p(p):
    def addp(P, R):
        if P is None: return R
        if R is None: return P
        (x1, y1), (x2, y2) = P, R
        if x1 == x2:
            if (y1 + y2) % p == 0: return None
            lam = (3 * x1 * x1 + A4) * pow(2 * y1, -1, p) % p
        else:
            lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
        x3 = (lam * lam - x1 - x2) % p
        return (x3, (lam * (x1 - x3) - y1) % p)
    P, n = (2, 2), 1
    while P is not None:
        P = addp(P, (2, 2)); n += 1
    return n


if __name__ == "__main__":
    print("Omega", mp.nstr(OMEGA, 25))
    relaxed = lambda i: mp.mpf(1) / 2
    U = index_set(relaxed, 5)
    print("relaxed U", U)
    Up = index_set(relaxed, 5, exclude=set(U), bound=1100)
    print("relaxed U'", Up)
    for p in [853, 5869, 6247, 9817, 9871, 11633, 16619]:
        print(p, "rank", order_mod_p(p))
    if len(sys.argv) > 1:
        print("1/(10i) U", index_set(lambda i: mp.mpf(1) / (10 * i), 2, bound=2600))
