#!/usr/bin/env python3
"""Generate Debye polynomial tables and Taylor coefficients of the Olver coefficient functions A_k, B_k at
the turning point z = 1.

With tau = zeta / 2^(1/3), A_k(zeta) = sum_i a_{k,i} tau^i and
B_k(zeta) = 2^(-2/3) sum_i b_{k,i} tau^i, where all a, b are rational.  The
series is built with exact rational arithmetic from the closed-form relation
(2/3) zeta^(3/2) = atanh(w) - w, w = sqrt(1 - z^2), the Debye polynomials and
the Airy asymptotic coefficients.

Usage: gen_olver_taylor.py [terms] > src/specfun/olver_taylor.inc
"""
import sys
from fractions import Fraction as F

TERMS = int(sys.argv[1]) if len(sys.argv) > 1 else 30
KMAX = 2  # A_0..A_2, B_0..B_2
PAD = 14
N = TERMS + PAD  # working length of every series


class Laurent:
    """Truncated Laurent series: sum_{i} c[i] t^(val + i), i < N."""

    def __init__(self, val, c):
        self.val = val
        self.c = (list(c) + [F(0)] * N)[:N]

    @staticmethod
    def const(x):
        return Laurent(0, [F(x)])

    def __add__(self, o):
        v = min(self.val, o.val)
        c = [F(0)] * N
        for s in (self, o):
            for i, x in enumerate(s.c):
                j = i + s.val - v
                if j < N:
                    c[j] += x
        return Laurent(v, c)

    def __neg__(self):
        return Laurent(self.val, [-x for x in self.c])

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if not isinstance(o, Laurent):
            return Laurent(self.val, [x * F(o) for x in self.c])
        c = [F(0)] * N
        for i, x in enumerate(self.c):
            if x == 0:
                continue
            for j in range(N - i):
                c[i + j] += x * o.c[j]
        return Laurent(self.val + o.val, c)

    __rmul__ = __mul__

    def normalized(self):
        k = 0
        while k < N and self.c[k] == 0:
            k += 1
        return Laurent(self.val + k, self.c[k:])

    def inv(self):
        s = self.normalized()
        a0 = s.c[0]
        d = [F(0)] * N
        d[0] = 1 / a0
        for n in range(1, N):
            acc = sum(s.c[k] * d[n - k] for k in range(1, n + 1))
            d[n] = -acc / a0
        return Laurent(-s.val, d)

    def powf(self, r):
        """Unit-leading power (r rational); requires even val*r integer."""
        s = self.normalized()
        a0 = s.c[0]
        assert a0 == 1, "leading coefficient must be 1"
        nv = s.val * r
        assert nv.denominator == 1
        # (1 + x)^r by J.C.P. Miller recurrence
        d = [F(0)] * N
        d[0] = F(1)
        for n in range(1, N):
            acc = F(0)
            for k in range(1, n + 1):
                acc += (r * k - (n - k)) * s.c[k] * d[n - k]
            d[n] = acc / n
        return Laurent(int(nv), d)

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        out = Laurent.const(1)
        for _ in range(k):
            out = out * self
        return out


def compose(outer, inner):
    """outer(inner(t)) for power series outer (val 0) and inner with val >= 1."""
    if outer.val > 0:
        outer = Laurent(0, [F(0)] * outer.val + outer.c)
    assert outer.val == 0 and inner.normalized().val >= 1
    out = Laurent.const(0)
    pw = Laurent.const(1)
    for a in outer.c:
        if a != 0:
            out = out + pw * a
        pw = pw * inner
    return out


def revert(f):
    """Series inverse g with f(g(t)) = t, f = t + ..."""
    # Newton-free iterative reversion: g = t - (f(g) - g) repeated N times
    t = Laurent(1, [F(1)])
    g = t
    for _ in range(N):
        g = t - (compose(f, g) - g)
    return g


def debye_polys(kmax):
    """U_k(p) as dicts power->coef."""
    polys = [{0: F(1)}]
    for k in range(kmax):
        u = polys[-1]
        du = {e - 1: c * e for e, c in u.items() if e > 0}
        nxt = {}
        # 1/2 p^2 (1 - p^2) U'
        for e, c in du.items():
            nxt[e + 2] = nxt.get(e + 2, 0) + c / 2
            nxt[e + 4] = nxt.get(e + 4, 0) - c / 2
        # 1/8 int_0^p (1 - 5 t^2) U
        for e, c in u.items():
            nxt[e + 1] = nxt.get(e + 1, 0) + c / 8 / (e + 1)
            nxt[e + 3] = nxt.get(e + 3, 0) - 5 * c / 8 / (e + 3)
        polys.append({e: c for e, c in nxt.items() if c != 0})
    return polys


def airy_coeffs(kmax):
    u = [F(1)]
    for k in range(1, kmax + 1):
        u.append(u[-1] * F((6 * k - 5) * (6 * k - 3) * (6 * k - 1), (2 * k - 1) * 216 * k))
    v = [F(1)] + [-F(6 * k + 1, 6 * k - 1) * u[k] for k in range(1, kmax + 1)]
    return u, v


def main():
    e = Laurent(1, [F(1)])  # e = 1 - z
    w2 = e * (Laurent.const(2) - e)
    # S(x) = 1 + sum_{k>=1} 3 x^k / (2k+3)
    S = Laurent(0, [F(1)] + [F(3, 2 * k + 3) for k in range(1, N)])
    tau_of_e = e * (Laurent.const(1) - e * F(1, 2)) * compose(S, w2).powf(F(2, 3))
    e_of_tau = revert(tau_of_e)
    t = Laurent(1, [F(1)])
    w2t = e_of_tau * (Laurent.const(2) - e_of_tau)  # 1 - z^2 in tau
    q = w2t.inv()  # p^2
    # w = zeta^{-3/2} p,  w^2 = 1/(2 tau^3 (1-z^2)); leading 1/(4 tau^4)
    wsq = (t ** 3 * w2t * 2).inv()
    w = (wsq * 4).powf(F(1, 2)) * F(1, 2)
    # y = zeta^{-1/2} p / 2^{-2/3} : y^2 * 2^{-4/3} = 1/(2^{1/3} tau (1-z^2))
    # => (y)^2 = 2 / (tau (1-z^2)); leading 1/tau^2
    ysq = (t * w2t).inv() * 2
    y = ysq.powf(F(1, 2))
    U = debye_polys(2 * KMAX + 2)
    u, v = airy_coeffs(2 * KMAX + 2)

    def Qpoly(k):
        # U_k(p) = p^k Q_k(p^2)
        out = Laurent.const(0)
        for ex, c in U[k].items():
            assert (ex - k) % 2 == 0
            out = out + q ** ((ex - k) // 2) * c
        return out

    A, B = [], []
    for k in range(KMAX + 1):
        acc = Laurent.const(0)
        for j in range(2 * k + 1):
            acc = acc + (w ** j) * (q ** (k - j)) * Qpoly(2 * k - j) * (F(3, 2) ** j * v[j])
        A.append(acc.normalized())
        acc = Laurent.const(0)
        for j in range(2 * k + 2):
            acc = acc + (w ** j) * (q ** (k - j)) * Qpoly(2 * k + 1 - j) * (F(3, 2) ** j * u[j])
        B.append((-(y * acc)).normalized())

    def emit(name, s):
        # negative-power coefficients must cancel exactly
        coeffs = []
        for i in range(TERMS):
            exp = i
            idx = exp - s.val
            coeffs.append(s.c[idx] if 0 <= idx < N else F(0))
        for i in range(0, -s.val):
            assert s.c[i] == 0, (name, s.val + i)
        print(f"constexpr double {name}[{TERMS}] = {{")
        for c in coeffs:
            print(f"    {float(c):.17e},")
        print("};")

    print("// Generated by tools/gen_olver_taylor.py; do not edit.")
    print("// Debye polynomials U_k(p) = p^k Q_k(p^2); row k holds Q_k coefficients.")
    nq = 2 * KMAX + 2
    print(f"constexpr double kDebyeQ[{nq}][{nq}] = {{")
    for k in range(nq):
        row = [F(0)] * nq
        for ex, c in U[k].items():
            row[(ex - k) // 2] = c
        print("    {" + ", ".join(f"{float(c):.17e}" for c in row) + "},")
    print("};")
    for k in range(KMAX + 1):
        emit(f"kOlverATaylor{k}", A[k])
    for k in range(KMAX + 1):
        emit(f"kOlverBTaylor{k}", B[k])


if __name__ == "__main__":
    main()
