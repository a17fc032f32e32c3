"""Regenerates tests/oracle_values.hpp from mpmath / sympy / brute force.

    python3 tests/oracles/gen_oracles.py > tests/oracle_values.hpp
"""
import itertools

import mpmath as mp
import sympy as sp

mp.mp.dps = 40


def lis(p):
    import bisect
    tails = []
    for v in p:
        i = bisect.bisect_left(tails, v)
        if i == len(tails):
            tails.append(v)
        else:
            tails[i] = v
    return len(tails)


def brute_counts(n):
    cnt = [0] * (n + 1)
    for p in itertools.permutations(range(n)):
        cnt[lis(p)] += 1
    return cnt


def toeplitz_counts(l, K):
    # (k!)^2 [r^k] det[I_{j-k}(2 sqrt r)]
    # in z with z^2 = r: I_m(2z) = sum z^(2j+m) / (j! (j+m)!)
    z = sp.Symbol("z")

    def Iz(m):
        m = abs(m)
        return sum(z ** (2 * j + m) / (sp.factorial(j) * sp.factorial(j + m)) for j in range(K + 1))

    M = sp.Matrix(l, l, lambda i, j: Iz(i - j))
    d = sp.expand(M.det(method="berkowitz"))
    poly = sp.Poly(d, z)
    out = []
    for k in range(K + 1):
        ck = poly.coeff_monomial(z ** (2 * k))
        out.append(int(ck * sp.factorial(k) ** 2))
    return out


def log_toeplitz(l, zz):
    zz = mp.mpf(zz)
    M = mp.matrix(l, l)
    for i in range(l):
        for j in range(l):
            M[i, j] = mp.besseli(i - j, 2 * zz)
    return mp.log(mp.det(M))


def hard_edge_toeplitz(l, s):
    f = lambda ss: -ss / 4 + log_toeplitz(l, mp.sqrt(ss) / 2)
    s = mp.mpf(s)
    d1 = mp.diff(f, s)
    v = -s * d1
    vp = mp.diff(lambda ss: -ss * mp.diff(f, ss), s)
    return f(s), v, s * vp


def nystrom_det(kernel, a, b, m):
    xs, ws = gauss_legendre(m, a, b)
    A = mp.matrix(m, m)
    for i in range(m):
        for j in range(m):
            A[i, j] = (1 if i == j else 0) - mp.sqrt(ws[i]) * kernel(xs[i], xs[j]) * mp.sqrt(ws[j])
    return mp.det(A)


_gl = {}


def gauss_legendre(m, a, b):
    if m not in _gl:
        xs = []
        ws = []
        for k in range(1, m + 1):
            x = mp.cos(mp.pi * (k - mp.mpf(1) / 4) / (m + mp.mpf(1) / 2))
            for _ in range(100):
                p0, p1 = mp.mpf(1), x
                for n in range(2, m + 1):
                    p0, p1 = p1, ((2 * n - 1) * x * p1 - (n - 1) * p0) / n
                dp = m * (x * p1 - p0) / (x * x - 1)
                dx = p1 / dp
                x -= dx
                if abs(dx) < mp.mpf(10) ** (-mp.mp.dps + 5):
                    break
            xs.append(x)
            ws.append(2 / ((1 - x * x) * dp * dp))
        _gl[m] = (xs, ws)
    xs, ws = _gl[m]
    h = (mp.mpf(b) - a) / 2
    return [a + h * (x + 1) for x in xs], [h * w for w in ws]


def airy_kernel(x, y):
    if x == y:
        return mp.airyai(x, 1) ** 2 - x * mp.airyai(x) ** 2
    return (mp.airyai(x) * mp.airyai(y, 1) - mp.airyai(x, 1) * mp.airyai(y)) / (x - y)


def f2(s, m=60):
    return nystrom_det(airy_kernel, mp.mpf(s), mp.mpf(s) + 16, m)


def bessel_kernel(alpha):
    def k(x, y):
        sx, sy = mp.sqrt(x), mp.sqrt(y)
        if x == y:
            return (mp.besselj(alpha, sx) ** 2 - mp.besselj(alpha + 1, sx) * mp.besselj(alpha - 1, sx)) / 4
        return (mp.besselj(alpha, sx) * sy * mp.besselj(alpha, sy, 1) - sx * mp.besselj(alpha, sx, 1) * mp.besselj(alpha, sy)) / (2 * (x - y))
    return k


def hard_edge_fredholm(alpha, s, m=50):
    # nodes in z = sqrt(x): the kernel has an x^(alpha/2) branch point at 0
    k = bessel_kernel(alpha)
    kz = lambda z1, z2: 2 * mp.sqrt(z1 * z2) * k(z1 * z1, z2 * z2)
    f = lambda ss: mp.log(nystrom_det(kz, 0, mp.sqrt(ss), m))
    s = mp.mpf(s)
    v = -s * mp.diff(f, s)
    vp = mp.diff(lambda ss: -ss * mp.diff(f, ss), s)
    return f(s), v, s * vp


def main():
    print("#pragma once")
    print("// Generated by tests/oracles/gen_oracles.py (mpmath, sympy, brute force).")
    print()
    print("namespace oracle {")
    print()
    print("struct Bessel { double nu, x, j, jp; };")
    pts = [(0, 1.5), (2.5, 10), (5, 0.3), (37, 40), (60, 75), (120, 110), (150, 160), (250, 240), (400, 300)]
    print("inline constexpr Bessel kBessel[] = {")
    for nu, x in pts:
        print(f"    {{{nu}, {x}, {mp.nstr(mp.besselj(nu, x), 20)}, {mp.nstr(mp.besselj(nu, x, 1), 20)}}},")
    print("};")
    print()
    print("struct Airy { double x, ai, aip; };")
    print("inline constexpr Airy kAiry[] = {")
    for x in (-5, -1, 0, 2, 8):
        print(f"    {{{x}, {mp.nstr(mp.airyai(x), 20)}, {mp.nstr(mp.airyai(x, 1), 20)}}},")
    print("};")
    print()
    print("struct Scalar { double x, value; };")
    print("inline constexpr Scalar kXMinusLog1p[] = {")
    for x in ("1e-8", "0.3", "-0.5", "5"):
        xx = mp.mpf(x)
        print(f"    {{{x}, {mp.nstr(xx - mp.log1p(xx), 20)}}},")
    print("};")
    print("// log G(1 + z)")
    print("inline constexpr Scalar kLogBarnesG1p[] = {")
    for z in ("0.3", "-0.4", "2.5", "7", "11.5", "30", "1e4", "2e6"):
        zz = mp.mpf(z)
        print(f"    {{{z}, {mp.nstr(mp.log(mp.barnesg(1 + zz)), 20)}}},")
    print("};")
    print()
    print("struct Toeplitz { int l; double z, log_d; };")
    print("inline constexpr Toeplitz kToeplitz[] = {")
    for l, zz in ((1, 2.0), (3, 1.7), (6, 4.0), (10, 3.0), (12, 9.0)):
        print(f"    {{{l}, {zz}, {mp.nstr(log_toeplitz(l, zz), 20)}}},")
    print("};")
    print()
    print("struct HardEdge { double alpha, s, log_g, v, u; };")
    print("// integer alpha from the Toeplitz determinant, otherwise a 50-node Nystrom determinant in z = sqrt(x) in mpmath")
    print("inline constexpr HardEdge kHardEdge[] = {")
    for l, s in ((1, 10), (5, 72.92), (10, 200), (3, 0.5), (2, 30)):
        lg, v, u = hard_edge_toeplitz(l, s)
        print(f"    {{{l}, {s}, {mp.nstr(lg, 18)}, {mp.nstr(v, 18)}, {mp.nstr(u, 18)}}},")
    mp.mp.dps = 30
    for a, s in ((2.5, 12), (0.5, 5)):
        lg, v, u = hard_edge_fredholm(a, s)
        print(f"    {{{a}, {s}, {mp.nstr(lg, 16)}, {mp.nstr(v, 16)}, {mp.nstr(u, 16)}}},")
    print("};")
    print()
    print("struct TracyWidom { double s, F2, dF2; };")
    print("// 60-node Nystrom determinant of the Airy kernel on [s, s + 16] in mpmath")
    print("inline constexpr TracyWidom kF2[] = {")
    for s in (-3, -2, -1, 0, 1, 2):
        F = f2(s)
        dF = mp.diff(lambda ss: f2(ss), s)
        print(f"    {{{s}, {mp.nstr(F, 18)}, {mp.nstr(dF, 16)}}},")
    print("};")
    mp.mp.dps = 40
    print()
    print("// #{sigma in S_k : L(sigma) <= l}, from the Toeplitz series in sympy")
    for l, K in ((2, 16), (3, 16), (4, 14)):
        counts = toeplitz_counts(l, K)
        print(f"inline constexpr const char* kCountsL{l}[] = {{" + ", ".join(f'"{x}"' for x in counts) + "};")
    print()
    print("// brute-force #{sigma in S_n : L(sigma) = l}, l = 0..n")
    for n in (5, 8):
        print(f"inline constexpr long long kBrute{n}[] = {{" + ", ".join(str(x) for x in brute_counts(n)) + "};")
    print()
    print("}  // namespace oracle")


if __name__ == "__main__":
    main()
