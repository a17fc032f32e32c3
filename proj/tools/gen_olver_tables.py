#!/usr/bin/env python3
"""Generate Chebyshev tables for the coefficient functions of the uniform
(Airy-type) large-order expansion of J_nu and J_nu'.

The functions A_k, B_k, C_k, D_k are analytic at zeta = 0 but their closed
forms cancel catastrophically there, so they are tabulated on
[-ZETA_MAX, ZETA_MAX] from 90-digit evaluations. The Debye polynomials
and Airy constants used by the closed forms are emitted as well.

Usage: gen_olver_tables.py > include/lisdist/detail/olver_tables.inc
"""
import sys
import mpmath as mp
import sympy as sp

mp.mp.dps = 90
ZETA_MAX = 1.0
DEGREE = 63
KMAX = 2


def debye_polys(kmax):
    p, t = sp.symbols("p t")
    U = [sp.Integer(1)]
    for k in range(kmax):
        uk = U[k]
        nxt = sp.Rational(1, 2) * p**2 * (1 - p**2) * sp.diff(uk, p) + sp.Rational(1, 8) * sp.integrate(
            ((1 - 5 * t**2) * uk.subs(p, t)), (t, 0, p))
        U.append(sp.expand(nxt))
    V = [sp.Integer(1)]
    for k in range(kmax):
        V.append(sp.expand(U[k + 1] - sp.Rational(1, 2) * p * (1 - p**2) * U[k]
                           - p**2 * (1 - p**2) * sp.diff(U[k], p)))
    return p, U, V


P, U, V = debye_polys(2 * KMAX + 1)
U_f = [sp.lambdify(P, u, "mpmath") for u in U]
V_f = [sp.lambdify(P, v, "mpmath") for v in V]


def airy_consts(n):
    u = [mp.mpf(1)]
    for k in range(1, n + 1):
        u.append(u[-1] * mp.mpf((6 * k - 5) * (6 * k - 3) * (6 * k - 1)) / ((2 * k - 1) * 216 * k))
    v = [mp.mpf(1)] + [-mp.mpf(6 * k + 1) / (6 * k - 1) * u[k] for k in range(1, n + 1)]
    return u, v


UC, VC = airy_consts(2 * KMAX + 2)


def _monotone_root(f, lo, hi):
    for _ in range(mp.mp.prec + 20):
        mid = (lo + hi) / 2
        if f(mid) > 0:
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2


def z_of_zeta(zeta):
    zeta = mp.mpf(zeta)
    if zeta == 0:
        return mp.mpf(1)
    if zeta > 0:
        target = mp.mpf(2) / 3 * zeta**mp.mpf(1.5)
        w = _monotone_root(lambda w: mp.atanh(w) - w - target, mp.mpf(0), 1 - mp.mpf(10) ** -40)
        return mp.sqrt(1 - w * w)
    target = mp.mpf(2) / 3 * (-zeta) ** mp.mpf(1.5)
    w = _monotone_root(lambda w: w - mp.atan(w) - target, mp.mpf(0), 10 + 3 * target)
    return mp.sqrt(1 + w * w)


def coeff_functions(zeta):
    z = z_of_zeta(zeta)
    zc = mp.mpc(zeta)
    p = 1 / mp.sqrt(mp.mpc(1 - z * z))
    s = mp.sqrt(zc)
    out = {}
    for k in range(KMAX + 1):
        A = sum((mp.mpf(3) / 2) ** j * VC[j] * s ** (-3 * j) * U_f[2 * k - j](p) for j in range(2 * k + 1))
        B = -(1 / s) * sum((mp.mpf(3) / 2) ** j * UC[j] * s ** (-3 * j) * U_f[2 * k - j + 1](p) for j in range(2 * k + 2))
        C = -s * sum((mp.mpf(3) / 2) ** j * VC[j] * s ** (-3 * j) * V_f[2 * k - j + 1](p) for j in range(2 * k + 2))
        D = sum((mp.mpf(3) / 2) ** j * UC[j] * s ** (-3 * j) * V_f[2 * k - j](p) for j in range(2 * k + 1))
        out[("A", k)] = mp.re(A)
        out[("B", k)] = mp.re(B)
        out[("C", k)] = mp.re(C)
        out[("D", k)] = mp.re(D)
    return out


def chebyshev_table(names):
    n = DEGREE + 1
    nodes = [mp.cos(mp.pi * (j + mp.mpf(1) / 2) / n) for j in range(n)]
    values = [coeff_functions(ZETA_MAX * x) for x in nodes]
    tables = {}
    for name in names:
        coeffs = []
        for k in range(n):
            acc = mp.mpf(0)
            for j in range(n):
                acc += values[j][name] * mp.cos(mp.pi * k * (j + mp.mpf(1) / 2) / n)
            coeffs.append(acc * 2 / n)
        coeffs[0] /= 2
        # drop the negligible tail
        last = len(coeffs)
        while last > 1 and abs(coeffs[last - 1]) < mp.mpf("1e-19"):
            last -= 1
        tables[name] = coeffs[:last]
    return tables


def olver_j(nu, x, kmax):
    nu = mp.mpf(nu)
    z = mp.mpf(x) / nu
    if z < 1:
        w = mp.sqrt(1 - z * z)
        zeta = (mp.mpf(3) / 2 * (mp.atanh(w) - w)) ** (mp.mpf(2) / 3)
    else:
        w = mp.sqrt(z * z - 1)
        zeta = -(mp.mpf(3) / 2 * (w - mp.atan(w))) ** (mp.mpf(2) / 3)
    cf = coeff_functions(zeta)
    arg = nu ** (mp.mpf(2) / 3) * zeta
    ai, aip = mp.airyai(arg), mp.airyai(arg, 1)
    sa = sum(cf[("A", k)] / nu ** (2 * k) for k in range(kmax + 1))
    sb = sum(cf[("B", k)] / nu ** (2 * k) for k in range(kmax + 1))
    sc = sum(cf[("C", k)] / nu ** (2 * k) for k in range(kmax + 1))
    sd = sum(cf[("D", k)] / nu ** (2 * k) for k in range(kmax + 1))
    pref = (4 * zeta / (1 - z * z)) ** (mp.mpf(1) / 4) if z != 1 else mp.mpf(2) ** (mp.mpf(1) / 3)
    j = pref * (ai / nu ** (mp.mpf(1) / 3) * sa + aip / nu ** (mp.mpf(5) / 3) * sb)
    jp = -(2 / z) / pref * (ai / nu ** (mp.mpf(4) / 3) * sc + aip / nu ** (mp.mpf(2) / 3) * sd)
    return j, jp


def self_check():
    for nu in (60, 200):
        for x in (nu * 0.7, nu - 2 * nu ** (1 / 3), nu + 0.3, nu + 5 * nu ** (1 / 3), nu * 1.6):
            j, jp = olver_j(nu, x, KMAX)
            jr = mp.besselj(nu, x)
            jpr = mp.besselj(nu, x, 1)
            sys.stderr.write("nu=%g x=%.4f relJ=%.3e relJ'=%.3e\n" % (
                nu, x, float(abs(j / jr - 1)), float(abs(jp / jpr - 1))))


def main():
    if "--check" in sys.argv:
        self_check()
        return
    names = [(c, k) for k in range(KMAX + 1) for c in "ABCD" if not (c in "AD" and k == 0)]
    tables = chebyshev_table(names)
    print("// Generated by tools/gen_olver_tables.py; do not edit.")
    print("// Chebyshev coefficients on zeta in [-%g, %g]." % (ZETA_MAX, ZETA_MAX))
    print("inline constexpr double kOlverZetaMax = %r;" % ZETA_MAX)
    for (c, k) in names:
        co = tables[(c, k)]
        print("inline constexpr double kOlver%s%d[] = {" % (c, k))
        for v in co:
            print("    %s," % mp.nstr(v, 20, min_fixed=1, max_fixed=0))
        print("};")
    nd = len(U)
    width = 3 * (nd - 1) + 1
    for tag, polys in (("U", U), ("V", V)):
        print("inline constexpr double kDebye%s[%d][%d] = {" % (tag, nd, width))
        for poly in polys:
            cs = sp.Poly(poly, P).all_coeffs()[::-1] if poly.has(P) else [poly]
            cs = list(cs) + [0] * (width - len(cs))
            print("    {%s}," % ", ".join(mp.nstr(mp.mpf(sp.Rational(c).p) / sp.Rational(c).q, 20, min_fixed=1, max_fixed=0) for c in cs))
        print("};")
    for tag, vals in (("U", UC), ("V", VC)):
        print("inline constexpr double kAiry%s[] = {%s};" % (tag, ", ".join(mp.nstr(v, 20, min_fixed=1, max_fixed=0) for v in vals)))


if __name__ == "__main__":
    main()
