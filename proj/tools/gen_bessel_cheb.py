#!/usr/bin/env python3
"""Chebyshev coefficients of e^x sqrt(x) K_nu(x) for x >= 2.

The range is covered in the variable u = 4/x in (0, 2], split into the
pieces listed in PIECES; on each piece t = (2u - (a + b)) / (b - a).
Regenerates the tables embedded in src/specfun.cpp:

    python3 tools/gen_bessel_cheb.py
"""
import mpmath as mp

mp.mp.dps = 40
NODES = 64
CUTOFF = 1e-19
PIECES = [(0.0, 0.5), (0.5, 1.0), (1.0, 2.0)]


def scaled_k(nu, u):
    if u == 0:
        return mp.sqrt(mp.pi / 2)
    x = 4 / u
    return mp.e**x * mp.sqrt(x) * mp.besselk(nu, x)


def coefficients(nu, a, b):
    a, b = mp.mpf(a), mp.mpf(b)
    ts = [mp.cos(mp.pi * (j + mp.mpf(1) / 2) / NODES) for j in range(NODES)]
    vals = [scaled_k(nu, (a + b) / 2 + (b - a) / 2 * t) for t in ts]
    cs = []
    for k in range(NODES):
        s = sum(v * mp.cos(mp.pi * k * (j + mp.mpf(1) / 2) / NODES) for j, v in enumerate(vals))
        cs.append(2 * s / NODES)
    n = max(i for i, c in enumerate(cs) if abs(c) > CUTOFF) + 1
    return cs[:n]


if __name__ == "__main__":
    for nu in (0, 1):
        for p, (a, b) in enumerate(PIECES):
            cs = coefficients(nu, a, b)
            print(f"// u in [{a}, {b}]")
            print(f"constexpr std::array<double, {len(cs)}> k{nu}_cheb_{p}{{")
            for c in cs:
                print(f"    {mp.nstr(c, 20, min_fixed=0, max_fixed=0)},")
            print("};")
