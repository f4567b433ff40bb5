#!/usr/bin/env python3
"""Mint frozen reference values for the C++ unit tests.

Everything here is computed with mpmath at high working precision and is
independent of the C++ implementation. Run it to regenerate the constants
quoted in tests/*.cpp.
"""
import mpmath as mp

mp.mp.dps = 80


def prabhakar(alpha, beta, gamma, z, dps=80):
    with mp.workdps(dps):
        alpha, beta, gamma, z = (mp.mpf(alpha), mp.mpf(beta), mp.mpf(gamma), mp.mpc(z))
        total = mp.mpc(0)
        n = 0
        peak = mp.mpf(0)
        while True:
            term = mp.rf(gamma, n) * z**n * mp.rgamma(n * alpha + beta) / mp.factorial(n)
            total += term
            peak = max(peak, abs(term))
            if n > 10 and abs(term) < mp.mpf(10) ** (-dps + 5) * max(abs(total), mp.mpf(10) ** -300) and abs(term) < peak:
                return total
            n += 1


def talbot(F, t, M=96, dps=120):
    """Fixed-Talbot inversion over the full contour (no conjugate folding)."""
    with mp.workdps(dps):
        t = mp.mpf(t)
        r = mp.mpf(2) * M / (5 * t)
        total = mp.exp(r * t) * F(r)
        for k in range(1, M):
            for sgn in (1, -1):
                th = sgn * k * mp.pi / M
                cot = mp.cot(th)
                s = r * th * (cot + 1j)
                sigma = th + (th * cot - 1) * cot
                total += mp.exp(s * t) * F(s) * (1 + 1j * sigma)
        return total * r / (2 * M)


def show(name, v):
    v = mp.mpc(v)
    print(f"{name}: re={mp.nstr(v.real, 20)} im={mp.nstr(v.imag, 20)}")


if __name__ == "__main__":
    show("ml2(0.8,0.9,-2.5)", prabhakar(0.8, 0.9, 1, -2.5))
    show("ml1(0.5,-1)", prabhakar(0.5, 1, 1, -1))
    show("e*erfc(1)", mp.e * mp.erfc(1))
    show("prabhakar(1.8,1.8,3,-4)", prabhakar(1.8, 1.8, 3, -4))
    show("prabhakar(0.6,1.1,2,3+4i)", prabhakar(0.6, 1.1, 2, 3 + 4j))

    # kernel term r=2: (-a)^2 t^{alpha-rho+(alpha-beta) r} E^{3}_{1.8, 3.6}(-b t^alpha)
    show("kernel_term(r=2)", mp.mpf("0.25") * prabhakar(1.8, 3.6, 3, -1))

    def kernel_series(alpha, beta, rho, a, b, t, R=120):
        total = 0
        for r in range(R):
            total += (-a) ** r * mp.mpf(t) ** ((alpha - beta) * r) * prabhakar(
                alpha, alpha + (alpha - beta) * r - rho + 1, r + 1, -b * mp.mpf(t) ** alpha, dps=60)
        return mp.mpf(t) ** (alpha - rho) * total

    F = lambda s: 1 / (s ** mp.mpf("1.8") + mp.mpf("0.5") * s ** mp.mpf("0.9") + 1)
    show("two_term talbot(1.8,0.9,1,0.5,1,t=1)", talbot(F, 1))
    show("two_term series(1.8,0.9,1,0.5,1,t=1)", kernel_series(mp.mpf("1.8"), mp.mpf("0.9"), 1, mp.mpf("0.5"), 1, 1, R=60))

    # (0,1]-order family spectral example
    g1, g2, a, om, al, th, k, t = [mp.mpf(x) for x in ("0.8", "0.4", "1", "0.3", "1.6", "0.2", "1.5", "1")]
    b = om + abs(k) ** al * mp.exp(1j * mp.sign(k) * th * mp.pi / 2)
    F2 = lambda s: (s ** (g1 - 1) + a * s ** (g2 - 1)) / (s ** g1 + a * s ** g2 + b)
    show("t2 example talbot", talbot(F2, t))

    # source convolution identity
    show("1-E_0.8(-1)", 1 - prabhakar(0.8, 1, 1, -1))

    # fractionally damped wave (gamma1=2, gamma2=1.5, delta=1, alpha=2, a=0.5, delta IC)
    for (kk, tt) in ((1, 1), (mp.mpf("0.5"), 2)):
        aa = mp.mpf("0.5")
        g2 = mp.mpf("1.5")
        show(f"damped wave k={kk} t={tt} talbot",
             talbot(lambda s: (s + aa * s ** (g2 - 1)) / (s ** 2 + aa * s ** g2 + kk ** 2), tt))

    # truncated Fourier inversion of E_{0.9}(-|k|^{1.7}) at x=0.5 over [0,10]
    with mp.workdps(25):
        f = lambda kk: prabhakar(0.9, 1, 1, -mp.mpf(kk) ** mp.mpf("1.7"), dps=60).real * mp.cos(kk / 2)
        val = mp.quad(f, mp.linspace(0, 10, 11)) / mp.pi
        show("invert_fourier E_0.9(-|k|^1.7) x=0.5 kmax=10", val)

    # harder kernel cases (large a t^{alpha-beta}), Talbot at double-exact inputs
    def kernel_talbot(alpha, beta, rho, a, b, t):
        alpha, beta, rho, a = (mp.mpf(alpha), mp.mpf(beta), mp.mpf(rho), mp.mpf(a))
        return talbot(lambda s: s ** (rho - 1) / (s ** alpha + a * s ** beta + b), t, M=128, dps=200)

    show("kernel(1.2,0.9,1,2,1+1i,t=4)", kernel_talbot(1.2, 0.9, 1, 2, mp.mpc(1, 1), 4))
    show("kernel(1.2,0.4,1,2,4,t=4)", kernel_talbot(1.2, 0.4, 1, 2, 4, 4))
    show("kernel(1.8,0.4,1.6,2,4,t=4)", kernel_talbot(1.8, 0.4, 1.6, 2, 4, 4))
    show("kernel(1.5,0.5,1,1,0,t=1)", kernel_talbot(1.5, 0.5, 1, 1, 0, 1))

    # large-argument Mittag-Leffler values
    show("E_0.5(-20)", prabhakar(0.5, 1, 1, -20, dps=250))
    show("E_1(-400)", mp.exp(-400))
    show("E_0.9(-163)", prabhakar(0.9, 1, 1, -163, dps=200))
    show("E_1.5(100)", prabhakar(1.5, 1, 1, 100, dps=80))
