#!/usr/bin/env python3
# Reference values for the unit tests, computed with mpmath at 40 digits.
# Run: python3 tests/oracles/frozen_values.py > tests/oracles/frozen_values.txt
import mpmath as mp

mp.mp.dps = 40


def beta(s):
    return mp.dirichlet(s, [0, 1, 0, -1])


def xi(s):
    return s * (s - 1) / 2 * mp.pi ** (-s / 2) * mp.gamma(s / 2) * mp.zeta(s)


def show(name, z):
    z = mp.mpc(z)
    print(f"{name:28s} {mp.nstr(z.real, 20, min_fixed=-3, max_fixed=3):>28s} {mp.nstr(z.imag, 20, min_fixed=-3, max_fixed=3):>28s}")


def mb_zeta2s(E, a, g):
    nu = mp.mpc(0.5, E / 2)
    f = lambda t: mp.gamma(mp.mpc(g, t)) * mp.gamma(mp.mpc(g, t) - nu) * (2 * a) ** (2 * mp.mpc(g, t)) * mp.zeta(2 * mp.mpc(g, t))
    return mp.quad(f, mp.linspace(-60, 60, 41)) / (4 * mp.pi)


def mb_beta2s(E, a, g):
    nu = mp.mpc(0.5, E / 2)
    f = lambda t: mp.gamma(mp.mpc(g, t)) * mp.gamma(mp.mpc(g, t) - nu) * (2 * a) ** (2 * mp.mpc(g, t)) * beta(2 * mp.mpc(g, t))
    return mp.quad(f, mp.linspace(-60, 60, 41)) / (2 * mp.pi)


def beta_zero(t0):
    th = lambda t: mp.im(mp.loggamma(mp.mpc(0.75, t / 2))) - t / 2 * mp.log(mp.pi / 4)
    Z = lambda t: mp.re(mp.expj(th(t)) * beta(mp.mpc(0.5, t)))
    return mp.findroot(Z, t0)


show("gamma(0.5+3i)", mp.gamma(mp.mpc(0.5, 3)))
show("gamma(-2.5+0.5i)", mp.gamma(mp.mpc(-2.5, 0.5)))
show("loggamma(10+20i)", mp.loggamma(mp.mpc(10, 20)))
show("digamma(1+2i)", mp.digamma(mp.mpc(1, 2)))
show("zeta(0.5+14i)", mp.zeta(mp.mpc(0.5, 14)))
show("zeta(3+1i)", mp.zeta(mp.mpc(3, 1)))
show("zeta(-3.5+2i)", mp.zeta(mp.mpc(-3.5, 2)))
show("zeta(0.5+100i)", mp.zeta(mp.mpc(0.5, 100)))
show("hurwitz(2.5+1i,0.25)", mp.zeta(mp.mpc(2.5, 1), 0.25))
show("beta(0.5+6i)", beta(mp.mpc(0.5, 6)))
show("beta(2)", beta(2))
show("beta(-1.5+3i)", beta(mp.mpc(-1.5, 3)))
show("xi(0.5+10i)", xi(mp.mpc(0.5, 10)))
show("xi(0.3+2i)", xi(mp.mpc(0.3, 2)))
show("xi'(0)", mp.diff(xi, mp.mpf('1e-30')))
show("siegeltheta(20)", mp.siegeltheta(20))
show("siegelz(20)", mp.siegelz(20))
show("S(50)", mp.nzeros(50) - mp.siegeltheta(50) / mp.pi - 1)
show("besselk(0.5+5i,2)", mp.besselk(mp.mpc(0.5, 5), 2))
show("besselk(0.3,0.01)", mp.besselk(0.3, 0.01))
show("besselk(0.5+20i,5)", mp.besselk(mp.mpc(0.5, 20), 5))
show("besselk(0,10)", mp.besselk(0, 10))
show("besseli(0.5+5i,2)", mp.besseli(mp.mpc(0.5, 5), 2))
for n in range(1, 6):
    show(f"zetazero({n})", mp.im(mp.zetazero(n)))
for t0 in (6.02, 10.24, 12.99, 16.34):
    show(f"betazero({t0})", beta_zero(t0))
# finite part of int_{-1}^{1} e^u / u^2 du; the even Taylor tail avoids the
# cancellation in (e^u - 1 - u) / u^2 near u = 0
fp = mp.quad(lambda u: 2 * mp.nsum(lambda k: u ** (2 * k - 2) / mp.factorial(2 * k), [1, mp.inf]), [0, 1]) - 2
show("hadamard(exp,0)", fp)
show("hadamard(exp,0.25+3i)", mp.exp(mp.mpc(0.25, 3)) * fp)
show("zetazero(79)", mp.im(mp.zetazero(79)))
mp.mp.dps = 20
show("mb_zeta2s(E=10,a=0.2,g=0.75)", mb_zeta2s(10, mp.mpf('0.2'), mp.mpf('0.75')))
show("mb_beta2s(E=12,a=0.2,g=0.75)", mb_beta2s(12, mp.mpf('0.2'), mp.mpf('0.75')))
