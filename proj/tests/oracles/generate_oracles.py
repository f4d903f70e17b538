#!/usr/bin/env python3
"""Independent high-precision oracle values frozen into the unit tests.

Evaluates I(N) = int_0^inf exp(-s^2/2)/s (exp(s(V_F - bN)) - exp(s(V_R - bN))) ds
with mpmath at 30 significant digits (a = 1, V_R = 1, V_F = 2), then derives
stationary rates, slopes f'(N*) = -N*^2 I'(N*), two-cycles of f and b*.
Run: python3 tests/oracles/generate_oracles.py
"""
import mpmath as mp

mp.mp.dps = 30
VR, VF = mp.mpf(1), mp.mpf(2)


def I(b, N):
    A, B = VF - b * N, VR - b * N
    h = lambda s: mp.exp(-s * s / 2) * (mp.exp(s * A) - mp.exp(s * B)) / s
    peak = max(A, mp.mpf(0))
    return mp.quad(h, [0, peak, peak + 10, peak + 40, mp.inf])


def dI(b, N):
    A, B = VF - b * N, VR - b * N
    h = lambda s: -b * mp.exp(-s * s / 2) * (mp.exp(s * A) - mp.exp(s * B))
    peak = max(A, mp.mpf(0))
    return mp.quad(h, [0, peak, peak + 10, peak + 40, mp.inf])


f = lambda b, N: 1 / I(b, N)
root = lambda b, guess: mp.findroot(lambda N: N * I(b, N) - 1, guess)
slope = lambda b, N: -N * N * dI(b, N)


def show(name, value):
    print(f"{name} = {mp.nstr(value, 17)}")


for b, N in [(0, 0), (0, 1), (1.5, 0.2), (1.5, 2.25), (-14, 0.04), (3, 0.5), (-14, 0.1)]:
    show(f"I(b={b}, N={N})", I(mp.mpf(b), mp.mpf(N)))
show("dI(b=1.5, N=1)", dI(mp.mpf(1.5), mp.mpf(1)))
for b, guesses in [(0, [0.12]), (0.5, [0.13]), (1.5, [0.19, 2.29]), (-14, [0.04])]:
    for g in guesses:
        r = root(mp.mpf(b), g)
        show(f"root(b={b}, ~{g})", r)
        show(f"slope(b={b}, ~{g})", slope(mp.mpf(b), r))
show("f(b=1.5, 2.25)", f(mp.mpf(1.5), mp.mpf(2.25)))
show("f(b=1.5, 2.35)", f(mp.mpf(1.5), mp.mpf(2.35)))
for b, guess in [(-14, 0.0022), (-100, 1e-6)]:
    bb = mp.mpf(b)
    lo = mp.findroot(lambda N: f(bb, f(bb, N)) - N, guess)
    show(f"two_cycle(b={b}).minus", lo)
    show(f"two_cycle(b={b}).plus", f(bb, lo))
show("f(b=-100, 0)", f(mp.mpf(-100), mp.mpf(0)))
g = lambda b: slope(b, root(b, 0.05))
b_star = mp.findroot(lambda b: g(b) + 1, -9.46)
show("b_star", b_star)
