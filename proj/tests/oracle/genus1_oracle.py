"""Independent high-precision reference values for the torus tests.

Sigma comes from the Jacobi theta function (mpmath), not from the library's
series. Taylor coefficients are Cauchy integrals in 40-digit arithmetic.
Run: python3 tests/oracle/genus1_oracle.py
"""

import mpmath as mp

mp.mp.dps = 40

TAU = mp.mpc("0.5", "0.8")
Z0 = mp.mpc("0.17", "0.11")
G0 = mp.mpf(3) / 2
NOME = mp.exp(1j * mp.pi * TAU)
TH1P = mp.jtheta(1, 0, NOME, 1)
ETA1 = -(mp.pi ** 2) * mp.jtheta(1, 0, NOME, 3) / (12 * TH1P)


def sigma(z):
    return (2 / mp.pi) * mp.exp(ETA1 * z * z / 2) * mp.jtheta(1, mp.pi * z / 2, NOME) / TH1P


def half(n):
    return int(mp.nint(n - mp.mpf(1) / 2)), int(mp.nint(n + mp.mpf(1) / 2))


def e_raw(n):
    if n == -0.5:
        return lambda z: sigma(z) ** 2 / (sigma(z + Z0) * sigma(z - Z0))
    a, b = half(n)
    return lambda z: sigma(z - Z0) ** a * sigma(z + 2 * n * Z0) / sigma(z + Z0) ** b


def omega_raw(n):
    if n == 0.5:
        return lambda z: sigma(z) ** 2 / (sigma(z + Z0) * sigma(z - Z0))
    if n == -0.5:
        return lambda z: mp.mpf(1)
    a, b = half(n)
    return lambda z: sigma(z + Z0) ** a * sigma(z - 2 * n * Z0) / sigma(z - Z0) ** b


def laurent(f, order, terms, radius=mp.mpf("0.05"), samples=96):
    """{exponent: coefficient} about Z0, exponents order .. order+terms-1."""
    pts = [radius * mp.exp(2j * mp.pi * j / samples) for j in range(samples)]
    vals = [f(Z0 + t) * t ** (-order) for t in pts]
    out = {}
    for k in range(terms):
        acc = mp.fsum(v * mp.exp(-2j * mp.pi * j * k / samples) for j, v in enumerate(vals))
        out[order + k] = acc / samples / radius ** k
    return out


def mul(a, b, top):
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            if i + j <= top:
                out[i + j] = out.get(i + j, 0) + x * y
    return out


def der(a):
    return {k - 1: k * v for k, v in a.items() if k != 0}


TERMS = 16
INDICES = [mp.mpf(k) + mp.mpf(1) / 2 for k in range(-4, 4)]


def e_order(n):
    return int(mp.nint(n - mp.mpf(1) / 2))


E = {}
for n in INDICES:
    s = laurent(e_raw(n), e_order(n), TERMS)
    lead = s[e_order(n)]
    E[n] = {k: v / lead for k, v in s.items()}

O = {}
for n in INDICES:
    O[n] = laurent(omega_raw(n), -e_order(n) - 1, TERMS)
top = -1
shift = -mul(E[mp.mpf(-0.5)], O[mp.mpf(0.5)], top).get(-1, 0)
O[mp.mpf(0.5)][0] = O[mp.mpf(0.5)].get(0, 0) + shift
for n in INDICES:
    r = mul(E[n], O[n], top).get(-1, 0)
    O[n] = {k: v / r for k, v in O[n].items()}


def res(a, b):
    return mul(a, b, -1).get(-1, 0)


def c(m, n, s):
    em, en = E[m], E[n]
    bracket = {}
    for part, sign in ((mul(der(em), en, 40), 1), (mul(em, der(en), 40), -1)):
        for k, v in part.items():
            bracket[k] = bracket.get(k, 0) + sign * v
    return res(bracket, O[m + n - s])


def chi(m, n):
    return res(der(der(der(E[m]))), E[n]) / 12


def show(label, v):
    v = mp.mpc(v)
    print(f"{label}: {mp.nstr(v.real, 17)} {mp.nstr(v.imag, 17)}")


h = mp.mpf(1) / 2
show("e(3/2) coeff k=1", E[3 * h][e_order(3 * h) + 1])
show("e(3/2) coeff k=2", E[3 * h][e_order(3 * h) + 2])
show("e(-1/2) coeff k=1", E[-h][e_order(-h) + 1])
show("omega(1/2) coeff z^-1", O[h][-1])
show("omega(1/2) coeff z^0", O[h][0])
for (m, n, s) in [(h, 3 * h, h), (h, 3 * h, -h), (-3 * h, 5 * h, 3 * h), (-h, -h, -3 * h), (5 * h, -3 * h, 0 * h + h)]:
    show(f"c({m},{n},{s})", c(m, n, s))
for (m, n) in [(-h, 3 * h), (5 * h, -3 * h), (-3 * h, h), (h, h)]:
    show(f"chi({m},{n})", chi(m, n))
