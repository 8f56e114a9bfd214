"""Reference values frozen into the unit tests. Run with python3; needs mpmath."""
from mpmath import mp, mpf, gamma, erfc, exp, pi, sqrt, quad, inf, nsum, sin, factorial

mp.dps = 60


def ml(beta, z):
    beta, z = mpf(beta), mpf(z)
    if beta == mpf("0.5"):
        return exp(z * z) * erfc(-z)
    return nsum(lambda k: z**k / gamma(1 + beta * k), [0, inf])


def stable(beta, w):
    beta, w = mpf(beta), mpf(w)
    return nsum(lambda k: (-1) ** (k + 1) * gamma(beta * k + 1) / factorial(k)
                * sin(pi * beta * k) * w ** (-beta * k - 1), [1, inf]) / pi


def cstar_half(d, nu=1):
    d = mpf(d)
    # E_{1/2}(-z) ~ 1 / (z sqrt(pi)) beyond zmax; the tail is added in closed form.
    zmax = mpf(10) ** 6
    integ = quad(lambda z: z ** (d / 2 - 1) * (exp(z * z) * erfc(z)) ** 2,
                 [0, 1, 10, 100, 1000, 10**4, 10**5, zmax])
    integ += zmax ** (d / 2 - 2) / (pi * (2 - d / 2))
    return nu ** (-d / 2) * 2 * pi ** (d / 2) / (2 * gamma(d / 2)) / (2 * pi) ** d * integ


def a0(beta, d):
    r = -mpf(d) / 4
    return gamma(1 + r) / gamma(1 + beta * r)


def big_m(beta, d):
    beta = mpf(beta)
    first = a0(beta, d) * sqrt(gamma(1 - beta * d / 2))
    second = 3 * sqrt(beta * gamma(2 * beta * (1 - mpf(d) / 4))) / (2**beta * gamma(1 + beta))
    return max(first, second)


def c0(beta, d, nu=1):
    beta = mpf(beta)
    m = big_m(beta, d)
    return sqrt(m * m / ((2 * nu) ** (1 / beta - mpf(d) / 2) * (1 - 2 ** (beta - 2)) ** 2
                         * (8 * pi * nu) ** (mpf(d) / 2)))


def theta_l(beta, d, lip, nu=1):
    beta = mpf(beta)
    return (2 * nu) ** (1 / beta) * (lip * c0(beta, d, nu)) ** (2 * (2 - beta) / (2 - beta * d))


def eta2(beta, d, l, cs):
    q = mpf(beta) * d / 2
    return (cs * l * l * gamma(1 - q)) ** (1 / (1 - q))


def show(name, v):
    print(f"{name} = {mp.nstr(v, 17)}")


for b, z in [(0.3, -10), (0.7, -2), (0.9, 1.5), (0.6, -5), (0.5, -20)]:
    show(f"ml({b},{z})", ml(b, z))
for b, w in [(0.3, 0.5), (0.3, 3), (0.7, 0.5), (0.7, 2), (0.9, 1)]:
    show(f"stable({b},{w})", stable(b, w))
for d in (1, 2, 3):
    show(f"cstar(0.5,d={d})", cstar_half(d))
for b, d in [(0.5, 1), (0.4, 2), (0.6, 3), (0.9, 1)]:
    show(f"M({b},{d})", big_m(b, d))
    show(f"c0({b},{d})", c0(b, d))
for b, d, lip in [(0.5, 1, 1), (0.4, 1, 2)]:
    show(f"thetaL({b},{d},{lip})", theta_l(b, d, lip))
show("eta2(0.5,1,1)", eta2(0.5, 1, 1, cstar_half(1)))
