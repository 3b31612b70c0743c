"""Regenerates tests/unit/oracle_values.hpp from mpmath.

Every value here comes from the defining series summed at high working
precision, independently of the C++ code. Run from the repository root:

    python3 tests/oracles/generate.py > tests/unit/oracle_values.hpp
"""

import mpmath as mp

mp.mp.dps = 80


def phi_coeff(q, k, phi):
    p = mp.mpf(2) / q
    c4 = mp.cos(phi) ** (4 / p)
    s4 = mp.sin(phi) ** (4 / p)
    total = mp.mpf(0)
    for n in range(k + 1):
        ratio = mp.beta(q * (n + mp.mpf(1) / 2), q * (k - n + mp.mpf(1) / 2)) / mp.beta(
            n + mp.mpf(1) / 2, k - n + mp.mpf(1) / 2
        )
        cn = c4**n if n else mp.mpf(1)
        sn = s4 ** (k - n) if k - n else mp.mpf(1)
        total += mp.gamma(q * (k + 1)) / (mp.factorial(n) * mp.factorial(k - n)) * ratio * cn * sn
    return total


def pbessel(q, omega, phi, z):
    """Series definition; z may be complex (principal branch)."""
    p = mp.mpf(2) / q
    omega = mp.mpf(omega)
    front = (mp.mpf(2) / p) ** (2 + omega) * mp.pi / mp.gamma(1 / p) ** 2
    total = mp.mpf(0)
    k = 0
    while True:
        t = (-1) ** k / (mp.factorial(k) * mp.gamma(q * (k + 1) + omega)) * (z / 2) ** (2 * k + omega)
        t *= phi_coeff(q, k, phi)
        total += t
        if k > 10 and abs(t) < mp.mpf(10) ** (-mp.mp.dps + 5) * max(1, abs(total)):
            break
        k += 1
    return front * total


def p_cosine(q, phi, z):
    p = mp.mpf(2) / q
    total = mp.mpf(0)
    for k in range(200):
        total += (-1) ** k / mp.fac2(2 * k) * mp.sqrt(mp.pi) * phi_coeff(q, k, phi) / (
            mp.gamma((2 * k + 1) / p) * 2**k
        ) * z ** (2 * k)
    return total


def emit(name, value):
    if isinstance(value, mp.mpc):
        print(f"inline const std::complex<double> {name}{{{mp.nstr(value.real, 20)}, {mp.nstr(value.imag, 20)}}};")
    else:
        print(f"inline constexpr double {name} = {mp.nstr(value, 20)};")


print("#pragma once")
print("// Generated by tests/oracles/generate.py (mpmath, 80 digits). Do not edit.")
print("#include <complex>")
print("namespace oracle {")

emit("kLogGamma7p5", mp.loggamma(mp.mpf("7.5")))
emit("kBesselJ1at1", mp.besselj(1, 1))
emit("kBesselJ0at25", mp.besselj(0, 25))
emit("kBesselJ3at40", mp.besselj(3, 40))
emit("kBesselI0at1", mp.besseli(0, 1))

pi = mp.pi
emit("kPhiQ3K1Quarter", phi_coeff(3, 1, pi / 4))
emit("kPhiQ3K2Axis", phi_coeff(3, 2, 0))
emit("kPhiQ4K10Third", phi_coeff(4, 10, pi / 3))
emit("kPhiQ4K50Quarter", phi_coeff(4, 50, pi / 4))

print("struct SeriesPoint { int q; double omega; double phi; double r; double value; };")
print("inline constexpr SeriesPoint kSeriesPoints[] = {")
angles = {"0": mp.mpf(0), "pi/6": pi / 6, "pi/4": pi / 4, "pi/2": pi / 2, "pi/3": pi / 3}
grid = []
for om in (0, 1, 2):
    for a in ("0", "pi/6", "pi/4", "pi/2"):
        for r in ("0.5", "3", "10", "20"):
            grid.append((3, om, a, r))
grid += [(4, 0, "pi/3", "1"), (4, 1, "pi/3", "10"), (2, 1, "pi/6", "7"), (1, 2, "pi/4", "12")]
for q, om, a, r in grid:
    v = pbessel(q, om, angles[a], mp.mpf(r))
    print(f"    {{{q}, {om}, {mp.nstr(angles[a], 20)}, {r}, {mp.nstr(v, 20)}}},")
print("};")

mp.mp.dps = 250
print("// large radii, where the double-precision series has cancelled away")
print("inline constexpr SeriesPoint kLargeRadiusPoints[] = {")
for q, om, a, r in [(3, 0, "pi/2", "200"), (3, 1, "pi/2", "500"), (3, 0, "pi/2", "500"),
                    (3, 1, "pi/4", "100"), (3, 0, "pi/4", "150"), (3, 2, "pi/6", "60")]:
    v = pbessel(q, om, angles[a], mp.mpf(r))
    print(f"    {{{q}, {om}, {mp.nstr(angles[a], 20)}, {r}, {mp.nstr(v, 20)}}},")
print("};")
mp.mp.dps = 80

emit("kComplexQ3W1At1p1i", pbessel(3, 1, mp.mpf("0.2"), mp.mpc(1, 1)))
emit("kComplexQ3W2At1p1i", pbessel(3, 2, mp.mpf("0.2"), mp.mpc(1, 1)))
emit("kComplexQ3W0At2m3i", pbessel(3, 0, pi / 4, mp.mpc(2, -3)))
emit("kPCosineQ3Third1p7", p_cosine(3, pi / 3, mp.mpf("1.7")))

print("}  // namespace oracle")
