"""Reference values for the SplitMix64 stream, seed splitting and the
interval estimators. Frozen into tests/unit/test_stats.cpp."""
from scipy.stats import norm
import math

M = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
SALT = 0x5851F42D4C957F2D


def mix64(z):
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & M
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & M
    return z ^ (z >> 31)


def derive_seed(master, index):
    return mix64((mix64(master ^ SALT) + (index + 1) * GAMMA) & M)


def stream(seed, n):
    out = []
    for _ in range(n):
        seed = (seed + GAMMA) & M
        out.append(mix64(seed))
    return out


print("splitmix64(0):", [hex(x) for x in stream(0, 3)])
print("derive_seed(1, 0):", hex(derive_seed(1, 0)))
print("derive_seed(1, 1):", hex(derive_seed(1, 1)))
print("derive_seed(42, 1000):", hex(derive_seed(42, 1000)))
print("uniform from seed 7:", (stream(7, 1)[0] >> 11) * 2.0**-53)

print("z(0.95):", repr(norm.ppf(0.975)))
print("coverage(3):", repr(2 * norm.cdf(3) - 1))


def wilson(k, n, z):
    ph = k / n
    d = 1 + z * z / n
    c = (ph + z * z / (2 * n)) / d
    h = z * math.sqrt(ph * (1 - ph) / n + z * z / (4 * n * n)) / d
    return c - h, c + h


print("wilson(30, 100, 1.96):", wilson(30, 100, norm.ppf(0.975)))
print("wilson(0, 50, 3):", wilson(0, 50, 3.0))
