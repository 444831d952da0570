"""Shanks' simplest cubic fields and their analytic class numbers.

The field attached to m >= 1 is the splitting field of

    f_m(x) = x^3 - m*x^2 - (m+3)*x - 1,

a totally real cyclic cubic of conductor ell = m^2 + 3m + 9 (prime ell
assumed for certification).  Its three real roots are units permuted
cyclically by rho -> -1/(1+rho), and the pair {rho, -1/(1+rho)} is taken as
a fundamental system of units modulo +-1 (the classical unit-index-one
property of this family for squarefree conductor; every consumer records
that assumption by name).

For prime conductor the class number comes out of the analytic formula.
With chi a cubic character mod ell and

    S = sum_{a=1}^{ell-1} conj(chi(a)) * log(2*sin(pi*a/ell)),

one has |L(1,chi)|^2 = |S|^2 / ell (the Gauss-sum magnitude ell cancels),
and the residue of the Dedekind zeta function gives h * R = ell *
|L(1,chi)|^2 / 4, hence

    h = |S|^2 / (4*R).

The computation is O(ell): a discrete-log table for chi plus one pass of
logarithmic sines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import is_prime
from .errors import DomainError, IntegralityError, NumericError
from .hlsearch import shanks_value

__all__ = [
    "SimplestCubicField",
    "CubicCharacter",
    "INTEGRALITY_TOL",
    "UNIT_INDEX_ASSUMPTION",
    "cubic_poly",
    "real_roots",
    "galois_conjugate",
    "regulator",
    "cubic_character",
    "l_sum",
    "class_number",
]

INTEGRALITY_TOL = 1e-3

# Named assumption carried into every certificate that consumes these class
# numbers: the exceptional units generate the full unit group modulo +-1.
UNIT_INDEX_ASSUMPTION = "unit-index Q=1"


@dataclass(frozen=True)
class SimplestCubicField:
    """Fully populated invariants for one member of the family."""

    m: int
    ell: int
    disc: int
    roots: tuple[float, float, float]
    regulator: float
    class_number_float: float
    class_number: int
    integrality_gap: float
    valid: bool


@dataclass(frozen=True)
class CubicCharacter:
    """Order-3 character mod a prime conductor ell = 1 mod 3.

    ``value_index[a]`` is t mod 3 where a = g^t for the least primitive
    root g; slot 0 is unused (-1).  chi(a) = exp(2*pi*i*value_index[a]/3).
    """

    conductor: int
    generator: int
    value_index: tuple[int, ...]

    def index(self, a: int) -> int:
        if not 1 <= a < self.conductor:
            raise DomainError(f"residue {a} outside [1, {self.conductor - 1}]")
        return self.value_index[a]

    def chi(self, a: int) -> complex:
        t = self.index(a)
        angle = 2.0 * math.pi * t / 3.0
        return complex(math.cos(angle), math.sin(angle))


def cubic_poly(m: int) -> tuple[int, int, int, int]:
    """Monic coefficients (1, -m, -(m+3), -1) of f_m."""
    if m < 1:
        raise DomainError(f"m must be positive, got {m}")
    return (1, -m, -(m + 3), -1)


def _eval_f(m: int, x: float) -> float:
    return ((x - m) * x - (m + 3)) * x - 1.0


def _eval_fprime(m: int, x: float) -> float:
    return (3.0 * x - 2.0 * m) * x - (m + 3)


def real_roots(m: int) -> tuple[float, float, float]:
    """The three real roots of f_m, descending.

    Closed-form trigonometric roots of the depressed cubic, polished by
    Newton iteration; each root must satisfy |f_m(root)| <
    1e-10 * max(1, m^3) or a NumericError is raised.
    """
    if m < 1:
        raise DomainError(f"m must be positive, got {m}")
    a, b, c = -float(m), -float(m + 3), -1.0
    p = b - a * a / 3.0
    q = (2.0 * a**3 - 9.0 * a * b + 27.0 * c) / 27.0
    # p = -(m^2+3m+9)/3 < 0 always, so the three-real-root branch applies.
    rad = math.sqrt(-p / 3.0)
    cos_arg = min(1.0, max(-1.0, 3.0 * q / (2.0 * p * rad)))
    theta = math.acos(cos_arg)
    tol = 1e-10 * max(1.0, float(m) ** 3)
    roots = []
    for j in range(3):
        x = 2.0 * rad * math.cos(theta / 3.0 - 2.0 * math.pi * j / 3.0) - a / 3.0
        for _ in range(64):
            fx = _eval_f(m, x)
            fpx = _eval_fprime(m, x)
            if fpx == 0.0:
                break
            step = fx / fpx
            x -= step
            if abs(step) <= 1e-16 * max(1.0, abs(x)):
                break
        if abs(_eval_f(m, x)) >= tol:
            raise NumericError(
                f"Newton polish failed for m={m}: residual {_eval_f(m, x):e}"
            )
        roots.append(x)
    roots.sort(reverse=True)
    if roots[0] == roots[1] or roots[1] == roots[2]:
        raise NumericError(f"coincident roots for m={m}")
    return tuple(roots)


def galois_conjugate(rho: float) -> float:
    """The conjugation map rho -> -1/(1+rho); a 3-cycle on each root set."""
    if 1.0 + rho == 0.0:
        raise DomainError("conjugation undefined at rho = -1")
    return -1.0 / (1.0 + rho)


def regulator(m: int, embeddings: tuple[int, int] = (0, 1)) -> float:
    """Regulator of the unit pair {rho, -1/(1+rho)}.

    Absolute determinant of the 2x2 log-embedding matrix built from two of
    the three real embeddings.  The three row vectors sum to zero (both
    units have norm +-1), so the choice of pair does not matter.
    """
    i, j = embeddings
    if i == j or not (0 <= i < 3 and 0 <= j < 3):
        raise DomainError(f"embeddings must be two distinct indices in 0..2, got {embeddings}")
    roots = real_roots(m)
    r00 = math.log(abs(roots[i]))
    r01 = math.log(abs(galois_conjugate(roots[i])))
    r10 = math.log(abs(roots[j]))
    r11 = math.log(abs(galois_conjugate(roots[j])))
    det = r00 * r11 - r01 * r10
    if abs(det) < 1e-12:
        raise NumericError(f"degenerate unit lattice for m={m}: |det|={abs(det):e}")
    return abs(det)


def _factor_distinct(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _least_primitive_root(ell: int) -> int:
    exponents = [(ell - 1) // q for q in _factor_distinct(ell - 1)]
    for g in range(2, ell):
        if all(pow(g, e, ell) != 1 for e in exponents):
            return g
    raise NumericError(f"no primitive root found mod {ell}")  # unreachable for prime ell


def cubic_character(ell: int) -> CubicCharacter:
    """Build the discrete-log-mod-3 table for a prime ell = 1 mod 3."""
    if not is_prime(ell):
        raise DomainError(f"conductor {ell} is not prime")
    if ell % 3 != 1:
        raise DomainError(f"no cubic character mod {ell}: ell != 1 mod 3")
    g = _least_primitive_root(ell)
    table = [-1] * ell
    v = 1
    for t in range(ell - 1):
        table[v] = t % 3
        v = v * g % ell
    counts = [0, 0, 0]
    for a in range(1, ell):
        counts[table[a]] += 1
    if counts != [(ell - 1) // 3] * 3:
        raise NumericError(f"character table mod {ell} not equidistributed: {counts}")
    return CubicCharacter(ell, g, tuple(table))


def _index_bucket_sums(char: CubicCharacter, compensated: bool) -> tuple[float, float, float]:
    """sum of log(2*sin(pi*a/ell)) over residues a, bucketed by chi-index."""
    ell = char.conductor
    table = char.value_index
    step = math.pi / ell
    if compensated:
        buckets = ([], [], [])
        for a in range(1, ell):
            buckets[table[a]].append(math.log(2.0 * math.sin(step * a)))
        return tuple(math.fsum(b) for b in buckets)
    sums = [0.0, 0.0, 0.0]
    for a in range(1, ell):
        sums[table[a]] += math.log(2.0 * math.sin(step * a))
    return tuple(sums)


def l_sum(ell: int, compensated: bool = False) -> complex:
    """S = sum conj(chi(a)) * log(2*sin(pi*a/ell)) for the cubic chi mod ell.

    |S|^2 = ell * |L(1,chi)|^2 feeds the class number formula.
    """
    if ell < 7:
        raise DomainError(f"conductor must be at least 7, got {ell}")
    char = cubic_character(ell)
    t0, t1, t2 = _index_bucket_sums(char, compensated)
    # conj(chi) takes values 1, wbar, wbar^2 with wbar = exp(-2*pi*i/3).
    half_sqrt3 = math.sqrt(3.0) / 2.0
    return complex(t0 - 0.5 * (t1 + t2), half_sqrt3 * (t2 - t1))


def class_number(m: int) -> SimplestCubicField:
    """Analytic class number h = |S|^2 / (4R) with integrality diagnostics.

    Requires prime conductor.  If the analytic value misses every integer
    by at least INTEGRALITY_TOL even after compensated resummation, the
    computation fails loudly; a value near an integer divided by 3 is
    flagged as a possible unit-index failure rather than rounded.
    """
    ell = shanks_value(m)
    if not is_prime(ell):
        raise DomainError(f"conductor {ell} (m={m}) is composite")
    roots = real_roots(m)
    reg = regulator(m)
    for compensated in (False, True):
        s = l_sum(ell, compensated=compensated)
        h_float = (s.real * s.real + s.imag * s.imag) / (4.0 * reg)
        h = round(h_float)
        gap = abs(h_float - h)
        if gap < INTEGRALITY_TOL and h >= 1:
            return SimplestCubicField(
                m=m,
                ell=ell,
                disc=ell * ell,
                roots=roots,
                regulator=reg,
                class_number_float=h_float,
                class_number=h,
                integrality_gap=gap,
                valid=True,
            )
    thirds_gap = abs(3.0 * h_float - round(3.0 * h_float))
    raise IntegralityError(
        f"analytic class number {h_float!r} for m={m} misses integrality "
        f"tolerance {INTEGRALITY_TOL}",
        value=h_float,
        gap=gap,
        unit_index_suspected=thirds_gap < 3.0 * INTEGRALITY_TOL,
    )
