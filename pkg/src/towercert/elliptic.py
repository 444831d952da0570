"""Furuta witnesses and SL2(Z/n) perfectness checks at desk scale.

For a non-CM elliptic curve E with exceptional-prime product A_E, the mod-n
torsion representation is surjective for every n coprime to M_E = 30*A_E.
A_E is user input here: computing it needs the full image machinery.  The
worked example A_E = 1 (conductor-37 curve), M_E = 30, ships as
CONDUCTOR_37_GATE.

Furuta's construction takes n to be a product of nine or more primes
congruent to 1 mod ell and coprime to M_E; the resulting K_n then inherits
an infinite ell-class field tower.  The witness records the primes and
their exact product, the one place arbitrary-width integers are needed.

The linear-disjointness step relies on SL2(Z/n) being perfect for
(n, 30) = 1; sl2_perfect verifies that by brute-force commutator closure
for n <= 100 and reports the abelianization order so failures (n = 2, 3)
are informative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import gcd, is_prime
from .errors import DomainError, ResourceLimitError

__all__ = [
    "EllipticGate",
    "FurutaWitness",
    "GroupReport",
    "CONDUCTOR_37_GATE",
    "MIN_FURUTA_PRIMES",
    "ELEMENT_BUDGET",
    "furuta_n",
    "surjectivity_gate",
    "sl2_order",
    "sl2_perfect",
]

MIN_FURUTA_PRIMES = 9

# Visited-set cap for the commutator closure: deterministic memory behavior.
ELEMENT_BUDGET = 10**6

# Candidate cap for the arithmetic-progression prime search.
_MAX_PROGRESSION_STEPS = 10**6

_ORDER_LIMIT = 1000
_PERFECT_LIMIT = 100


@dataclass(frozen=True)
class EllipticGate:
    """Surjectivity gate data for one curve: A_E and M_E = 30*A_E."""

    a_e: int
    m_e: int

    def __post_init__(self):
        if self.a_e < 1:
            raise DomainError(f"A_E must be a positive integer, got {self.a_e}")
        if self.m_e != 30 * self.a_e:
            raise DomainError(f"M_E must equal 30*A_E, got {self.m_e}")


# y^2 + y = x^3 - x (conductor 37) has no exceptional primes: A_E = 1.
CONDUCTOR_37_GATE = EllipticGate(a_e=1, m_e=30)


@dataclass(frozen=True)
class FurutaWitness:
    ell: int
    m_e: int
    primes: tuple[int, ...]
    n: int

    def __post_init__(self):
        if len(self.primes) < MIN_FURUTA_PRIMES:
            raise DomainError(
                f"a Furuta witness needs at least {MIN_FURUTA_PRIMES} primes, "
                f"got {len(self.primes)}"
            )
        if any(p <= q for p, q in zip(self.primes[1:], self.primes)):
            raise DomainError("witness primes must be strictly ascending")
        for p in self.primes:
            if not is_prime(p):
                raise DomainError(f"witness entry {p} is not prime")
            if p % self.ell != 1:
                raise DomainError(f"witness prime {p} is not 1 mod {self.ell}")
            if gcd(p, self.m_e) != 1:
                raise DomainError(f"witness prime {p} shares a factor with {self.m_e}")
        if self.n != math.prod(self.primes):
            raise DomainError("witness product n does not match its primes")


@dataclass(frozen=True)
class GroupReport:
    n: int
    group_order: int
    abelianization_order: int
    perfect: bool

    def __post_init__(self):
        if self.group_order % self.abelianization_order != 0:
            raise DomainError("abelianization order must divide the group order")
        if self.perfect != (self.abelianization_order == 1):
            raise DomainError("perfect flag contradicts the abelianization order")


def _check_m_e(m_e: int) -> None:
    if m_e < 30 or m_e % 30 != 0:
        raise DomainError(f"M_E must be a positive multiple of 30, got {m_e}")


def furuta_n(ell: int, m_e: int, count: int = MIN_FURUTA_PRIMES) -> FurutaWitness:
    """The `count` smallest primes p = 1 mod ell with gcd(p, m_e) = 1.

    count < 9 is rejected: the tower argument needs nine or more primes.
    The product n is exact (Python integers are unbounded; this is the only
    quantity allowed past the 63-bit width contract).
    """
    if not is_prime(ell):
        raise DomainError(f"ell must be prime, got {ell}")
    _check_m_e(m_e)
    if count < MIN_FURUTA_PRIMES:
        raise DomainError(
            f"the construction requires nine or more primes, got count={count}"
        )
    primes = []
    for step in range(1, _MAX_PROGRESSION_STEPS + 1):
        candidate = step * ell + 1
        if is_prime(candidate) and gcd(candidate, m_e) == 1:
            primes.append(candidate)
            if len(primes) == count:
                break
    else:
        raise ResourceLimitError(
            f"no {count} primes = 1 mod {ell} within {_MAX_PROGRESSION_STEPS} steps"
        )
    return FurutaWitness(ell=ell, m_e=m_e, primes=tuple(primes), n=math.prod(primes))


def surjectivity_gate(n: int, m_e: int) -> bool:
    """True iff gcd(n, m_e) = 1, so the mod-n representation is surjective."""
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    _check_m_e(m_e)
    return gcd(n, m_e) == 1


def _factorize(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def sl2_order(n: int) -> int:
    """Order of SL2(Z/n): multiplicative, p^(3k-2)*(p^2-1) per prime power."""
    if not 2 <= n <= _ORDER_LIMIT:
        raise DomainError(f"sl2_order supports 2 <= n <= {_ORDER_LIMIT}, got {n}")
    order = 1
    for p, e in _factorize(n):
        order *= p ** (3 * e - 2) * (p * p - 1)
    return order


def _mul(x, y, n):
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % n, (a * f + b * h) % n, (c * e + d * g) % n, (c * f + d * h) % n)


def _inv(x, n):
    # only valid for determinant-1 matrices, which is all we move around
    a, b, c, d = x
    return (d % n, -b % n, -c % n, a % n)


def _commutator(x, y, n):
    return _mul(_mul(x, y, n), _mul(_inv(x, n), _inv(y, n), n), n)


def _generated_subgroup(generators, n, budget):
    """BFS closure under right multiplication; finiteness supplies inverses."""
    identity = (1 % n, 0, 0, 1 % n)
    members = {identity}
    frontier = [identity]
    while frontier:
        grown = []
        for g in frontier:
            for s in generators:
                h = _mul(g, s, n)
                if h not in members:
                    if len(members) >= budget:
                        raise ResourceLimitError(
                            f"subgroup closure exceeded {budget} elements at n={n}"
                        )
                    members.add(h)
                    grown.append(h)
        frontier = grown
    return members


def sl2_perfect(n: int) -> GroupReport:
    """Brute-force commutator subgroup of SL2(Z/n) and its abelianization.

    The derived subgroup is the normal closure of the commutator [U, L] of
    the elementary generators U = [[1,1],[0,1]], L = [[1,0],[1,1]]: any
    normal subgroup containing [U, L] has abelian quotient (the images of U
    and L commute and generate), and conversely.  So: close {[U,L], [L,U]}
    under multiplication, then under conjugation by U and L, iterating to a
    fixpoint.
    """
    if not 2 <= n <= _PERFECT_LIMIT:
        raise DomainError(f"sl2_perfect supports 2 <= n <= {_PERFECT_LIMIT}, got {n}")
    order = sl2_order(n)
    upper = (1 % n, 1 % n, 0, 1 % n)
    lower = (1 % n, 0, 1 % n, 1 % n)
    generators = [_commutator(upper, lower, n), _commutator(lower, upper, n)]
    while True:
        members = _generated_subgroup(generators, n, ELEMENT_BUDGET)
        missing = []
        for t in (upper, lower):
            t_inv = _inv(t, n)
            for g in members:
                conj = _mul(_mul(t, g, n), t_inv, n)
                if conj not in members:
                    missing.append(conj)
        if not missing:
            break
        generators.extend(dict.fromkeys(missing))
    commutator_order = len(members)
    # a subgroup order always divides the group order; a mismatch means a bug
    if order % commutator_order != 0:
        raise ResourceLimitError(
            f"closure produced a non-divisor order {commutator_order} at n={n}"
        )
    abelianization = order // commutator_order
    return GroupReport(
        n=n,
        group_order=order,
        abelianization_order=abelianization,
        perfect=abelianization == 1,
    )
