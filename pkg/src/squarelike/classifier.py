"""Discriminating and square-like Szmielew groups, and elementary equivalence."""

from __future__ import annotations

from functools import lru_cache

from sympy import nextprime

from .core import (
    OMEGA,
    ZERO_COMPONENT,
    PrimeComponent,
    SzmielewDescriptor,
    ip_info,
)
from .evaluator import delta_value, gamma_value, kappa_value, theta_value


class NotSquareLike(ValueError):
    pass


@lru_cache(maxsize=1 << 16)
def component_discriminating(c: PrimeComponent) -> bool:
    """Either Z(p^inf)^(omega) is present, or there is no Pruefer part and the
    top cyclic summand (if I_p is finite and non-empty) has multiplicity omega."""
    if c.lam is OMEGA:
        return True
    if c.lam != 0:
        return False
    info = ip_info(c)
    if info.lp is None:
        return True
    return c.kappa_at(info.lp - 1) is OMEGA


@lru_cache(maxsize=1 << 16)
def _bounded_pruefer_case(c: PrimeComponent) -> bool:
    # 0 < lambda < omega with infinitely many distinct cyclic exponents
    return c.lam != 0 and c.lam is not OMEGA and not ip_info(c).ip_finite


@lru_cache(maxsize=1 << 16)
def component_square_like(c: PrimeComponent) -> bool:
    return component_discriminating(c) or _bounded_pruefer_case(c)


def is_discriminating(A: SzmielewDescriptor) -> bool:
    # primes outside the support have I_p empty and lambda = 0
    for _, c in A.primes:
        if not component_discriminating(c):
            return False
    return True


def is_square_like(A: SzmielewDescriptor) -> bool:
    for _, c in A.primes:
        if not component_square_like(c):
            return False
    return True


@lru_cache(maxsize=1 << 16)
def _companion_component(c: PrimeComponent) -> PrimeComponent:
    return c.replace(lam=0)


def discriminating_companion(A: SzmielewDescriptor) -> SzmielewDescriptor:
    """Drop the finite Pruefer part at every prime where it sits next to
    infinitely many cyclic exponents.  The result is discriminating and
    elementarily equivalent to ``A``."""
    comps = []
    changed = False
    for p, c in A.primes:
        if not component_square_like(c):
            raise NotSquareLike(f"{A} is not square-like")
        if _bounded_pruefer_case(c):
            changed = True
            c = _companion_component(c)
        comps.append((p, c))
    # dropping lambda keeps the (infinite) cyclic part, so no component vanishes
    return SzmielewDescriptor._trusted(tuple(comps), A.nu) if changed else A


@lru_cache(maxsize=1 << 16)
def _local_profile(c: PrimeComponent, p: int, levels: int) -> tuple:
    A = SzmielewDescriptor({p: c})
    return tuple(
        (kappa_value(A, p, n), theta_value(A, p, n), gamma_value(A, p, n))
        for n in range(levels)
    )


def _first_prime_outside(primes: set) -> int:
    q = 2
    while q in primes:
        q = int(nextprime(q))
    return q


@lru_cache(maxsize=1 << 16)
def _component_unbounded(c: PrimeComponent) -> bool:
    return c.lam != 0 or c.mu != 0 or c.kappa_tail != 0


def _unbounded(A: SzmielewDescriptor) -> bool:
    # Q, a Pruefer group, Z_(p) or infinitely many cyclic exponents: every p^n A is infinite
    if A.nu != 0:
        return True
    for _, c in A.primes:
        if _component_unbounded(c):
            return True
    return False


@lru_cache(maxsize=1 << 16)
def _same_local_profile(a: PrimeComponent, b: PrimeComponent, p: int) -> bool:
    levels = max(a.top, b.top) + 3
    return _local_profile(a, p, levels) == _local_profile(b, p, levels)


def _paired_components(A: SzmielewDescriptor, B: SzmielewDescriptor) -> list:
    pa, pb = A.primes, B.primes
    if len(pa) == len(pb):
        pairs = []
        for (p, a), (q, b) in zip(pa, pb):
            if p != q:
                break
            pairs.append((p, a, b))
        else:
            return pairs
    la, lb = A._lookup, B._lookup
    return [
        (p, la.get(p, ZERO_COMPONENT), lb.get(p, ZERO_COMPONENT))
        for p in sorted(la.keys() | lb.keys())
    ]


def elem_equiv(A: SzmielewDescriptor, B: SzmielewDescriptor) -> bool:
    """Whether ``A`` and ``B`` satisfy the same invariant sentences.

    Beyond the largest kappa exception at p the profiles are constant, so
    levels up to that key + 2 decide every level.  Outside both supports
    ``|q^n X| = |X|`` for all n, so one extra prime covers them all.
    """
    if A is B:
        return True
    orders_infinite = _unbounded(A) and _unbounded(B)
    pairs = _paired_components(A, B)
    for p, a, b in pairs:
        if a is not b and not _same_local_profile(a, b, p):
            return False
        if orders_infinite:
            continue
        for n in range(max(a.top, b.top) + 3):
            if delta_value(A, p, n) != delta_value(B, p, n):
                return False
    if orders_infinite:
        return True
    q = _first_prime_outside({p for p, _, _ in pairs})
    return delta_value(A, q, 0) == delta_value(B, q, 0)
