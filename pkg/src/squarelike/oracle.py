"""Brute-force ground truth on concrete finite abelian groups.

Nothing here uses the structural formulas in :mod:`squarelike.evaluator`:
invariants are read off by enumerating group elements.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple

from sympy import factorint

from .core import (
    Family,
    InvariantAtom,
    PrimeComponent,
    SzmielewDescriptor,
    ExtCard,
)

DEFAULT_CAP = 65536


class OracleError(RuntimeError):
    pass


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Direct sum of cyclic groups of the given prime-power orders."""

    cyclic_orders: tuple = ()

    def __post_init__(self) -> None:
        orders = tuple(sorted(self.cyclic_orders))
        for o in orders:
            if not isinstance(o, int) or o < 2 or len(factorint(o)) != 1:
                raise ValueError(f"cyclic order must be a prime power > 1, got {o!r}")
        object.__setattr__(self, "cyclic_orders", orders)

    @property
    def order(self) -> int:
        out = 1
        for o in self.cyclic_orders:
            out *= o
        return out

    def __add__(self, other: "FiniteAbelianGroup") -> "FiniteAbelianGroup":
        return FiniteAbelianGroup(self.cyclic_orders + other.cyclic_orders)

    def elements(self, cap: int = DEFAULT_CAP) -> Iterator[tuple]:
        if self.order > cap:
            raise OracleError(f"group order {self.order} exceeds cap {cap}")
        return itertools.product(*(range(o) for o in self.cyclic_orders))


def cyclic(*orders: int) -> FiniteAbelianGroup:
    return FiniteAbelianGroup(tuple(orders))


class Sizes(NamedTuple):
    """Subgroup orders at (p, n), all found by enumeration."""

    pn: int  # |p^n G|
    pn1: int  # |p^(n+1) G|
    pn_tors: int  # |p^n G [p]|
    pn1_tors: int  # |p^(n+1) G [p]|


def _mul(x: tuple, m: int, orders: tuple) -> tuple:
    return tuple((m * xi) % o for xi, o in zip(x, orders))


@lru_cache(maxsize=4096)
def subgroup_sizes(G: FiniteAbelianGroup, p: int, n: int, cap: int = DEFAULT_CAP) -> Sizes:
    orders = G.cyclic_orders
    elems = list(G.elements(cap))
    zero = tuple(0 for _ in orders)
    pn = {_mul(x, p**n, orders) for x in elems}
    pn1 = {_mul(x, p, orders) for x in pn}
    pn_tors = {x for x in pn if _mul(x, p, orders) == zero}
    pn1_tors = {x for x in pn1 if _mul(x, p, orders) == zero}
    return Sizes(len(pn), len(pn1), len(pn_tors), len(pn1_tors))


def exact_log(value: int, base: int) -> int:
    """``e`` with ``base**e == value``; anything else is an enumeration bug."""
    e = 0
    v = value
    while v > 1 and v % base == 0:
        v //= base
        e += 1
    if v != 1:
        raise OracleError(f"{value} is not a power of {base}")
    return e


def brute_value(family: Family, G: FiniteAbelianGroup, p: int, n: int, cap: int = DEFAULT_CAP) -> int:
    s = subgroup_sizes(G, p, n, cap)
    base = family.base
    if base == "Phi":
        if s.pn_tors % s.pn1_tors:
            raise OracleError("p^(n+1)G[p] does not divide p^nG[p]")
        return exact_log(s.pn_tors // s.pn1_tors, p)
    if base == "Theta":
        return exact_log(s.pn_tors, p)
    if base == "Gamma":
        if s.pn % s.pn1:
            raise OracleError("p^(n+1)G does not divide p^nG")
        return exact_log(s.pn // s.pn1, p)
    return s.pn


def brute_invariant(a: InvariantAtom, G: FiniteAbelianGroup, cap: int = DEFAULT_CAP) -> bool:
    v = brute_value(a.family, G, a.p, a.n, cap)
    return v > a.k if a.family.strict else v == a.k


def descriptor_of(G: FiniteAbelianGroup) -> SzmielewDescriptor:
    """A finite group is its own Szmielew normal form."""
    kappa: dict[int, dict[int, int]] = {}
    for o in G.cyclic_orders:
        ((p, m),) = factorint(o).items()
        levels = kappa.setdefault(p, {})
        levels[m - 1] = levels.get(m - 1, 0) + 1
    return SzmielewDescriptor({p: PrimeComponent(lv) for p, lv in kappa.items()})


def realize(A: SzmielewDescriptor) -> FiniteAbelianGroup:
    """Concrete group for a finite descriptor (inverse of :func:`descriptor_of`)."""
    if A.nu != 0:
        raise ValueError("descriptor has torsion-free part")
    orders = []
    for p, c in A.primes:
        if c.lam != 0 or c.mu != 0 or c.kappa_tail != 0:
            raise ValueError(f"component at {p} is infinite")
        for m, v in c.kappa:
            if not isinstance(v, int):
                raise ValueError(f"kappa[{p},{m}] is infinite")
            orders.extend([p ** (m + 1)] * v)
    return FiniteAbelianGroup(tuple(orders))


def groups_up_to(order_cap: int, primes: Iterable[int]) -> list[FiniteAbelianGroup]:
    """All finite abelian groups of order <= ``order_cap`` built from the given primes."""
    primes = sorted(primes)
    out: list[FiniteAbelianGroup] = []

    def partitions(total: int, largest: int):
        if total == 0:
            yield ()
            return
        for part in range(min(total, largest), 0, -1):
            for rest in partitions(total - part, part):
                yield (part,) + rest

    def rec(i: int, budget: int, acc: tuple) -> None:
        if i == len(primes):
            out.append(FiniteAbelianGroup(acc))
            return
        p = primes[i]
        e = 0
        while p**e <= budget:
            for part in partitions(e, e):
                rec(i + 1, budget // p**e, acc + tuple(p**x for x in part))
            e += 1

    rec(0, order_cap, ())
    return out


def enumerate_descriptors(
    primes: Iterable[int],
    max_level: int,
    values: Iterable[ExtCard],
    tails: Iterable[ExtCard],
) -> Iterator[SzmielewDescriptor]:
    """Every descriptor over the given parameter grid, in a fixed order.

    Each prime contributes ``len(values) ** (max_level + 3) * len(tails)``
    components (kappa at levels 0..max_level, lambda, mu, tail); the total is
    that per-prime count raised to ``len(primes)``, times ``len(values)``
    choices of nu.  Distinct grid points give distinct descriptors.
    """
    primes = sorted(set(primes))
    values = list(values)
    comps = {p: list(prime_components(max_level, values, tails)) for p in primes}
    for nu in values:
        for choice in itertools.product(*(comps[p] for p in primes)):
            yield SzmielewDescriptor(dict(zip(primes, choice)), nu)


def prime_components(
    max_level: int, values: Iterable[ExtCard], tails: Iterable[ExtCard]
) -> Iterator[PrimeComponent]:
    values = list(values)
    tails = list(tails)
    for profile in itertools.product(values, repeat=max_level + 1):
        for tail in tails:
            for lam in values:
                for mu in values:
                    yield PrimeComponent.from_profile(profile, tail, lam, mu)


def enumeration_size(n_primes: int, max_level: int, n_values: int, n_tails: int) -> int:
    return (n_values ** (max_level + 3) * n_tails) ** n_primes * n_values
