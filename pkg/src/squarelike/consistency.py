"""Satisfiability of atom conjunctions over arbitrary Szmielew groups.

Search bounds
-------------
Let ``K`` be the largest bound among the non-``Delta(...)=k`` atoms.

* Values.  Every atom compares an invariant with a constant ``<= K``, and
  every invariant is monotone in each multiplicity (Phi/Theta/Gamma are sums,
  Delta is a product of prime powers whose exponents are those sums with
  positive weights).  Raising any multiplicity above ``K`` to omega therefore
  leaves every atom's truth value unchanged, so multiplicities range over
  ``{0, ..., K, omega}``.
* Levels without exact orders.  Phi/Theta/Gamma atoms at prime p only see
  ``kappa[p, n]`` for ``n <= L`` (the largest level mentioned) and the tail
  sums above them, so all mass above ``L`` can be lumped at level ``L + 1``.
  Delta(...)>k atoms are then settled by Q: adding Q^(1) makes every
  ``p^n A`` infinite and changes no other invariant.
* Exact orders.  ``Delta(p,n)=k`` forces nu = 0, no Pruefer or Z_(q) parts
  and finite kappa profiles, with ``sum (m+1) kappa[q, m] = v_q(k)`` for every
  prime ``q != p`` and ``sum_{m >= n} (m+1-n) kappa[p, m] = v_p(k)``.  These
  budgets make every component a finite choice of partitions, except
  ``kappa[p, m]`` for ``m < n``, which ranges over the value domain above.

Witness order
-------------
Among all witnesses inside these bounds the least one is returned: compare
primes in increasing order; within a prime compare lambda, then mu, then
kappa from the highest level down to level 0; finally nu.  Values are ordered
``0 < 1 < ... < omega``.  Witnesses always have kappa_tail = 0.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from functools import lru_cache
from typing import Iterable, Iterator, Optional

from sympy import factorint, multiplicity

from .core import (
    OMEGA,
    ExtCard,
    Family,
    InvariantAtom,
    PrimeComponent,
    SzmielewDescriptor,
    canonical,
)
from .evaluator import compare, eval_atom, local_delta_exponent


def satisfiable_szmielew(c: Iterable[InvariantAtom]) -> Optional[SzmielewDescriptor]:
    """A Szmielew group satisfying every atom of ``c``, or None if there is none."""
    return _solve(canonical(c))


@lru_cache(maxsize=1 << 18)
def _solve(atoms: tuple) -> Optional[SzmielewDescriptor]:
    exact = [a for a in atoms if a.family is Family.DELTA_EQ]
    if exact:
        return _solve_exact_order(atoms, exact)
    return _solve_open_order(atoms)


def _local_atoms(atoms: Iterable[InvariantAtom]) -> dict[int, list[InvariantAtom]]:
    out: dict[int, list[InvariantAtom]] = defaultdict(list)
    for a in atoms:
        if a.family.base != "Delta":
            out[a.p].append(a)
    return out


def _solve_open_order(atoms: tuple) -> Optional[SzmielewDescriptor]:
    comps = {}
    for p, local in sorted(_local_atoms(atoms).items()):
        comp = local_solve(p, tuple(local))
        if comp is None:
            return None
        comps[p] = comp
    A = SzmielewDescriptor(comps)
    if all(eval_atom(a, A) for a in atoms):
        return A
    return SzmielewDescriptor(comps, 1)


def _domain(k: int) -> list[ExtCard]:
    return list(range(k + 1)) + [OMEGA]


@lru_cache(maxsize=1 << 18)
def local_solve(p: int, atoms: tuple) -> Optional[PrimeComponent]:
    """Least p-component satisfying Phi/Theta/Gamma atoms at ``p``.

    Dynamic programme over levels, top-down, with state (Theta value, Gamma
    value) at the current level; both are capped at omega once they exceed
    the largest bound.
    """
    if not atoms:
        return PrimeComponent()
    kmax = max(a.k for a in atoms)
    top = max(a.n for a in atoms) + 1
    dom = _domain(kmax)

    def add(x: ExtCard, y: ExtCard) -> ExtCard:
        if x is OMEGA or y is OMEGA:
            return OMEGA
        s = x + y
        return OMEGA if s > kmax else s

    by_level: dict[int, list[InvariantAtom]] = defaultdict(list)
    for a in atoms:
        by_level[a.n].append(a)

    def ok(n: int, kappa: ExtCard, theta: ExtCard, gamma: ExtCard) -> bool:
        for a in by_level.get(n, ()):
            value = kappa if a.family.base == "Phi" else theta if a.family.base == "Theta" else gamma
            if not compare(value, a.family, a.k):
                return False
        return True

    states = [(t, g) for t in dom for g in dom]
    # completable[n]: states before choosing kappa[n] from which levels n..0 work
    completable: list[set] = []
    below: Optional[set] = None
    for n in range(top + 1):
        good = set()
        for t, g in states:
            for v in dom:
                t2, g2 = add(t, v), add(g, v)
                if ok(n, v, t2, g2) and (below is None or (t2, g2) in below):
                    good.add((t, g))
                    break
        completable.append(good)
        below = good

    uses_theta = any(a.family.base == "Theta" for a in atoms)
    uses_gamma = any(a.family.base == "Gamma" for a in atoms)
    start = next(
        (
            (lam, mu)
            for lam in (dom if uses_theta else [0])
            for mu in (dom if uses_gamma else [0])
            if (lam, mu) in completable[top]
        ),
        None,
    )
    if start is None:
        return None
    lam, mu = start
    t, g = start
    kappa = {}
    for n in range(top, -1, -1):
        below = completable[n - 1] if n > 0 else None
        for v in dom:
            t2, g2 = add(t, v), add(g, v)
            if ok(n, v, t2, g2) and (below is None or (t2, g2) in below):
                break
        else:  # pragma: no cover - completable[n] guarantees a choice
            raise AssertionError("dynamic programme lost its witness")
        kappa[n] = v
        t, g = t2, g2
    return PrimeComponent(kappa, 0, lam, mu)


def weighted_profiles(total: int, weights: list[tuple[int, int]]) -> Iterator[dict]:
    """Every ``{level: count}`` with ``sum(count * weight) == total``."""
    if total == 0:
        yield {}
        return
    if not weights:
        return
    (level, w), rest = weights[0], weights[1:]
    for count in range(total // w, -1, -1):
        for sub in weighted_profiles(total - count * w, rest):
            if count:
                sub = {**sub, level: count}
            yield sub


def _component_key(c: PrimeComponent, top: int) -> tuple:
    return (c.lam, c.mu) + tuple(c.kappa_at(n) for n in range(top, -1, -1))


def _solve_exact_order(atoms: tuple, exact: list[InvariantAtom]) -> Optional[SzmielewDescriptor]:
    kmax = max((a.k for a in atoms if a.family is not Family.DELTA_EQ), default=0)
    dom = _domain(kmax)
    primes = sorted({a.p for a in atoms} | {q for a in exact for q in factorint(a.k)})
    local = _local_atoms(atoms)

    candidates = []
    for r in primes:
        whole = {multiplicity(r, a.k) for a in exact if a.p != r}
        own = [(a.n, multiplicity(r, a.k)) for a in exact if a.p == r]
        if len(whole) > 1:
            return None
        if whole:
            (e,) = whole
            profiles: Iterable[dict] = weighted_profiles(e, [(m, m + 1) for m in range(e)])
        else:
            n0, e0 = min(own)
            upper = list(weighted_profiles(e0, [(m, m + 1 - n0) for m in range(n0, n0 + e0)]))
            profiles = (
                {**dict(enumerate(low)), **up}
                for up in upper
                for low in itertools.product(dom, repeat=n0)
            )
        comps = []
        for prof in profiles:
            comp = PrimeComponent(prof)
            if any(local_delta_exponent(comp, r, r, n) != e for n, e in own):
                continue
            alone = SzmielewDescriptor({r: comp})
            if all(eval_atom(a, alone) for a in local.get(r, ())):
                comps.append(comp)
        if not comps:
            return None
        top = max(c.top for c in comps)
        comps.sort(key=lambda c: _component_key(c, top))
        candidates.append(comps)

    for choice in itertools.product(*candidates):
        A = SzmielewDescriptor(dict(zip(primes, choice)))
        if all(eval_atom(a, A) for a in atoms):
            return A
    return None
