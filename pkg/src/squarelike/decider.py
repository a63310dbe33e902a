"""Satisfiability over square-like abelian groups and membership in their theory.

A sentence holds in some square-like abelian group iff it holds in some
discriminating Szmielew group, so everything here searches for discriminating
witnesses.  The work splits into a per-prime procedure
(:func:`p_conj_discr_sat`) and the reduction of an arbitrary conjunction to
per-prime problems (:func:`conj_discr_sat`).
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from typing import Iterable, NamedTuple, Optional

from .classifier import is_discriminating
from .consistency import satisfiable_szmielew
from .core import (
    OMEGA,
    ZERO,
    Family,
    InvariantAtom,
    Not,
    Sentence,
    SzmielewDescriptor,
    canonical,
    direct_sum,
    ext_add,
    ip_info,
)
from .evaluator import eval_atom, eval_sentence
from .normalizer import gamma_lift, to_positive_dnf


class InconsistentInput(ValueError):
    """The conjunction holds in no Szmielew group at all."""


class InvariantViolation(AssertionError):
    """A constructed witness failed its own verification."""


def _require_consistent(c: tuple) -> SzmielewDescriptor:
    A = satisfiable_szmielew(c)
    if A is None:
        raise InconsistentInput("conjunction holds in no Szmielew group: " + " & ".join(map(str, c)))
    return A


def _verify(c: Iterable[InvariantAtom], W: SzmielewDescriptor) -> SzmielewDescriptor:
    c = tuple(c)
    if not is_discriminating(W):
        raise InvariantViolation(f"witness {W} is not discriminating")
    bad = [a for a in c if not eval_atom(a, W)]
    if bad:
        raise InvariantViolation(f"witness {W} falsifies {', '.join(map(str, bad))}")
    return W


# --- one prime ---------------------------------------------------------------


def p_conj_discr_sat(p: int, c: Iterable[InvariantAtom]) -> Optional[SzmielewDescriptor]:
    """A discriminating p-Szmielew group satisfying the p-conjunction ``c``."""
    c = canonical(c)
    wrong = [a for a in c if a.p != p]
    if wrong:
        raise ValueError(f"atoms not at prime {p}: {', '.join(map(str, wrong))}")
    return _p_conj(p, c)


@lru_cache(maxsize=1 << 18)
def _p_conj(p: int, c: tuple) -> Optional[SzmielewDescriptor]:
    A = _require_consistent(c)
    # a nontrivial finite p^n B is End(B)-invariant, impossible when discriminating
    if any(a.family is Family.DELTA_EQ and a.k != 1 for a in c):
        return None
    # a finite nonzero Theta value needs lambda_p < omega, hence 0, and a
    # finite top cyclic multiplicity
    if any(a.family is Family.THETA_EQ and a.k > 0 for a in c):
        return None
    vanishing = [
        a.n
        for a in c
        if a.family is Family.DELTA_EQ or (a.family is Family.THETA_EQ and a.k == 0)
    ]
    if not vanishing:
        comp = A.component(p).replace(lam=OMEGA)
        return _verify(c, SzmielewDescriptor({p: comp}))
    n = min(vanishing)
    for branch in gamma_lift(c, p, n):
        W = _vanishing_case(p, canonical(branch), n)
        if W is not None:
            return W
    return None


def _blocked(c: tuple, p: int, n: int) -> bool:
    """Some Phi(p,m)=i with i > 0, m < n, and a Phi(p,k)=j for every m < k < n.

    With everything at levels >= n forced to vanish, such a chain pins every
    cyclic multiplicity from m up to the top to a finite value.
    """
    fixed = {a.n: a.k for a in c if a.family is Family.PHI_EQ and a.p == p}
    for m, i in fixed.items():
        if m < n and i > 0 and all(k in fixed for k in range(m + 1, n)):
            return True
    return False


def _vanishing_case(p: int, c: tuple, n: int) -> Optional[SzmielewDescriptor]:
    # c contains Delta(p,n)=1 or Theta(p,n)=0, no other exact Delta or
    # nonzero exact Theta, and no Gamma(p,s)=l with s < n
    A = satisfiable_szmielew(c)
    if A is None or _blocked(c, p, n):
        return None
    # A is a p-group when Delta(p,n)=1 is present; otherwise its p-part plus
    # Q^(nu) (nu > 0 only when needed for Delta(...)>k) still satisfies c
    A = A.restrict(p)
    if is_discriminating(A):
        return _verify(c, A)
    comp = A.component(p)
    m = ip_info(comp).lp - 1
    fixed = {a.n for a in c if a.family is Family.PHI_EQ}
    if m in fixed:
        k = next(k for k in range(m + 1, n) if k not in fixed)
    else:
        k = m
    comp = comp.replace(kappa={**comp.kappa_exceptions, k: ext_add(comp.kappa_at(k), OMEGA)})
    return _verify(c, A.with_component(p, comp))


# --- arbitrary conjunctions --------------------------------------------------


def conj_discr_sat(c: Iterable[InvariantAtom]) -> Optional[SzmielewDescriptor]:
    """A discriminating Szmielew group satisfying the consistent conjunction ``c``."""
    return _conj(canonical(c))


@lru_cache(maxsize=1 << 18)
def _conj(c: tuple) -> Optional[SzmielewDescriptor]:
    _require_consistent(c)
    by_prime: dict[int, list[InvariantAtom]] = defaultdict(list)
    for a in c:
        by_prime[a.p].append(a)
    exact_primes = {a.p for a in c if a.family is Family.DELTA_EQ}

    if not exact_primes:
        parts = []
        for p, atoms in sorted(by_prime.items()):
            W = _p_conj(p, canonical(atoms))
            if W is None:
                return None
            parts.append(W)
        return _verify(c, direct_sum(*parts)) if parts else ZERO

    if len(exact_primes) > 1:
        # p^n B = q^m B = 0 with p != q forces B = 0
        return ZERO if all(eval_atom(a, ZERO) for a in c) else None

    (p,) = exact_primes
    sizes = set()
    for a in c:
        if a.p == p:
            continue
        if a.family is Family.DELTA_GT:
            sizes.add(a.k)
        elif a.family.strict or a.k > 0:
            # the witness is a p-group, so every other-prime invariant is 0
            return None
    extra = [InvariantAtom(Family.DELTA_GT, p, 0, s) for s in sorted(sizes)]
    W = _p_conj(p, canonical(by_prime[p] + extra))
    return None if W is None else _verify(c, W)


def satisfiable_square_like(s: Sentence) -> Optional[SzmielewDescriptor]:
    """A discriminating (hence square-like) Szmielew group satisfying ``s``."""
    for c in to_positive_dnf(s):
        if satisfiable_szmielew(c) is None:
            continue
        W = conj_discr_sat(c)
        if W is not None:
            if not eval_sentence(s, W):
                raise InvariantViolation(f"witness {W} falsifies the input sentence")
            return W
    return None


class Membership(NamedTuple):
    member: bool
    counter_model: Optional[SzmielewDescriptor]


def in_theory(s: Sentence) -> Membership:
    """Whether ``s`` holds in every square-like abelian group."""
    W = satisfiable_square_like(Not(s))
    return Membership(W is None, W)



def clear_caches() -> None:
    """Forget memoised per-conjunction results (for timing cold queries)."""
    from . import consistency

    for fn in (_p_conj, _conj, consistency._solve, consistency.local_solve):
        fn.cache_clear()
