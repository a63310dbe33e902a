"""Truth of invariant sentences on Szmielew descriptors."""

from __future__ import annotations

from functools import lru_cache

from .core import (
    OMEGA,
    And,
    ExtCard,
    Family,
    InvariantAtom,
    Lit,
    Not,
    Or,
    PrimeComponent,
    Sentence,
    SzmielewDescriptor,
    ext_add,
    tail_sum,
)


def kappa_value(A: SzmielewDescriptor, p: int, n: int) -> ExtCard:
    return A.component(p).kappa_at(n)


def theta_value(A: SzmielewDescriptor, p: int, n: int) -> ExtCard:
    """dim of p^n A[p]: Pruefer rank plus the kappa tail from level n."""
    c = A.component(p)
    return ext_add(c.lam, tail_sum(c, n))


def gamma_value(A: SzmielewDescriptor, p: int, n: int) -> ExtCard:
    """dim of p^n A / p^(n+1) A: Z_(p) rank plus the kappa tail from level n."""
    c = A.component(p)
    return ext_add(c.mu, tail_sum(c, n))


@lru_cache(maxsize=1 << 16)
def local_delta_exponent(c: PrimeComponent, q: int, p: int, n: int) -> ExtCard:
    """log_q |p^n C| for the q-component C, or omega when infinite.

    Multiplication by p is bijective on q-groups for q != p, so the whole
    component survives.  At q == p, p^n Z(p^m) = Z(p^(m-n)) for m > n and
    vanishes otherwise; Z(p^inf) and Z_(p) stay infinite.
    """
    if c.lam != 0 or c.mu != 0 or c.kappa_tail != 0:
        return OMEGA
    total = 0
    for m, v in c.kappa:
        # summand Z(q^(m+1)) with multiplicity v
        weight = m + 1 if q != p else m + 1 - n
        if weight <= 0 or v == 0:
            continue
        if v is OMEGA:
            return OMEGA
        total += weight * v
    return total


def delta_value(A: SzmielewDescriptor, p: int, n: int) -> ExtCard:
    """|p^n A| as a cardinal <= omega.

    Finite exactly when nu = 0 and every component is a finite sum of cyclic
    groups, except that cyclic p-summands of exponent <= n are annihilated.
    """
    if A.nu != 0:
        return OMEGA
    order = 1
    for q, c in A.primes:
        e = local_delta_exponent(c, q, p, n)
        if e is OMEGA:
            return OMEGA
        order *= q**e
    return order


_VALUE_OF = {
    "Phi": kappa_value,
    "Theta": theta_value,
    "Gamma": gamma_value,
    "Delta": delta_value,
}


def atom_value(a: InvariantAtom, A: SzmielewDescriptor) -> ExtCard:
    return _VALUE_OF[a.family.base](A, a.p, a.n)


def compare(value: ExtCard, family: Family, k: int) -> bool:
    """``value > k`` for Gt families, ``value == k`` otherwise; omega > every k."""
    if family.strict:
        return value is OMEGA or value > k
    return value is not OMEGA and value == k


def eval_atom(a: InvariantAtom, A: SzmielewDescriptor) -> bool:
    return compare(atom_value(a, A), a.family, a.k)


def eval_sentence(s: Sentence, A: SzmielewDescriptor) -> bool:
    if isinstance(s, InvariantAtom):
        return eval_atom(s, A)
    if isinstance(s, Lit):
        return s.value
    if isinstance(s, Not):
        return not eval_sentence(s.child, A)
    if isinstance(s, And):
        return all(eval_sentence(c, A) for c in s.children)
    if isinstance(s, Or):
        return any(eval_sentence(c, A) for c in s.children)
    raise TypeError(f"not a sentence: {s!r}")


def eval_conjunction(atoms, A: SzmielewDescriptor) -> bool:
    return all(eval_atom(a, A) for a in atoms)
