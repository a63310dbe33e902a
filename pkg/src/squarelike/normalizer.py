"""Negation elimination, disjunctive normal form and Gamma level lifting."""

from __future__ import annotations

import itertools

from .core import (
    And,
    Conjunction,
    Family,
    InvariantAtom,
    Lit,
    Not,
    Or,
    Sentence,
    conj,
    dedupe,
    disj,
)


def negate_atom(a: InvariantAtom) -> Sentence:
    """Positive sentence equivalent to ``not a``.

    Every invariant value is a finite number or omega, so ``v != k`` is
    ``v > k or v in {0..k-1}`` and ``not v > k`` is ``v in {0..k}``.  Group
    orders are at least 1, which shifts the Delta disjuncts to start at 1.
    """
    eq = a.family.eq
    low = 1 if a.family.base == "Delta" else 0
    if a.family.strict:
        parts = [InvariantAtom(eq, a.p, a.n, j) for j in range(low, a.k + 1)]
    else:
        parts = [InvariantAtom(a.family.gt, a.p, a.n, a.k)]
        parts += [InvariantAtom(eq, a.p, a.n, j) for j in range(low, a.k)]
    return disj(parts)


def to_nnf(s: Sentence, negate: bool = False) -> Sentence:
    """Push negations down to atoms and eliminate them there."""
    if isinstance(s, InvariantAtom):
        return negate_atom(s) if negate else s
    if isinstance(s, Lit):
        return Lit(s.value != negate)
    if isinstance(s, Not):
        return to_nnf(s.child, not negate)
    if isinstance(s, And):
        kids = [to_nnf(c, negate) for c in s.children]
        return Or(kids) if negate else And(kids)
    if isinstance(s, Or):
        kids = [to_nnf(c, negate) for c in s.children]
        return And(kids) if negate else Or(kids)
    raise TypeError(f"not a sentence: {s!r}")


def _dnf(s: Sentence) -> list[Conjunction]:
    if isinstance(s, InvariantAtom):
        return [(s,)]
    if isinstance(s, Lit):
        return [()] if s.value else []
    if isinstance(s, Or):
        return _unique([c for child in s.children for c in _dnf(child)])
    if isinstance(s, And):
        out: list[Conjunction] = [()]
        for child in s.children:
            sub = _dnf(child)
            out = _unique([dedupe(x + y) for x, y in itertools.product(out, sub)])
            if not out:
                break
        return out
    raise TypeError(f"negation left in NNF: {s!r}")


def _unique(conjs: list[Conjunction]) -> list[Conjunction]:
    seen = set()
    out = []
    for c in conjs:
        key = frozenset(c)
        if key not in seen:
            seen.add(key)
            out.append(c)
    return out


def to_positive_dnf(s: Sentence) -> list[Conjunction]:
    """Equivalent list of atom conjunctions; ``[]`` is false, ``[()]`` is true."""
    return _dnf(to_nnf(s))


def dnf_sentence(conjs: list[Conjunction]) -> Sentence:
    """Rebuild a Sentence from a DNF list (mainly for equivalence checks)."""
    return disj(conj(c) for c in conjs)


def gamma_lift(c: Conjunction, p: int, n: int) -> list[Conjunction]:
    """Rewrite ``Gamma(p,k)=l`` conjuncts with ``k < n`` up to level ``n``.

    Uses ``Gamma(p,k)=l  <->  OR_{i<=l} (Gamma(p,k+1)=l-i & Phi(p,k)=i)``,
    always expanding the lowest offending level first; each step strictly
    decreases the sum of ``n - k`` over offending conjuncts.
    """
    if n < 0:
        raise ValueError("level must be non-negative")
    done: list[Conjunction] = []
    todo: list[Conjunction] = [dedupe(c)]
    while todo:
        cur = todo.pop(0)
        offending = [
            (a.n, i)
            for i, a in enumerate(cur)
            if a.family is Family.GAMMA_EQ and a.p == p and a.n < n
        ]
        if not offending:
            done.append(cur)
            continue
        _, idx = min(offending)
        g = cur[idx]
        head, tail = cur[:idx], cur[idx + 1 :]
        expanded = []
        for i in range(g.k + 1):
            repl = (
                InvariantAtom(Family.GAMMA_EQ, p, g.n + 1, g.k - i),
                InvariantAtom(Family.PHI_EQ, p, g.n, i),
            )
            expanded.append(dedupe(head + repl + tail))
        todo = expanded + todo
    return _unique(done)

