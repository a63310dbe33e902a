"""Shared test helpers: a fast exhaustive oracle and a sentence generator."""

from __future__ import annotations

import itertools
import random
from math import gcd, prod

from squarelike.classifier import component_discriminating
from squarelike.core import (
    OMEGA,
    And,
    Family,
    InvariantAtom,
    Not,
    Or,
    PrimeComponent,
)
from squarelike.oracle import prime_components


def cap(v, limit):
    return OMEGA if v is OMEGA else min(v, limit)


def atoms_grid(primes, max_level, max_k):
    out = []
    for p in primes:
        for n in range(max_level + 1):
            for fam in Family:
                low = 1 if fam is Family.DELTA_EQ else 0
                out.extend(InvariantAtom(fam, p, n, k) for k in range(low, max_k + 1))
    return out


# --- invariant values straight from the definitions ---------------------------


def _upper_kappa_sum(c: PrimeComponent, n: int, max_level: int):
    if c.kappa_tail != 0:
        return OMEGA
    vals = [c.kappa_at(m) for m in range(n, max_level + 1)]
    return OMEGA if OMEGA in vals else sum(vals)


def _plus(a, b):
    return OMEGA if OMEGA in (a, b) else a + b


def local_values(c: PrimeComponent, max_level: int, limit: int):
    """(Phi, Theta, Gamma) at levels 0..max_level, capped at ``limit``."""
    out = []
    for n in range(max_level + 1):
        upper = _upper_kappa_sum(c, n, max_level)
        out.append(
            (cap(c.kappa_at(n), limit), cap(_plus(c.lam, upper), limit), cap(_plus(c.mu, upper), limit))
        )
    return tuple(out)


def delta_contribution(c: PrimeComponent, q: int, p: int, n: int, max_level: int, limit: int):
    """|p^n C| for the q-part C, capped, via |p^n Z(q^e)| = q^e / gcd(p^n, q^e)."""
    if c.lam != 0 or c.mu != 0 or c.kappa_tail != 0:
        return OMEGA
    total = 1
    for m in range(max_level + 1):
        e, mult = m + 1, c.kappa_at(m)
        size = q**e // gcd(p**n, q**e)
        if mult == 0 or size == 1:
            continue
        if mult is OMEGA:
            return OMEGA
        total = min(total * size**mult, limit)
    return total


class ExhaustiveOracle:
    """Satisfiability of atom conjunctions over a bounded descriptor grid.

    Descriptors are (c2, c3, nu).  Local atoms at q depend on c_q only and a
    Delta atom on the capped contributions of each component plus whether nu
    is zero, so the grid collapses to a few thousand truth masks.  Each atom
    gets a bitset over those masks; a conjunction is satisfiable on the grid
    iff the AND of its atoms' bitsets is nonzero.
    """

    def __init__(self, atoms, primes=(2, 3), max_level=2, values=(0, 1, 2, OMEGA),
                 tails=(0, 1), discriminating_only=True):
        self.atoms = list(atoms)
        self.primes = tuple(primes)
        self.index = {a: i for i, a in enumerate(self.atoms)}
        comps = list(prime_components(max_level, values, tails))
        if discriminating_only:
            comps = [c for c in comps if component_discriminating(c)]
        self.components = comps
        # values above every bound behave alike
        limit = max(a.k for a in self.atoms) + 1
        targets = [(p, n) for p in self.primes for n in range(max_level + 1)]

        # per prime: signature -> a representative component
        self.reps = {}
        sigs = {}
        for q in self.primes:
            table = {}
            for c in comps:
                loc = local_values(c, max_level, limit)
                dc = tuple(delta_contribution(c, q, p, n, max_level, limit) for p, n in targets)
                table.setdefault((loc, dc), c)
            sigs[q] = list(table)
            self.reps[q] = table

        local_atoms = {q: [a for a in self.atoms if a.p == q and a.family.base != "Delta"]
                       for q in self.primes}
        delta_atoms = [a for a in self.atoms if a.family.base == "Delta"]
        bases = {"Phi": 0, "Theta": 1, "Gamma": 2}

        def truth(value, a):
            if a.family.strict:
                return value is OMEGA or value > a.k
            return value is not OMEGA and value == a.k

        def local_mask(q, loc):
            m = 0
            for a in local_atoms[q]:
                if truth(loc[a.n][bases[a.family.base]], a):
                    m |= 1 << self.index[a]
            return m

        delta_cache = {}

        def delta_mask(dvals):
            m = delta_cache.get(dvals)
            if m is None:
                m = 0
                lookup = dict(zip(targets, dvals))
                for a in delta_atoms:
                    if truth(lookup[(a.p, a.n)], a):
                        m |= 1 << self.index[a]
                delta_cache[dvals] = m
            return m

        masks = {}
        lmasks = {q: [local_mask(q, loc) for loc, _ in sigs[q]] for q in self.primes}
        sig_lists = [list(enumerate(sigs[q])) for q in self.primes]
        for combo in itertools.product(*sig_lists):
            base = 0
            for q, (i, _) in zip(self.primes, combo):
                base |= lmasks[q][i]
            for nu_zero in (True, False):
                if nu_zero:
                    dvals = []
                    for t in range(len(targets)):
                        parts = [sig[1][t] for _, sig in combo]
                        dvals.append(OMEGA if OMEGA in parts else min(prod(parts), limit))
                    dvals = tuple(dvals)
                else:
                    dvals = (OMEGA,) * len(targets)
                m = base | delta_mask(dvals)
                if m not in masks:
                    nu = 0 if nu_zero else 1
                    masks[m] = (tuple(sig for _, sig in combo), nu)
        self.masks = list(masks)
        self.examples = [masks[m] for m in self.masks]
        self.bitsets = []
        for i in range(len(self.atoms)):
            bits = 0
            for j, m in enumerate(self.masks):
                if m >> i & 1:
                    bits |= 1 << j
            self.bitsets.append(bits)
        self._all = (1 << len(self.masks)) - 1

    def satisfiable(self, conj) -> bool:
        bits = self._all
        for a in conj:
            bits &= self.bitsets[self.index[a]]
            if not bits:
                return False
        return True

    def example(self, conj):
        """A grid descriptor (as components and nu) satisfying ``conj``, if any."""
        bits = self._all
        for a in conj:
            bits &= self.bitsets[self.index[a]]
        if not bits:
            return None
        j = (bits & -bits).bit_length() - 1
        sig_combo, nu = self.examples[j]
        comps = {q: self.reps[q][sig] for q, sig in zip(self.primes, sig_combo)}
        return comps, nu


# --- random sentences ---------------------------------------------------------


def random_atom(rng: random.Random, primes=(2, 3, 5), max_level=3, max_k=3) -> InvariantAtom:
    fam = rng.choice(list(Family))
    low = 1 if fam is Family.DELTA_EQ else 0
    return InvariantAtom(fam, rng.choice(primes), rng.randint(0, max_level), rng.randint(low, max_k))


def random_sentence(rng: random.Random, depth: int = 3, **kw):
    """Depth <= ``depth`` tree with binary And/Or, unary Not, atoms at leaves."""
    if depth == 0 or rng.random() < 0.3:
        return random_atom(rng, **kw)
    kind = rng.choice(("and", "or", "not"))
    if kind == "not":
        return Not(random_sentence(rng, depth - 1, **kw))
    kids = [random_sentence(rng, depth - 1, **kw) for _ in range(2)]
    return And(*kids) if kind == "and" else Or(*kids)


def sentence_corpus(seed: int = 20240611, size: int = 1000):
    rng = random.Random(seed)
    return [random_sentence(rng) for _ in range(size)]
