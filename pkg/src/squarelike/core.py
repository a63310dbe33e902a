"""Domain types: cardinals up to omega, invariant sentences, Szmielew descriptors.

A Szmielew group is a direct sum, over primes p, of

    Z(p^(n+1))^(kappa[p, n])  for n >= 0,
    Z(p^inf)^(lambda[p]),
    Z_(p)^(mu[p]),

together with Q^(nu).  Multiplicities are cardinals <= omega.

Indexing convention: ``kappa[p, n]`` is the multiplicity of the cyclic
summand of order ``p**(n + 1)``.  With this convention ``Phi(p, n) = k``
holds exactly when ``kappa[p, n] == k``, and the set of exponents of cyclic
p-summands present is ``I_p = {n + 1 : kappa[p, n] > 0}``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from operator import itemgetter
from typing import Iterable, Mapping, NamedTuple, Optional, Union

from sympy import isprime as _sympy_isprime


class _Omega:
    """The first infinite cardinal.  Absorbs addition, exceeds every integer."""

    __slots__ = ()
    _instance: Optional["_Omega"] = None

    def __new__(cls) -> "_Omega":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "omega"

    __str__ = __repr__

    def __reduce__(self):
        return (_Omega, ())

    def __hash__(self) -> int:
        return hash("omega")

    def __eq__(self, other: object) -> bool:
        return other is self

    def __ne__(self, other: object) -> bool:
        return other is not self

    def __lt__(self, other: object) -> bool:
        if other is self or _is_finite(other):
            return False
        return NotImplemented

    def __le__(self, other: object) -> bool:
        if other is self:
            return True
        if _is_finite(other):
            return False
        return NotImplemented

    def __gt__(self, other: object) -> bool:
        if other is self:
            return False
        if _is_finite(other):
            return True
        return NotImplemented

    def __ge__(self, other: object) -> bool:
        if other is self or _is_finite(other):
            return True
        return NotImplemented

    def __add__(self, other: object) -> "_Omega":
        if other is self or _is_finite(other):
            return self
        return NotImplemented

    __radd__ = __add__


OMEGA = _Omega()

ExtCard = Union[int, _Omega]


_first = itemgetter(0)


def _is_finite(x: object) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def is_card(x: object) -> bool:
    return x is OMEGA or (_is_finite(x) and x >= 0)


def check_card(x: object, what: str = "cardinal") -> ExtCard:
    if not is_card(x):
        raise ValueError(f"{what} must be a non-negative integer or omega, got {x!r}")
    return x  # type: ignore[return-value]


def ext_add(a: ExtCard, b: ExtCard) -> ExtCard:
    """Exact sum of two cardinals <= omega."""
    if a is OMEGA or b is OMEGA:
        return OMEGA
    return a + b


def ext_sum(values: Iterable[ExtCard]) -> ExtCard:
    total: ExtCard = 0
    for v in values:
        if v is OMEGA:
            return OMEGA
        total += v
    return total


@lru_cache(maxsize=4096)
def is_prime(p: int) -> bool:
    return _is_finite(p) and bool(_sympy_isprime(p))


class Family(enum.Enum):
    """The eight invariant-sentence families.

    ``Eq`` families assert ``value == k``; ``Gt`` families assert ``value > k``.
    """

    PHI_EQ = "PhiEq"
    PHI_GT = "PhiGt"
    THETA_EQ = "ThetaEq"
    THETA_GT = "ThetaGt"
    GAMMA_EQ = "GammaEq"
    GAMMA_GT = "GammaGt"
    DELTA_EQ = "DeltaEq"
    DELTA_GT = "DeltaGt"

    @property
    def base(self) -> str:
        return self.value[:-2]

    @property
    def strict(self) -> bool:
        return self.value.endswith("Gt")

    @property
    def eq(self) -> "Family":
        return _FAMILY_BY_PARTS[self.base, False]

    @property
    def gt(self) -> "Family":
        return _FAMILY_BY_PARTS[self.base, True]

    @classmethod
    def of(cls, base: str, strict: bool) -> "Family":
        return _FAMILY_BY_PARTS[base, strict]


_FAMILY_BY_PARTS = {(f.value[:-2], f.value.endswith("Gt")): f for f in Family}
_FAMILY_ORDER = {f: i for i, f in enumerate(Family)}

BASES = ("Phi", "Theta", "Gamma", "Delta")


@dataclass(frozen=True)
class InvariantAtom:
    """One Szmielew invariant sentence, e.g. ``Phi(p, n) = k`` or ``Delta(p, n) > k``."""

    family: Family
    p: int
    n: int
    k: int

    def __post_init__(self) -> None:
        if not isinstance(self.family, Family):
            raise ValueError(f"unknown family {self.family!r}")
        if not is_prime(self.p):
            raise ValueError(f"{self.p!r} is not a prime")
        if not _is_finite(self.n) or self.n < 0:
            raise ValueError(f"level must be a non-negative integer, got {self.n!r}")
        if not _is_finite(self.k) or self.k < 0:
            raise ValueError(f"bound must be a non-negative integer, got {self.k!r}")
        if self.family is Family.DELTA_EQ and self.k < 1:
            raise ValueError("Delta(p,n)=0 is unsatisfiable: every group has an element")

    def __str__(self) -> str:
        rel = ">" if self.family.strict else "="
        return f"{self.family.base}({self.p},{self.n}){rel}{self.k}"

    def sort_key(self) -> tuple:
        return (self.p, self.n, _FAMILY_ORDER[self.family], self.k)


def atom(base: str, p: int, n: int, rel: str, k: int) -> InvariantAtom:
    """Shorthand: ``atom("Phi", 2, 0, "=", 1)``."""
    if rel not in ("=", ">"):
        raise ValueError(f"relation must be '=' or '>', got {rel!r}")
    return InvariantAtom(Family.of(base, rel == ">"), p, n, k)


# --- Boolean structure -----------------------------------------------------


@dataclass(frozen=True)
class Lit:
    value: bool

    def __str__(self) -> str:
        return "true" if self.value else "false"


TRUE = Lit(True)
FALSE = Lit(False)


@dataclass(frozen=True)
class Not:
    child: "Sentence"


@dataclass(frozen=True)
class And:
    children: tuple

    def __init__(self, *children: "Sentence") -> None:
        if len(children) == 1 and isinstance(children[0], (list, tuple)):
            children = tuple(children[0])
        if len(children) < 2:
            raise ValueError("And needs at least two children")
        object.__setattr__(self, "children", tuple(children))


@dataclass(frozen=True)
class Or:
    children: tuple

    def __init__(self, *children: "Sentence") -> None:
        if len(children) == 1 and isinstance(children[0], (list, tuple)):
            children = tuple(children[0])
        if len(children) < 2:
            raise ValueError("Or needs at least two children")
        object.__setattr__(self, "children", tuple(children))


Sentence = Union[InvariantAtom, Lit, Not, And, Or]

# A conjunction of atoms, no Boolean structure.  The empty tuple is "true".
Conjunction = tuple


def conj(parts: Iterable[Sentence]) -> Sentence:
    """And over ``parts``, collapsing the 0- and 1-element cases."""
    parts = tuple(parts)
    if not parts:
        return TRUE
    return parts[0] if len(parts) == 1 else And(parts)


def disj(parts: Iterable[Sentence]) -> Sentence:
    parts = tuple(parts)
    if not parts:
        return FALSE
    return parts[0] if len(parts) == 1 else Or(parts)


def dedupe(atoms: Iterable[InvariantAtom]) -> Conjunction:
    """Drop repeated atoms, keeping first occurrences in order."""
    return tuple(dict.fromkeys(atoms))


def canonical(atoms: Iterable[InvariantAtom]) -> Conjunction:
    return tuple(sorted(set(atoms), key=InvariantAtom.sort_key))


def atoms_of(s: Sentence) -> Iterable[InvariantAtom]:
    if isinstance(s, InvariantAtom):
        yield s
    elif isinstance(s, Not):
        yield from atoms_of(s.child)
    elif isinstance(s, (And, Or)):
        for c in s.children:
            yield from atoms_of(c)


# --- Szmielew descriptors --------------------------------------------------


def _canonical_kappa(
    exceptions: Mapping[int, ExtCard], tail: ExtCard
) -> tuple[tuple[int, ExtCard], ...]:
    """Unique exception map for an eventually-constant kappa profile.

    The profile reads ``exceptions[n]`` where present, ``tail`` above the
    largest key, and 0 at unmapped levels below it.  Trailing entries equal to
    the tail are redundant; interior zeros are implicit except at the largest
    key, which must stay to pin where the tail begins.
    """
    if not exceptions:
        return ()
    top = max(exceptions)
    values = [exceptions.get(n, 0) for n in range(top + 1)]
    while values and values[-1] == tail:
        values.pop()
    if not values:
        return ()
    last = len(values) - 1
    out = [(n, v) for n, v in enumerate(values[:last]) if v != 0]
    out.append((last, values[last]))
    return tuple(out)


def _items(x):
    items = getattr(x, "items", None)
    return items() if items is not None else x


@dataclass(frozen=True)
class PrimeComponent:
    """The p-primary part of a Szmielew group plus its Z_(p) summands.

    ``kappa`` accepts a mapping level -> cardinal and is stored canonically as
    sorted ``(level, value)`` pairs; ``lam`` is the Pruefer multiplicity and
    ``mu`` the Z_(p) multiplicity.
    """

    kappa: tuple = ()
    kappa_tail: ExtCard = 0
    lam: ExtCard = 0
    mu: ExtCard = 0
    _lookup: dict = field(default=None, init=False, repr=False, compare=False)  # type: ignore[assignment]
    _hash: int = field(default=0, init=False, repr=False, compare=False)
    _zero: bool = field(default=False, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        raw = dict(_items(self.kappa))
        for n, v in raw.items():
            if not _is_finite(n) or n < 0:
                raise ValueError(f"kappa level must be a non-negative integer, got {n!r}")
            check_card(v, f"kappa[{n}]")
        check_card(self.kappa_tail, "kappa_tail")
        check_card(self.lam, "lambda")
        check_card(self.mu, "mu")
        canon = _canonical_kappa(raw, self.kappa_tail)
        object.__setattr__(self, "kappa", canon)
        object.__setattr__(self, "_lookup", dict(canon))
        object.__setattr__(
            self, "_hash", hash((canon, self.kappa_tail, self.lam, self.mu))
        )
        object.__setattr__(
            self,
            "_zero",
            not canon and self.kappa_tail == 0 and self.lam == 0 and self.mu == 0,
        )

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if other.__class__ is not PrimeComponent:
            return NotImplemented
        return self._hash == other._hash and (
            self.kappa, self.kappa_tail, self.lam, self.mu
        ) == (other.kappa, other.kappa_tail, other.lam, other.mu)

    @classmethod
    def from_profile(
        cls,
        values: Iterable[ExtCard],
        tail: ExtCard = 0,
        lam: ExtCard = 0,
        mu: ExtCard = 0,
    ) -> "PrimeComponent":
        """Component with ``kappa[n] = values[n]`` for listed levels, ``tail`` above."""
        return cls(dict(enumerate(values)), tail, lam, mu)

    @property
    def kappa_exceptions(self) -> dict:
        return dict(self._lookup)

    @property
    def top(self) -> int:
        """Largest exception key, or -1 when there are none."""
        return self.kappa[-1][0] if self.kappa else -1

    def kappa_at(self, n: int) -> ExtCard:
        v = self._lookup.get(n)
        if v is not None:
            return v
        return self.kappa_tail if n > self.top else 0

    @property
    def is_zero(self) -> bool:
        return self._zero

    def replace(self, **changes) -> "PrimeComponent":
        if "kappa" not in changes:
            changes["kappa"] = self._lookup
        base = dict(kappa_tail=self.kappa_tail, lam=self.lam, mu=self.mu)
        base.update(changes)
        return PrimeComponent(**base)


ZERO_COMPONENT = PrimeComponent()


@dataclass(frozen=True, init=False)
class SzmielewDescriptor:
    """A finitely representable Szmielew group.

    ``primes`` accepts a mapping prime -> PrimeComponent; it is stored as a
    sorted tuple with all-zero components dropped, so equal groups compare
    equal.  The empty descriptor with ``nu == 0`` is the trivial group.
    """

    primes: tuple = ()
    nu: ExtCard = 0

    def __init__(self, primes: Union[tuple, Mapping] = (), nu: ExtCard = 0) -> None:
        items = primes if primes.__class__ is tuple else tuple(_items(primes))
        canon = self._canonical(items) if items else ()
        if canon is None:
            canon = self._canonical(sorted(items, key=_first))
            if canon is None:
                raise ValueError("duplicate prime in descriptor")
        if nu is not OMEGA and not (nu.__class__ is int and nu >= 0):
            check_card(nu, "nu")
        setter = object.__setattr__
        setter(self, "primes", canon)
        setter(self, "nu", nu)
        setter(self, "_lookup", dict(canon))
        setter(self, "_hash", None)

    @classmethod
    def _trusted(cls, canon: tuple, nu: ExtCard) -> "SzmielewDescriptor":
        # caller guarantees: sorted distinct primes, nonzero components, valid nu
        self = object.__new__(cls)
        setter = object.__setattr__
        setter(self, "primes", canon)
        setter(self, "nu", nu)
        setter(self, "_lookup", dict(canon))
        setter(self, "_hash", None)
        return self

    @staticmethod
    def _canonical(items) -> Optional[tuple]:
        # None when primes are not strictly increasing
        canon = []
        last = 0
        for p, comp in items:
            if comp.__class__ is not PrimeComponent:
                raise ValueError(f"component at {p} must be a PrimeComponent")
            if not is_prime(p):
                raise ValueError(f"{p!r} is not a prime")
            if p <= last:
                return None
            last = p
            if not comp._zero:
                canon.append((p, comp))
        return tuple(canon)

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.primes, self.nu))
            object.__setattr__(self, "_hash", h)
        return h

    def component(self, p: int) -> PrimeComponent:
        return self._lookup.get(p, ZERO_COMPONENT)

    @property
    def support(self) -> tuple:
        return tuple(p for p, _ in self.primes)

    def with_component(self, p: int, comp: PrimeComponent) -> "SzmielewDescriptor":
        new = dict(self._lookup)
        new[p] = comp
        return SzmielewDescriptor(new, self.nu)

    def restrict(self, p: int, keep_nu: bool = True) -> "SzmielewDescriptor":
        """The p-Szmielew part: the component at ``p`` and, optionally, Q^(nu)."""
        return SzmielewDescriptor({p: self.component(p)}, self.nu if keep_nu else 0)

    def __str__(self) -> str:
        parts = []
        for p, c in self.primes:
            for n, v in c.kappa:
                if v != 0:
                    parts.append(f"Z({p}^{n + 1})^({v})")
            if c.kappa_tail != 0:
                parts.append(f"[Z({p}^m)^({c.kappa_tail}) for m>{c.top + 1}]")
            if c.lam != 0:
                parts.append(f"Z({p}^inf)^({c.lam})")
            if c.mu != 0:
                parts.append(f"Z_({p})^({c.mu})")
        if self.nu != 0:
            parts.append(f"Q^({self.nu})")
        return " + ".join(parts) if parts else "0"


ZERO = SzmielewDescriptor()


def direct_sum(*groups: SzmielewDescriptor) -> SzmielewDescriptor:
    """Direct sum of descriptors: multiplicities add pointwise."""
    comps: dict[int, PrimeComponent] = {}
    nu: ExtCard = 0
    for g in groups:
        nu = ext_add(nu, g.nu)
        for p, c in g.primes:
            comps[p] = _add_components(comps[p], c) if p in comps else c
    return SzmielewDescriptor(comps, nu)


def _add_components(a: PrimeComponent, b: PrimeComponent) -> PrimeComponent:
    top = max(a.top, b.top)
    kappa = {n: ext_add(a.kappa_at(n), b.kappa_at(n)) for n in range(top + 1)}
    return PrimeComponent(
        kappa,
        ext_add(a.kappa_tail, b.kappa_tail),
        ext_add(a.lam, b.lam),
        ext_add(a.mu, b.mu),
    )


# --- profile queries -------------------------------------------------------


def tail_sum(c: PrimeComponent, n: int) -> ExtCard:
    """Sum of ``kappa[m]`` over all levels ``m >= n``."""
    if n < 0:
        raise ValueError("level must be non-negative")
    if c.kappa_tail != 0:
        return OMEGA
    return ext_sum(v for m, v in c.kappa if m >= n)


class IpInfo(NamedTuple):
    ip_empty: bool
    ip_finite: bool
    lp: Optional[int]


def ip_info(c: PrimeComponent) -> IpInfo:
    """Shape of ``I_p``; ``lp`` is its maximum when finite and non-empty."""
    if c.kappa_tail != 0:
        return IpInfo(False, False, None)
    occupied = [m for m, v in c.kappa if v != 0]
    if not occupied:
        return IpInfo(True, True, None)
    return IpInfo(False, True, max(occupied) + 1)
