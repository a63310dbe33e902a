"""Concrete syntax for sentences and the JSON descriptor format.

Sentence grammar (whitespace-insensitive)::

    sentence := disj
    disj     := conj ('|' conj)*
    conj     := unary ('&' unary)*
    unary    := '!' unary | primary
    primary  := 'true' | 'false' | atom | '(' sentence ')'
    atom     := FAMILY '(' INT ',' INT ')' ('=' | '>') INT
    FAMILY   := 'Phi' | 'Theta' | 'Gamma' | 'Delta'

Chains of ``&`` (or ``|``) parse to a single flat And (Or) node.
"""

from __future__ import annotations

import json
import re
from typing import Any

from .core import (
    BASES,
    FALSE,
    OMEGA,
    TRUE,
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
    is_prime,
)


class ParseError(ValueError):
    def __init__(self, position: int, message: str) -> None:
        super().__init__(f"{message} (at offset {position})")
        self.position = position
        self.message = message


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<int>-?\d+)
  | (?P<word>[A-Za-z_]\w*)
  | (?P<op>[!&|()=>,])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(pos, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


class _SentenceParser:
    def __init__(self, text: str) -> None:
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str) -> None:
        kind, text, pos = self.take()
        if text != value or kind not in ("op",):
            shown = text or "end of input"
            raise ParseError(pos, f"expected {value!r}, found {shown!r}")

    def parse(self) -> Sentence:
        s = self.disj()
        kind, text, pos = self.peek()
        if kind != "eof":
            raise ParseError(pos, f"unexpected {text!r} after sentence")
        return s

    def disj(self) -> Sentence:
        parts = [self.conj()]
        while self.peek()[1] == "|":
            self.take()
            parts.append(self.conj())
        return parts[0] if len(parts) == 1 else Or(parts)

    def conj(self) -> Sentence:
        parts = [self.unary()]
        while self.peek()[1] == "&":
            self.take()
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else And(parts)

    def unary(self) -> Sentence:
        if self.peek()[1] == "!":
            self.take()
            return Not(self.unary())
        return self.primary()

    def primary(self) -> Sentence:
        kind, text, pos = self.peek()
        if text == "(":
            self.take()
            s = self.disj()
            self.expect(")")
            return s
        if kind == "word":
            if text == "true":
                self.take()
                return TRUE
            if text == "false":
                self.take()
                return FALSE
            if text in BASES:
                return self.atom()
            raise ParseError(pos, f"unknown family {text!r}")
        shown = text or "end of input"
        raise ParseError(pos, f"expected a sentence, found {shown!r}")

    def integer(self, what: str) -> tuple[int, int]:
        kind, text, pos = self.take()
        if kind != "int":
            shown = text or "end of input"
            raise ParseError(pos, f"expected {what}, found {shown!r}")
        value = int(text)
        if value < 0:
            raise ParseError(pos, f"{what} must be non-negative")
        return value, pos

    def atom(self) -> InvariantAtom:
        _, base, start = self.take()
        self.expect("(")
        p, ppos = self.integer("prime")
        if not is_prime(p):
            raise ParseError(ppos, f"{p} is not a prime")
        self.expect(",")
        n, _ = self.integer("level")
        self.expect(")")
        kind, rel, rpos = self.take()
        if rel not in ("=", ">"):
            raise ParseError(rpos, f"expected '=' or '>', found {rel or 'end of input'!r}")
        k, kpos = self.integer("bound")
        if base == "Delta" and rel == "=" and k == 0:
            raise ParseError(kpos, "Delta(p,n)=0 is unsatisfiable; a group has at least one element")
        return InvariantAtom(Family.of(base, rel == ">"), p, n, k)


def parse_sentence(text: str) -> Sentence:
    return _SentenceParser(text).parse()


def parse_atom(text: str) -> InvariantAtom:
    s = parse_sentence(text)
    if not isinstance(s, InvariantAtom):
        raise ParseError(0, "expected a single invariant atom")
    return s


def format_sentence(s: Sentence) -> str:
    """Text that :func:`parse_sentence` maps back to exactly ``s``."""
    if isinstance(s, InvariantAtom):
        return str(s)
    if isinstance(s, Lit):
        return str(s)
    if isinstance(s, Not):
        inner = format_sentence(s.child)
        if isinstance(s.child, (And, Or)):
            inner = f"({inner})"
        return "!" + inner
    if isinstance(s, And):
        return " & ".join(_wrap(c, (And, Or)) for c in s.children)
    if isinstance(s, Or):
        return " | ".join(_wrap(c, (Or,)) for c in s.children)
    raise TypeError(f"not a sentence: {s!r}")


def _wrap(s: Sentence, kinds: tuple) -> str:
    text = format_sentence(s)
    return f"({text})" if isinstance(s, kinds) else text


# --- descriptors ------------------------------------------------------------

_COMPONENT_KEYS = {"lambda", "mu", "kappa", "kappa_tail"}


def _card(value: Any, where: str) -> ExtCard:
    if value == "omega":
        return OMEGA
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(0, f"{where}: expected a non-negative integer or \"omega\", got {value!r}")
    if value < 0:
        raise ParseError(0, f"{where}: negative cardinal {value}")
    return value


def _int_key(key: str, where: str) -> int:
    if not re.fullmatch(r"\d+", key):
        raise ParseError(0, f"{where}: key {key!r} is not a non-negative integer")
    return int(key)


def descriptor_from_json(data: Any) -> SzmielewDescriptor:
    if not isinstance(data, dict):
        raise ParseError(0, "descriptor must be a JSON object")
    extra = set(data) - {"nu", "primes"}
    if extra:
        raise ParseError(0, f"unknown descriptor field(s): {', '.join(sorted(extra))}")
    nu = _card(data.get("nu", 0), "nu")
    primes = data.get("primes", {})
    if not isinstance(primes, dict):
        raise ParseError(0, "primes must be an object")
    comps = {}
    for key, body in primes.items():
        p = _int_key(key, "primes")
        if not is_prime(p):
            raise ParseError(0, f"primes: {p} is not a prime")
        if not isinstance(body, dict):
            raise ParseError(0, f"primes.{key} must be an object")
        extra = set(body) - _COMPONENT_KEYS
        if extra:
            raise ParseError(0, f"primes.{key}: unknown field(s): {', '.join(sorted(extra))}")
        kappa_raw = body.get("kappa", {})
        if not isinstance(kappa_raw, dict):
            raise ParseError(0, f"primes.{key}.kappa must be an object")
        kappa = {
            _int_key(lv, f"primes.{key}.kappa"): _card(v, f"primes.{key}.kappa.{lv}")
            for lv, v in kappa_raw.items()
        }
        comps[p] = PrimeComponent(
            kappa,
            _card(body.get("kappa_tail", 0), f"primes.{key}.kappa_tail"),
            _card(body.get("lambda", 0), f"primes.{key}.lambda"),
            _card(body.get("mu", 0), f"primes.{key}.mu"),
        )
    return SzmielewDescriptor(comps, nu)


def parse_descriptor(text: str) -> SzmielewDescriptor:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.pos, f"invalid JSON: {exc.msg}") from None
    return descriptor_from_json(data)


def _card_json(v: ExtCard):
    return "omega" if v is OMEGA else v


def descriptor_to_json(A: SzmielewDescriptor) -> dict:
    primes = {}
    for p, c in A.primes:
        body: dict[str, Any] = {}
        if c.kappa:
            body["kappa"] = {str(n): _card_json(v) for n, v in c.kappa}
        if c.kappa_tail != 0:
            body["kappa_tail"] = _card_json(c.kappa_tail)
        if c.lam != 0:
            body["lambda"] = _card_json(c.lam)
        if c.mu != 0:
            body["mu"] = _card_json(c.mu)
        primes[str(p)] = body
    out: dict[str, Any] = {"nu": _card_json(A.nu)}
    if primes:
        out["primes"] = primes
    return out


def format_descriptor(A: SzmielewDescriptor) -> str:
    return json.dumps(descriptor_to_json(A), sort_keys=True)
