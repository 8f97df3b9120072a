"""Recursive-descent parser for algebra expressions.

Grammar (whitespace is ignored)::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | power
    power  := atom ('^' exponent)?
    exponent := INT | '(' '-'? INT ')' | '-' INT
    atom   := RATIONAL | 'q' | 'qq' | 'E' INT | 'F' INT | 'K' '[' INT (',' INT)* ']'
            | 'a' | 'b' | 'c' | 'd' | '(' expr ')'

``qq`` is q' = q^(1/d).  Generators are 1-based.  Negative powers are only
allowed on scalars and on K.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .scalars import QSpec
from .words import WordElement

__all__ = ["ParseError", "Poly", "parse", "parse_expression"]


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        pointer = f"\n  {text}\n  {' ' * pos}^" if text else ""
        super().__init__(f"{message} at position {pos}{pointer}")


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|(qq|[qEFKabcd])|([-+*^()\[\],]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start(1) if m.group(1) else m.start(2) if m.group(2) else m.start(3)
        if m.group(1):
            out.append(("num", m.group(1), start))
        elif m.group(2):
            out.append(("name", m.group(2), start))
        else:
            out.append(("op", m.group(3), start))
        pos = m.end()
    out.append(("end", "", n))
    return out


class Poly:
    """Noncommutative polynomial: dict word (tuple of letters) -> Fraction."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def const(cls, c):
        return cls({(): c})

    def is_scalar(self) -> bool:
        return all(w == () for w in self.terms)

    def scalar_value(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Poly(out)

    def __neg__(self):
        return Poly({k: -v for k, v in self.terms.items()})

    def __mul__(self, other):
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = _merge(w1, w2)
                out[w] = out.get(w, 0) + c1 * c2
        return Poly(out)

    def letters(self) -> set:
        return {a[0] for w in self.terms for a in w}


def _merge(w1: tuple, w2: tuple) -> tuple:
    # adjacent K letters are merged so K[..]^k stays a single letter
    if w1 and w2 and w1[-1][0] == "K" and w2[0][0] == "K":
        lam = tuple(x + y for x, y in zip(w1[-1][1], w2[0][1]))
        return w1[:-1] + (("K", lam),) + w2[1:]
    return w1 + w2


class _Parser:
    def __init__(self, text: str, rank: int | None, spec: QSpec | None):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.rank = rank
        self.spec = spec

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value: str):
        t = self.take()
        if t[1] != value or t[0] == "end":
            raise ParseError(f"expected {value!r}, found {t[1] or 'end of input'!r}", t[2], self.text)
        return t

    def parse(self) -> Poly:
        out = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError(f"unexpected {t[1]!r}", t[2], self.text)
        return out

    def expr(self) -> Poly:
        out = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            out = out + (rhs if op == "+" else -rhs)
        return out

    def term(self) -> Poly:
        out = self.unary()
        while self.peek() == ("op", "*", self.peek()[2]):
            self.take()
            out = out * self.unary()
        return out

    def unary(self) -> Poly:
        t = self.peek()
        if t[0] == "op" and t[1] == "-":
            self.take()
            return -self.unary()
        return self.power()

    def exponent(self) -> int:
        t = self.take()
        if t[0] == "num" and "/" not in t[1]:
            return int(t[1])
        if t[1] == "-":
            u = self.take()
            if u[0] != "num" or "/" in u[1]:
                raise ParseError("expected an integer exponent", u[2], self.text)
            return -int(u[1])
        if t[1] == "(":
            neg = False
            if self.peek()[1] == "-":
                self.take()
                neg = True
            u = self.take()
            if u[0] != "num" or "/" in u[1]:
                raise ParseError("expected an integer exponent", u[2], self.text)
            self.expect(")")
            return -int(u[1]) if neg else int(u[1])
        raise ParseError("expected an integer exponent", t[2], self.text)

    def power(self) -> Poly:
        start = self.peek()[2]
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            k = self.exponent()
            if base.is_scalar():
                v = base.scalar_value()
                if v == 0 and k < 0:
                    raise ParseError("zero to a negative power", start, self.text)
                return Poly.const(v**k)
            if len(base.terms) == 1:
                (w, c), = base.terms.items()
                if len(w) == 1 and w[0][0] == "K":
                    lam = tuple(k * x for x in w[0][1])
                    return Poly({(("K", lam),): c**k if k >= 0 else 1 / c**(-k)})
            if k < 0:
                raise ParseError("negative powers are only defined for scalars and K", start, self.text)
            out = Poly.const(1)
            for _ in range(k):
                out = out * base
            return out
        return base

    def _index(self, t) -> int:
        u = self.take()
        if u[0] != "num" or "/" in u[1]:
            raise ParseError(f"expected a generator index after {t[1]}", u[2], self.text)
        idx = int(u[1])
        if idx < 1 or (self.rank is not None and idx > self.rank):
            raise ParseError(f"unknown generator {t[1]}{idx} (rank {self.rank})", t[2], self.text)
        return idx - 1

    def atom(self) -> Poly:
        t = self.take()
        kind, val, pos = t
        if kind == "num":
            return Poly.const(Fraction(val))
        if kind == "op" and val == "(":
            out = self.expr()
            self.expect(")")
            return out
        if kind == "name":
            if val in ("q", "qq"):
                if self.spec is None:
                    raise ParseError(f"{val} needs a q-specialization", pos, self.text)
                return Poly.const(self.spec.q if val == "q" else self.spec.qprime)
            if val in ("E", "F"):
                # whitespace is ignored, so "E 1" is E1 and "E12" is the twelfth generator
                return Poly({((val, self._index(t)),): 1})
            if val == "K":
                self.expect("[")
                coords = []
                while True:
                    neg = False
                    if self.peek()[1] == "-":
                        self.take()
                        neg = True
                    u = self.take()
                    if u[0] != "num" or "/" in u[1]:
                        raise ParseError("expected an integer weight coordinate", u[2], self.text)
                    coords.append(-int(u[1]) if neg else int(u[1]))
                    sep = self.take()
                    if sep[1] == "]":
                        break
                    if sep[1] != ",":
                        raise ParseError("expected ',' or ']'", sep[2], self.text)
                if self.rank is not None and len(coords) != self.rank:
                    raise ParseError(f"K needs {self.rank} coordinates, got {len(coords)}", pos, self.text)
                return Poly({(("K", tuple(coords)),): 1})
            return Poly({((val,),): 1})
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos, self.text)


def parse(text: str, rank: int | None = None, spec: QSpec | None = None) -> Poly:
    return _Parser(text, rank, spec).parse()


def parse_expression(text: str, rank: int | None = None, spec: QSpec | None = None, oq_ring=None):
    """Parse into a WordElement (E/F/K letters) or, for a/b/c/d letters, an O_q(SL_2) element.

    Passing ``oq_ring`` also lowers letter-free expressions into that ring.
    """
    poly = parse(text, rank, spec)
    letters = poly.letters()
    if letters & set("abcd") or (oq_ring is not None and not letters):
        if letters - set("abcd"):
            raise ParseError("cannot mix a, b, c, d with E, F, K", 0, text)
        from .oqsl2 import OqSL2

        if oq_ring is None:
            oq_ring = OqSL2(QSpec(spec.p, 2, spec.qprime) if spec is not None else None)
        ring = oq_ring
        out = ring.zero()
        for w, c in poly.terms.items():
            out = out + ring.normal_form("".join(a[0] for a in w)).scale(c)
        return out
    out: dict = {}
    for w, c in poly.terms.items():
        key = tuple(_drop_zero_k(w))
        out[key] = out.get(key, 0) + c
    return WordElement(out)


def _drop_zero_k(w):
    return [a for a in w if not (a[0] == "K" and not any(a[1]))]
