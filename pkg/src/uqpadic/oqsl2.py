"""The quantized coordinate ring O_q(SL_2) on generators a, b, c, d.

Relations: ab = q ba, ac = q ca, bd = q db, cd = q dc, bc = cb,
ad - da = (q - q^-1) bc and ad - q bc = 1.  Normal monomials are
a^l b^m c^s and b^m c^s d^t (t > 0); internally both are keys (l, m, s, t)
with l * t = 0.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .linalg import axpy
from .scalars import INF, QSpec, format_scalar, valuation

__all__ = [
    "OqSL2",
    "OqElement",
    "OqTensor",
    "oq_normal_form",
    "oq_multiply",
    "oq_coproduct",
    "oq_counit",
    "oq_antipode",
    "oq_log_norm",
    "rewrite_randomly",
]

LETTERS = "abcd"
_ONE = (0, 0, 0, 0)


class OqSL2:
    """Context holding q; by default the A1 value q = q'^2 with q' = 1 + p."""

    def __init__(self, spec: QSpec | None = None, q=None):
        self.spec = spec if spec is not None else QSpec(p=5, d=2)
        self.q = Fraction(q) if q is not None else self.spec.q
        self.p = self.spec.p
        self._times_memo: dict = {}
        self._delta_memo: dict = {}

    # -- construction ------------------------------------------------------------
    def element(self, terms) -> "OqElement":
        return OqElement(self, terms)

    def one(self) -> "OqElement":
        return OqElement(self, {_ONE: 1})

    def zero(self) -> "OqElement":
        return OqElement(self, {})

    def gen(self, x: str) -> "OqElement":
        return OqElement(self, {_letter_key(x): 1})

    # -- right multiplication by a generator -----------------------------------------
    def times_letter(self, key, x: str) -> dict:
        memo = self._times_memo.get((key, x))
        if memo is not None:
            return memo
        l, m, s, t = key
        q = self.q
        if x == "a":
            if t == 0:
                out = {(l + 1, m, s, 0): q ** -(m + s)}
            else:
                # d^t a = d^{t-1}(1 + q^-1 bc) and d^{t-1} bc = q^{-2(t-1)} bc d^{t-1}
                out = {(0, m, s, t - 1): Fraction(1)}
                axpy(out, q ** (-1 - 2 * (t - 1)), {(0, m + 1, s + 1, t - 1): Fraction(1)})
        elif x == "b":
            out = {(l, m + 1, s, t): q**-t}
        elif x == "c":
            out = {(l, m, s + 1, t): q**-t}
        elif x == "d":
            if l == 0:
                out = {(0, m, s, t + 1): Fraction(1)}
            else:
                # b^m c^s d = q^{m+s} d b^m c^s and a d = 1 + q bc
                f = q ** (m + s)
                out = {(l - 1, m, s, 0): f}
                axpy(out, f * q, {(l - 1, m + 1, s + 1, 0): Fraction(1)})
        else:
            raise ValueError(f"unknown generator {x!r}")
        self._times_memo[(key, x)] = out
        return out

    def normal_form(self, word: str) -> "OqElement":
        cur = {_ONE: Fraction(1)}
        for x in word:
            if x.isspace() or x == "*":
                continue
            nxt: dict = {}
            for k, c in cur.items():
                axpy(nxt, c, self.times_letter(k, x))
            cur = nxt
        return OqElement._raw(self, cur)

    def multiply(self, x: "OqElement", y: "OqElement") -> "OqElement":
        out: dict = {}
        for k2, c2 in y.terms.items():
            w = key_to_word(k2)
            for k1, c1 in x.terms.items():
                cur = {k1: c1 * c2}
                for letter in w:
                    nxt: dict = {}
                    for k, c in cur.items():
                        axpy(nxt, c, self.times_letter(k, letter))
                    cur = nxt
                axpy(out, 1, cur)
        return OqElement._raw(self, out)

    # -- Hopf structure ----------------------------------------------------------------
    def _gen_delta(self, x: str) -> "OqTensor":
        a, b, c, d = (_letter_key(y) for y in LETTERS)
        table = {
            "a": {(a, a): 1, (b, c): 1},
            "b": {(a, b): 1, (b, d): 1},
            "c": {(c, a): 1, (d, c): 1},
            "d": {(c, b): 1, (d, d): 1},
        }
        return OqTensor(self, table[x])

    def coproduct(self, x: "OqElement") -> "OqTensor":
        out = OqTensor(self, {})
        for k, c in x.terms.items():
            memo = self._delta_memo.get(k)
            if memo is None:
                memo = OqTensor(self, {(_ONE, _ONE): 1})
                for letter in key_to_word(k):
                    memo = memo * self._gen_delta(letter)
                self._delta_memo[k] = memo
            out = out + memo.scale(c)
        return out

    def counit(self, x: "OqElement") -> Fraction:
        total = Fraction(0)
        for (l, m, s, t), c in x.terms.items():
            if m == 0 and s == 0:
                total += c
        return total

    def antipode_gen(self, x: str) -> "OqElement":
        q = self.q
        table = {"a": ("d", 1), "d": ("a", 1), "b": ("b", -1 / q), "c": ("c", -q)}
        y, c = table[x]
        return OqElement(self, {_letter_key(y): c})

    def antipode(self, x: "OqElement") -> "OqElement":
        out = self.zero()
        for k, c in x.terms.items():
            acc = self.one()
            for letter in key_to_word(k):
                acc = self.antipode_gen(letter) * acc
            out = out + acc.scale(c)
        return out

    def log_norm(self, x: "OqElement", n: int):
        best = -INF
        for k, c in x.terms.items():
            v = n * sum(k) - valuation(c, self.p)
            if v > best:
                best = v
        return best

    def delta_slack(self, x: "OqElement", n: int):
        """log_norm(x, 2n) minus the largest level-n weight of a tensor term of Delta(x).

        Non-negative slack certifies that Delta sends x, rescaled into level 2n, into the
        level-n lattice on both legs.
        """
        worst = -INF
        for (u, w), c in self.coproduct(x).terms.items():
            worst = max(worst, n * (sum(u) + sum(w)) - valuation(c, self.p))
        return self.log_norm(x, 2 * n) - worst

    def monomials(self, max_degree: int) -> list[tuple]:
        """Normal basis keys (l, m, s, t), l*t = 0, of degree <= max_degree."""
        out = []
        for m in range(max_degree + 1):
            for s in range(max_degree + 1 - m):
                rest = max_degree - m - s
                out += [(l, m, s, 0) for l in range(rest + 1)]
                out += [(0, m, s, t) for t in range(1, rest + 1)]
        return sorted(out)


def _letter_key(x: str) -> tuple:
    return {"a": (1, 0, 0, 0), "b": (0, 1, 0, 0), "c": (0, 0, 1, 0), "d": (0, 0, 0, 1)}[x]


def key_to_word(key) -> str:
    l, m, s, t = key
    return "a" * l + "b" * m + "c" * s + "d" * t


def monomial_json(key) -> dict:
    l, m, s, t = key
    if t:
        return {"kind": "d", "exps": [m, s, t]}
    return {"kind": "a", "exps": [l, m, s]}


def monomial_from_json(data) -> tuple:
    e = data["exps"]
    if data["kind"] == "d":
        if e[2] <= 0:
            raise ValueError("d-monomials need a positive d exponent")
        return (0, e[0], e[1], e[2])
    return (e[0], e[1], e[2], 0)


class OqElement:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: OqSL2, terms=None):
        self.ring = ring
        self.terms = {}
        for k, c in (terms or {}).items():
            k = tuple(k)
            if len(k) != 4 or (k[0] and k[3]) or min(k) < 0:
                raise ValueError(f"{k} is not a normal monomial")
            c = Fraction(c)
            if c:
                self.terms[k] = c

    @classmethod
    def _raw(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring, obj.terms = ring, terms
        return obj

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.one().scale(other)
        return isinstance(other, OqElement) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if not isinstance(other, OqElement):
            other = self.ring.one().scale(other)
        out = dict(self.terms)
        axpy(out, 1, other.terms)
        return OqElement._raw(self.ring, out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, OqElement):
            other = self.ring.one().scale(other)
        out = dict(self.terms)
        axpy(out, -1, other.terms)
        return OqElement._raw(self.ring, out)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        return OqElement._raw(self.ring, {k: v * c for k, v in self.terms.items()} if c else {})

    def __mul__(self, other):
        if isinstance(other, OqElement):
            return self.ring.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def degree(self) -> int:
        return max((sum(k) for k in self.terms), default=0)

    def to_json(self) -> list:
        return [dict(monomial_json(k), coeff=format_scalar(c)) for k, c in sorted(self.terms.items())]

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{key_to_word(k) or '1'}" for k, c in sorted(self.terms.items()))


class OqTensor:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: OqSL2, terms=None):
        self.ring = ring
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}

    def __eq__(self, other):
        return isinstance(other, OqTensor) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        axpy(out, 1, other.terms)
        return OqTensor(self.ring, out)

    def scale(self, c):
        return OqTensor(self.ring, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        R = self.ring
        out: dict = {}
        for (a, b), c1 in self.terms.items():
            for (x, y), c2 in other.terms.items():
                left = R.multiply(OqElement._raw(R, {a: Fraction(1)}), OqElement._raw(R, {x: Fraction(1)}))
                right = R.multiply(OqElement._raw(R, {b: Fraction(1)}), OqElement._raw(R, {y: Fraction(1)}))
                for l, cl in left.terms.items():
                    for r, cr in right.terms.items():
                        axpy(out, 1, {(l, r): c1 * c2 * cl * cr})
        return OqTensor(R, out)

    def contract(self, f, g) -> OqElement:
        R = self.ring
        out = R.zero()
        for (a, b), c in self.terms.items():
            out = out + (f(OqElement._raw(R, {a: Fraction(1)})) * g(OqElement._raw(R, {b: Fraction(1)}))).scale(c)
        return out

    def __repr__(self):
        return f"OqTensor({len(self.terms)} terms)"


# -- rewriting with a chosen redex order (confluence checks) -----------------------------

_PAIR_RULES = {
    "ba": lambda q: [(-1, "ab")],
    "ca": lambda q: [(-1, "ac")],
    "cb": lambda q: [(0, "bc")],
    "db": lambda q: [(-1, "bd")],
    "dc": lambda q: [(-1, "cd")],
    "da": lambda q: [(None, ""), (-1, "bc")],
}


def _redexes(w: str) -> list[tuple[int, int]]:
    """(start, end) spans that some rule can rewrite."""
    out = []
    for i in range(len(w) - 1):
        if w[i:i + 2] in _PAIR_RULES:
            out.append((i, i + 2))
    for i, x in enumerate(w):
        if x != "a":
            continue
        j = i + 1
        while j < len(w) and w[j] in "bc":
            j += 1
        if j < len(w) and w[j] == "d":
            out.append((i, j + 1))
    return out


def _apply_rule(w: str, span, q: Fraction) -> list[tuple[Fraction, str]]:
    i, j = span
    sub = w[i:j]
    pre, post = w[:i], w[j:]
    if len(sub) == 2 and sub in _PAIR_RULES:
        res = []
        for e, body in _PAIR_RULES[sub](q):
            coeff = Fraction(1) if e is None else q**e
            res.append((coeff, pre + body + post))
        return res
    # a u d with u in {b, c}*: u d = q^{|u|} d u, then ad = 1 + q bc
    u = sub[1:-1]
    k = len(u)
    return [(q**k, pre + u + post), (q ** (k + 1), pre + "bc" + u + post)]


def rewrite_randomly(ring: OqSL2, word: str, rnd: random.Random) -> OqElement:
    """Normal form of ``word`` by applying rewriting rules at randomly chosen redexes."""
    pending = {word: Fraction(1)}
    done: dict = {}
    while pending:
        w = rnd.choice(sorted(pending))
        c = pending.pop(w)
        spans = _redexes(w)
        if not spans:
            axpy(done, c, {_word_key(w): Fraction(1)})
            continue
        for coeff, w2 in _apply_rule(w, rnd.choice(spans), ring.q):
            axpy(pending, c * coeff, {w2: Fraction(1)})
    return OqElement._raw(ring, done)


def _word_key(w: str) -> tuple:
    key = (w.count("a"), w.count("b"), w.count("c"), w.count("d"))
    if key[0] and key[3]:  # pragma: no cover - irreducible words never mix a and d
        raise AssertionError(f"irreducible word {w} mixes a and d")
    return key


# -- functional API ---------------------------------------------------------------------

_DEFAULT: OqSL2 | None = None


def _ring(ring):
    global _DEFAULT
    if ring is not None:
        return ring
    if _DEFAULT is None:
        _DEFAULT = OqSL2()
    return _DEFAULT


def oq_normal_form(word: str, ring: OqSL2 | None = None) -> OqElement:
    return _ring(ring).normal_form(word)


def oq_multiply(x: OqElement, y: OqElement) -> OqElement:
    return x.ring.multiply(x, y)


def oq_coproduct(x: OqElement) -> OqTensor:
    return x.ring.coproduct(x)


def oq_counit(x: OqElement) -> Fraction:
    return x.ring.counit(x)


def oq_antipode(x: OqElement) -> OqElement:
    return x.ring.antipode(x)


def oq_log_norm(x: OqElement, n: int):
    return x.ring.log_norm(x, n)
