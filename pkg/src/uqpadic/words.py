"""Words in the Chevalley generators and their straightening.

A letter is one of ``('E', i)``, ``('F', i)`` (0-based simple index) or
``('K', lam)`` with ``lam`` a weight tuple.  Pure E-words are stored more
compactly as tuples of simple indices; those are the columns of the linear
systems that live modulo the quantum Serre relations.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction

from .linalg import Echelon, axpy
from .scalars import qbinom

__all__ = [
    "WordElement",
    "E",
    "F",
    "K",
    "straighten",
    "serre_relator",
    "SerreIdeal",
]


def E(i: int) -> tuple:
    return ("E", i)


def F(i: int) -> tuple:
    return ("F", i)


def K(lam) -> tuple:
    return ("K", tuple(lam))


class WordElement:
    """Finite linear combination of words; the empty word is 1."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for w, c in dict(terms).items():
                if c:
                    self.terms[tuple(w)] = Fraction(c)

    @classmethod
    def one(cls):
        return cls({(): 1})

    @classmethod
    def letter(cls, a, coeff=1):
        return cls({(a,): coeff})

    @classmethod
    def from_eword(cls, vec: dict):
        """Lift a dict of E-index tuples into letters."""
        return cls({tuple(("E", i) for i in w): c for w, c in vec.items()})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, WordElement) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        axpy(out, 1, other.terms)
        return WordElement._raw(out)

    def __sub__(self, other):
        out = dict(self.terms)
        axpy(out, -1, other.terms)
        return WordElement._raw(out)

    def __neg__(self):
        return WordElement._raw({w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, WordElement):
            out: dict = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    v = out.get(w, 0) + c1 * c2
                    if v:
                        out[w] = v
                    else:
                        out.pop(w, None)
            return WordElement._raw(out)
        c = Fraction(other)
        if not c:
            return WordElement()
        return WordElement._raw({w: x * c for w, x in self.terms.items()})

    def __rmul__(self, other):
        c = Fraction(other)
        if not c:
            return WordElement()
        return WordElement._raw({w: x * c for w, x in self.terms.items()})

    def __pow__(self, k: int):
        out = WordElement.one()
        for _ in range(k):
            out = out * self
        return out

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda t: _word_key(t[0])):
            body = "*".join(_letter_str(a) for a in w) or "1"
            parts.append(f"({c})*{body}")
        return " + ".join(parts)

    def map_letters(self, fn):
        """Substitute every letter by the WordElement fn(letter) and expand."""
        cache = {}
        out = WordElement()
        for w, c in self.terms.items():
            acc = WordElement.one()
            for a in w:
                img = cache.get(a)
                if img is None:
                    img = cache[a] = fn(a)
                acc = acc * img
            out = out + c * acc
        return out

    def is_pure_e(self) -> bool:
        return all(a[0] == "E" for w in self.terms for a in w)

    def eword_vector(self) -> dict:
        if not self.is_pure_e():
            raise ValueError("word element has non-E letters")
        return {tuple(a[1] for a in w): c for w, c in self.terms.items()}


def _letter_str(a) -> str:
    if a[0] == "K":
        return "K[" + ",".join(map(str, a[1])) + "]"
    return f"{a[0]}{a[1] + 1}"


def _word_key(w):
    return (len(w), [(a[0], a[1]) for a in w])


def straighten(qg, x: WordElement) -> dict:
    """Rewrite words into F-word . K_lam . E-word form.

    Returns a dict ``(fword, lam, eword) -> coeff`` where fword and eword are
    tuples of simple indices.  Only the K-commutation relations and
    E_i F_j - F_j E_i = delta_ij (K_i - K_-i)/(q_i - q_i^-1) are used, so the
    result is equal to x in U_q but not yet canonical.
    """
    rs = qg.rs
    zero = rs.zero()
    out: dict = defaultdict(Fraction)
    for word, c in x.terms.items():
        cur = {((), zero, ()): Fraction(c)}
        for a in word:
            cur = _append_letter(qg, cur, a)
        for k, v in cur.items():
            out[k] += v
    return {k: v for k, v in out.items() if v}


def _ewt(rs, e):
    wt = [0] * rs.rank
    for i in e:
        wt[i] += 1
    return wt


def _append_letter(qg, cur: dict, a) -> dict:
    rs = qg.rs
    kind = a[0]
    nxt: dict = defaultdict(Fraction)
    if kind == "E":
        i = a[1]
        for (f, lam, e), c in cur.items():
            nxt[(f, lam, e + (i,))] += c
    elif kind == "K":
        mu = a[1]
        for (f, lam, e), c in cur.items():
            # E_e K_mu = q^{-<mu, wt e>} K_mu E_e
            k = -rs.dpair_root(mu, _ewt(rs, e)) if e else 0
            nlam = tuple(x + y for x, y in zip(lam, mu))
            nxt[(f, nlam, e)] += c * qg.spec.qpow(k)
    else:
        i = a[1]
        alpha = rs.simple_root(i)
        denom = qg.qi(i) - 1 / qg.qi(i)
        for (f, lam, e), c in cur.items():
            # K_lam F_i = q^{-<lam, alpha_i>} F_i K_lam
            klam = -qg.spec.d * lam[i] * rs.d_i[i]
            nxt[(f + (i,), lam, e)] += c * qg.spec.qpow(klam)
            for t, et in enumerate(e):
                if et != i:
                    continue
                left = e[:t]
                rest = left + e[t + 1 :]
                # E_left K_{+-alpha_i} = q^{-+<alpha_i, wt left>} K E_left
                x = qg.spec.d * sum(rs.form[i][j] * n for j, n in enumerate(_ewt(rs, left)))
                lp = tuple(u + v for u, v in zip(lam, alpha))
                lm = tuple(u - v for u, v in zip(lam, alpha))
                nxt[(f, lp, rest)] += c * qg.spec.qpow(-x) / denom
                nxt[(f, lm, rest)] -= c * qg.spec.qpow(x) / denom
    return {k: v for k, v in nxt.items() if v}


def serre_relator(qg, i: int, j: int) -> dict:
    """The quantum Serre relator in E-letters as a dict of index tuples (0-based i != j)."""
    if i == j:
        raise ValueError("Serre relator needs i != j")
    rs = qg.rs
    m = 1 - rs.cartan[i][j]
    qi = qg.qi(i)
    out = {}
    for l in range(m + 1):
        w = (i,) * (m - l) + (j,) + (i,) * l
        out[w] = (-1) ** l * qbinom(m, l, qi)
    return out


class SerreIdeal:
    """Weight components of the two-sided ideal generated by the Serre relators in the free algebra on E_i."""

    def __init__(self, qg):
        self.qg = qg
        n = qg.rs.rank
        self.relators = []
        for i in range(n):
            for j in range(n):
                if i != j:
                    rel = serre_relator(qg, i, j)
                    wt = [0] * n
                    wt[i] = 1 - qg.rs.cartan[i][j]
                    wt[j] += 1
                    self.relators.append((tuple(wt), rel))
        self._cache: dict = {}
        self._words: dict = {}

    def words(self, nu) -> list[tuple]:
        nu = tuple(nu)
        w = self._words.get(nu)
        if w is None:
            w = self._words[nu] = _multiset_perms(nu)
        return w

    def component(self, nu) -> Echelon:
        nu = tuple(nu)
        ech = self._cache.get(nu)
        if ech is not None:
            return ech
        ech = Echelon()
        if any(x < 0 for x in nu) or sum(nu) == 0:
            self._cache[nu] = ech
            return ech
        n = len(nu)
        # I_nu = sum_i E_i I_{nu - alpha_i} + sum_S S . (words of weight nu - wt S)
        for i in range(n):
            if nu[i] == 0:
                continue
            sub = tuple(x - (k == i) for k, x in enumerate(nu))
            for row in self.component(sub).rows.values():
                ech.add({(i,) + w: c for w, c in row.items()})
        for wt, rel in self.relators:
            rest = tuple(a - b for a, b in zip(nu, wt))
            if any(x < 0 for x in rest):
                continue
            for v in self.words(rest):
                ech.add({w + v: c for w, c in rel.items()})
        self._cache[nu] = ech
        return ech

    def reduce(self, vec: dict) -> dict:
        """Canonical representative of a weight-homogeneous E-word vector modulo the ideal."""
        if not vec:
            return {}
        by_wt: dict = defaultdict(dict)
        for w, c in vec.items():
            by_wt[_count(w, self.qg.rs.rank)][w] = c
        out = {}
        for nu, part in by_wt.items():
            out.update(self.component(nu).reduce(part))
        return out

    def quotient_dim(self, nu) -> int:
        return len(self.words(nu)) - len(self.component(nu))


def _count(w, n):
    c = [0] * n
    for i in w:
        c[i] += 1
    return tuple(c)


def _multiset_perms(nu) -> list[tuple]:
    out = []
    n = len(nu)
    total = sum(nu)
    counts = list(nu)
    buf = []

    def rec():
        if len(buf) == total:
            out.append(tuple(buf))
            return
        for i in range(n):
            if counts[i]:
                counts[i] -= 1
                buf.append(i)
                rec()
                buf.pop()
                counts[i] += 1

    rec()
    return out
