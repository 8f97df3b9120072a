"""PBW normal forms in U_q(g), the algebra structure, omega and the Hopf maps.

Elements are finite combinations of PBW monomials ``F^r K_lam E^s`` keyed by
``(r, lam, s)``.  Products are computed by straightening:

* ordered products of root vectors ``E_{beta_k} E_{beta_l}`` with ``k > l``
  are rewritten with commutation relations that are *derived* once per pair
  by an exact linear solve modulo the Serre ideal, and cached;
* ``E^s F^r`` is moved into triangular form using the word expansion of the
  root vectors and the E/F commutator;
* the negative part reuses the positive one through omega.
"""

from __future__ import annotations

import sys
import threading
from collections import defaultdict
from fractions import Fraction
from functools import cached_property

from .linalg import Echelon, InconsistentSystem, axpy
from .rootdata import RootSystem, beta_sequence, build_root_system, check_w0_word, longest_word
from .scalars import QSpec, format_scalar, parse_scalar
from .words import SerreIdeal, WordElement, serre_relator, straighten

__all__ = [
    "QuantumGroup",
    "get_group",
    "AlgebraElement",
    "TensorElement",
    "ResourceCapExceeded",
    "NormalFormError",
    "word_to_pbw",
    "pbw_to_word",
    "multiply",
    "serre_element",
    "omega",
    "coproduct",
    "counit",
    "antipode",
    "weight_components",
]

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

DEFAULT_HEIGHT_CAP = 12


class ResourceCapExceeded(RuntimeError):
    pass


class NormalFormError(RuntimeError):
    """An exact solve contradicted the PBW theorem; this is a bug, not bad input."""


def _add(v, w):
    return tuple(a + b for a, b in zip(v, w))


def _sub(v, w):
    return tuple(a - b for a, b in zip(v, w))


class QuantumGroup:
    """Everything fixed for one U_q(g): root system, q, the reduced word of w0, and memo tables."""

    def __init__(self, rs: RootSystem | str, spec: QSpec | None = None, word=None,
                 height_cap: int = DEFAULT_HEIGHT_CAP):
        if isinstance(rs, str):
            rs = build_root_system(rs[0], int(rs[1:]))
        self.rs = rs
        if spec is None:
            spec = QSpec(p=5, d=rs.d)
        if spec.d != rs.d:
            raise ValueError(f"QSpec.d={spec.d} does not match the root system (d={rs.d})")
        if rs.lie_type == "G" and spec.p <= 3:
            raise ValueError("G2 needs p > 3")
        self.spec = spec
        self.word = check_w0_word(rs, word) if word is not None else longest_word(rs)
        seq = beta_sequence(rs, self.word)
        self.betas = tuple(b for b, _ in seq)
        self.heights = tuple(h for _, h in seq)
        self.N = len(self.betas)
        self.n = rs.rank
        self.height_cap = height_cap
        self.simple_pos = {}
        for j, b in enumerate(self.betas):
            if sum(b) == 1:
                self.simple_pos[b.index(1)] = j
        self.zero_w = rs.zero()
        self.zero_e = (0,) * self.N
        self.serre = SerreIdeal(self)
        self._lock = threading.RLock()
        self._root_words: dict = {}
        self._ls: dict = {}
        self._times_root_memo: dict = {}
        self._cross_memo: dict = {}
        self._simple_cross_memo: dict = {}
        self._root_cross_memo: dict = {}
        self._expand_memo: dict = {}
        self._mono_mul_memo: dict = {}
        self._coproduct_memo: dict = {}
        self._antipode_memo: dict = {}
        self._mono_coproduct_memo: dict = {}

    def __repr__(self):
        return f"QuantumGroup({self.rs.name}, word={self.word}, p={self.spec.p}, q'={self.spec.qprime})"

    # -- scalars ---------------------------------------------------------
    def qi(self, i: int) -> Fraction:
        return self.spec.qi(self.rs.d_i[i])

    @property
    def q(self) -> Fraction:
        return self.spec.q

    def q_pair_roots(self, a, b) -> Fraction:
        """q^{<a, b>} for a, b in root coordinates."""
        return self.spec.qpow(self.spec.d * self.rs.form_roots(a, b))

    def beta_of(self, s) -> tuple:
        """sum_j s_j beta_j in root coordinates."""
        out = [0] * self.n
        for j, k in enumerate(s):
            if k:
                b = self.betas[j]
                for i in range(self.n):
                    out[i] += k * b[i]
        return tuple(out)

    def height_of(self, s) -> int:
        return sum(k * h for k, h in zip(s, self.heights))

    def monomial_weight(self, key) -> tuple:
        r, _, s = key
        return _sub(self.beta_of(s), self.beta_of(r))

    def monomial_height(self, key) -> int:
        r, _, s = key
        return self.height_of(r) + self.height_of(s)

    def _check_height(self, h: int):
        if h > self.height_cap:
            raise ResourceCapExceeded(f"height {h} exceeds the working cap {self.height_cap}")

    # -- element constructors -------------------------------------------
    def element(self, terms) -> "AlgebraElement":
        return AlgebraElement(self, terms)

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, {(self.zero_e, self.zero_w, self.zero_e): 1})

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def scalar(self, c) -> "AlgebraElement":
        return AlgebraElement(self, {(self.zero_e, self.zero_w, self.zero_e): c})

    def unit_vec(self, j: int, k: int = 1) -> tuple:
        return tuple(k if t == j else 0 for t in range(self.N))

    def E(self, i: int) -> "AlgebraElement":
        """Simple generator E_{alpha_i} (0-based i)."""
        return self.monomial(s=self.unit_vec(self.simple_pos[i]))

    def F(self, i: int) -> "AlgebraElement":
        return self.monomial(r=self.unit_vec(self.simple_pos[i]))

    def K(self, lam) -> "AlgebraElement":
        return self.monomial(lam=tuple(lam))

    def E_root(self, j: int) -> "AlgebraElement":
        return self.monomial(s=self.unit_vec(j))

    def F_root(self, j: int) -> "AlgebraElement":
        return self.monomial(r=self.unit_vec(j))

    def monomial(self, r=None, lam=None, s=None, coeff=1) -> "AlgebraElement":
        r = tuple(r) if r is not None else self.zero_e
        s = tuple(s) if s is not None else self.zero_e
        lam = tuple(lam) if lam is not None else self.zero_w
        return AlgebraElement(self, {(r, lam, s): coeff})

    # -- root vectors as words --------------------------------------------
    def root_vector_eword(self, j: int) -> dict:
        """Word expansion of E_{beta_j} as a dict of E-index tuples."""
        vec = self._root_words.get(j)
        if vec is None:
            from .braid import compute_root_vector

            vec = compute_root_vector(self, j)
            with self._lock:
                self._root_words.setdefault(j, vec)
        return vec

    def expand_plus(self, s) -> dict:
        """E-word expansion of the ordered monomial E^s."""
        s = tuple(s)
        out = self._expand_memo.get(s)
        if out is not None:
            return out
        acc = {(): Fraction(1)}
        for j, k in enumerate(s):
            if not k:
                continue
            rv = self.root_vector_eword(j)
            for _ in range(k):
                nxt: dict = {}
                for w1, c1 in acc.items():
                    for w2, c2 in rv.items():
                        w = w1 + w2
                        nxt[w] = nxt.get(w, 0) + c1 * c2
                acc = {w: c for w, c in nxt.items() if c}
        self._expand_memo[s] = acc
        return acc

    # -- PBW monomials of a given weight ------------------------------------
    def monomials_of_weight(self, nu) -> list[tuple]:
        """All s in N^N with sum_j s_j beta_j = nu (nu in root coordinates)."""
        nu = tuple(nu)
        out = []
        N = self.N

        def rec(j, rest, cur):
            if j == N:
                if not any(rest):
                    out.append(tuple(cur))
                return
            b = self.betas[j]
            k = 0
            while all(x >= 0 for x in rest):
                cur.append(k)
                rec(j + 1, rest, cur)
                cur.pop()
                rest = _sub(rest, b)
                k += 1

        if any(x < 0 for x in nu):
            return []
        rec(0, nu, [])
        return sorted(out)

    # -- direct solve in U^+ --------------------------------------------------
    def solve_plus(self, vec: dict) -> dict:
        """PBW coordinates of an E-word vector by exact solve modulo the Serre ideal.

        This is the uncached reference path; ``plus_word_normal_form`` must agree with it.
        """
        by_wt: dict = defaultdict(dict)
        for w, c in vec.items():
            nu = [0] * self.n
            for i in w:
                nu[i] += 1
            by_wt[tuple(nu)][w] = c
        out = {}
        for nu, part in by_wt.items():
            self._check_height(sum(nu))
            mons = self.monomials_of_weight(nu)
            ideal = self.serre.component(nu)
            ech = Echelon(track=True)
            for s in mons:
                red = ideal.reduce(self.expand_plus(s))
                if not ech.add(red, label=s):
                    raise NormalFormError(f"PBW monomials of weight {nu} are dependent modulo Serre")
            qdim = self.serre.quotient_dim(nu)
            if qdim != len(mons):
                raise NormalFormError(
                    f"weight {nu}: quotient dimension {qdim} != number of PBW monomials {len(mons)}")
            try:
                sol = ech.solve(ideal.reduce(part))
            except InconsistentSystem as exc:
                raise NormalFormError(f"word vector of weight {nu} has no PBW expansion") from exc
            for s, c in sol.items():
                if c:
                    out[s] = out.get(s, 0) + c
        return {s: c for s, c in out.items() if c}

    # -- commutation relations between root vectors --------------------------
    def ls_relation(self, k: int, l: int) -> dict:
        """E_{beta_k} E_{beta_l} for k > l as a dict of sorted exponent vectors."""
        key = (k, l)
        rel = self._ls.get(key)
        if rel is not None:
            return rel
        if k <= l:
            raise ValueError("ls_relation needs k > l")
        prod: dict = {}
        a = self.root_vector_eword(k)
        b = self.root_vector_eword(l)
        for w1, c1 in a.items():
            for w2, c2 in b.items():
                w = w1 + w2
                prod[w] = prod.get(w, 0) + c1 * c2
        prod = {w: c for w, c in prod.items() if c}
        rel = self.solve_plus(prod)
        lead = tuple(1 if t in (k, l) else 0 for t in range(self.N))
        for s in rel:
            if s == lead:
                continue
            if any(s[t] for t in range(self.N) if not l < t < k):
                raise NormalFormError(
                    f"commutation relation for (beta_{k + 1}, beta_{l + 1}) leaves the convex interval")
        with self._lock:
            self._ls.setdefault(key, rel)
        return rel

    # -- U^+ multiplication ----------------------------------------------------
    def times_root(self, s: tuple, b: int) -> dict:
        """E^s * E_{beta_b} in PBW coordinates."""
        key = (s, b)
        memo = self._times_root_memo.get(key)
        if memo is not None:
            return memo
        k = -1
        for t in range(self.N - 1, -1, -1):
            if s[t]:
                k = t
                break
        if k <= b:
            out = {tuple(x + (t == b) for t, x in enumerate(s)): Fraction(1)}
        else:
            smk = tuple(x - (t == k) for t, x in enumerate(s))
            out = {}
            for t, c in self.ls_relation(k, b).items():
                for s2, c2 in self.plus_product(smk, t).items():
                    v = out.get(s2, 0) + c * c2
                    if v:
                        out[s2] = v
                    else:
                        out.pop(s2, None)
        self._times_root_memo[key] = out
        return out

    def plus_product(self, s: tuple, t: tuple) -> dict:
        """E^s * E^t in PBW coordinates."""
        cur = {s: Fraction(1)}
        for j, k in enumerate(t):
            for _ in range(k):
                nxt: dict = {}
                for s1, c1 in cur.items():
                    for s2, c2 in self.times_root(s1, j).items():
                        v = nxt.get(s2, 0) + c1 * c2
                        if v:
                            nxt[s2] = v
                        else:
                            nxt.pop(s2, None)
                cur = nxt
        return cur

    def plus_word_normal_form(self, vec: dict) -> dict:
        """PBW coordinates of an E-word vector via the cached commutation relations."""
        out: dict = {}
        for w, c in vec.items():
            self._check_height(len(w))
            cur = {self.zero_e: Fraction(c)}
            for i in w:
                j = self.simple_pos[i]
                nxt: dict = {}
                for s1, c1 in cur.items():
                    for s2, c2 in self.times_root(s1, j).items():
                        v = nxt.get(s2, 0) + c1 * c2
                        if v:
                            nxt[s2] = v
                        else:
                            nxt.pop(s2, None)
                cur = nxt
            axpy(out, 1, cur)
        return out

    # -- E^s F^r straightening -------------------------------------------------
    def simple_cross(self, i: int, a: tuple) -> dict:
        """E_i F^a as a dict (r, lam, s) -> coeff in PBW coordinates."""
        key = (i, a)
        memo = self._simple_cross_memo.get(key)
        if memo is not None:
            return memo
        rs = self.rs
        out: dict = defaultdict(Fraction)
        out[(a, self.zero_w, self.unit_vec(self.simple_pos[i]))] += 1
        alpha = rs.simple_root(i)
        plus = tuple(alpha)
        minus = tuple(-x for x in alpha)
        denom = self.qi(i) - 1 / self.qi(i)
        comm: dict = defaultdict(Fraction)  # (F-word, sign) -> coeff
        for w, c in self.expand_plus(a).items():
            # w read as an F-word: F_w = omega(E_w)
            for t, wt in enumerate(w):
                if wt != i:
                    continue
                right = w[t + 1:]
                x = self.spec.d * sum(rs.form[i][j] for j in right)
                # K_{+-alpha_i} F_right = q^{-+<alpha_i, wt right>} F_right K_{+-alpha_i}
                rest = w[:t] + right
                comm[(rest, 1)] += c * self.spec.qpow(-x) / denom
                comm[(rest, -1)] -= c * self.spec.qpow(x) / denom
        by_sign: dict = {1: defaultdict(Fraction), -1: defaultdict(Fraction)}
        for (rest, sign), c in comm.items():
            if c:
                by_sign[sign][rest] += c
        for sign, lam in ((1, plus), (-1, minus)):
            vec = {w: c for w, c in by_sign[sign].items() if c}
            for r2, c2 in self.plus_word_normal_form(vec).items():
                out[(r2, lam, self.zero_e)] += c2
        res = {k: v for k, v in out.items() if v}
        self._simple_cross_memo[key] = res
        return res

    def _left_e(self, i: int, terms: dict) -> dict:
        """Left multiplication by the simple E_i on a dict of PBW terms."""
        out: dict = defaultdict(Fraction)
        for (a, nu, b), c in terms.items():
            for (a2, mu, s2), c2 in self.simple_cross(i, a).items():
                # F^a2 K_mu E^s2 K_nu E^b = q^{-<nu, wt s2>} F^a2 K_{mu+nu} E^s2 E^b
                if any(s2):
                    f = self.spec.qpow(-self.rs.dpair_root(nu, self.beta_of(s2)))
                    for b3, c3 in self.plus_product(s2, b).items():
                        out[(a2, _add(mu, nu), b3)] += c * c2 * f * c3
                else:
                    out[(a2, _add(mu, nu), b)] += c * c2
        return {k: v for k, v in out.items() if v}

    def root_cross(self, k: int, a: tuple) -> dict:
        """E_{beta_k} F^a in PBW coordinates."""
        key = (k, a)
        memo = self._root_cross_memo.get(key)
        if memo is not None:
            return memo
        out: dict = {}
        start = {(a, self.zero_w, self.zero_e): Fraction(1)}
        for w, c in self.root_vector_eword(k).items():
            cur = start
            for i in reversed(w):
                cur = self._left_e(i, cur)
            axpy(out, c, cur)
        self._root_cross_memo[key] = out
        return out

    def cross(self, s: tuple, r: tuple) -> dict:
        """E^s F^r in PBW coordinates."""
        key = (s, r)
        memo = self._cross_memo.get(key)
        if memo is not None:
            return memo
        if not any(s) or not any(r):
            res = {(r, self.zero_w, s): Fraction(1)}
            self._cross_memo[key] = res
            return res
        k = next(t for t in range(self.N) if s[t])
        smk = tuple(x - (t == k) for t, x in enumerate(s))
        inner = self.cross(smk, r)
        out: dict = defaultdict(Fraction)
        for (a, nu, b), c in inner.items():
            for (a2, mu, b2), c2 in self.root_cross(k, a).items():
                if any(b2):
                    f = self.spec.qpow(-self.rs.dpair_root(nu, self.beta_of(b2)))
                    for b3, c3 in self.plus_product(b2, b).items():
                        out[(a2, _add(mu, nu), b3)] += c * c2 * f * c3
                else:
                    out[(a2, _add(mu, nu), b)] += c * c2
        res = {key2: v for key2, v in out.items() if v}
        self._cross_memo[key] = res
        return res

    # -- full multiplication ---------------------------------------------------
    def mono_mul(self, m1: tuple, m2: tuple) -> dict:
        key = (m1, m2)
        memo = self._mono_mul_memo.get(key)
        if memo is not None:
            return memo
        r, lam, s = m1
        r2, mu, s2 = m2
        self._check_height(self.height_of(r) + self.height_of(s) + self.height_of(r2) + self.height_of(s2))
        rs = self.rs
        out: dict = defaultdict(Fraction)
        for (a, nu, b), c in self.cross(s, r2).items():
            # K_lam F^a = q^{-<lam, beta(a)>} F^a K_lam ;  E^b K_mu = q^{-<mu, beta(b)>} K_mu E^b
            e = -rs.dpair_root(lam, self.beta_of(a)) - rs.dpair_root(mu, self.beta_of(b))
            f = c * self.spec.qpow(e)
            lam_tot = _add(_add(lam, nu), mu)
            left = self.plus_product(r, a)
            right = self.plus_product(b, s2)
            for ra, ca in left.items():
                for sb, cb in right.items():
                    out[(ra, lam_tot, sb)] += f * ca * cb
        res = {k: v for k, v in out.items() if v}
        self._mono_mul_memo[key] = res
        return res

    def multiply(self, x: "AlgebraElement", y: "AlgebraElement") -> "AlgebraElement":
        out: dict = {}
        for m1, c1 in x.terms.items():
            for m2, c2 in y.terms.items():
                axpy(out, c1 * c2, self.mono_mul(m1, m2))
        return AlgebraElement._raw(self, out)

    # -- words <-> PBW ---------------------------------------------------------
    def word_to_pbw(self, x: WordElement) -> "AlgebraElement":
        tri = straighten(self, x)
        # group by (F-word, lam) so each E-word vector is normalized once
        groups: dict = defaultdict(dict)
        for (f, lam, e), c in tri.items():
            groups[(f, lam)][e] = groups[(f, lam)].get(e, 0) + c
        fcache: dict = {}
        out: dict = {}
        for (f, lam), evec in groups.items():
            enf = self.plus_word_normal_form({e: c for e, c in evec.items() if c})
            if not enf:
                continue
            fnf = fcache.get(f)
            if fnf is None:
                fnf = fcache[f] = self.plus_word_normal_form({f: Fraction(1)})
            for r, cr in fnf.items():
                for s, cs in enf.items():
                    k = (r, lam, s)
                    v = out.get(k, 0) + cr * cs
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
        return AlgebraElement._raw(self, out)

    def pbw_to_word(self, x: "AlgebraElement") -> WordElement:
        out: dict = {}
        for (r, lam, s), c in x.terms.items():
            fpart = self.expand_plus(r)
            epart = self.expand_plus(s)
            kl = (("K", lam),) if any(lam) else ()
            for fw, cf in fpart.items():
                fletters = tuple(("F", i) for i in fw)
                for ew, ce in epart.items():
                    w = fletters + kl + tuple(("E", i) for i in ew)
                    v = out.get(w, 0) + c * cf * ce
                    if v:
                        out[w] = v
                    else:
                        out.pop(w, None)
        return WordElement._raw(out)

    # -- omega -----------------------------------------------------------------
    def omega(self, x: "AlgebraElement") -> "AlgebraElement":
        out = self.zero()
        for (r, lam, s), c in x.terms.items():
            # omega(F^r K_lam E^s) = E^r K_{-lam} F^s
            er = self.monomial(s=r)
            kf = self.monomial(lam=tuple(-v for v in lam))
            fs = self.monomial(r=s)
            out = out + c * (er * kf * fs)
        return out

    # -- Hopf structure -----------------------------------------------------------
    def _generator_coproduct(self, letter) -> "TensorElement":
        kind, i = letter
        one = (self.zero_e, self.zero_w, self.zero_e)
        pos = self.simple_pos[i]
        alpha = self.rs.simple_root(i)
        if kind == "E":
            e = (self.zero_e, self.zero_w, self.unit_vec(pos))
            return TensorElement(self, {(e, one): 1, ((self.zero_e, alpha, self.zero_e), e): 1})
        f = (self.unit_vec(pos), self.zero_w, self.zero_e)
        return TensorElement(self, {(f, (self.zero_e, tuple(-a for a in alpha), self.zero_e)): 1, (one, f): 1})

    def _root_coproduct(self, kind: str, j: int) -> "TensorElement":
        key = (kind, j)
        memo = self._coproduct_memo.get(key)
        if memo is not None:
            return memo
        acc = TensorElement(self, {})
        gens = {}
        for w, c in self.root_vector_eword(j).items():
            t = TensorElement.unit(self)
            for i in w:
                g = gens.get(i)
                if g is None:
                    g = gens[i] = self._generator_coproduct((kind, i))
                t = t * g
            acc = acc + t.scale(c)
        self._coproduct_memo[key] = acc
        return acc

    def coproduct(self, x: "AlgebraElement") -> "TensorElement":
        out = TensorElement(self, {})
        for (r, lam, s), c in x.terms.items():
            t = TensorElement.unit(self)
            for j, k in enumerate(r):
                for _ in range(k):
                    t = t * self._root_coproduct("F", j)
            kk = (self.zero_e, lam, self.zero_e)
            t = t * TensorElement(self, {(kk, kk): 1})
            for j, k in enumerate(s):
                for _ in range(k):
                    t = t * self._root_coproduct("E", j)
            out = out + t.scale(c)
        return out

    def _monomial_coproduct(self, key) -> "TensorElement":
        memo = self._mono_coproduct_memo.get(key)
        if memo is None:
            memo = self._mono_coproduct_memo[key] = self.coproduct(AlgebraElement._raw(self, {key: Fraction(1)}))
        return memo

    def coassociativity_sides(self, x: "AlgebraElement") -> tuple[dict, dict]:
        """((Delta x id) Delta x, (id x Delta) Delta x) as dicts over triples of monomials."""
        left: dict = {}
        right: dict = {}
        for (a, b), c in self.coproduct(x).terms.items():
            for (a1, a2), c2 in self._monomial_coproduct(a).terms.items():
                axpy(left, 1, {(a1, a2, b): c * c2})
            for (b1, b2), c2 in self._monomial_coproduct(b).terms.items():
                axpy(right, 1, {(a, b1, b2): c * c2})
        return left, right

    def counit(self, x: "AlgebraElement") -> Fraction:
        total = Fraction(0)
        for (r, lam, s), c in x.terms.items():
            if not any(r) and not any(s):
                total += c
        return total

    def _root_antipode(self, kind: str, j: int) -> "AlgebraElement":
        key = (kind, j)
        memo = self._antipode_memo.get(key)
        if memo is not None:
            return memo
        acc = self.zero()
        gens = {}
        for w, c in self.root_vector_eword(j).items():
            t = self.one()
            for i in w:  # S is an anti-homomorphism: S(ab) = S(b) S(a)
                g = gens.get(i)
                if g is None:
                    alpha = self.rs.simple_root(i)
                    neg = tuple(-a for a in alpha)
                    if kind == "E":
                        g = -(self.K(neg) * self.E(i))
                    else:
                        g = -(self.F(i) * self.K(alpha))
                    gens[i] = g
                t = g * t
            acc = acc + c * t
        self._antipode_memo[key] = acc
        return acc

    def antipode(self, x: "AlgebraElement") -> "AlgebraElement":
        out = self.zero()
        for (r, lam, s), c in x.terms.items():
            t = self.one()
            for j, k in enumerate(s):
                for _ in range(k):
                    t = self._root_antipode("E", j) * t
            fpart = self.one()
            for j, k in enumerate(r):
                for _ in range(k):
                    fpart = self._root_antipode("F", j) * fpart
            # S(F^r K E^s) = S(E^s) S(K) S(F^r), each product reversed
            out = out + c * (t * self.K(tuple(-v for v in lam)) * fpart)
        return out

    def weight_components(self, x: "AlgebraElement") -> dict:
        out: dict = defaultdict(dict)
        for m, c in x.terms.items():
            out[self.monomial_weight(m)][m] = c
        return {wt: AlgebraElement._raw(self, t) for wt, t in out.items()}

    # -- serialization ---------------------------------------------------------
    def monomial_sort_key(self, m):
        """Reverse-lexicographic order on (r_1..r_N, s_1..s_N); ties broken by lam."""
        r, lam, s = m
        return (tuple(reversed(r + s)), lam)

    def to_json(self, x: "AlgebraElement") -> list:
        return [
            {"r": list(r), "lambda": list(lam), "s": list(s), "coeff": format_scalar(c)}
            for (r, lam, s), c in sorted(x.terms.items(), key=lambda t: self.monomial_sort_key(t[0]))
        ]

    def from_json(self, data) -> "AlgebraElement":
        return AlgebraElement(self, {
            (tuple(d["r"]), tuple(d["lambda"]), tuple(d["s"])): parse_scalar(d["coeff"]) for d in data
        })

    @cached_property
    def description(self) -> dict:
        return {
            "root_system": self.rs.to_json(),
            "word": list(self.word),
            "betas": [list(b) for b in self.betas],
            "spec": self.spec.to_json(),
        }


class AlgebraElement:
    """A finite linear combination of PBW monomials ``F^r K_lam E^s``."""

    __slots__ = ("parent", "terms")

    def __init__(self, parent: QuantumGroup, terms=None):
        self.parent = parent
        self.terms = {}
        if terms:
            for k, c in dict(terms).items():
                c = Fraction(c)
                if c:
                    r, lam, s = k
                    key = (tuple(r), tuple(lam), tuple(s))
                    self.terms[key] = self.terms.get(key, 0) + c
            self.terms = {k: v for k, v in self.terms.items() if v}

    @classmethod
    def _raw(cls, parent, terms):
        obj = cls.__new__(cls)
        obj.parent = parent
        obj.terms = terms
        return obj

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == self.parent.scalar(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            other = self.parent.scalar(other)
        out = dict(self.terms)
        axpy(out, 1, other.terms)
        return AlgebraElement._raw(self.parent, out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            other = self.parent.scalar(other)
        out = dict(self.terms)
        axpy(out, -1, other.terms)
        return AlgebraElement._raw(self.parent, out)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return AlgebraElement._raw(self.parent, {k: -v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.parent.multiply(self, other)
        c = Fraction(other)
        if not c:
            return self.parent.zero()
        return AlgebraElement._raw(self.parent, {k: v * c for k, v in self.terms.items()})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int):
        out = self.parent.one()
        for _ in range(k):
            out = out * self
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (r, lam, s), c in sorted(self.terms.items(), key=lambda t: self.parent.monomial_sort_key(t[0])):
            parts.append(f"({c})*M[r={list(r)}, lam={list(lam)}, s={list(s)}]")
        return " + ".join(parts)

    def coefficient(self, r=None, lam=None, s=None) -> Fraction:
        p = self.parent
        key = (tuple(r) if r is not None else p.zero_e, tuple(lam) if lam is not None else p.zero_w,
               tuple(s) if s is not None else p.zero_e)
        return self.terms.get(key, Fraction(0))

    def height(self) -> int:
        return max((self.parent.monomial_height(m) for m in self.terms), default=0)


class TensorElement:
    """Finite combination of pairs of PBW monomials; multiplication is legwise."""

    __slots__ = ("parent", "terms")

    def __init__(self, parent: QuantumGroup, terms=None):
        self.parent = parent
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def unit(cls, parent):
        one = (parent.zero_e, parent.zero_w, parent.zero_e)
        return cls(parent, {(one, one): 1})

    def __eq__(self, other):
        return isinstance(other, TensorElement) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        axpy(out, 1, other.terms)
        t = TensorElement.__new__(TensorElement)
        t.parent, t.terms = self.parent, out
        return t

    def __sub__(self, other):
        out = dict(self.terms)
        axpy(out, -1, other.terms)
        t = TensorElement.__new__(TensorElement)
        t.parent, t.terms = self.parent, out
        return t

    def scale(self, c):
        c = Fraction(c)
        t = TensorElement.__new__(TensorElement)
        t.parent = self.parent
        t.terms = {k: v * c for k, v in self.terms.items()} if c else {}
        return t

    def __mul__(self, other):
        p = self.parent
        out: dict = {}
        for (a, b), c1 in self.terms.items():
            for (x, y), c2 in other.terms.items():
                left = p.mono_mul(a, x)
                right = p.mono_mul(b, y)
                for l, cl in left.items():
                    for r, cr in right.items():
                        k = (l, r)
                        v = out.get(k, 0) + c1 * c2 * cl * cr
                        if v:
                            out[k] = v
                        else:
                            out.pop(k, None)
        t = TensorElement.__new__(TensorElement)
        t.parent, t.terms = p, out
        return t

    def map_legs(self, f, g) -> "TensorElement":
        """Apply linear maps (element -> element) to each leg."""
        p = self.parent
        out = TensorElement(p, {})
        for (a, b), c in self.terms.items():
            fa = f(AlgebraElement._raw(p, {a: Fraction(1)}))
            gb = g(AlgebraElement._raw(p, {b: Fraction(1)}))
            terms = {}
            for ka, va in fa.terms.items():
                for kb, vb in gb.terms.items():
                    terms[(ka, kb)] = terms.get((ka, kb), 0) + c * va * vb
            out = out + TensorElement(p, terms)
        return out

    def contract(self, f, g) -> AlgebraElement:
        """m(f tensor g): multiply the images of the two legs."""
        p = self.parent
        out = p.zero()
        for (a, b), c in self.terms.items():
            fa = f(AlgebraElement._raw(p, {a: Fraction(1)}))
            gb = g(AlgebraElement._raw(p, {b: Fraction(1)}))
            out = out + c * (fa * gb)
        return out

    def __repr__(self):
        return f"TensorElement({len(self.terms)} terms)"


# -- module-level functional API ----------------------------------------------

_GROUPS: dict = {}
_GROUPS_LOCK = threading.Lock()


def get_group(rs, spec: QSpec | None = None, word=None, height_cap: int = DEFAULT_HEIGHT_CAP) -> QuantumGroup:
    """Shared QuantumGroup per (root system, spec, word) so memo tables are reused."""
    if isinstance(rs, str):
        rs = build_root_system(rs[0], int(rs[1:]))
    if spec is None:
        spec = QSpec(p=5, d=rs.d)
    key = (rs, spec, tuple(word) if word is not None else None, height_cap)
    with _GROUPS_LOCK:
        qg = _GROUPS.get(key)
        if qg is None:
            qg = _GROUPS[key] = QuantumGroup(rs, spec, word, height_cap)
    return qg



def word_to_pbw(qg: QuantumGroup, x: WordElement) -> AlgebraElement:
    return qg.word_to_pbw(x)


def pbw_to_word(x: AlgebraElement) -> WordElement:
    return x.parent.pbw_to_word(x)


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    if x.parent is not y.parent:
        raise ValueError("elements live in different algebras")
    return x.parent.multiply(x, y)


def serre_element(qg: QuantumGroup, i: int, j: int, kind: str = "E") -> WordElement:
    """Quantum Serre relator (1-based i, j) in E-letters, or its omega-image in F-letters."""
    vec = serre_relator(qg, i - 1, j - 1)
    return WordElement({tuple((kind, a) for a in w): c for w, c in vec.items()})


def omega(x: AlgebraElement) -> AlgebraElement:
    return x.parent.omega(x)


def coproduct(x: AlgebraElement) -> TensorElement:
    return x.parent.coproduct(x)


def counit(x: AlgebraElement) -> Fraction:
    return x.parent.counit(x)


def antipode(x: AlgebraElement) -> AlgebraElement:
    return x.parent.antipode(x)


def weight_components(x: AlgebraElement) -> dict:
    return x.parent.weight_components(x)
