"""Height filtration, the deformation lattices U_n and their gauge norms.

Norms are kept as integer base-p logarithms: ``log_norm(x, n) = k`` means
``||x||_n = p^k``; the zero element has log-norm ``-inf``.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from .report import Report
from .scalars import INF, QSpec, valuation
from .uqcore import AlgebraElement, QuantumGroup, TensorElement, get_group

__all__ = [
    "NEG_INF",
    "height",
    "log_norm",
    "in_lattice",
    "m_threshold",
    "tensor_slack",
    "verify_pbw_lattice",
    "pbw_word_independence",
    "LatticeLevelError",
]

NEG_INF = -math.inf


class LatticeLevelError(ValueError):
    pass


def height(M, qg: QuantumGroup | None = None) -> int:
    """Height of a PBW monomial, given as a one-term AlgebraElement or as a key (r, lam, s) with ``qg``."""
    if isinstance(M, AlgebraElement):
        if len(M.terms) != 1:
            raise ValueError("height is defined on a single PBW monomial")
        (key,) = M.terms
        return M.parent.monomial_height(key)
    if qg is None:
        raise ValueError("a bare monomial key needs the QuantumGroup")
    return qg.monomial_height(M)


def m_threshold(rs, spec: QSpec | None = None) -> int:
    """Least m with p^(2m) / (q_i - q_i^-1) integral for every i."""
    if isinstance(rs, QuantumGroup):
        spec = spec or rs.spec
        rs = rs.rs
    if spec is None:
        spec = QSpec(p=5, d=rs.d)
    out = 0
    for di in set(rs.d_i):
        qi = spec.qi(di)
        v = valuation(qi - 1 / qi, spec.p)
        out = max(out, max(0, -(-v // 2)))
    return out


def _check_level(qg: QuantumGroup, n: int) -> None:
    m = m_threshold(qg)
    if n < m:
        raise LatticeLevelError(
            f"level n={n} is below the threshold m={m}; the PBW description of U_n only holds for n >= m")


def log_norm(x: AlgebraElement, n: int):
    """max over terms of n * ht(M) - v_p(a_M); ``-inf`` for x = 0."""
    qg = x.parent
    _check_level(qg, n)
    p = qg.spec.p
    best = NEG_INF
    for key, c in x.terms.items():
        val = n * qg.monomial_height(key) - valuation(c, p)
        if val > best:
            best = val
    return best


def in_lattice(x: AlgebraElement, n: int) -> bool:
    return log_norm(x, n) <= 0


def tensor_slack(t: TensorElement, n: int):
    """min over tensor terms of v_p(coeff) - n * (ht(left) + ht(right)); ``inf`` for 0."""
    qg = t.parent
    p = qg.spec.p
    best = INF
    for (a, b), c in t.terms.items():
        val = valuation(c, p) - n * (qg.monomial_height(a) + qg.monomial_height(b))
        if val < best:
            best = val
    return best


def _slack(x: AlgebraElement, n: int, extra_val: int = 0):
    """min over terms of v_p(a) + extra_val - n * ht(M)."""
    qg = x.parent
    p = qg.spec.p
    best = INF
    for key, c in x.terms.items():
        val = valuation(c, p) + extra_val - n * qg.monomial_height(key)
        if val < best:
            best = val
    return best


def _group(rs, spec=None, word=None) -> QuantumGroup:
    if isinstance(rs, QuantumGroup):
        return rs
    return get_group(rs, spec, word)


def verify_pbw_lattice(rs, n: int, height_bound: int, spec: QSpec | None = None) -> Report:
    """Desk check of U_n = span of p^{n ht(M)} M in both directions.

    (a) every word coefficient of E_{beta_j} is p-integral and each word has
        length ht(beta_j), so p^{n ht} E_{beta_j} is an R-combination of
        products of the p^n E_i;
    (b) every product of at most ``height_bound`` generators p^n E_i, p^n F_i,
        K_{+-varpi_i} has PBW coefficients with v_p(a) >= n ht(M).
    """
    qg = _group(rs, spec)
    _check_level(qg, n)
    if height_bound > qg.height_cap:
        raise ValueError(f"height bound {height_bound} exceeds the working cap {qg.height_cap}")
    rep = Report("pbw-lattice", header={"root_system": qg.rs.name, "n": n, "height_bound": height_bound,
                                         "m": m_threshold(qg)})
    p = qg.spec.p
    for j in range(qg.N):
        words = qg.root_vector_eword(j)
        beta = qg.betas[j]
        min_val = min(valuation(c, p) for c in words.values())
        mult_ok = all(tuple(w.count(i) for i in range(qg.n)) == beta for w in words)
        rep.add("root-vector-integral", {"j": j + 1, "beta": list(beta)}, min_val >= 0 and mult_ok,
                min_slack=min_val, multiplicity_ok=mult_ok)

    gens = []
    for i in range(qg.n):
        w = qg.rs.fundamental(i)
        gens.append((f"E{i + 1}", qg.E(i), 1))
        gens.append((f"F{i + 1}", qg.F(i), 1))
        gens.append((f"K+{i + 1}", qg.K(w), 0))
        gens.append((f"K-{i + 1}", qg.K(tuple(-a for a in w)), 0))

    # depth-first so each product reuses its prefix; deg counts the p^n factors
    stack = [([], qg.one(), 0)]
    while stack:
        names, x, deg = stack.pop()
        if names:
            s = _slack(x, n, n * deg)
            rep.add("product-in-lattice", "*".join(names), s >= 0, min_slack=s)
        if len(names) < height_bound:
            for name, g, dg in reversed(gens):
                stack.append((names + [name], x * g, deg + dg))
    return rep


def pbw_word_independence(rs, word1, word2, height_bound: int, spec: QSpec | None = None) -> Report:
    """PBW monomials of U^+ for one reduced word lie in the R-span of those of the other, and conversely."""
    g1 = _group(rs.rs if isinstance(rs, QuantumGroup) else rs, spec, word1)
    g2 = get_group(g1.rs, g1.spec, word2)
    rep = Report("pbw-word-independence", header={"root_system": g1.rs.name, "word1": list(g1.word),
                                                   "word2": list(g2.word), "height_bound": height_bound})
    p = g1.spec.p
    weights = _weights_up_to(g1, height_bound)
    for src, dst, label in ((g1, g2, "1->2"), (g2, g1, "2->1")):
        for nu in weights:
            for s in src.monomials_of_weight(nu):
                coeffs = dst.plus_word_normal_form(src.expand_plus(s))
                if not coeffs:
                    rep.add("r-span", {"direction": label, "s": list(s)}, False, min_slack=None)
                    continue
                v = min(valuation(c, p) for c in coeffs.values())
                rep.add("r-span", {"direction": label, "s": list(s)}, v >= 0, min_slack=v)
    return rep


def _weights_up_to(qg: QuantumGroup, h: int) -> list[tuple]:
    out = []
    for nu in itertools.product(range(h + 1), repeat=qg.n):
        if 0 < sum(nu) <= h:
            out.append(nu)
    return out


def random_lattice_element(qg: QuantumGroup, n: int, rnd: random.Random, max_height: int = 3,
                           terms: int = 3) -> AlgebraElement:
    """A random element of U_n: sum of p^{n ht(M) + e} u M with units u and e >= 0."""
    p = qg.spec.p
    out = {}
    for _ in range(terms):
        r = _random_exponents(qg, rnd, max_height)
        s = _random_exponents(qg, rnd, max_height - qg.height_of(r))
        lam = tuple(rnd.randint(-2, 2) for _ in range(qg.n))
        h = qg.height_of(r) + qg.height_of(s)
        unit = Fraction(rnd.choice([1, -1, 2, 3, -4]), rnd.choice([1, 2, 3, 7]))
        out[(r, lam, s)] = unit * Fraction(p) ** (n * h + rnd.randint(0, 1))
    return AlgebraElement(qg, out)


def _random_exponents(qg: QuantumGroup, rnd: random.Random, budget: int) -> tuple:
    out = [0] * qg.N
    budget = rnd.randint(0, max(budget, 0))
    order = list(range(qg.N))
    rnd.shuffle(order)
    for j in order:
        h = qg.heights[j]
        if h <= budget:
            k = rnd.randint(0, budget // h)
            out[j] = k
            budget -= k * h
    return tuple(out)
