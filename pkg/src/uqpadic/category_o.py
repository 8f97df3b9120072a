"""Weights and characters of U_q^0, separating elements, Verma modules and
central characters, plus the quantum Casimir of U_q(sl_2).
"""

from __future__ import annotations

import itertools
import math
import random
from collections import defaultdict
from fractions import Fraction
from typing import NamedTuple

from .lattice import in_lattice, m_threshold
from .linalg import axpy, nullspace
from .report import Report
from .rootdata import RootSystem, build_root_system, dominant_representative
from .scalars import INF, QSpec, format_scalar, valuation
from .uqcore import AlgebraElement, QuantumGroup, get_group

__all__ = [
    "CartanElement",
    "VermaElement",
    "psi",
    "residue_classes",
    "residue_classes_truncated",
    "separating_element",
    "SeparationFailure",
    "kostant",
    "verma_weight_dim",
    "verma_basis",
    "highest_weight_vector",
    "verma_apply",
    "maximal_vectors",
    "verma_irreducible",
    "irreducibility_witness_depth",
    "central_char_equal",
    "casimir_sl2",
    "casimir_eigenvalue",
    "verify_sl2_center",
]


def _rs(rs) -> RootSystem:
    if isinstance(rs, QuantumGroup):
        return rs.rs
    if isinstance(rs, str):
        return build_root_system(rs[0], int(rs[1:]))
    return rs


def _default_spec(rs: RootSystem, spec: QSpec | None) -> QSpec:
    return spec if spec is not None else QSpec(p=5, d=rs.d)


def psi(rs, lam, mu, spec: QSpec | None = None) -> Fraction:
    """psi_lam(K_mu) = q^{<lam, mu>}."""
    rs = _rs(rs)
    spec = _default_spec(rs, spec)
    return spec.qpow(rs.dpair(lam, mu))


class CartanElement:
    """sum_mu c_mu K_mu in U_q^0; evaluation at lam is psi_lam."""

    __slots__ = ("rs", "spec", "terms")

    def __init__(self, rs: RootSystem, spec: QSpec, terms=None):
        self.rs = rs
        self.spec = spec
        self.terms = {}
        for mu, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self.terms[tuple(mu)] = c

    @classmethod
    def constant(cls, rs, spec, c=1):
        return cls(rs, spec, {rs.zero(): c})

    @classmethod
    def K(cls, rs, spec, mu, c=1):
        return cls(rs, spec, {tuple(mu): c})

    def _new(self, terms):
        out = CartanElement.__new__(CartanElement)
        out.rs, out.spec, out.terms = self.rs, self.spec, terms
        return out

    def __add__(self, other):
        if not isinstance(other, CartanElement):
            other = CartanElement.constant(self.rs, self.spec, other)
        out = dict(self.terms)
        axpy(out, 1, other.terms)
        return self._new(out)

    def __sub__(self, other):
        if not isinstance(other, CartanElement):
            other = CartanElement.constant(self.rs, self.spec, other)
        out = dict(self.terms)
        axpy(out, -1, other.terms)
        return self._new(out)

    def __mul__(self, other):
        if not isinstance(other, CartanElement):
            c = Fraction(other)
            return self._new({k: v * c for k, v in self.terms.items()} if c else {})
        out: dict = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                k = tuple(u + v for u, v in zip(a, b))
                v = out.get(k, 0) + x * y
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return self._new(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, CartanElement) and self.terms == other.terms

    def __call__(self, lam) -> Fraction:
        return self.evaluate(lam)

    def evaluate(self, lam) -> Fraction:
        rs, spec = self.rs, self.spec
        total = Fraction(0)
        for mu, c in self.terms.items():
            total += c * spec.qpow(rs.dpair(lam, mu))
        return total

    def to_algebra(self, qg: QuantumGroup) -> AlgebraElement:
        z = qg.zero_e
        return AlgebraElement(qg, {(z, mu, z): c for mu, c in self.terms.items()})

    def to_json(self) -> list:
        return [{"lambda": list(mu), "coeff": format_scalar(c)} for mu, c in sorted(self.terms.items())]

    def __repr__(self):
        return " + ".join(f"({c})*K{list(mu)}" for mu, c in sorted(self.terms.items())) or "0"


# -- residues and the separating element -----------------------------------------------


def _mod_inv(x: int, mod: int) -> int:
    return pow(x, -1, mod)


def _qprime_mod(spec: QSpec, k: int, mod: int) -> int:
    """q'^k modulo ``mod`` as an integer (q' is a p-adic unit)."""
    qp = spec.qprime
    base = qp.numerator * _mod_inv(qp.denominator, mod) % mod
    if k >= 0:
        return pow(base, k, mod)
    return pow(_mod_inv(base, mod), -k, mod)


def residue_classes(r: int, m_list, fund_list, a: int, spec: QSpec) -> set[int]:
    """Residues mod p^a of every value prod_i (q'^{n_i(gamma)} - q'^{m_i}), gamma in P.

    Since q' = 1 mod p^b with b = v_p(q' - 1) and p odd, the closure of q'^Z is
    1 + p^b Z_p, so each factor ranges over p^b Z_p (times the unit q'^{m_i}) and
    the products fill p^{rb} Z_p.  The result is {x mod p^a : v_p(x) >= r b}.
    The fundamental weights only enter through n_i(gamma) and do not change the set.
    """
    _check_residue_args(r, m_list, fund_list, a)
    p = spec.p
    c = min(_residue_valuation(r, spec), a)
    step = p**c
    return {step * j for j in range(p ** (a - c))}


def residue_classes_truncated(r: int, m_list, fund_list, a: int, spec: QSpec) -> set[int]:
    """Products prod_i (q'^{k_i} - 1) q'^{sum m} over b|k_i| < a, together with 0, mod p^a.

    Kept for comparison only: this set misses residues such as 6^2 - 1 = 10 mod 25,
    because v_p(q'^k - 1) = b + v_p(k) rather than growing with |k|.
    """
    _check_residue_args(r, m_list, fund_list, a)
    p = spec.p
    mod = p**a
    b = valuation(spec.qprime - 1, p)
    kmax = -(-a // b) - 1  # largest k with b*k < a
    factors = sorted({(_qprime_mod(spec, k, mod) - 1) % mod for k in range(-kmax, kmax + 1)})
    prods = {1 % mod}
    for _ in range(r):
        prods = {(x * f) % mod for x in prods for f in factors}
    scale = _qprime_mod(spec, sum(m_list), mod)
    out = {(x * scale) % mod for x in prods}
    out.add(0)
    return out


def _check_residue_args(r, m_list, fund_list, a) -> None:
    if a < 1:
        raise ValueError("a must be at least 1")
    if len(list(m_list)) != r or len(list(fund_list)) != r:
        raise ValueError("m_list and fund_list must both have length r")


def _residue_valuation(r: int, spec: QSpec) -> int:
    return r * valuation(spec.qprime - 1, spec.p)


class SeparationFailure(RuntimeError):
    """The construction contradicted its own a-priori bounds."""


class _Factor(NamedTuple):
    i: int       # index of the fundamental weight varpi_i with h_mu = K_{varpi_i}
    m: int       # exponent with h_mu(mu) = q'^m


def _n_value(rs: RootSystem, i: int, gamma) -> int:
    return rs.dpair(gamma, rs.fundamental(i))


def _vp(k: int, p: int, cap: int) -> int:
    if k % p**cap == 0:
        return cap
    v = 0
    while k % p == 0:
        k //= p
        v += 1
    return v


def _min_extra_valuation(rs: RootSystem, factors, p: int, max_level: int = 6) -> int:
    """min over gamma in P of sum_mu v_p(n_mu(gamma) - m_mu), with v_p(0) = inf.

    Exact: enumerate gamma mod p^t with valuations truncated at t and stop as
    soon as a minimiser has no truncated entry.
    """
    if not factors:
        return 0
    n = rs.rank
    for t in range(1, max_level + 1):
        mod = p**t
        best = None
        best_exact = False
        for gamma in itertools.product(range(mod), repeat=n):
            tot = 0
            exact = True
            for f in factors:
                v = _vp(_n_value(rs, f.i, gamma) - f.m, p, t)
                if v >= t:
                    exact = False
                tot += v
            if best is None or tot < best or (tot == best and exact and not best_exact):
                best, best_exact = tot, exact
        if best_exact:
            return best
    raise SeparationFailure("could not pin down the minimal valuation")  # pragma: no cover


class _Chain:
    """The separating element as a composition: final = scale * g_J(...g_1(y)), y = p^-N prod(h - h(mu))."""

    def __init__(self, rs, spec, factors, N, steps, scale):
        self.rs, self.spec, self.factors, self.N, self.steps, self.scale = rs, spec, factors, N, steps, scale

    def y(self, gamma) -> Fraction:
        spec = self.spec
        out = Fraction(1)
        for f in self.factors:
            out *= spec.qpow(_n_value(self.rs, f.i, gamma)) - spec.qpow(f.m)
        return out / Fraction(self.spec.p) ** self.N

    def __call__(self, gamma) -> Fraction:
        t = self.y(gamma)
        p = self.spec.p
        for V in self.steps:
            prod = Fraction(1)
            for v in V:
                prod *= t - v
            t = prod / p
        return self.scale * t


def separating_element(X, lam, rs, spec: QSpec | None = None, grid_bound: int = 10,
                       check: bool = True, return_info: bool = False):
    """p in U_q^0 with p(P) in R, p(X) = 0 and p(lam) = 1."""
    rs = _rs(rs)
    spec = _default_spec(rs, spec)
    lam = tuple(lam)
    X = sorted({tuple(mu) for mu in X})
    if lam in X:
        raise ValueError("lam must not lie in X")
    p = spec.p
    b = valuation(spec.qprime - 1, p)
    factors = []
    x = CartanElement.constant(rs, spec)
    for mu in X:
        diff = tuple(u - v for u, v in zip(lam, mu))
        i = next(k for k in range(rs.rank) if rs.dpair(diff, rs.fundamental(k)) != 0)
        m = _n_value(rs, i, mu)
        factors.append(_Factor(i, m))
        h = CartanElement.K(rs, spec, rs.fundamental(i))
        x = x * (h - spec.qpow(m))
    N = len(factors) * b + _min_extra_valuation(rs, factors, p)
    y = x * (Fraction(1, p) ** N)
    J = valuation(y.evaluate(lam), p)
    if J < 0:
        raise SeparationFailure("y(lam) is not integral")
    # residues of y(P) mod p^(J+1): from residues of x(P) mod p^(N+J+1)
    # residues of x(P) mod p^(N+J+1) are the multiples of p^c; dividing by p^N
    # leaves the multiples of p^max(c - N, 0) mod p^(J+1)
    c = min(_residue_valuation(len(factors), spec), N + J + 1)
    step = p ** max(c - N, 0)
    cur = {step * j for j in range(p ** (J + 1) // step)} if step <= p ** (J + 1) else {0}
    steps = []
    level = J + 1
    z = y
    iterations = 0
    while valuation(z.evaluate(lam), p) > 0:
        iterations += 1
        if iterations > J:
            raise SeparationFailure("iteration guard tripped")
        V = sorted({c % p for c in cur})
        steps.append(tuple(V))
        poly = CartanElement.constant(rs, spec)
        for v in V:
            poly = poly * (z - v)
        z = poly * Fraction(1, p)
        # push the residue superset through g, losing one digit of precision
        new_mod = p ** (level - 1)
        nxt = set()
        for c in cur:
            prod = 1
            for v in V:
                prod = prod * (c - v) % p**level
            nxt.add((prod // p) % new_mod)
        cur = nxt
        level -= 1
    zl = z.evaluate(lam)
    if valuation(zl, p) != 0:
        raise SeparationFailure("value at lam is not a unit")
    out = z * (1 / zl)
    chain = _Chain(rs, spec, factors, N, steps, 1 / zl)
    info = {"N": N, "J": J, "iterations": iterations, "steps": [list(V) for V in steps],
            "terms": len(out.terms)}
    if check:
        _check_separating(out, chain, X, lam, grid_bound)
    return (out, info) if return_info else out


def _check_separating(out: CartanElement, chain: _Chain, X, lam, grid_bound: int) -> None:
    p = out.spec.p
    for mu in X:
        if out.evaluate(mu) != 0:
            raise SeparationFailure(f"separating element does not vanish at {mu}")
    if out.evaluate(lam) != 1:
        raise SeparationFailure("separating element is not 1 at lam")
    for gamma in itertools.product(range(-grid_bound, grid_bound + 1), repeat=out.rs.rank):
        if valuation(chain(gamma), p) < 0:
            raise SeparationFailure(f"separating element is not integral at {gamma}")


def separating_grid_values(elem: CartanElement, grid_bound: int = 10):
    """Exact values of the expanded element on the grid |coords| <= grid_bound (slow for big elements)."""
    rng = range(-grid_bound, grid_bound + 1)
    return {g: elem.evaluate(g) for g in itertools.product(rng, repeat=elem.rs.rank)}


# -- Kostant partition function and Verma modules ----------------------------------------


def kostant(rs, mu) -> int:
    """Number of multisets of positive roots with sum mu (mu in root coordinates)."""
    rs = _rs(rs)
    mu = tuple(mu)
    if any(x < 0 for x in mu):
        return 0
    roots = list(rs.positive_roots)
    return _kostant(tuple(roots), mu)


def _kostant(roots: tuple, mu: tuple) -> int:
    memo: dict = {}

    def rec(j, rest):
        if not any(rest):
            return 1
        if j == len(roots):
            return 0
        key = (j, rest)
        if key in memo:
            return memo[key]
        total = 0
        b = roots[j]
        cur = rest
        while all(x >= 0 for x in cur):
            total += rec(j + 1, cur)
            cur = tuple(x - y for x, y in zip(cur, b))
        memo[key] = total
        return total

    return rec(0, mu)


class VermaElement:
    """sum_r c_r F^r v_lam in M(lam)."""

    __slots__ = ("qg", "highest_weight", "terms")

    def __init__(self, qg: QuantumGroup, highest_weight, terms=None):
        self.qg = qg
        self.highest_weight = tuple(highest_weight)
        self.terms = {tuple(r): Fraction(c) for r, c in (terms or {}).items() if c}

    def __eq__(self, other):
        return (isinstance(other, VermaElement) and self.highest_weight == other.highest_weight
                and self.terms == other.terms)

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        axpy(out, 1, other.terms)
        return VermaElement(self.qg, self.highest_weight, out)

    def scale(self, c):
        return VermaElement(self.qg, self.highest_weight, {r: v * c for r, v in self.terms.items()})

    def weight_of(self, r) -> tuple:
        """lam - sum r_j beta_j in fundamental coordinates."""
        rs = self.qg.rs
        beta = rs.root_to_weight(self.qg.beta_of(r))
        return tuple(a - b for a, b in zip(self.highest_weight, beta))

    def to_json(self) -> dict:
        return {"lambda": list(self.highest_weight),
                "terms": [{"r": list(r), "coeff": format_scalar(c)} for r, c in sorted(self.terms.items())]}

    def __repr__(self):
        body = " + ".join(f"({c})*F{list(r)}" for r, c in sorted(self.terms.items())) or "0"
        return f"[{body}] v_{list(self.highest_weight)}"


def _qg(rs, spec=None) -> QuantumGroup:
    if isinstance(rs, QuantumGroup):
        return rs
    return get_group(_rs(rs), spec)


def highest_weight_vector(rs, lam, spec: QSpec | None = None) -> VermaElement:
    qg = _qg(rs, spec)
    return VermaElement(qg, lam, {qg.zero_e: 1})


def verma_basis(rs, lam, mu, spec: QSpec | None = None) -> list[tuple]:
    """F-exponent vectors r with lam - sum r_j beta_j = mu."""
    qg = _qg(rs, spec)
    diff = tuple(a - b for a, b in zip(lam, mu))
    nu = qg.rs.weight_to_root(diff)
    if nu is None or any(x < 0 for x in nu):
        return []
    return qg.monomials_of_weight(nu)


def verma_weight_dim(rs, lam, mu, spec: QSpec | None = None) -> int:
    return len(verma_basis(rs, lam, mu, spec))


def _apply_monomial(qg: QuantumGroup, lam, key, r) -> dict:
    """(PBW monomial key) * F^r v_lam as a dict r' -> coeff."""
    out: dict = {}
    rs, spec = qg.rs, qg.spec
    for (a, nu, s), c in qg.mono_mul(key, (r, qg.zero_w, qg.zero_e)).items():
        if any(s):
            continue
        v = out.get(a, 0) + c * spec.qpow(rs.dpair(lam, nu))
        if v:
            out[a] = v
        else:
            out.pop(a, None)
    return out


def verma_apply(u: AlgebraElement, v: VermaElement) -> VermaElement:
    qg = u.parent
    if v.qg is not qg:
        raise ValueError("element and module vector come from different algebras")
    out: dict = {}
    for key, c in u.terms.items():
        for r, cv in v.terms.items():
            axpy(out, c * cv, _apply_monomial(qg, v.highest_weight, key, r))
    return VermaElement(qg, v.highest_weight, out)


def maximal_vectors(rs, lam, mu, spec: QSpec | None = None, cap: int = 200) -> list[VermaElement]:
    """Basis of the vectors of weight mu in M(lam) killed by every E_i."""
    qg = _qg(rs, spec)
    lam = tuple(lam)
    basis = verma_basis(qg, lam, mu)
    if len(basis) > cap:
        from .uqcore import ResourceCapExceeded

        raise ResourceCapExceeded(f"weight space of dimension {len(basis)} exceeds cap {cap}")
    if not basis:
        return []
    columns = []
    for r in basis:
        col = {}
        for i in range(qg.n):
            ekey = (qg.zero_e, qg.zero_w, qg.unit_vec(qg.simple_pos[i]))
            for a, c in _apply_monomial(qg, lam, ekey, r).items():
                col[(i, a)] = c
        columns.append(col)
    out = []
    for vec in nullspace(columns):
        out.append(VermaElement(qg, lam, {basis[j]: c for j, c in vec.items()}))
    return out


class Irreducibility(NamedTuple):
    at_depth: bool
    criterion: bool


def _criterion_integers(rs: RootSystem, lam):
    rho = rs.rho
    shifted = tuple(a + b for a, b in zip(lam, rho))
    for beta in rs.positive_roots:
        c = rs.coroot_pairing(shifted, beta)
        if c.denominator == 1 and c >= 1:
            yield beta, int(c)


def irreducibility_witness_depth(rs, lam):
    """Smallest k * ht(beta) over positive beta with k = <lam + rho, beta^vee> in {1, 2, ...}; None if none."""
    rs = _rs(rs)
    depths = [k * sum(beta) for beta, k in _criterion_integers(rs, lam)]
    return min(depths) if depths else None


def verma_irreducible(rs, lam, depth_bound: int, spec: QSpec | None = None) -> Irreducibility:
    """(no maximal vector below lam down to depth_bound, the root-pairing criterion)."""
    qg = _qg(rs, spec)
    rs = qg.rs
    lam = tuple(lam)
    criterion = not any(True for _ in _criterion_integers(rs, lam))
    found = False
    for nu in itertools.product(range(depth_bound + 1), repeat=rs.rank):
        if not 0 < sum(nu) <= depth_bound:
            continue
        mu = tuple(a - b for a, b in zip(lam, rs.root_to_weight(nu)))
        if maximal_vectors(qg, lam, mu):
            found = True
            break
    return Irreducibility(not found, criterion)


def central_char_equal(rs, lam, mu) -> bool:
    rs = _rs(rs)
    return dominant_representative(rs, lam)[0] == dominant_representative(rs, mu)[0]


# -- sl_2 --------------------------------------------------------------------------------


def _sl2_group(spec: QSpec | None) -> QuantumGroup:
    rs = build_root_system("A", 1)
    return get_group(rs, spec)


def casimir_sl2(spec: QSpec | None = None, qg: QuantumGroup | None = None) -> AlgebraElement:
    """C = FE + (q K^2 + q^-1 K^-2) / (q - q^-1)^2 with K = K_varpi."""
    if qg is None:
        qg = _sl2_group(spec)
    if qg.rs.lie_type != "A" or qg.rs.rank != 1:
        raise ValueError("the Casimir element is only provided for A1")
    q = qg.q
    denom = (q - 1 / q) ** 2
    z = qg.zero_e
    one = (1,)
    return AlgebraElement(qg, {
        (one, (0,), one): 1,
        (z, (2,), z): q / denom,
        (z, (-2,), z): (1 / q) / denom,
    })


def casimir_eigenvalue(n: int, spec: QSpec | None = None) -> Fraction:
    """(q^{n+1} + q^{-n-1}) / (q - q^-1)^2, the scalar by which C acts on M(n varpi)."""
    qg = _sl2_group(spec)
    q = qg.q
    return (q ** (n + 1) + q ** (-n - 1)) / (q - 1 / q) ** 2


def _extract_casimir_coeffs(z: AlgebraElement, C: AlgebraElement, deg: int) -> list[Fraction] | None:
    """Coefficients c_i with z = sum c_i C^i, peeled off from the top F^a E^a term; None if z is not such a sum."""
    qg = z.parent
    powers = [qg.one()]
    for _ in range(deg):
        powers.append(powers[-1] * C)
    coeffs = [Fraction(0)] * (deg + 1)
    rest = z
    for a in range(deg, -1, -1):
        c = rest.coefficient(r=(a,), lam=(0,), s=(a,))
        coeffs[a] = c
        rest = rest - c * powers[a]
    return coeffs if not rest else None


def verify_sl2_center(spec: QSpec | None = None, n_max: int | None = None, deg_max: int = 3,
                      samples: int = 100, seed: int = 0) -> Report:
    qg = _sl2_group(spec)
    spec = qg.spec
    m = m_threshold(qg)
    if n_max is None:
        n_max = 2 * m + 2
    if n_max < 2 * m:
        raise ValueError("n_max must be at least 2m")
    p = spec.p
    C = casimir_sl2(qg=qg)
    rep = Report("casimir", header={"p": p, "q": format_scalar(qg.q), "m": m, "n_max": n_max,
                                     "deg_max": deg_max, "seed": seed})
    for name, g in (("E", qg.E(0)), ("F", qg.F(0)), ("K", qg.K((1,)))):
        rep.add("central", name, C * g == g * C)
    for n in range(2 * m, n_max + 1):
        rep.add("p^2n C in U_n", {"n": n}, in_lattice(Fraction(p) ** (2 * n) * C, n))
    for n in range(max(m, 1), n_max + 1):
        rep.add("C not in U_n", {"n": n}, not in_lattice(C, n))
    rnd = random.Random(seed)
    powers = [qg.one()]
    for _ in range(deg_max):
        powers.append(powers[-1] * C)
    for t in range(samples):
        n = rnd.randint(2 * m, n_max)
        deg = rnd.randint(1, deg_max)
        coeffs = []
        for i in range(deg + 1):
            e = 2 * n * i + rnd.choice([-2, -1, 0, 0, 1, 2]) if i else rnd.randint(0, 2)
            unit = Fraction(rnd.choice([1, -1, 2, 3, -7]), rnd.choice([1, 2, 3]))
            coeffs.append(unit * Fraction(p) ** e)
        z = qg.zero()
        for i, c in enumerate(coeffs):
            z = z + c * powers[i]
        member = in_lattice(z, n)
        extracted = _extract_casimir_coeffs(z, C, deg)
        bound = extracted is not None and all(valuation(c, p) >= 2 * n * i for i, c in enumerate(extracted))
        rep.add("coefficient bound", {"sample": t, "n": n, "deg": deg},
                extracted == coeffs and member == bound, in_lattice=member, bound_holds=bound)
    return rep
