"""Verification suites run by ``uqpadic verify``; each returns a Report."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .braid import braid_T, braid_T_inverse, check_braid_relations
from .category_o import (
    casimir_eigenvalue,
    central_char_equal,
    irreducibility_witness_depth,
    kostant,
    verify_sl2_center,
    verma_irreducible,
    verma_weight_dim,
)
from .lattice import (
    log_norm,
    m_threshold,
    random_lattice_element,
    tensor_slack,
    verify_pbw_lattice,
)
from .oqsl2 import OqSL2, rewrite_randomly
from .report import Report
from .rootdata import dominant_representative
from .scalars import QSpec, valuation
from .uqcore import QuantumGroup, ResourceCapExceeded, serre_element
from .words import WordElement

__all__ = ["SUITES", "random_generator_product", "random_word"]


def random_generator_product(qg: QuantumGroup, rnd: random.Random, max_len: int) -> "AlgebraElement":
    x = qg.one()
    for _ in range(rnd.randint(0, max_len)):
        kind = rnd.randrange(3)
        i = rnd.randrange(qg.n)
        if kind == 0:
            g = qg.E(i)
        elif kind == 1:
            g = qg.F(i)
        else:
            g = qg.K(tuple(rnd.randint(-1, 1) for _ in range(qg.n)))
        x = x * g
    return x


def random_word(qg: QuantumGroup, rnd: random.Random, max_len: int) -> WordElement:
    letters = []
    for _ in range(rnd.randint(0, max_len)):
        kind = rnd.choice("EFK")
        if kind == "K":
            letters.append(("K", tuple(rnd.randint(-1, 1) for _ in range(qg.n))))
        else:
            letters.append((kind, rnd.randrange(qg.n)))
    return WordElement({tuple(letters): Fraction(rnd.randint(1, 5), rnd.randint(1, 3))})


def suite_serre(qg: QuantumGroup, cfg) -> Report:
    rep = Report("serre")
    for i in range(1, qg.n + 1):
        for j in range(1, qg.n + 1):
            if i == j:
                continue
            for kind in "EF":
                nf = qg.word_to_pbw(serre_element(qg, i, j, kind))
                rep.add("relator-vanishes", {"i": i, "j": j, "kind": kind}, not nf, terms=len(nf.terms))
    return rep


def suite_braid(qg: QuantumGroup, cfg) -> Report:
    rep = Report("braid")
    for rec in check_braid_relations(qg):
        rep.add("braid-relation", {"i": rec["i"], "j": rec["j"], "generator": rec["generator"]}, rec["ok"])
    gens = [(f"E{k + 1}", qg.E(k)) for k in range(qg.n)] + [(f"F{k + 1}", qg.F(k)) for k in range(qg.n)]
    gens += [(f"K{k + 1}", qg.K(qg.rs.fundamental(k))) for k in range(qg.n)]
    for i in range(1, qg.n + 1):
        for name, g in gens:
            ok = braid_T_inverse(i, braid_T(i, g)) == g and braid_T(i, braid_T_inverse(i, g)) == g
            rep.add("inverse-round-trip", {"i": i, "generator": name}, ok)
    rnd = random.Random(cfg.seed)
    for t in range(10):
        x = random_generator_product(qg, rnd, 2)
        y = random_generator_product(qg, rnd, 2)
        i = rnd.randint(1, qg.n)
        rep.add("automorphism", {"sample": t, "i": i}, braid_T(i, x * y) == braid_T(i, x) * braid_T(i, y))
    return rep


def suite_pbw_lattice(qg: QuantumGroup, cfg) -> Report:
    m = m_threshold(qg)
    rep = Report("pbw-lattice", header={"m": m})
    bound = 6 if qg.n == 1 else 4
    for n in range(m, m + 2):
        try:
            sub = verify_pbw_lattice(qg, n, bound)
        except ResourceCapExceeded as exc:
            rep.add("resource", {"n": n}, False, error=str(exc))
            continue
        rep.add("pbw-lattice", {"n": n, "height_bound": bound}, sub.passed,
                min_slack=sub.min_of("min_slack"), products=len(sub.checks))
    return rep


def suite_hopf(qg: QuantumGroup, cfg) -> Report:
    rep = Report("hopf", header={"seed": cfg.seed})
    rnd = random.Random(cfg.seed)
    samples = [("generator", g) for g in _generators(qg)]
    samples += [("random", random_generator_product(qg, rnd, 3)) for _ in range(20)]
    for t, (kind, x) in enumerate(samples):
        D = qg.coproduct(x)
        left, right = qg.coassociativity_sides(x)
        rep.add("coassociativity", {"sample": t, "kind": kind}, left == right)
        rep.add("counit", {"sample": t, "kind": kind},
                D.contract(lambda u: qg.scalar(qg.counit(u)), lambda v: v) == x
                and D.contract(lambda u: u, lambda v: qg.scalar(qg.counit(v))) == x)
        eps = qg.scalar(qg.counit(x))
        rep.add("antipode", {"sample": t, "kind": kind},
                D.contract(qg.antipode, lambda v: v) == eps and D.contract(lambda u: u, qg.antipode) == eps)
    m = m_threshold(qg)
    for t in range(20):
        n = rnd.randint(m, m + 2)
        x = random_lattice_element(qg, n, rnd, max_height=3)
        s = tensor_slack(qg.coproduct(x), n)
        rep.add("coproduct-lattice", {"sample": t, "n": n}, s >= 0, min_slack=s)
    return rep


def _generators(qg: QuantumGroup):
    out = []
    for k in range(qg.n):
        out += [qg.E(k), qg.F(k), qg.K(qg.rs.fundamental(k))]
    return out


def suite_norms(qg: QuantumGroup, cfg) -> Report:
    rep = Report("norms", header={"seed": cfg.seed})
    m = m_threshold(qg)
    p = qg.spec.p
    for n in range(m, m + 3):
        for k in range(qg.n):
            rep.add("E-norm", {"n": n, "i": k + 1}, log_norm(qg.E(k), n) == n)
            rep.add("F-norm", {"n": n, "i": k + 1}, log_norm(qg.F(k), n) == n)
            rep.add("K-norm", {"n": n, "i": k + 1}, log_norm(qg.K(qg.rs.fundamental(k)), n) == 0)
        rep.add("pE-norm", {"n": n}, log_norm(Fraction(p) * qg.E(0), n) == n - 1)
    rnd = random.Random(cfg.seed)
    for t in range(50):
        n = rnd.randint(m, m + 3)
        x = random_generator_product(qg, rnd, 2) * Fraction(p) ** rnd.randint(-1, 2)
        y = random_generator_product(qg, rnd, 2) + qg.scalar(Fraction(rnd.randint(1, 9), 5))
        lhs = log_norm(x * y, n)
        rhs = log_norm(x, n) + log_norm(y, n)
        rep.add("submultiplicative", {"sample": t, "n": n}, lhs <= rhs, slack=rhs - lhs)
    return rep


def suite_verma(qg: QuantumGroup, cfg) -> Report:
    rs = qg.rs
    rep = Report("verma")
    rho = rs.rho
    for lam in (rs.zero(), rho, tuple(2 * x for x in rho)):
        for nu in itertools.product(range(5), repeat=rs.rank):
            if sum(nu) > 4:
                continue
            mu = tuple(a - b for a, b in zip(lam, rs.root_to_weight(nu)))
            ok = verma_weight_dim(qg, lam, mu) == kostant(rs, nu)
            rep.add("dim-equals-kostant", {"lambda": list(lam), "nu": list(nu)}, ok)
    depth = min(cfg.depth_cap, 4 if rs.rank > 1 else 8)
    grid = range(-2, 3) if rs.rank > 1 else range(-6, 7)
    for lam in itertools.product(grid, repeat=rs.rank):
        at_depth, crit = verma_irreducible(qg, lam, depth)
        wd = irreducibility_witness_depth(rs, lam)
        comparable = wd is None or wd <= depth
        rep.add("irreducibility", {"lambda": list(lam), "depth": depth},
                at_depth == crit if comparable else True, at_depth=at_depth, criterion=crit, witness_depth=wd)
    return rep


def suite_blocks(qg: QuantumGroup, cfg) -> Report:
    rs = qg.rs
    rep = Report("blocks")
    grid = list(itertools.product(range(-3, 4), repeat=rs.rank))
    reps = {lam: dominant_representative(rs, lam)[0] for lam in grid}
    for lam, mu in reps.items():
        rep.add("representative-dominant", {"lambda": list(lam)}, all(a + 1 >= 0 for a in mu),
                representative=list(mu))
    if rs.lie_type == "A" and rs.rank == 1:
        for a in range(-6, 7):
            for b in range(-6, 7):
                same = central_char_equal(rs, (a,), (b,))
                ev = casimir_eigenvalue(a, qg.spec) == casimir_eigenvalue(b, qg.spec)
                rep.add("casimir-agrees", {"lambda": a, "mu": b}, same == ev)
    return rep


def suite_casimir(qg: QuantumGroup, cfg) -> Report:
    spec = qg.spec if qg.rs.lie_type == "A" and qg.rs.rank == 1 else None
    return verify_sl2_center(spec, seed=cfg.seed, samples=30)


def suite_oq(qg: QuantumGroup, cfg) -> Report:
    ring = OqSL2(QSpec(qg.spec.p, 2, qg.spec.qprime))
    rep = Report("oq", header={"seed": cfg.seed, "q": str(ring.q)})
    rnd = random.Random(cfg.seed)
    for t in range(100):
        w = "".join(rnd.choice("abcd") for _ in range(rnd.randint(0, 8)))
        nf = ring.normal_form(w)
        rep.add("confluence", {"word": w}, rewrite_randomly(ring, w, rnd) == nf)
    det = ring.normal_form("ad") - ring.normal_form("bc").scale(ring.q) - 1
    rep.add("determinant", "ad - q bc - 1", not det)
    for g in "abcd":
        x = ring.gen(g)
        D = ring.coproduct(x)
        eps = ring.one().scale(ring.counit(x))
        rep.add("antipode", g, D.contract(ring.antipode, lambda v: v) == eps
                and D.contract(lambda u: u, ring.antipode) == eps)
    return rep


SUITES = {
    "serre": suite_serre,
    "braid": suite_braid,
    "pbw-lattice": suite_pbw_lattice,
    "hopf": suite_hopf,
    "norms": suite_norms,
    "verma": suite_verma,
    "blocks": suite_blocks,
    "casimir": suite_casimir,
    "oq": suite_oq,
}
