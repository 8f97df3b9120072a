import random

import pytest

from oracles import kostant_bruteforce, sln_vector
from uqpadic import get_group
from uqpadic.braid import check_braid_relations
from uqpadic.category_o import verma_weight_dim
from uqpadic.lattice import m_threshold, verify_pbw_lattice
from uqpadic.scalars import valuation
from uqpadic.suites import random_generator_product, random_word
from uqpadic.uqcore import serre_element

RANK3 = ["A3", "B3", "C3"]


@pytest.mark.parametrize("name", RANK3)
def test_serre_and_braid(name):
    qg = get_group(name)
    for i in range(1, 4):
        for j in range(1, 4):
            if i != j:
                assert not qg.word_to_pbw(serre_element(qg, i, j, "E"))
                assert not qg.word_to_pbw(serre_element(qg, i, j, "F"))
    assert all(rec["ok"] for rec in check_braid_relations(qg))


@pytest.mark.parametrize("name", RANK3)
def test_root_vectors_integral(name):
    qg = get_group(name)
    for j in range(qg.N):
        beta = qg.betas[j]
        for w, c in qg.root_vector_eword(j).items():
            assert valuation(c, qg.spec.p) >= 0
            assert tuple(w.count(i) for i in range(3)) == tuple(beta)


@pytest.mark.parametrize("name", RANK3)
def test_pbw_lattice_low_height(name):
    qg = get_group(name)
    rep = verify_pbw_lattice(qg, m_threshold(qg), 3)
    assert rep.passed and rep.min_of("min_slack") == 0


@pytest.mark.parametrize("name", RANK3)
def test_hopf_spot_checks(name):
    qg = get_group(name)
    rnd = random.Random(3)
    for _ in range(10):
        x = random_generator_product(qg, rnd, 3)
        left, right = qg.coassociativity_sides(x)
        assert left == right
        assert qg.coproduct(x).contract(qg.antipode, lambda v: v) == qg.scalar(qg.counit(x))


def test_a3_normal_form_on_vector_module():
    qg = get_group("A3")
    V = sln_vector(qg.rs, qg.spec)
    rnd = random.Random(8)
    for _ in range(40):
        w = random_word(qg, rnd, 5)
        assert V.evaluate(qg.pbw_to_word(qg.word_to_pbw(w))) == V.evaluate(w)


def test_a3_verma_dims():
    qg = get_group("A3")
    rs = qg.rs
    for nu in [(1, 1, 1), (2, 1, 0), (1, 2, 1), (2, 2, 2)]:
        mu = tuple(a - b for a, b in zip(rs.rho, rs.root_to_weight(nu)))
        assert verma_weight_dim(qg, rs.rho, mu) == kostant_bruteforce(rs.positive_roots, nu)
