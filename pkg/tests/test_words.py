import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from uqpadic.linalg import Echelon, InconsistentSystem, nullspace
from uqpadic.words import SerreIdeal, WordElement, serre_relator
from oracles import kostant_bruteforce

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def _small_weights(rank, total):
    return [nu for nu in itertools.product(range(total + 1), repeat=rank) if 0 < sum(nu) <= total]


@pytest.mark.parametrize("name,total", [("A2", 6), ("B2", 6), ("G2", 5)])
def test_quotient_dim_matches_kostant(request, name, total):
    qg = request.getfixturevalue(name)
    ideal = SerreIdeal(qg)
    for nu in _small_weights(2, total):
        assert ideal.quotient_dim(nu) == kostant_bruteforce(qg.rs.positive_roots, nu), nu


def test_quotient_dim_rank_one(A1):
    ideal = SerreIdeal(A1)
    assert [ideal.quotient_dim((k,)) for k in range(1, 6)] == [1] * 5


def test_relator_lies_in_ideal(A2):
    ideal = SerreIdeal(A2)
    assert ideal.reduce(serre_relator(A2, 0, 1)) == {}
    assert ideal.reduce({(0, 1): Fraction(1)}) != {}


def test_serre_relator_shape(B2):
    rel = serre_relator(B2, 1, 0)
    assert set(rel) == {(1, 1, 1, 0), (1, 1, 0, 1), (1, 0, 1, 1), (0, 1, 1, 1)}
    assert rel[(1, 1, 1, 0)] == 1 and rel[(0, 1, 1, 1)] == -1
    with pytest.raises(ValueError):
        serre_relator(B2, 0, 0)


def test_word_element_product():
    x = WordElement({(("E", 0),): 2})
    y = WordElement({(("F", 1),): Fraction(1, 2)})
    assert (x * y).terms == {(("E", 0), ("F", 1)): 1}
    assert x - x == WordElement()


@given(st.lists(st.lists(rationals, min_size=4, max_size=4), min_size=1, max_size=6))
def test_nullspace_vectors_annihilate(cols):
    columns = [{k: v for k, v in enumerate(c) if v} for c in cols]
    basis = nullspace(columns)
    ech = Echelon()
    rank = sum(ech.add(c) for c in columns)
    assert len(basis) == len(columns) - rank
    for vec in basis:
        total: dict = {}
        for j, x in vec.items():
            for k, v in columns[j].items():
                total[k] = total.get(k, 0) + x * v
        assert not any(total.values())


@given(st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=1, max_size=4), st.lists(rationals, min_size=4, max_size=4))
def test_solve_recovers_combination(vecs, coeffs):
    ech = Echelon(track=True)
    rows = [{k: v for k, v in enumerate(r) if v} for r in vecs]
    for j, r in enumerate(rows):
        ech.add(r, label=j)
    target: dict = {}
    for c, r in zip(coeffs, rows):
        for k, v in r.items():
            target[k] = target.get(k, 0) + c * v
    target = {k: v for k, v in target.items() if v}
    sol = ech.solve(target)
    back: dict = {}
    for j, c in sol.items():
        for k, v in rows[j].items():
            back[k] = back.get(k, 0) + c * v
    assert {k: v for k, v in back.items() if v} == target


def test_solve_rejects_outside_span():
    ech = Echelon(track=True)
    ech.add({0: Fraction(1)}, label="x")
    with pytest.raises(InconsistentSystem):
        ech.solve({1: Fraction(1)})
    with pytest.raises(TypeError):
        Echelon().solve({0: 1})
