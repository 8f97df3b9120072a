from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from uqpadic.rootdata import (
    beta_sequence,
    build_root_system,
    check_w0_word,
    dominant_representative,
    dot_action,
    dot_orbit,
    is_reduced,
    longest_word,
)

TYPES = [("A", 1), ("A", 2), ("B", 2), ("G", 2), ("A", 3), ("B", 3), ("C", 3)]
weights2 = st.tuples(st.integers(-6, 6), st.integers(-6, 6))


def _rs(t):
    return build_root_system(*t)


def test_a2_positive_roots():
    rs = build_root_system("A", 2)
    assert set(rs.positive_roots) == {(1, 0), (0, 1), (1, 1)}
    assert sorted(rs.height(b) for b in rs.positive_roots) == [1, 1, 2]


def test_a1_data():
    rs = build_root_system("A", 1)
    assert rs.d == 2
    assert rs.rho == (1,)
    assert rs.pair((1,), (1,)) == Fraction(1, 2)


def test_g2_data():
    rs = build_root_system("G", 2)
    assert sorted(rs.d_i) == [1, 3]
    assert rs.N == 6


def test_invalid_types():
    for t in [("E", 6), ("A", 0), ("B", 1), ("G", 3), ("A", 9)]:
        with pytest.raises(ValueError):
            build_root_system(*t)


def test_longest_words():
    assert longest_word(_rs(("A", 1))) == (1,)
    assert longest_word(_rs(("A", 2))) == (1, 2, 1)
    assert longest_word(_rs(("B", 2))) == (1, 2, 1, 2)
    assert longest_word(_rs(("G", 2))) == (1, 2, 1, 2, 1, 2)


def test_beta_sequences():
    a2 = _rs(("A", 2))
    assert beta_sequence(a2, (1, 2, 1)) == [((1, 0), 1), ((1, 1), 2), ((0, 1), 1)]
    assert beta_sequence(_rs(("A", 1)), (1,)) == [((1,), 1)]
    b2 = _rs(("B", 2))
    betas = [b for b, _ in beta_sequence(b2, (1, 2, 1, 2))]
    assert len(set(betas)) == 4 and set(betas) == set(b2.positive_roots)


def test_non_reduced_words_rejected():
    a2 = _rs(("A", 2))
    assert not is_reduced(a2, (1, 1))
    with pytest.raises(ValueError):
        check_w0_word(a2, (1, 2))
    with pytest.raises(ValueError):
        check_w0_word(a2, (1, 1, 2))


@pytest.mark.parametrize("t", TYPES)
def test_every_rotation_word_enumerates_roots(t):
    rs = _rs(t)
    for w in _w0_words(rs):
        betas = [b for b, _ in beta_sequence(rs, w)]
        assert len(set(betas)) == rs.N
        assert set(betas) == set(rs.positive_roots)


def _w0_words(rs):
    """Reduced words of w0 reachable from the greedy word by braid moves (capped)."""
    start = longest_word(rs)
    seen = {start}
    frontier = [start]
    while frontier and len(seen) < 60:
        w = frontier.pop()
        for k in range(len(w)):
            for m in (2, 3, 4, 6):
                seg = w[k:k + m]
                if len(seg) == m and len(set(seg)) == 2 and all(seg[x] != seg[x + 1] for x in range(m - 1)):
                    i, j = seg[0], seg[1]
                    new = w[:k] + tuple(j if x % 2 == 0 else i for x in range(m)) + w[k + m:]
                    if new not in seen and is_reduced(rs, new):
                        seen.add(new)
                        frontier.append(new)
    return sorted(seen)


@pytest.mark.parametrize("t", TYPES)
def test_heights_sum_to_two_rho(t):
    rs = _rs(t)
    betas = beta_sequence(rs, longest_word(rs))
    assert all(h >= 1 for _, h in betas)
    two_rho = rs.weight_to_root(tuple(2 * x for x in rs.rho))
    assert sum(h for _, h in betas) == sum(two_rho)


@pytest.mark.parametrize("t", [("A", 2), ("B", 2), ("G", 2)])
@given(lam=weights2, mu=weights2)
def test_form_is_weyl_invariant(t, lam, mu):
    rs = _rs(t)
    for i in range(rs.rank):
        assert rs.dpair(rs.reflect_weight(i, lam), rs.reflect_weight(i, mu)) == rs.dpair(lam, mu)


def test_dot_action_examples():
    a1 = _rs(("A", 1))
    for n in range(-5, 6):
        assert dot_action(a1, (), (n,)) == (n,)
        assert dot_action(a1, (1,), (n,)) == (-n - 2,)
    for t in TYPES:
        rs = _rs(t)
        neg_rho = tuple(-x for x in rs.rho)
        assert dot_action(rs, longest_word(rs), neg_rho) == neg_rho


@pytest.mark.parametrize("t", [("A", 2), ("B", 2), ("G", 2)])
@given(lam=weights2, w1=st.lists(st.integers(1, 2), max_size=4), w2=st.lists(st.integers(1, 2), max_size=4))
def test_dot_action_composes(t, lam, w1, w2):
    rs = _rs(t)
    assert dot_action(rs, tuple(w1) + tuple(w2), lam) == dot_action(rs, tuple(w1), dot_action(rs, tuple(w2), lam))


def test_dominant_representative_examples():
    a1 = _rs(("A", 1))
    assert dominant_representative(a1, (-3,)) == ((1,), (1,))
    a2 = _rs(("A", 2))
    assert dominant_representative(a2, (-1, -1)) == ((-1, -1), ())
    assert dominant_representative(a2, (0, 0)) == ((0, 0), ())


@pytest.mark.parametrize("t", [("A", 2), ("B", 2), ("G", 2)])
@given(lam=weights2)
def test_dominant_representative_is_in_orbit(t, lam):
    rs = _rs(t)
    mu, w = dominant_representative(rs, lam)
    assert all(a + 1 >= 0 for a in mu)
    assert dot_action(rs, w, lam) == mu
    assert mu in dot_orbit(rs, lam)
    dominant = [nu for nu in dot_orbit(rs, lam) if all(a + 1 >= 0 for a in nu)]
    assert dominant == [mu]


def test_root_weight_conversions():
    for t in TYPES:
        rs = _rs(t)
        for b in rs.positive_roots:
            assert rs.weight_to_root(rs.root_to_weight(b)) == tuple(b)
    assert _rs(("A", 2)).weight_to_root((1, 0)) is None
    assert _rs(("G", 2)).weight_to_root((1, 0)) is not None
