"""Lusztig braid automorphisms T_i and the root vectors they produce.

The letter images used here are

    T_i(E_i) = -F_i K_{alpha_i},     T_i(F_i) = -K_{-alpha_i} E_i,
    T_i(K_lam) = K_{s_i lam},
    T_i(E_j) = sum_{s=0}^{r} (-1)^{s+r} q_i^{-s} E_i^{(r-s)} E_j E_i^{(s)},
    T_i(F_j) = sum_{s=0}^{r} (-1)^{s+r} q_i^{s}  F_i^{(s)} F_j F_i^{(r-s)},

with r = -a_ij and divided powers X^{(k)} = X^k / [k]_{q_i}!.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import qfactorial
from .rootdata import is_reduced
from .uqcore import AlgebraElement, NormalFormError, QuantumGroup, get_group
from .words import WordElement, straighten

__all__ = [
    "letter_image",
    "letter_image_inverse",
    "braid_T",
    "braid_T_inverse",
    "braid_Tw",
    "compute_root_vector",
    "root_vector",
    "check_braid_relations",
]


def _divided(kind: str, i: int, k: int, qi: Fraction) -> WordElement:
    return WordElement({((kind, i),) * k: 1 / qfactorial(k, qi)})


def letter_image(qg: QuantumGroup, i: int, letter) -> WordElement:
    """T_i applied to a single letter (0-based simple index i)."""
    rs = qg.rs
    kind, j = letter
    qi = qg.qi(i)
    alpha = rs.simple_root(i)
    if kind == "K":
        return WordElement({(("K", rs.reflect_weight(i, j)),): 1})
    if j == i:
        if kind == "E":
            return WordElement({(("F", i), ("K", alpha)): -1})
        return WordElement({(("K", tuple(-a for a in alpha)), ("E", i)): -1})
    r = -rs.cartan[i][j]
    out = WordElement()
    for s in range(r + 1):
        sign = (-1) ** (s + r)
        if kind == "E":
            term = _divided("E", i, r - s, qi) * WordElement.letter(("E", j)) * _divided("E", i, s, qi)
            out = out + (sign * qi ** (-s)) * term
        else:
            term = _divided("F", i, s, qi) * WordElement.letter(("F", j)) * _divided("F", i, r - s, qi)
            out = out + (sign * qi**s) * term
    return out


def letter_image_inverse(qg: QuantumGroup, i: int, letter) -> WordElement:
    """T_i^{-1} applied to a single letter."""
    rs = qg.rs
    kind, j = letter
    qi = qg.qi(i)
    alpha = rs.simple_root(i)
    if kind == "K":
        return WordElement({(("K", rs.reflect_weight(i, j)),): 1})
    if j == i:
        if kind == "E":
            return WordElement({(("K", tuple(-a for a in alpha)), ("F", i)): -1})
        return WordElement({(("E", i), ("K", alpha)): -1})
    r = -rs.cartan[i][j]
    out = WordElement()
    for s in range(r + 1):
        sign = (-1) ** (s + r)
        if kind == "E":
            term = _divided("E", i, s, qi) * WordElement.letter(("E", j)) * _divided("E", i, r - s, qi)
            out = out + (sign * qi ** (-s)) * term
        else:
            term = _divided("F", i, r - s, qi) * WordElement.letter(("F", j)) * _divided("F", i, s, qi)
            out = out + (sign * qi**s) * term
    return out


def _apply(qg: QuantumGroup, x: AlgebraElement, i: int, inverse: bool) -> AlgebraElement:
    if not 1 <= i <= qg.n:
        raise ValueError(f"braid index {i} out of range 1..{qg.n}")
    img = letter_image_inverse if inverse else letter_image
    cache: dict = {}

    def fn(a):
        out = cache.get(a)
        if out is None:
            out = cache[a] = img(qg, i - 1, a)
        return out

    return qg.word_to_pbw(qg.pbw_to_word(x).map_letters(fn))


def braid_T(i: int, x: AlgebraElement) -> AlgebraElement:
    """T_i(x) for a 1-based simple index i."""
    return _apply(x.parent, x, i, inverse=False)


def braid_T_inverse(i: int, x: AlgebraElement) -> AlgebraElement:
    return _apply(x.parent, x, i, inverse=True)


def braid_Tw(word, x: AlgebraElement, check_reduced: bool = True) -> AlgebraElement:
    """T_w(x) = T_{i_1}(T_{i_2}(... T_{i_k}(x))) for w = s_{i_1} ... s_{i_k}."""
    word = tuple(word)
    if check_reduced and not is_reduced(x.parent.rs, word):
        raise ValueError(f"{word} is not a reduced word")
    for i in reversed(word):
        x = braid_T(i, x)
    return x


def _canonical_e_part(qg: QuantumGroup, x: WordElement) -> dict:
    """Project a word element that is known to lie in U^+ onto E-words modulo Serre.

    Straightening puts every word into F . K . E form; since only a single F_i
    ever appears, distinct (F-word, K) groups are independent and all of them
    except (empty, 0) must vanish modulo the Serre ideal.
    """
    groups: dict = {}
    for (f, lam, e), c in straighten(qg, x).items():
        groups.setdefault((f, lam), {})[e] = c
    zero = qg.zero_w
    plus = {}
    for (f, lam), vec in groups.items():
        red = qg.serre.reduce(vec)
        if f == () and lam == zero:
            plus = red
        elif red:
            raise NormalFormError(f"root vector computation left a non-U^+ part F{f} K{lam}")
    return plus


def compute_root_vector(qg: QuantumGroup, j: int) -> dict:
    """E-word expansion of E_{beta_j} = T_{i_1} ... T_{i_{j-1}}(E_{i_j}) (0-based j)."""
    word = qg.word
    x = {(word[j] - 1,): Fraction(1)}
    for m in range(j - 1, -1, -1):
        i = word[m] - 1
        cache: dict = {}

        def fn(a, i=i, cache=cache):
            out = cache.get(a)
            if out is None:
                out = cache[a] = letter_image(qg, i, a)
            return out

        x = _canonical_e_part(qg, WordElement.from_eword(x).map_letters(fn))
    if not x:
        raise NormalFormError(f"root vector {j + 1} vanished")
    return x


def root_vector(rs, word, j: int, spec=None) -> WordElement:
    """Word expansion of E_{beta_j} (1-based j) for the reduced word ``word`` of w0.

    ``rs`` may also be a QuantumGroup, in which case its word is used when ``word`` is None.
    """
    if isinstance(rs, QuantumGroup):
        qg = rs if word is None or tuple(word) == rs.word else get_group(rs.rs, rs.spec, word)
    else:
        qg = get_group(rs, spec, word)
    if not 1 <= j <= qg.N:
        raise ValueError(f"root index {j} out of range 1..{qg.N}")
    return WordElement.from_eword(qg.root_vector_eword(j - 1))


def _braid_length(m: int) -> int:
    return {0: 2, 1: 3, 2: 4, 3: 6}[m]


def check_braid_relations(qg: QuantumGroup) -> list[dict]:
    """Check T_i T_j T_i ... = T_j T_i T_j ... on every generator; returns one record per (i, j, generator)."""
    rs = qg.rs
    gens = []
    for k in range(qg.n):
        gens.append((f"E{k + 1}", qg.E(k)))
        gens.append((f"F{k + 1}", qg.F(k)))
        gens.append((f"K{k + 1}", qg.K(rs.fundamental(k))))
    out = []
    for i in range(1, qg.n + 1):
        for j in range(i + 1, qg.n + 1):
            m = _braid_length(rs.cartan[i - 1][j - 1] * rs.cartan[j - 1][i - 1])
            w1 = tuple(i if t % 2 == 0 else j for t in range(m))
            w2 = tuple(j if t % 2 == 0 else i for t in range(m))
            for name, g in gens:
                ok = braid_Tw(w1, g) == braid_Tw(w2, g)
                out.append({"i": i, "j": j, "generator": name, "ok": ok})
    return out
