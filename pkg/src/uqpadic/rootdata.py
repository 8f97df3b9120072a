"""Root systems of simple Lie algebras, the weight pairing, Weyl group words
and the dot action.

Weights are integer tuples in the fundamental-weight basis.  Roots are kept
in simple-root coordinates and converted with the Cartan matrix when they
need to be paired with weights.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm

Weight = tuple
ReducedWord = tuple

MAX_RANK = 4

__all__ = [
    "RootSystem",
    "build_root_system",
    "longest_word",
    "beta_sequence",
    "dot_action",
    "dominant_representative",
    "is_reduced",
    "check_w0_word",
    "MAX_RANK",
]


def _symmetrized_form(lie_type: str, n: int) -> list[list[int]]:
    """(alpha_i, alpha_j) with short roots of squared length 2 (Bourbaki labels)."""
    B = [[0] * n for _ in range(n)]

    def link(i, j, v):
        B[i][j] = B[j][i] = v

    if lie_type == "A":
        for i in range(n):
            B[i][i] = 2
        for i in range(n - 1):
            link(i, i + 1, -1)
    elif lie_type == "B":
        for i in range(n - 1):
            B[i][i] = 4
        B[n - 1][n - 1] = 2
        for i in range(n - 1):
            link(i, i + 1, -2)
    elif lie_type == "C":
        for i in range(n - 1):
            B[i][i] = 2
        B[n - 1][n - 1] = 4
        for i in range(n - 2):
            link(i, i + 1, -1)
        link(n - 2, n - 1, -2)
    elif lie_type == "D":
        for i in range(n):
            B[i][i] = 2
        for i in range(n - 2):
            link(i, i + 1, -1)
        link(n - 3, n - 1, -1)
    elif lie_type == "E":
        for i in range(n):
            B[i][i] = 2
        link(0, 2, -1)
        link(1, 3, -1)
        for i in range(2, n - 1):
            link(i, i + 1, -1)
    elif lie_type == "F":
        B[0][0] = B[1][1] = 4
        B[2][2] = B[3][3] = 2
        link(0, 1, -2)
        link(1, 2, -2)
        link(2, 3, -1)
    elif lie_type == "G":
        B[0][0] = 2
        B[1][1] = 6
        link(0, 1, -3)
    return B


_VALID = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


def _inverse(M: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(M)
    A = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[piv] = A[piv], A[c]
        pv = A[c][c]
        A[c] = [x / pv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


@dataclass(frozen=True, eq=False)
class RootSystem:
    lie_type: str
    rank: int
    cartan: tuple  # cartan[i][j] = <alpha_i^vee, alpha_j>
    form: tuple  # (alpha_i, alpha_j)
    d_i: tuple
    d: int
    pairing: tuple  # d * <varpi_i, varpi_j>
    positive_roots: tuple  # simple-root coordinates, sorted by (height, coords)

    @property
    def n(self) -> int:
        return self.rank

    @property
    def N(self) -> int:
        return len(self.positive_roots)

    @property
    def name(self) -> str:
        return f"{self.lie_type}{self.rank}"

    def __repr__(self) -> str:
        return f"RootSystem({self.name})"

    def __eq__(self, other):
        return isinstance(other, RootSystem) and (self.lie_type, self.rank) == (other.lie_type, other.rank)

    def __hash__(self):
        return hash((self.lie_type, self.rank))

    # -- conversions -------------------------------------------------
    def zero(self) -> Weight:
        return (0,) * self.rank

    def fundamental(self, i: int) -> Weight:
        return tuple(int(k == i) for k in range(self.rank))

    def simple_root(self, i: int) -> Weight:
        """alpha_i in fundamental-weight coordinates (0-based index)."""
        return tuple(self.cartan[k][i] for k in range(self.rank))

    def root_to_weight(self, c) -> Weight:
        n = self.rank
        return tuple(sum(self.cartan[k][j] * c[j] for j in range(n)) for k in range(n))

    def weight_to_root(self, lam) -> tuple | None:
        """Simple-root coordinates of lam, or None when lam is not in Q."""
        out = []
        for row in self._cartan_inverse:
            x = sum(a * b for a, b in zip(row, lam))
            if x.denominator != 1:
                return None
            out.append(int(x))
        return tuple(out)

    @cached_property
    def _cartan_inverse(self):
        return _inverse([list(r) for r in self.cartan])

    def in_root_lattice(self, lam) -> bool:
        return self.weight_to_root(lam) is not None

    # -- pairing -----------------------------------------------------
    def dpair(self, lam, mu) -> int:
        """d * <lam, mu> for weights in fundamental coordinates (an integer)."""
        P = self.pairing
        n = self.rank
        return sum(lam[i] * P[i][j] * mu[j] for i in range(n) for j in range(n) if lam[i] and mu[j])

    def pair(self, lam, mu) -> Fraction:
        return Fraction(self.dpair(lam, mu), self.d)

    def dpair_root(self, lam, beta) -> int:
        """d * <lam, beta> with lam a weight and beta in root coordinates."""
        # <varpi_k, alpha_j> = d_j delta_kj
        return self.d * sum(lam[j] * self.d_i[j] * beta[j] for j in range(self.rank))

    def form_roots(self, a, b) -> int:
        """(a, b) for two elements of Q in root coordinates."""
        n = self.rank
        return sum(a[i] * self.form[i][j] * b[j] for i in range(n) for j in range(n) if a[i] and b[j])

    def height(self, beta) -> int:
        return sum(beta)

    def coroot_pairing(self, lam, beta) -> Fraction:
        """<lam, beta^vee> = 2 <lam, beta> / <beta, beta>."""
        return Fraction(2 * self.dpair_root(lam, beta), self.d * self.form_roots(beta, beta))

    # -- Weyl group --------------------------------------------------
    def reflect_weight(self, i: int, lam) -> Weight:
        li = lam[i]
        if li == 0:
            return tuple(lam)
        return tuple(lam[k] - li * self.cartan[k][i] for k in range(self.rank))

    def reflect_root(self, i: int, beta) -> tuple:
        c = sum(self.cartan[i][j] * beta[j] for j in range(self.rank))
        return tuple(b - (c if k == i else 0) for k, b in enumerate(beta))

    def apply_word_weight(self, word, lam) -> Weight:
        for i in reversed(word):
            lam = self.reflect_weight(i - 1, lam)
        return lam

    def apply_word_root(self, word, beta) -> tuple:
        for i in reversed(word):
            beta = self.reflect_root(i - 1, beta)
        return beta

    @cached_property
    def rho(self) -> Weight:
        return (1,) * self.rank

    @cached_property
    def highest_root(self) -> tuple:
        return max(self.positive_roots, key=sum)

    def to_json(self) -> dict:
        return {
            "type": self.lie_type,
            "rank": self.rank,
            "cartan": [list(r) for r in self.cartan],
            "d_i": list(self.d_i),
            "d": self.d,
            "pairing_times_d": [list(r) for r in self.pairing],
            "positive_roots": [list(b) for b in self.positive_roots],
        }


def build_root_system(lie_type: str, rank: int, max_rank: int = MAX_RANK) -> RootSystem:
    lie_type = lie_type.upper()
    if lie_type not in _VALID or not _VALID[lie_type](rank):
        raise ValueError(f"unsupported root system {lie_type}{rank}")
    if rank > max_rank:
        raise ValueError(f"rank {rank} exceeds the configured cap {max_rank}")
    n = rank
    B = _symmetrized_form(lie_type, n)
    d_i = tuple(B[i][i] // 2 for i in range(n))
    cartan = tuple(tuple(2 * B[i][j] // B[i][i] for j in range(n)) for i in range(n))
    # <varpi_i, varpi_j> = (D B^{-1} D)_{ij}
    Binv = _inverse(B)
    G = [[d_i[i] * Binv[i][j] * d_i[j] for j in range(n)] for i in range(n)]
    d = lcm(*[g.denominator for row in G for g in row])
    pairing = tuple(tuple(int(g * d) for g in row) for row in G)

    simple = [tuple(int(k == i) for k in range(n)) for i in range(n)]
    found = set(simple)
    queue = deque(simple)

    def refl(i, beta):
        c = sum(cartan[i][j] * beta[j] for j in range(n))
        return tuple(b - (c if k == i else 0) for k, b in enumerate(beta))

    while queue:
        beta = queue.popleft()
        for i in range(n):
            g = refl(i, beta)
            if all(x >= 0 for x in g) and g not in found:
                found.add(g)
                queue.append(g)
    roots = tuple(sorted(found, key=lambda b: (sum(b), b)))
    rs = RootSystem(lie_type, n, cartan, tuple(map(tuple, B)), d_i, d, pairing, roots)

    # sanity: rho as sum of fundamental weights equals half the positive-root sum
    two_rho = [0] * n
    for b in roots:
        w = rs.root_to_weight(b)
        for k in range(n):
            two_rho[k] += w[k]
    if tuple(x // 2 for x in two_rho) != rs.rho or any(x % 2 for x in two_rho):
        raise AssertionError("rho mismatch")
    for i in range(n):
        for j in range(n):
            if d_i[i] * cartan[i][j] != d_i[j] * cartan[j][i]:
                raise AssertionError("Cartan matrix not symmetrizable by d_i")
    return rs


def is_reduced(rs: RootSystem, word) -> bool:
    """A word is reduced iff every prefix sends the next simple root to a positive root."""
    for j, i in enumerate(word):
        if not 1 <= i <= rs.rank:
            return False
        beta = rs.apply_word_root(word[:j], _unit(rs.rank, i - 1))
        if any(x < 0 for x in beta):
            return False
    return True


def _unit(n: int, i: int) -> tuple:
    return tuple(int(k == i) for k in range(n))


def check_w0_word(rs: RootSystem, word) -> tuple:
    word = tuple(int(i) for i in word)
    if len(word) != rs.N or not is_reduced(rs, word):
        raise ValueError(f"{word} is not a reduced expression of w0 for {rs.name}")
    return word


def longest_word(rs: RootSystem) -> ReducedWord:
    """Greedy reduced expression of w0: extend by the smallest s_i that increases length."""
    word: list[int] = []
    while len(word) < rs.N:
        for i in range(rs.rank):
            beta = rs.apply_word_root(tuple(word), _unit(rs.rank, i))
            if all(x >= 0 for x in beta):
                word.append(i + 1)
                break
        else:  # pragma: no cover - every proper prefix of w0 has an ascent
            raise AssertionError("greedy descent stalled")
    return tuple(word)


def beta_sequence(rs: RootSystem, word) -> list[tuple[tuple, int]]:
    """beta_j = s_{i_1} ... s_{i_{j-1}}(alpha_{i_j}) with their heights."""
    word = check_w0_word(rs, word)
    out = []
    for j, i in enumerate(word):
        beta = rs.apply_word_root(word[:j], _unit(rs.rank, i - 1))
        out.append((beta, sum(beta)))
    if sorted(b for b, _ in out) != sorted(rs.positive_roots):  # pragma: no cover
        raise AssertionError("beta sequence does not enumerate the positive roots")
    return out


def dot_action(rs: RootSystem, word, lam) -> Weight:
    rho = rs.rho
    shifted = tuple(a + b for a, b in zip(lam, rho))
    img = rs.apply_word_weight(tuple(word), shifted)
    return tuple(a - b for a, b in zip(img, rho))


def dominant_representative(rs: RootSystem, lam) -> tuple[Weight, ReducedWord]:
    """The unique mu in W.lam with mu + rho dominant, and a word w with w.lam = mu."""
    lam = tuple(lam)
    seen = {lam: ()}
    queue = deque([lam])
    while queue:
        mu = queue.popleft()
        if all(a + 1 >= 0 for a in mu):
            return mu, seen[mu]
        for i in range(rs.rank):
            nu = dot_action(rs, (i + 1,), mu)
            if nu not in seen:
                seen[nu] = (i + 1,) + seen[mu]
                queue.append(nu)
    raise AssertionError("dot orbit without a dominant member")  # pragma: no cover


def dot_orbit(rs: RootSystem, lam) -> set:
    lam = tuple(lam)
    seen = {lam}
    queue = deque([lam])
    while queue:
        mu = queue.popleft()
        for i in range(rs.rank):
            nu = dot_action(rs, (i + 1,), mu)
            if nu not in seen:
                seen.add(nu)
                queue.append(nu)
    return seen
