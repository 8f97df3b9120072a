"""Sparse exact linear algebra over the rationals.

Vectors are dicts ``column -> Fraction`` with no zero entries.  Columns only
need to be mutually comparable; the pivot of a row is its largest column.
"""

from __future__ import annotations

from fractions import Fraction


class InconsistentSystem(RuntimeError):
    """An exact solve had no solution where the algebra guarantees one."""


def axpy(y: dict, a, x: dict) -> None:
    """y += a * x, in place, dropping zeros."""
    if not a:
        return
    for k, v in x.items():
        nv = y.get(k, 0) + a * v
        if nv:
            y[k] = nv
        else:
            y.pop(k, None)


class Echelon:
    """Row-echelon basis of a subspace; ``reduce`` returns the canonical remainder.

    With ``track=True`` every row remembers which combination of the inserted
    vectors produced it, which turns ``reduce`` into an exact solver.
    """

    def __init__(self, track: bool = False):
        self.rows: dict = {}
        self.tags: dict = {}
        self.track = track

    def __len__(self) -> int:
        return len(self.rows)

    def _reduce(self, v: dict, tag: dict | None):
        rows = self.rows
        while True:
            best = None
            for c in v:
                if c in rows and (best is None or c > best):
                    best = c
            if best is None:
                return v, tag
            f = v[best]
            axpy(v, -f, rows[best])
            if tag is not None:
                axpy(tag, -f, self.tags[best])

    def reduce(self, v: dict) -> dict:
        out, _ = self._reduce(dict(v), None)
        return out

    def add(self, v: dict, label=None) -> bool:
        """Insert v; returns False when v already lies in the span."""
        tag = {label: Fraction(1)} if self.track else None
        r, tag = self._reduce(dict(v), tag)
        if not r:
            return False
        piv = max(r)
        inv = 1 / Fraction(r[piv])
        r = {k: x * inv for k, x in r.items()}
        self.rows[piv] = r
        if self.track:
            self.tags[piv] = {k: x * inv for k, x in tag.items()}
        return True

    def solve(self, v: dict) -> dict:
        """Coefficients c with v = sum c[label] * inserted[label]; raises if v is outside the span."""
        if not self.track:
            raise TypeError("solve needs a tracking echelon")
        acc: dict = {}
        r, acc = self._reduce(dict(v), acc)
        if r:
            raise InconsistentSystem("vector is not in the span")
        return {k: -x for k, x in acc.items()}


def nullspace(columns: list[dict]) -> list[dict]:
    """Basis of {x : sum_j x_j * columns[j] = 0}, each basis vector a dict index -> Fraction."""
    ech = Echelon(track=True)
    basis = []
    for j, col in enumerate(columns):
        if not ech.add(col, label=j):
            rel = ech.solve(col)
            vec = {k: -x for k, x in rel.items()}
            vec[j] = Fraction(1)
            basis.append({k: x for k, x in vec.items() if x})
    return basis
