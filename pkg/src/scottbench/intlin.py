"""Exact integer linear algebra: determinants, Smith normal form, basis extension."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major

    def __post_init__(self):
        if self.rows <= 0 or self.cols <= 0:
            raise InputError("matrix dimensions must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise InputError("entry count does not match dimensions")
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise InputError("ragged or empty matrix")
        return cls(len(rows), len(rows[0]), tuple(e for r in rows for e in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise InputError("dimension mismatch in product")
        return IntMatrix(
            self.rows,
            other.cols,
            tuple(
                sum(self[i, k] * other[k, j] for k in range(self.cols))
                for i in range(self.rows)
                for j in range(other.cols)
            ),
        )

    def apply(self, vec) -> tuple:
        if len(vec) != self.cols:
            raise InputError("vector length mismatch")
        return tuple(sum(self[i, k] * vec[k] for k in range(self.cols)) for i in range(self.rows))

    def __str__(self):
        return "[" + " ".join("[" + " ".join(map(str, r)) + "]" for r in self.to_rows()) + "]"


def determinant(M: IntMatrix) -> int:
    """Bareiss fraction-free elimination."""
    if M.rows != M.cols:
        raise InputError("determinant of a non-square matrix")
    n = M.rows
    a = M.to_rows()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(M: IntMatrix) -> tuple:
    """Return ``(S, D, T)`` with ``S M T = D`` diagonal, ``d_i | d_(i+1)``, ``d_i >= 0``.

    Pivot: the smallest absolute nonzero entry of the remaining block, ties
    broken by (row, column) position.
    """
    m, n = M.rows, M.cols
    a = M.to_rows()
    S = IntMatrix.identity(m).to_rows()
    T = IntMatrix.identity(n).to_rows()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        S[i], S[j] = S[j], S[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in T:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, c):  # row dst += c * row src
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        S[dst] = [x + c * y for x, y in zip(S[dst], S[src])]

    def add_col(dst, src, c):
        for r in a:
            r[dst] += c * r[src]
        for r in T:
            r[dst] += c * r[src]

    for t in range(min(m, n)):
        while True:
            cands = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
            if not cands:
                break
            _, pi, pj = min(cands)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = a[t][t]
            done = True
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    add_row(i, t, -q)
                if a[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    add_col(j, t, -q)
                if a[t][j]:
                    done = False
            if not done:
                continue
            # pivot must divide the rest of the block
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            S[t] = [-x for x in S[t]]
        if not any(a[i][j] for i in range(t, m) for j in range(t, n)):
            break
    return IntMatrix.from_rows(S), IntMatrix.from_rows(a), IntMatrix.from_rows(T)


def snf_diagonal(M: IntMatrix) -> list:
    _, D, _ = smith_normal_form(M)
    return [D[i, i] for i in range(min(D.rows, D.cols))]


def extends_to_basis(rows: IntMatrix) -> bool:
    """Whether the k rows extend to a basis of Z^n: all SNF invariants equal 1."""
    if rows.rows > rows.cols:
        raise InputError("more rows than columns")
    return all(d == 1 for d in snf_diagonal(rows))


def left_kernel(M: IntMatrix) -> list:
    """A Z-basis of ``{v : v M = 0}`` (rows of S past the rank)."""
    S, D, _ = smith_normal_form(M)
    rank = sum(1 for i in range(min(D.rows, D.cols)) if D[i, i])
    return [tuple(S.to_rows()[i]) for i in range(rank, M.rows)]


def lattice_member(rows: list, v) -> bool:
    """Whether ``v`` is an integer combination of ``rows``."""
    v = tuple(v)
    if not rows:
        return not any(v)
    S, D, T = smith_normal_form(IntMatrix.from_rows(rows))
    # u M = v  <=>  (u S^-1) D = v T
    w = IntMatrix.from_rows([list(v)]) @ T
    for j in range(w.cols):
        d = D[j, j] if j < min(D.rows, D.cols) else 0
        if d == 0:
            if w[0, j]:
                return False
        elif w[0, j] % d:
            return False
    return True


def same_lattice(a: list, b: list) -> bool:
    return all(lattice_member(b, r) for r in a) and all(lattice_member(a, r) for r in b)
