"""Exact dense linear algebra over prime fields and the rationals.

Everything downstream (module categories, resolutions, certification)
reduces to row reduction of matrices over an exact field.  Two carriers:

* prime field F_p: numpy int64 arrays with canonical entries 0..p-1,
  all vectorized ops followed by ``% p``;
* rationals: numpy object arrays of ``fractions.Fraction``.

No floating point is used anywhere in this package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

# int64 products must not overflow: entries < p, inner dimensions stay at
# desk scale (< 2**12), so (p-1)**2 * 2**12 < 2**63 requires p < 2**25.
# Keep a comfortable margin.
MAX_PRIME = 1 << 20


def is_prime(n: int) -> bool:
    """Trial-division primality check, adequate for desk-scale moduli."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """An exact coefficient field: F_p (``kind="prime"``) or Q (``kind="rational"``)."""

    kind: str
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind == "prime":
            if self.p is None or not is_prime(self.p):
                raise ValueError(f"modulus {self.p!r} is not prime")
            if self.p >= MAX_PRIME:
                raise ValueError(f"prime {self.p} exceeds the exact-arithmetic bound {MAX_PRIME}")
        elif self.kind == "rational":
            if self.p is not None:
                raise ValueError("rational field takes no modulus")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @property
    def zero(self):
        return 0 if self.kind == "prime" else Fraction(0)

    @property
    def one(self):
        return 1 if self.kind == "prime" else Fraction(1)

    def coerce(self, x):
        """Canonical representative of a scalar: int in 0..p-1, or a Fraction."""
        if self.kind == "prime":
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"non-integer scalar {x} in a prime field")
                x = x.numerator
            return int(x) % self.p
        if isinstance(x, str):
            return Fraction(x)
        return Fraction(x)

    def inv(self, x):
        if self.kind == "prime":
            x = int(x) % self.p
            if x == 0:
                raise ZeroDivisionError("inverse of 0")
            return pow(x, self.p - 2, self.p)
        if x == 0:
            raise ZeroDivisionError("inverse of 0")
        return Fraction(1) / x

    def scalar_to_json(self, x):
        if self.kind == "prime":
            return int(x)
        x = Fraction(x)
        return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def to_json(self) -> dict:
        if self.kind == "prime":
            return {"type": "prime", "p": self.p}
        return {"type": "rational"}

    @staticmethod
    def from_json(obj: dict) -> "FieldSpec":
        if not isinstance(obj, dict) or "type" not in obj:
            raise ValueError("field spec must be an object with a 'type' key")
        extra = set(obj) - {"type", "p"}
        if extra:
            raise ValueError(f"unknown field keys {sorted(extra)}")
        if obj["type"] == "prime":
            return FieldSpec("prime", int(obj["p"]))
        if obj["type"] == "rational":
            if "p" in obj:
                raise ValueError("rational field takes no modulus")
            return FieldSpec("rational")
        raise ValueError(f"unknown field type {obj['type']!r}")


def _empty(field: FieldSpec, rows: int, cols: int) -> np.ndarray:
    if field.kind == "prime":
        return np.zeros((rows, cols), dtype=np.int64)
    arr = np.empty((rows, cols), dtype=object)
    arr[:, :] = Fraction(0)
    return arr


class Mat:
    """Immutable dense matrix over a :class:`FieldSpec`.

    Stored row-major; most callers use the row-vector convention
    (vectors are 1 x n matrices acted on by right multiplication).
    """

    __slots__ = ("field", "a")

    def __init__(self, field: FieldSpec, a: np.ndarray, _copy: bool = True):
        assert a.ndim == 2
        self.field = field
        self.a = a.copy() if _copy else a
        self.a.setflags(write=False)

    # -- constructors -------------------------------------------------

    @staticmethod
    def zeros(field: FieldSpec, rows: int, cols: int) -> "Mat":
        return Mat(field, _empty(field, rows, cols), _copy=False)

    @staticmethod
    def identity(field: FieldSpec, n: int) -> "Mat":
        a = _empty(field, n, n)
        for i in range(n):
            a[i, i] = field.one
        return Mat(field, a, _copy=False)

    @staticmethod
    def from_rows(field: FieldSpec, rows: Iterable[Iterable]) -> "Mat":
        rows = [list(r) for r in rows]
        n = len(rows[0]) if rows else 0
        a = _empty(field, len(rows), n)
        for i, r in enumerate(rows):
            if len(r) != n:
                raise ValueError("ragged rows")
            for j, x in enumerate(r):
                a[i, j] = field.coerce(x)
        return Mat(field, a, _copy=False)

    @staticmethod
    def row(field: FieldSpec, entries: Iterable) -> "Mat":
        return Mat.from_rows(field, [list(entries)])

    # -- shape / access -----------------------------------------------

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    def __getitem__(self, ij):
        return self.a[ij]

    def row_at(self, i: int) -> "Mat":
        return Mat(self.field, self.a[i : i + 1])

    def take_rows(self, idx) -> "Mat":
        return Mat(self.field, self.a[list(idx), :])

    def tolist(self) -> list:
        return [[x for x in row] for row in self.a.tolist()]

    def to_json(self) -> list:
        f = self.field
        return [[f.scalar_to_json(x) for x in row] for row in self.a.tolist()]

    def is_zero(self) -> bool:
        if self.field.kind == "prime":
            return not self.a.any()
        return all(x == 0 for x in self.a.flat)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        if self.field != other.field or self.a.shape != other.a.shape:
            return False
        return bool((self.a == other.a).all())

    def __hash__(self):
        raise TypeError("Mat is not hashable")

    def __repr__(self):
        return f"Mat({self.field.kind},{self.rows}x{self.cols})"

    # -- arithmetic ----------------------------------------------------

    def _wrap(self, a: np.ndarray) -> "Mat":
        if self.field.kind == "prime":
            a = a % self.field.p
        return Mat(self.field, a, _copy=False)

    def __add__(self, other: "Mat") -> "Mat":
        assert self.field == other.field
        return self._wrap(self.a + other.a)

    def __sub__(self, other: "Mat") -> "Mat":
        assert self.field == other.field
        return self._wrap(self.a - other.a)

    def __neg__(self) -> "Mat":
        return self._wrap(-self.a)

    def scale(self, c) -> "Mat":
        c = self.field.coerce(c)
        return self._wrap(self.a * c)

    def __matmul__(self, other: "Mat") -> "Mat":
        assert self.field == other.field
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.a.shape} @ {other.a.shape}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return Mat.zeros(self.field, self.rows, other.cols)
        if self.field.kind == "prime":
            return self._wrap(self.a @ other.a)
        return Mat(self.field, self.a.dot(other.a), _copy=False)

    @property
    def T(self) -> "Mat":
        return Mat(self.field, self.a.T)

    def hstack(self, other: "Mat") -> "Mat":
        assert self.field == other.field and self.rows == other.rows
        return Mat(self.field, np.hstack([self.a, other.a]), _copy=False)

    def vstack(self, other: "Mat") -> "Mat":
        assert self.field == other.field and self.cols == other.cols
        return Mat(self.field, np.vstack([self.a, other.a]), _copy=False)

    @staticmethod
    def stack_rows(field: FieldSpec, mats: list["Mat"]) -> "Mat":
        """Vertical stack; empty list gives a 0 x 0 matrix."""
        mats = [m for m in mats]
        if not mats:
            return Mat.zeros(field, 0, 0)
        cols = mats[0].cols
        assert all(m.cols == cols for m in mats)
        return Mat(field, np.vstack([m.a for m in mats]), _copy=False)

    @staticmethod
    def block_diag(field: FieldSpec, blocks: list["Mat"]) -> "Mat":
        r = sum(b.rows for b in blocks)
        c = sum(b.cols for b in blocks)
        a = _empty(field, r, c)
        i = j = 0
        for b in blocks:
            a[i : i + b.rows, j : j + b.cols] = b.a
            i += b.rows
            j += b.cols
        return Mat(field, a, _copy=False)

    def flatten_row(self) -> "Mat":
        """Matrix entries as a single 1 x (rows*cols) row, row-major."""
        return Mat(self.field, self.a.reshape(1, -1))


# -- row reduction ------------------------------------------------------


def _rref_prime(a: np.ndarray, p: int):
    a = a % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        # entries stay below p**2 before reduction: safe in int64
        a -= np.outer(col, a[r])
        a %= p
        pivots.append(c)
        r += 1
    return a, pivots


def _rref_rational(a: np.ndarray):
    a = a.copy()
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = None
        for i in range(r, rows):
            if a[i, c] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * (Fraction(1) / a[r, c])
        for i in range(rows):
            if i != r and a[i, c] != 0:
                a[i] = a[i] - a[i, c] * a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: Mat):
    """Reduced row-echelon form.  Returns ``(R, pivots, rank)``."""
    if m.rows == 0 or m.cols == 0:
        return Mat(m.field, m.a), [], 0
    if m.field.kind == "prime":
        a, pivots = _rref_prime(m.a.copy(), m.field.p)
    else:
        a, pivots = _rref_rational(m.a)
    return Mat(m.field, a, _copy=False), pivots, len(pivots)


def rank(m: Mat) -> int:
    return rref(m)[2]


def row_basis(m: Mat) -> Mat:
    """Canonical basis (rref rows) of the row space."""
    r, _, rk = rref(m)
    return Mat(m.field, r.a[:rk, :])


def nullspace(m: Mat) -> Mat:
    """Basis of the right kernel {x : m @ x = 0}, returned as columns."""
    r, pivots, rk = rref(m)
    field = m.field
    free = [c for c in range(m.cols) if c not in pivots]
    basis = _empty(field, m.cols, len(free))
    for k, fc in enumerate(free):
        basis[fc, k] = field.one
        for i, pc in enumerate(pivots):
            basis[pc, k] = -r.a[i, fc] if field.kind == "rational" else (-int(r.a[i, fc])) % field.p
    return Mat(field, basis, _copy=False)


def solve(a: Mat, b: Mat) -> Optional[Mat]:
    """Any exact solution x of ``a @ x = b``, or None iff inconsistent."""
    if a.rows != b.rows:
        raise ValueError(f"solve: {a.rows} equations vs rhs with {b.rows} rows")
    aug = a.hstack(b)
    r, pivots, rk = rref(aug)
    if any(pc >= a.cols for pc in pivots):
        return None
    field = a.field
    x = _empty(field, a.cols, b.cols)
    for i, pc in enumerate(pivots):
        x[pc, :] = r.a[i, a.cols :]
    return Mat(field, x, _copy=False)


def solve_left(a: Mat, b: Mat) -> Optional[Mat]:
    """Any exact solution x of ``x @ a = b`` (row-vector convention)."""
    sol = solve(a.T, b.T)
    return None if sol is None else sol.T


def left_nullspace(m: Mat) -> Mat:
    """Basis of {x : x @ m = 0}, returned as rows."""
    return nullspace(m.T).T


def row_span_contains(basis: Mat, v: Mat) -> bool:
    """Is every row of v in the row span of ``basis``?"""
    if v.rows == 0:
        return True
    return solve_left(basis, v) is not None


def coords_in_rows(basis: Mat, v: Mat) -> Mat:
    """Coordinates c with c @ basis = v; raises if v is outside the span."""
    c = solve_left(basis, v)
    if c is None:
        raise ValueError("vector not in row span")
    return c


def intersect_row_spaces(a: Mat, b: Mat) -> Mat:
    """Canonical basis of (row space of a) intersected with (row space of b)."""
    # x @ a = y @ b  <=>  [x | -y] @ [a ; b] = 0
    stacked = a.vstack(b)
    ker = left_nullspace(stacked)
    part = Mat(a.field, ker.a[:, : a.rows]) @ a
    return row_basis(part)
