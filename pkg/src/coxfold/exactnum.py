"""Exact arithmetic over the rationals and the golden field Q(tau).

Every root coordinate in the package is a :class:`GoldenNumber`
``a + b*tau`` with rational ``a`` and ``b`` and ``tau**2 == tau + 1``.
Rationals are plain :class:`fractions.Fraction` values.

Matrices that take part in group computations are stored as
:class:`GoldenMatrix`, a pair of integer arrays over a common denominator,
which keeps products of orthogonal matrices cheap while staying exact.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import total_ordering
from typing import Sequence

import mpmath
import numpy as np

__all__ = [
    "Rational",
    "GoldenNumber",
    "TAU",
    "ONE",
    "ZERO",
    "golden",
    "golden_arith",
    "golden_inverse",
    "galois_conjugate",
    "embed_real",
    "parse_golden",
    "format_golden",
    "Vector",
    "vec",
    "vadd",
    "vsub",
    "vscale",
    "dot",
    "vector_key",
    "vector_to_float",
    "GoldenMatrix",
    "det",
    "solve",
    "inverse",
    "rank",
]

Rational = Fraction

_SQRT5 = math.sqrt(5.0)
_TAU_FLOAT = (1.0 + _SQRT5) / 2.0


@total_ordering
class GoldenNumber:
    """Element ``(p + q*tau) / d`` of Q(tau) kept in lowest terms.

    ``d > 0`` and ``gcd(p, q, d) == 1``; zero is stored as ``(0, 0, 1)``,
    so equal values always have equal components and equal hashes.
    """

    __slots__ = ("_p", "_q", "_d")

    def __init__(self, a=0, b=0):
        a = Fraction(a)
        b = Fraction(b)
        d = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
        self._set(a.numerator * (d // a.denominator), b.numerator * (d // b.denominator), d)

    def _set(self, p: int, q: int, d: int) -> None:
        if d < 0:
            p, q, d = -p, -q, -d
        g = math.gcd(math.gcd(p, q), d)
        if g > 1:
            p //= g
            q //= g
            d //= g
        if p == 0 and q == 0:
            d = 1
        self._p, self._q, self._d = p, q, d

    @classmethod
    def _raw(cls, p: int, q: int, d: int) -> "GoldenNumber":
        obj = cls.__new__(cls)
        obj._set(p, q, d)
        return obj

    @property
    def a(self) -> Fraction:
        return Fraction(self._p, self._d)

    @property
    def b(self) -> Fraction:
        return Fraction(self._q, self._d)

    @property
    def components(self) -> tuple[int, int, int]:
        """Integer triple ``(p, q, d)`` with value ``(p + q*tau)/d``."""
        return self._p, self._q, self._d

    def is_rational(self) -> bool:
        return self._q == 0

    def is_integer(self) -> bool:
        return self._q == 0 and self._d == 1

    # ring operations

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GoldenNumber._raw(
            self._p * o._d + o._p * self._d, self._q * o._d + o._q * self._d, self._d * o._d
        )

    __radd__ = __add__

    def __neg__(self):
        return GoldenNumber._raw(-self._p, -self._q, self._d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        p1, q1, p2, q2 = self._p, self._q, o._p, o._q
        qq = q1 * q2
        return GoldenNumber._raw(p1 * p2 + qq, p1 * q2 + q1 * p2 + qq, self._d * o._d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm ``x * conjugate(x)``, a rational."""
        p, q = self._p, self._q
        return Fraction(p * p + p * q - q * q, self._d * self._d)

    def inverse(self) -> "GoldenNumber":
        p, q, d = self._p, self._q, self._d
        n = p * p + p * q - q * q
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(tau)")
        # 1/(p + q tau) = (p + q - q tau) / N
        return GoldenNumber._raw(d * (p + q), -d * q, n)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "GoldenNumber":
        # tau -> 1 - tau
        return GoldenNumber._raw(self._p + self._q, -self._q, self._d)

    # order and comparison

    def sign(self) -> int:
        p, q = self._p, self._q
        if q == 0:
            return (p > 0) - (p < 0)
        if p == 0:
            return (q > 0) - (q < 0)
        if (p > 0) == (q > 0):
            return 1 if p > 0 else -1
        n = p * p + p * q - q * q
        s = (n > 0) - (n < 0)
        return s if q < 0 else -s

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self._p == o._p and self._q == o._q and self._d == o._d

    def __lt__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self):
        if self._q == 0:
            return hash(Fraction(self._p, self._d))
        return hash((self._p, self._q, self._d))

    def __bool__(self):
        return self._p != 0 or self._q != 0

    def __float__(self):
        return (self._p + self._q * _TAU_FLOAT) / self._d

    def __repr__(self):
        return f"GoldenNumber({format_golden(self)!r})"

    def __str__(self):
        return format_golden(self)


def _coerce(x) -> GoldenNumber | None:
    if isinstance(x, GoldenNumber):
        return x
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        return GoldenNumber._raw(x.numerator, 0, x.denominator)
    return None


def golden(x) -> GoldenNumber:
    """Coerce an int, Fraction, string or GoldenNumber to a GoldenNumber."""
    if isinstance(x, str):
        return parse_golden(x)
    g = _coerce(x)
    if g is None:
        raise TypeError(f"cannot convert {type(x).__name__} to GoldenNumber")
    return g


ZERO = GoldenNumber(0)
ONE = GoldenNumber(1)
TAU = GoldenNumber(0, 1)


def golden_arith(x: GoldenNumber, y: GoldenNumber, op: str) -> GoldenNumber:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown operation {op!r}")


def golden_inverse(x: GoldenNumber) -> GoldenNumber:
    return golden(x).inverse()


def galois_conjugate(x: GoldenNumber) -> GoldenNumber:
    return golden(x).conjugate()


def embed_real(x: GoldenNumber, precision: int = 15):
    """Real value of ``x`` accurate to ``10**-precision``.

    Returns a float up to 15 digits and an ``mpmath.mpf`` beyond that.
    """
    x = golden(x)
    p, q, d = x.components
    if precision <= 15 and max(abs(p), abs(q)) < 2**40:
        return float(x)
    with mpmath.workdps(precision + 10 + len(str(max(abs(p), abs(q), 1)))):
        value = (mpmath.mpf(p) + mpmath.mpf(q) * (1 + mpmath.sqrt(5)) / 2) / d
        if precision <= 15:
            return float(value)
        return +value


_RATIONAL = re.compile(r"[+-]?\d+(?:/\d+)?")


def parse_golden(text: str) -> GoldenNumber:
    """Parse strings such as ``"1/2+3/2*t"``, ``"-t"``, ``"3"``, ``"1-t"``."""
    s = text.replace(" ", "")
    if "t" not in s:
        if not _RATIONAL.fullmatch(s):
            raise ValueError(f"malformed golden number {text!r}")
        return GoldenNumber(Fraction(s))
    if not s.endswith("t") or s.count("t") != 1:
        raise ValueError(f"malformed golden number {text!r}")
    cut = max(s.rfind("+"), s.rfind("-"))
    a_text, b_text = (s[:cut], s[cut:-1]) if cut > 0 else ("", s[:-1])
    b_text = b_text.rstrip("*")
    if a_text and not _RATIONAL.fullmatch(a_text):
        raise ValueError(f"malformed golden number {text!r}")
    if b_text in ("", "+", "-"):
        b = Fraction(-1 if b_text == "-" else 1)
    elif _RATIONAL.fullmatch(b_text):
        b = Fraction(b_text)
    else:
        raise ValueError(f"malformed golden number {text!r}")
    return GoldenNumber(Fraction(a_text) if a_text else 0, b)


def _fmt_fraction(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_golden(x: GoldenNumber) -> str:
    x = golden(x)
    a, b = x.a, x.b
    if b == 0:
        return _fmt_fraction(a)
    if b == 1:
        bt = "t"
    elif b == -1:
        bt = "-t"
    else:
        bt = f"{_fmt_fraction(b)}*t"
    if a == 0:
        return bt
    return f"{_fmt_fraction(a)}{bt if bt.startswith('-') else '+' + bt}"


# ---------------------------------------------------------------- vectors

Vector = tuple  # tuple[GoldenNumber, ...]


def vec(*coords) -> Vector:
    if len(coords) == 1 and not isinstance(coords[0], (int, Fraction, GoldenNumber, str)):
        coords = tuple(coords[0])
    return tuple(golden(c) for c in coords)


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(x + y for x, y in zip(u, v))


def vsub(u: Vector, v: Vector) -> Vector:
    return tuple(x - y for x, y in zip(u, v))


def vscale(c, u: Vector) -> Vector:
    c = golden(c)
    return tuple(c * x for x in u)


def dot(u: Vector, v: Vector, gram: "GoldenMatrix | None" = None) -> GoldenNumber:
    """Inner product, Euclidean unless an ambient Gram matrix is given."""
    if len(u) != len(v):
        raise ValueError("dimension mismatch")
    if gram is None or (c := gram.scalar()) is not None:
        total = ZERO
        for x, y in zip(u, v):
            total = total + x * y
        return total if gram is None else c * total
    return dot(u, gram.apply(v))


def vector_key(v: Vector) -> tuple:
    return tuple(c.components for c in v)


def vector_to_float(v: Vector) -> np.ndarray:
    return np.array([float(c) for c in v], dtype=float)


# ---------------------------------------------------------------- matrices

_INT64_SAFE = 2**62


def _as_int_array(rows: list[list[int]]) -> np.ndarray:
    flat = [x for r in rows for x in r]
    if flat and max(abs(x) for x in flat) >= _INT64_SAFE:
        return np.array(rows, dtype=object)
    return np.array(rows, dtype=np.int64)


def _fits_int64_product(x: np.ndarray, y: np.ndarray) -> bool:
    if x.dtype == object or y.dtype == object:
        return False
    mx = int(np.abs(x).max(initial=0))
    my = int(np.abs(y).max(initial=0))
    return mx * my * max(x.shape[-1], 1) * 2 < _INT64_SAFE


def _normalize(A: np.ndarray, B: np.ndarray, d: int):
    if d < 0:
        A, B, d = -A, -B, -d
    if d != 1:
        g = d
        for arr in (A, B):
            if g == 1:
                break
            if arr.dtype == object:
                for x in arr.flat:
                    g = math.gcd(g, int(x))
                    if g == 1:
                        break
            else:
                g = math.gcd(g, int(np.gcd.reduce(arr, axis=None)))
        if g > 1:
            A = A // g
            B = B // g
            d //= g
    A = _demote(A)
    B = _demote(B)
    return A, B, d


def _demote(arr: np.ndarray) -> np.ndarray:
    if arr.dtype == object:
        if arr.size == 0 or max(abs(int(x)) for x in arr.flat) < _INT64_SAFE:
            return arr.astype(np.int64)
    return arr


def _promote(arr: np.ndarray) -> np.ndarray:
    return arr if arr.dtype == object else arr.astype(object)


def _imatmul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if _fits_int64_product(x, y):
        return x @ y
    return _promote(x) @ _promote(y)


class GoldenMatrix:
    """Exact square or rectangular matrix ``(A + B*tau) / d`` over Q(tau).

    ``A`` and ``B`` are integer arrays (int64 while entries are small,
    Python ints otherwise), ``d`` a positive integer with no factor common
    to every entry.  The representation is canonical, so :meth:`key`
    identifies the matrix exactly.
    """

    __slots__ = ("A", "B", "d", "_key", "_scalar")

    def __init__(self, A: np.ndarray, B: np.ndarray, d: int = 1, _normalized: bool = False):
        if not _normalized:
            A, B, d = _normalize(np.asarray(A), np.asarray(B), int(d))
        self.A = A
        self.B = B
        self.d = d
        self._key = None
        self._scalar = False

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "GoldenMatrix":
        entries = [[golden(x) for x in r] for r in rows]
        d = 1
        for r in entries:
            for x in r:
                d = d * x.components[2] // math.gcd(d, x.components[2])
        A = [[x.components[0] * (d // x.components[2]) for x in r] for r in entries]
        B = [[x.components[1] * (d // x.components[2]) for x in r] for r in entries]
        return cls(_as_int_array(A), _as_int_array(B), d)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "GoldenMatrix":
        return cls.from_rows(list(zip(*cols)))

    @classmethod
    def identity(cls, n: int) -> "GoldenMatrix":
        return cls(np.eye(n, dtype=np.int64), np.zeros((n, n), dtype=np.int64), 1, _normalized=True)

    @property
    def shape(self) -> tuple[int, int]:
        return self.A.shape

    def __getitem__(self, ij) -> GoldenNumber:
        i, j = ij
        return GoldenNumber._raw(int(self.A[i, j]), int(self.B[i, j]), self.d)

    def rows(self) -> list[list[GoldenNumber]]:
        n, m = self.shape
        return [[self[i, j] for j in range(m)] for i in range(n)]

    def __matmul__(self, other: "GoldenMatrix") -> "GoldenMatrix":
        if not isinstance(other, GoldenMatrix):
            return NotImplemented
        A, B, C, D = self.A, self.B, other.A, other.B
        d = self.d * other.d
        if not B.any() and not D.any():
            P = _imatmul(A, C)
            return GoldenMatrix(P, np.zeros(P.shape, dtype=np.int64), d)
        # (A + B t)(C + D t) = AC + BD + (AD + BC + BD) t
        P1 = _imatmul(A, C)
        P2 = _imatmul(B, D)
        P3 = _imatmul(_add(A, B), _add(C, D))
        return GoldenMatrix(_add(P1, P2), _sub(P3, P1), d)

    def __mul__(self, c) -> "GoldenMatrix":
        c = golden(c)
        p, q, e = c.components
        A, B = self.A, self.B
        # (A + B t)(p + q t) = pA + qB + (qA + pB + qB) t
        if max(abs(p), abs(q)) > 2**20:
            A, B = _promote(A), _promote(B)
        return GoldenMatrix(p * A + q * B, q * A + (p + q) * B, self.d * e)

    __rmul__ = __mul__

    def __add__(self, other: "GoldenMatrix") -> "GoldenMatrix":
        d = self.d * other.d
        return GoldenMatrix(
            _add(self.A * other.d, other.A * self.d), _add(self.B * other.d, other.B * self.d), d
        )

    def __neg__(self) -> "GoldenMatrix":
        return GoldenMatrix(-self.A, -self.B, self.d, _normalized=True)

    def __sub__(self, other: "GoldenMatrix") -> "GoldenMatrix":
        return self + (-other)

    @property
    def T(self) -> "GoldenMatrix":
        return GoldenMatrix(self.A.T.copy(), self.B.T.copy(), self.d, _normalized=True)

    def __pow__(self, k: int) -> "GoldenMatrix":
        if k < 0:
            raise ValueError("negative powers are not supported; use inverse()")
        result = GoldenMatrix.identity(self.shape[0])
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def apply(self, v: Vector) -> Vector:
        col = GoldenMatrix.from_columns([v])
        out = self @ col
        return tuple(out[i, 0] for i in range(out.shape[0]))

    def scalar(self) -> GoldenNumber | None:
        """``c`` if this matrix equals ``c * I``, else ``None``."""
        if self._scalar is False:
            n, m = self.shape
            a, b = int(self.A[0, 0]), int(self.B[0, 0])
            ok = (
                n == m
                and not (self.A - a * np.eye(n, dtype=self.A.dtype)).any()
                and not (self.B - b * np.eye(n, dtype=self.B.dtype)).any()
            )
            self._scalar = GoldenNumber._raw(a, b, self.d) if ok else None
        return self._scalar

    def is_identity(self) -> bool:
        n, m = self.shape
        return (
            n == m
            and self.d == 1
            and not self.B.any()
            and bool(np.array_equal(self.A.astype(np.int64, copy=False), np.eye(n, dtype=np.int64)))
        )

    def key(self) -> tuple:
        """Hashable canonical form."""
        if self._key is None:
            if self.A.dtype == object or self.B.dtype == object:
                self._key = (self.d, self.shape, tuple(self.A.flat), tuple(self.B.flat))
            else:
                self._key = (self.d, self.shape, self.A.tobytes(), self.B.tobytes())
        return self._key

    def __eq__(self, other):
        if not isinstance(other, GoldenMatrix):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def to_float(self) -> np.ndarray:
        return (self.A.astype(float) + self.B.astype(float) * _TAU_FLOAT) / self.d

    def __repr__(self):
        body = "; ".join(", ".join(format_golden(x) for x in r) for r in self.rows())
        return f"GoldenMatrix([{body}])"


def _add(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if x.dtype == object or y.dtype == object:
        return _promote(x) + _promote(y)
    mx = int(np.abs(x).max(initial=0))
    my = int(np.abs(y).max(initial=0))
    if mx + my >= _INT64_SAFE:
        return _promote(x) + _promote(y)
    return x + y


def _sub(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return _add(x, -y if y.dtype != object else -_promote(y))


# ---------------------------------------------------------------- linear algebra


def _as_rows(M) -> list[list[GoldenNumber]]:
    if isinstance(M, GoldenMatrix):
        return M.rows()
    return [[golden(x) for x in r] for r in M]


def det(M) -> GoldenNumber:
    """Determinant by Gaussian elimination over Q(tau)."""
    rows = _as_rows(M)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    result = ONE
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col]), None)
        if pivot is None:
            return ZERO
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            result = -result
        p = rows[col][col]
        result = result * p
        pinv = p.inverse()
        for r in range(col + 1, n):
            f = rows[r][col]
            if f:
                f = f * pinv
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return result


def _rref(rows: list[list[GoldenNumber]]):
    rows = [list(r) for r in rows]
    n = len(rows)
    m = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(m):
        pivot = next((i for i in range(r, n) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return rows, pivots


def rank(M) -> int:
    rows = _as_rows(M)
    if not rows:
        return 0
    return len(_rref(rows)[1])


def solve(M, b: Sequence) -> Vector:
    """Unique solution of ``M x = b`` for square nonsingular ``M``."""
    rows = _as_rows(M)
    n = len(rows)
    aug = [r + [golden(x)] for r, x in zip(rows, b)]
    red, pivots = _rref(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular system")
    return tuple(red[i][n] for i in range(n))


def inverse(M) -> list[list[GoldenNumber]]:
    rows = _as_rows(M)
    n = len(rows)
    aug = [r + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(rows)]
    red, pivots = _rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in red]
