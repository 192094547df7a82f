"""Dense exact matrices with rank, RREF, powers, and block assembly.

Every computation here is exact: over the rationals entries are Python
ints/Fractions and rank is decided by fraction-free (Bareiss) elimination
on an integer-scaled copy; over GF(p) by modular elimination. numpy's
int64 kernels are used as a fast path only when an a-priori magnitude
bound proves the result cannot overflow, so they never change a result.

Matrices are immutable after construction and may be shared freely.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    DimensionMismatch,
    FieldMismatch,
    InvalidRange,
    NotNilpotent,
    NotSquare,
    ParseError,
)
from .fields import QQ, FieldSpec, Scalar, _is_prime

_INT64_MAX = 2**63 - 1
# numpy elimination mod p keeps every intermediate below (p-1)**2 < 2**63.
_NP_PRIME_LIMIT = 2**31
# Size cap for dense characteristic-polynomial expansion.
_CHARPOLY_LIMIT = 64
# Fixed 31-bit prime used for the full-rank shortcut.
_SHORTCUT_PRIME = 2147483629


class ExactMatrix:
    """Immutable dense matrix over Q or GF(p)."""

    __slots__ = ("rows", "cols", "field", "_rows")

    def __init__(self, entries, field: FieldSpec = QQ):
        rows = [list(r) for r in entries]
        if not rows or not rows[0]:
            raise DimensionMismatch("matrices must have at least one row and column")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged rows")
        coerce = field.coerce
        data = tuple(tuple(coerce(x) for x in r) for r in rows)
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", ncols)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_rows", data)

    def __setattr__(self, name, _value):
        raise AttributeError("ExactMatrix is immutable")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def identity(cls, n: int, field: FieldSpec = QQ) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldSpec = QQ) -> "ExactMatrix":
        return cls([[0] * cols for _ in range(rows)], field)

    # -- basic protocol --------------------------------------------------------

    def __getitem__(self, key) -> Scalar:
        i, j = key
        return Scalar(self.field, self._rows[i][j])

    def row_values(self, i: int):
        """Raw values of row ``i`` (ints/Fractions, residues in GF(p))."""
        return self._rows[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and all(a == b for ra, rb in zip(self._rows, other._rows) for a, b in zip(ra, rb))
        )

    def __hash__(self):
        return hash((self.field, self._rows))

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols} over {self.field})"

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._rows for x in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(list(zip(*self._rows)), self.field)

    def _require_same_field(self, other: "ExactMatrix") -> None:
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._require_same_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch in addition")
        return ExactMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self._rows, other._rows)],
            self.field,
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._require_same_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch in subtraction")
        return ExactMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self._rows, other._rows)],
            self.field,
        )

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix([[-x for x in r] for r in self._rows], self.field)

    def scale(self, c) -> "ExactMatrix":
        c = self.field.coerce(c)
        return ExactMatrix([[c * x for x in r] for r in self._rows], self.field)

    __rmul__ = scale
    __mul__ = scale

    def shift_diagonal(self, c) -> "ExactMatrix":
        """``self + c*I`` without materializing an identity matrix."""
        if not self.is_square():
            raise NotSquare("diagonal shift needs a square matrix")
        c = self.field.coerce(c)
        rows = [list(r) for r in self._rows]
        for i in range(self.rows):
            rows[i][i] = rows[i][i] + c
        return ExactMatrix(rows, self.field)

    def _int_data(self):
        """Rows as ints when every entry is integral, else None."""
        for r in self._rows:
            for x in r:
                if not isinstance(x, int):
                    return None
        return self._rows

    def _max_abs(self) -> int:
        return max((abs(x) for r in self._rows for x in r), default=0)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._require_same_field(other)
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        field = self.field
        if field.is_prime_field:
            p = field.p
            if p < _NP_PRIME_LIMIT and self.cols * (p - 1) * (p - 1) < _INT64_MAX:
                prod = np.array(self._rows, dtype=np.int64) @ np.array(other._rows, dtype=np.int64)
                return ExactMatrix((prod % p).tolist(), field)
            return ExactMatrix(_matmul_rows(self._rows, other._rows, other.cols, p), field)
        a_int = self._int_data()
        b_int = other._int_data()
        if a_int is not None and b_int is not None:
            maxa, maxb = self._max_abs(), other._max_abs()
            if maxa < _INT64_MAX and maxb < _INT64_MAX and self.cols * maxa * maxb < _INT64_MAX:
                prod = np.array(a_int, dtype=np.int64) @ np.array(b_int, dtype=np.int64)
                return ExactMatrix(prod.tolist(), field)
        return ExactMatrix(_matmul_rows(self._rows, other._rows, other.cols, None), field)

    def __pow__(self, k: int) -> "ExactMatrix":
        if not self.is_square():
            raise NotSquare("powers need a square matrix")
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = ExactMatrix.identity(self.rows, self.field)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    # -- rank and echelon forms ---------------------------------------------------

    def rank(self) -> int:
        if self.field.is_prime_field:
            return _rank_mod(self._rows, self.field.p)
        scaled = _integer_scaled_rows(self._rows)
        # A full-rank certificate mod p is exact: a nonzero minor mod p is
        # nonzero over Z, and rank cannot exceed min(rows, cols).
        bound = min(self.rows, self.cols)
        if _rank_mod(scaled, _SHORTCUT_PRIME) == bound:
            return bound
        return _bareiss_rank(scaled)

    def rank_mod(self, p: int) -> int:
        """Rank of the entrywise reduction mod a prime p.

        Always a lower bound for the rank over Q; used as a fast pre-filter,
        never as the authoritative answer.
        """
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if self.field.is_prime_field:
            raise FieldMismatch("rank_mod applies to matrices over the rationals")
        return _rank_mod(_integer_scaled_rows(self._rows), p)

    def rref(self) -> "ExactMatrix":
        """Reduced row-echelon form, computed by plain Gauss-Jordan.

        Kept independent of the Bareiss rank path so the two can check
        each other.
        """
        p = self.field.p if self.field.is_prime_field else None
        m = [list(r) for r in self._rows]
        nr, nc = self.rows, self.cols
        r = 0
        for c in range(nc):
            if r == nr:
                break
            piv = next((i for i in range(r, nr) if m[i][c] != 0), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            inv = pow(m[r][c], -1, p) if p else 1 / Fraction(m[r][c])
            m[r] = [x * inv % p if p else x * inv for x in m[r]]
            for i in range(nr):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    if p:
                        m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
                    else:
                        m[i] = [x - f * y for x, y in zip(m[i], m[r])]
            r += 1
        return ExactMatrix(m, self.field)

    def nilpotent_index(self) -> int:
        """Least r >= 1 with ``self ** r == 0``."""
        if not self.is_square():
            raise NotSquare("nilpotency needs a square matrix")
        power = self
        for k in range(1, self.rows + 1):
            if power.is_zero():
                return k
            if k < self.rows:
                power = power @ self
        raise NotNilpotent(f"no power up to {self.rows} vanishes")

    def power_ladder(self):
        """Yield ``self ** 1, self ** 2, ...`` by iterated multiplication.

        Every consumer of matrix powers here needs the whole ladder, so
        the powers are produced incrementally instead of by squaring.
        """
        if not self.is_square():
            raise NotSquare("powers need a square matrix")
        power = self
        while True:
            yield power
            power = power @ self

    # -- serialization ---------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "field": str(self.field),
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[self.field.format(x) for x in r] for r in self._rows],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, obj: dict) -> "ExactMatrix":
        from .fields import parse_field

        try:
            field = parse_field(obj["field"])
            rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed matrix object: {exc}") from None
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ParseError(f"entries do not match declared shape {rows}x{cols}")
        return cls(entries, field)

    @classmethod
    def from_json(cls, text: str) -> "ExactMatrix":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        return cls.from_dict(obj)

    def to_csv(self) -> str:
        return "\n".join(",".join(self.field.format(x) for x in r) for r in self._rows) + "\n"

    @classmethod
    def from_csv(cls, text: str, field: FieldSpec = QQ) -> "ExactMatrix":
        rows = [line.split(",") for line in text.strip().splitlines() if line.strip()]
        if not rows:
            raise ParseError("empty CSV matrix")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ParseError("CSV rows have inconsistent lengths")
        return cls([[cell.strip() for cell in r] for r in rows], field)


# -- free functions matching the operation surface --------------------------------


def mat_pow(m: ExactMatrix, k: int) -> ExactMatrix:
    return m**k


def block_assemble(grid, row_sizes, col_sizes, field: FieldSpec | None = None) -> ExactMatrix:
    """Assemble a blocked matrix; ``None`` cells mean zero blocks."""
    row_sizes = list(row_sizes)
    col_sizes = list(col_sizes)
    if not row_sizes or not col_sizes:
        raise DimensionMismatch("empty block grid")
    if len(grid) != len(row_sizes) or any(len(r) != len(col_sizes) for r in grid):
        raise DimensionMismatch("grid shape does not match the size lists")
    for gi, row in enumerate(grid):
        for gj, block in enumerate(row):
            if block is None:
                continue
            if field is None:
                field = block.field
            elif block.field != field:
                raise FieldMismatch("blocks belong to different fields")
            if (block.rows, block.cols) != (row_sizes[gi], col_sizes[gj]):
                raise DimensionMismatch(
                    f"block ({gi},{gj}) is {block.rows}x{block.cols}, "
                    f"expected {row_sizes[gi]}x{col_sizes[gj]}"
                )
    if field is None:
        raise DimensionMismatch("all blocks absent and no field given")
    total_cols = sum(col_sizes)
    out = []
    for gi, row in enumerate(grid):
        for local in range(row_sizes[gi]):
            line = []
            for gj, block in enumerate(row):
                if block is None:
                    line.extend([0] * col_sizes[gj])
                else:
                    line.extend(block._rows[local])
            if len(line) != total_cols:
                raise DimensionMismatch("internal assembly error")
            out.append(line)
    return ExactMatrix(out, field)


@dataclass(frozen=True)
class RationalSpectrum:
    """Rational eigenvalues with algebraic multiplicities.

    ``split`` is True when the multiplicities account for the whole
    characteristic polynomial, i.e. it factors into linear terms over Q.
    """

    eigenvalues: tuple[tuple[Scalar, int], ...]
    split: bool

    def to_dict(self) -> dict:
        return {
            "eigenvalues": [[str(v), m] for v, m in self.eigenvalues],
            "split": self.split,
        }


def rational_eigenvalues(m: ExactMatrix) -> RationalSpectrum:
    """All rational roots of the characteristic polynomial, with multiplicity."""
    if m.field.is_prime_field:
        raise FieldMismatch("eigenvalue search is defined over the rationals")
    if not m.is_square():
        raise NotSquare("eigenvalues need a square matrix")
    n = m.rows
    diag = _triangular_diagonal(m)
    if diag is not None:
        counts: dict[Fraction, int] = {}
        for x in diag:
            counts[Fraction(x)] = counts.get(Fraction(x), 0) + 1
        pairs = tuple(
            (Scalar(m.field, v), c) for v, c in sorted(counts.items(), key=lambda kv: kv[0])
        )
        return RationalSpectrum(pairs, True)
    if n > _CHARPOLY_LIMIT:
        raise InvalidRange(
            f"dense characteristic polynomial is capped at size {_CHARPOLY_LIMIT}; "
            "supply the eigenvalue explicitly for larger matrices"
        )
    scale = 1
    for r in m._rows:
        for x in r:
            if isinstance(x, Fraction):
                scale = scale * x.denominator // math.gcd(scale, x.denominator)
    int_rows = [[int(x * scale) for x in r] for r in m._rows]
    coeffs = _charpoly_int(int_rows)  # monic, ascending, eigenvalues scaled by `scale`
    roots = _integer_roots_monic(coeffs)
    pairs = tuple(
        (Scalar(m.field, Fraction(z, scale)), mult)
        for z, mult in sorted(roots.items())
    )
    total = sum(roots.values())
    return RationalSpectrum(pairs, total == n)


# -- internal kernels ------------------------------------------------------------


def _matmul_rows(a_rows, b_rows, b_cols, p):
    """Row-linear-combination product; exact for ints and Fractions."""
    out = []
    for arow in a_rows:
        acc = [0] * b_cols
        for aik, brow in zip(arow, b_rows):
            if aik:
                if aik == 1:
                    acc = [x + y for x, y in zip(acc, brow)]
                else:
                    acc = [x + aik * y for x, y in zip(acc, brow)]
        if p is not None:
            acc = [x % p for x in acc]
        out.append(acc)
    return out


def _integer_scaled_rows(rows):
    """Clear denominators row by row; row scaling preserves rank."""
    out = []
    for r in rows:
        scale = 1
        for x in r:
            if isinstance(x, Fraction):
                scale = scale * x.denominator // math.gcd(scale, x.denominator)
        if scale == 1:
            out.append([int(x) if isinstance(x, Fraction) else x for x in r])
        else:
            out.append([int(x * scale) for x in r])
    return out


def _rank_mod(rows, p: int) -> int:
    if p < _NP_PRIME_LIMIT:
        return _rank_mod_numpy(rows, p)
    return _rank_mod_python(rows, p)


def _rank_mod_numpy(rows, p: int) -> int:
    a = np.array([[x % p for x in row] for row in rows], dtype=np.int64)
    nr, nc = a.shape
    r = 0
    for c in range(nc):
        if r == nr:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inverse = pow(int(a[r, c]), -1, p)
        a[r, c:] = (a[r, c:] * inverse) % p
        nzb = np.nonzero(a[r + 1 :, c])[0]
        if nzb.size:
            idx = r + 1 + nzb
            a[idx, c:] = (a[idx, c:] - np.outer(a[idx, c], a[r, c:])) % p
        r += 1
    return r


def _rank_mod_python(rows, p: int) -> int:
    m = [[x % p for x in row] for row in rows]
    nr = len(m)
    nc = len(m[0])
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inverse = pow(m[r][c], -1, p)
        m[r] = [x * inverse % p for x in m[r]]
        for i in range(r + 1, nr):
            f = m[i][c]
            if f:
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        r += 1
    return r


def _bareiss_rank(rows) -> int:
    """Fraction-free elimination; intermediate entries are minors of the input."""
    m = [list(r) for r in rows]
    nr = len(m)
    nc = len(m[0])
    r = 0
    prev = 1
    for c in range(nc):
        piv = next((i for i in range(r, nr) if m[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        tail = m[r][c + 1 :]
        for i in range(r + 1, nr):
            mi = m[i]
            f = mi[c]
            if f:
                if prev == 1:
                    mi[c + 1 :] = [p * x - f * y for x, y in zip(mi[c + 1 :], tail)]
                else:
                    # Sylvester's identity makes this division exact.
                    mi[c + 1 :] = [(p * x - f * y) // prev for x, y in zip(mi[c + 1 :], tail)]
                mi[c] = 0
            elif p != prev:
                mi[c + 1 :] = [p * x // prev for x in mi[c + 1 :]]
        prev = p
        r += 1
        if r == nr:
            break
    return r


def _bareiss_det(rows) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    prev = 1
    for c in range(n - 1):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        p = m[c][c]
        tail = m[c][c + 1 :]
        for i in range(c + 1, n):
            mi = m[i]
            f = mi[c]
            if prev == 1:
                mi[c + 1 :] = [p * x - f * y for x, y in zip(mi[c + 1 :], tail)]
            else:
                mi[c + 1 :] = [(p * x - f * y) // prev for x, y in zip(mi[c + 1 :], tail)]
            mi[c] = 0
        prev = p
    return sign * m[n - 1][n - 1]


def _triangular_diagonal(m: ExactMatrix):
    """Diagonal values when the matrix is upper or lower triangular."""
    rows = m._rows
    n = m.rows
    if all(rows[i][j] == 0 for i in range(n) for j in range(i)):
        return [rows[i][i] for i in range(n)]
    if all(rows[i][j] == 0 for i in range(n) for j in range(i + 1, n)):
        return [rows[i][i] for i in range(n)]
    return None


def _charpoly_int(int_rows) -> list[int]:
    """Coefficients of det(x*I - M), ascending, via Newton interpolation.

    Each sample is an exact Bareiss determinant, so the interpolated
    polynomial is the exact (monic, integer) characteristic polynomial.
    """
    n = len(int_rows)
    xs = list(range(n + 1))
    ys = []
    for x in xs:
        shifted = [list(r) for r in int_rows]
        for i in range(n):
            shifted[i] = [-v for v in shifted[i]]
            shifted[i][i] += x
        ys.append(_bareiss_det(shifted))
    # Newton's divided differences over Q, then expansion to coefficients.
    coef = [Fraction(y) for y in ys]
    for j in range(1, n + 1):
        for i in range(n, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * (n + 1)
    poly[0] = coef[n]
    for k in range(n - 1, -1, -1):
        # poly <- poly * (x - xs[k]) + coef[k]
        for i in range(n, 0, -1):
            poly[i] = poly[i - 1] - xs[k] * poly[i]
        poly[0] = coef[k] - xs[k] * poly[0]
    out = []
    for c in poly:
        if c.denominator != 1:
            raise ArithmeticError("characteristic polynomial interpolation went non-integer")
        out.append(int(c))
    if out[-1] != 1:
        raise ArithmeticError("characteristic polynomial is not monic")
    return out


def _divisors(n: int) -> list[int]:
    """All positive divisors; falls back to sympy for stubborn cofactors."""
    n = abs(n)
    factors: dict[int, int] = {}
    for q in (2, 3, 5):
        while n % q == 0:
            factors[q] = factors.get(q, 0) + 1
            n //= q
    f = 7
    while f * f <= n and f < 10**6:
        if n % f == 0:
            factors[f] = factors.get(f, 0) + 1
            n //= f
        else:
            f += 2
    if n > 1:
        if n < 10**12:
            # No prime factor below 1e6 remains, so the cofactor is prime.
            factors[n] = factors.get(n, 0) + 1
        else:
            from sympy import factorint

            for q, e in factorint(n).items():
                factors[q] = factors.get(q, 0) + e
    divisors = [1]
    for q, e in factors.items():
        divisors = [d * q**i for d in divisors for i in range(e + 1)]
    return sorted(divisors)


def _integer_roots_monic(coeffs: list[int]) -> dict[int, int]:
    """Integer roots (with multiplicity) of a monic integer polynomial."""
    roots: dict[int, int] = {}
    c = list(coeffs)
    while len(c) > 1 and c[0] == 0:
        roots[0] = roots.get(0, 0) + 1
        c = c[1:]
    if len(c) <= 1:
        return roots
    for d in _divisors(c[0]):
        for z in (d, -d):
            while True:
                quotient, rem = _deflate(c, z)
                if rem != 0:
                    break
                roots[z] = roots.get(z, 0) + 1
                c = quotient
                if len(c) == 1:
                    return roots
    return roots


def _deflate(coeffs: list[int], z: int):
    """Synthetic division of an ascending-coefficient polynomial by (x - z)."""
    n = len(coeffs) - 1
    out = [0] * n
    acc = coeffs[n]
    for i in range(n - 1, -1, -1):
        out[i] = acc
        acc = coeffs[i] + z * acc
    return out, acc
