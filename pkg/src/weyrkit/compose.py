"""Block upper bidiagonal composition and its predicted Weyr structures.

``compose(B, t)`` places t copies of B down the diagonal and first
superdiagonal of a t*t block matrix. For B with a single eigenvalue and
nilpotent part of structure m, the structure of the composition is
predictable by pure index arithmetic on m: scaling by t when the
eigenvalue is zero, and an interleaved window-sum rule otherwise. For
t <= 4 the rule reproduces known closed forms (unit-tested); for larger t
it is validated against exact rank ladders, which is what
:func:`verify_compose` automates.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import CharacteristicTooSmall, InvalidK
from .fields import QQ, FieldSpec, Scalar, char_guard
from .matrices import ExactMatrix, block_assemble
from .weyr import Partition, weyr_structure_at


def compose(b: ExactMatrix, t: int) -> ExactMatrix:
    """The t*t block matrix with ``b`` on the diagonal and superdiagonal."""
    if t < 1:
        raise ValueError("t must be at least 1")
    if not b.is_square():
        raise ValueError("composition needs a square matrix")
    if t == 1:
        return b
    grid = [
        [b if j in (i, i + 1) else None for j in range(t)]
        for i in range(t)
    ]
    sizes = [b.rows] * t
    return block_assemble(grid, sizes, sizes, b.field)


def sierpinski(n: int, field: FieldSpec = QQ) -> ExactMatrix:
    """The 2**n unitriangular 0/1 matrix from repeated doubling of [1]."""
    if n < 0:
        raise ValueError("n must be non-negative")
    m = ExactMatrix([[1]], field)
    for _ in range(n):
        m = compose(m, 2)
    return m


def sierpinski_structure(n: int) -> Partition:
    """Binomial coefficients of row n, arranged weakly decreasing."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return Partition.sorted_from(comb(n, k) for k in range(n + 1))


def _tail_sum(m: Partition, e: int) -> int:
    """Rank of the e-th power of a nilpotent matrix of structure m."""
    if e <= 0:
        return m.total
    return sum(m.parts[e:])


def predicted_structure(m, t: int, zero_eigenvalue: bool) -> Partition:
    """Predicted structure of the composition from the structure m of B.

    Zero eigenvalue: every part scales by t. Nonzero eigenvalue: the i-th
    part is a sum of t parts of m taken in steps of two, starting t-1
    places back from index i; for i < t the out-of-range prefix collapses
    into an initial straight run. Indices beyond the length of m count
    as zero.
    """
    m = m if isinstance(m, Partition) else Partition(m)
    if t < 1:
        raise ValueError("t must be at least 1")
    if zero_eigenvalue:
        return Partition(t * x for x in m.parts)
    r = len(m)
    s = r + t - 1

    def part(i: int) -> int:
        return m.parts[i - 1] if 1 <= i <= r else 0

    out = []
    for i in range(1, s + 1):
        if i < t:
            head = sum(part(j) for j in range(1, t - i + 2))
            tail = sum(part(t - i + 1 + 2 * j) for j in range(1, i))
            out.append(head + tail)
        else:
            out.append(sum(part(i - t + 1 + 2 * j) for j in range(t)))
    return Partition(out)


def predicted_rank(m, t: int, k: int, zero_eigenvalue: bool) -> int:
    """Predicted rank of the k-th power of the shifted composition.

    With a zero eigenvalue the rank is t times the corresponding power
    rank of the nilpotent part. Otherwise, for k >= t-1, it is the sum of
    the power ranks at exponents k-t+1, k-t+3, ..., k+t-1 (exponents at
    or past the nilpotent index contribute zero, non-positive exponents
    contribute the full size). Below k = t-1 the value is recovered from
    the predicted structure's partial sums.
    """
    m = m if isinstance(m, Partition) else Partition(m)
    if t < 1:
        raise ValueError("t must be at least 1")
    if k < 0:
        raise InvalidK(f"power {k} is negative")
    if zero_eigenvalue:
        return t * _tail_sum(m, k)
    if k >= t - 1:
        return sum(_tail_sum(m, k - t + 1 + 2 * j) for j in range(t))
    structure = predicted_structure(m, t, False)
    return t * m.total - sum(structure.parts[:k])


@dataclass(frozen=True)
class ComposeReport:
    """Predicted versus computed structure of one composition."""

    t: int
    eigenvalue: Scalar
    input_structure: Partition
    predicted: Partition
    computed: Partition
    rank_ladder_predicted: tuple[int, ...]
    rank_ladder_computed: tuple[int, ...]
    agree: bool
    guard_ok: bool = True

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "eigenvalue": str(self.eigenvalue),
            "input_structure": self.input_structure.to_list(),
            "predicted": self.predicted.to_list(),
            "computed": self.computed.to_list(),
            "rank_ladder_predicted": list(self.rank_ladder_predicted),
            "rank_ladder_computed": list(self.rank_ladder_computed),
            "agree": self.agree,
            "guard_ok": self.guard_ok,
        }


def verify_compose(
    b: ExactMatrix, t: int, lam, enforce_guard: bool = True
) -> ComposeReport:
    """Compare the predicted structure of ``compose(b, t)`` with exact ranks.

    The guard requires characteristic 0 or p > t*n, which keeps every
    binomial coefficient appearing in the powers of the shifted
    composition away from zero. With ``enforce_guard=False`` the
    comparison still runs and the report records that the guard failed;
    disagreement is then expected behaviour, not an error.
    """
    if not b.is_square():
        raise ValueError("composition needs a square matrix")
    lam = b.field.scalar(lam)
    guard_ok = char_guard(b.field, t * b.rows)
    if enforce_guard and not guard_ok:
        raise CharacteristicTooSmall(
            f"field {b.field} needs characteristic 0 or p > {t * b.rows}"
        )
    m = weyr_structure_at(b, lam).structure
    composed = compose(b, t)
    computed = weyr_structure_at(composed, lam)
    zero = lam.is_zero()
    predicted = predicted_structure(m, t, zero)
    # On the generalized eigenspaces of the other eigenvalues the shifted
    # composition stays invertible, so every power keeps their full
    # dimension; the prediction for the nilpotent part rides on top.
    offset = t * (b.rows - m.total)
    ladder_pred = tuple(
        offset + predicted_rank(m, t, k, zero) for k in range(len(predicted) + 1)
    )
    agree = (
        predicted == computed.structure
        and ladder_pred == computed.rank_ladder
    )
    return ComposeReport(
        t=t,
        eigenvalue=lam,
        input_structure=m,
        predicted=predicted,
        computed=computed.structure,
        rank_ladder_predicted=ladder_pred,
        rank_ladder_computed=computed.rank_ladder,
        agree=agree,
        guard_ok=guard_ok,
    )
