"""Weyr structures from rank ladders, canonical nilpotent shapes, duality.

The structure of a matrix M at an eigenvalue lam is the partition whose
i-th part is ``rank (M - lam*I)**(i-1) - rank (M - lam*I)**i``; its length
is the nilpotent index of M - lam*I on the generalized eigenspace. The
ladder of global ranks stabilizes exactly there, so no invariant subspace
ever needs to be computed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DuplicateEigenvalue, NotAnEigenvalue, NotSquare
from .fields import QQ, FieldSpec, Scalar
from .matrices import ExactMatrix, block_assemble


class Partition:
    """A weakly decreasing tuple of positive integers."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = tuple(int(x) for x in parts)
        if not parts:
            raise ValueError("partitions are nonempty")
        if any(x <= 0 for x in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    def __setattr__(self, name, _value):
        raise AttributeError("Partition is immutable")

    @classmethod
    def sorted_from(cls, values) -> "Partition":
        return cls(sorted(values, reverse=True))

    @property
    def total(self) -> int:
        return sum(self.parts)

    def dual(self) -> "Partition":
        """Conjugate partition: column heights of the Young diagram."""
        return Partition(
            sum(1 for x in self.parts if x >= j) for j in range(1, self.parts[0] + 1)
        )

    def __iter__(self):
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __eq__(self, other) -> bool:
        if isinstance(other, Partition):
            return self.parts == other.parts
        if isinstance(other, (tuple, list)):
            return self.parts == tuple(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.parts)

    def __repr__(self) -> str:
        return f"Partition{self.parts}"

    def __str__(self) -> str:
        return " ".join(str(x) for x in self.parts)

    def to_list(self) -> list[int]:
        return list(self.parts)


def partitions_of(n: int):
    """Yield all partitions of n as weakly decreasing tuples, largest first."""
    if n < 0:
        raise ValueError("n must be non-negative")

    def rec(remaining, cap):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    yield from rec(n, n)


def dual_partition(m: Partition) -> Partition:
    return m.dual()


@dataclass(frozen=True)
class WeyrStructureReport:
    """Structure at one eigenvalue together with the rank ladder behind it."""

    eigenvalue: Scalar
    structure: Partition
    rank_ladder: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "eigenvalue": str(self.eigenvalue),
            "structure": self.structure.to_list(),
            "rank_ladder": list(self.rank_ladder),
        }


def weyr_structure_at(m: ExactMatrix, lam) -> WeyrStructureReport:
    """Structure of ``m`` at eigenvalue ``lam`` from the ladder of power ranks."""
    if not m.is_square():
        raise NotSquare("Weyr structures need a square matrix")
    lam = m.field.scalar(lam)
    shifted = m.shift_diagonal(-lam.value)
    ladder = [m.rows]
    for power in shifted.power_ladder():
        r = power.rank()
        if r == ladder[-1]:
            break
        ladder.append(r)
        if r == 0:
            break
    if len(ladder) == 1:
        raise NotAnEigenvalue(f"{lam} is not an eigenvalue")
    parts = [ladder[i] - ladder[i + 1] for i in range(len(ladder) - 1)]
    return WeyrStructureReport(lam, Partition(parts), tuple(ladder))


def jordan_structure_at(m: ExactMatrix, lam) -> Partition:
    """Jordan block sizes at ``lam``: the dual of the Weyr structure there."""
    return weyr_structure_at(m, lam).structure.dual()


def build_basic_weyr(lam, shape, field: FieldSpec | None = None) -> ExactMatrix:
    """Canonical matrix with eigenvalue ``lam`` and Weyr structure ``shape``.

    Diagonal blocks are scalar, and each superdiagonal block is an identity
    sitting on top of zero rows (so it has full column rank).
    """
    if isinstance(lam, Scalar):
        if field is not None and field != lam.field:
            raise ValueError("field argument contradicts the scalar's field")
        field = lam.field
    elif field is None:
        field = QQ
    shape = shape if isinstance(shape, Partition) else Partition(shape)
    lam_raw = field.coerce(lam)
    sizes = shape.parts
    r = len(sizes)
    grid = [[None] * r for _ in range(r)]
    for i in range(r):
        block = [[lam_raw if a == b else 0 for b in range(sizes[i])] for a in range(sizes[i])]
        grid[i][i] = ExactMatrix(block, field)
        if i + 1 < r:
            sup = [
                [1 if a == b else 0 for b in range(sizes[i + 1])] for a in range(sizes[i])
            ]
            grid[i][i + 1] = ExactMatrix(sup, field)
    return block_assemble(grid, sizes, sizes, field)


def assemble_weyr_form(blocks) -> ExactMatrix:
    """Block diagonal of basic Weyr matrices, one per distinct eigenvalue."""
    blocks = list(blocks)
    if not blocks:
        raise ValueError("at least one (eigenvalue, structure) block is required")
    field = None
    seen = []
    for lam, _shape in blocks:
        if isinstance(lam, Scalar):
            if field is None:
                field = lam.field
            elif field != lam.field:
                raise ValueError("eigenvalues belong to different fields")
    if field is None:
        field = QQ
    basic = []
    for lam, shape in blocks:
        value = field.coerce(lam)
        if value in seen:
            raise DuplicateEigenvalue(f"eigenvalue {value} repeated")
        seen.append(value)
        basic.append(build_basic_weyr(value, shape, field))
    k = len(basic)
    grid = [[basic[i] if i == j else None for j in range(k)] for i in range(k)]
    sizes = [b.rows for b in basic]
    return block_assemble(grid, sizes, sizes, field)


def is_basic_weyr(m: ExactMatrix, lam) -> bool:
    """Whether ``m`` literally has the basic Weyr shape at ``lam``.

    The candidate partition is inferred from the zero-column pattern of
    ``m - lam*I`` and then checked by rebuilding the canonical matrix;
    no similarity transform is involved.
    """
    if not m.is_square():
        raise NotSquare("basic Weyr shapes are square")
    lam_raw = m.field.coerce(lam)
    n = m.rows
    shifted = m.shift_diagonal(-lam_raw)
    # Leading zero columns give the first part.
    m1 = 0
    while m1 < n and all(shifted.row_values(i)[m1] == 0 for i in range(n)):
        m1 += 1
    if m1 == 0:
        return False
    sizes = [m1]
    row_off = 0
    col_off = m1
    while col_off < n:
        prev = sizes[-1]
        width = 0
        while width < prev and col_off + width < n:
            col = col_off + width
            ok = all(
                shifted.row_values(row_off + a)[col] == (1 if a == width else 0)
                for a in range(prev)
            )
            if not ok:
                break
            width += 1
        if width == 0:
            return False
        sizes.append(width)
        row_off += prev
        col_off += width
    try:
        candidate = Partition(sizes)
    except ValueError:
        return False
    return m == build_basic_weyr(lam_raw, candidate, m.field)
