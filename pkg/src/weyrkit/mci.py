"""Monomial complete intersection algebras F[x_1..x_n]/(x_i^(d_i+1)).

The quotient has the monomial basis of exponent vectors bounded by the
degrees, graded by total degree. Multiplication is monomial arithmetic:
an exponent overflowing its bound kills the term, so no Groebner
machinery is involved. Two basis orders are provided:

* ``GRADED``: by total degree, then by reverse-lexicographic position
  inside each degree (compare reversed exponent vectors).
* ``DOUBLING``: only for quadratic quotients (all bounds 1); monomials
  are read as bitmasks with x_1 the lowest bit, so appending a variable
  doubles the list. This is the order in which multiplication by
  (1+x_1)...(1+x_n) becomes the doubling 0/1 matrix of
  :func:`weyrkit.compose.sierpinski`, bit for bit.

Multiplication matrices act on coordinate rows (row i is the image of
basis monomial i); the graded component maps act on coordinate columns,
so a map into a bigger component is a tall matrix.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from itertools import product

from .errors import (
    CharacteristicTooSmall,
    InvalidGrouping,
    InvalidRange,
    OrderNotApplicable,
    ParseError,
)
from .fields import QQ, FieldSpec, char_guard
from .matrices import ExactMatrix
from .weyr import Partition, weyr_structure_at

_DIM_CAP = 20000


class BasisOrder(enum.Enum):
    DOUBLING = "doubling"
    GRADED = "graded"


@dataclass(frozen=True)
class MciDescriptor:
    """Degrees (d_1, ..., d_n) and ground field of the quotient algebra."""

    degrees: tuple[int, ...]
    field: FieldSpec = QQ

    def __post_init__(self) -> None:
        degrees = tuple(int(d) for d in self.degrees)
        object.__setattr__(self, "degrees", degrees)
        if not degrees or any(d < 1 for d in degrees):
            raise ValueError(f"degrees must be positive integers, got {degrees}")
        if self.dimension > _DIM_CAP:
            raise ValueError(
                f"algebra dimension {self.dimension} exceeds the cap {_DIM_CAP}"
            )

    @property
    def nvars(self) -> int:
        return len(self.degrees)

    @property
    def dimension(self) -> int:
        dim = 1
        for d in self.degrees:
            dim *= d + 1
        return dim

    @property
    def socle_degree(self) -> int:
        return sum(self.degrees)

    def to_dict(self) -> dict:
        return {"degrees": list(self.degrees), "field": str(self.field)}

    @classmethod
    def from_dict(cls, obj: dict) -> "MciDescriptor":
        from .fields import parse_field

        try:
            return cls(tuple(obj["degrees"]), parse_field(obj["field"]))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed descriptor: {exc}") from None


def hilbert_function(d: MciDescriptor) -> list[int]:
    """Dimensions of the graded components: coefficients of the product
    of the truncated geometric polynomials 1 + T + ... + T^(d_j)."""
    coeffs = [1]
    for deg in d.degrees:
        out = [0] * (len(coeffs) + deg)
        for i, c in enumerate(coeffs):
            for j in range(deg + 1):
                out[i + j] += c
        coeffs = out
    return coeffs


class GradedBasis:
    """An ordered monomial basis with degree bookkeeping.

    ``degree_offsets`` gives the start of each graded component and is
    only set for the graded order; the doubling order interleaves
    degrees, so there component membership goes through
    :meth:`component_indices`.
    """

    __slots__ = ("order", "monomials", "index", "degrees", "degree_offsets")

    def __init__(self, order: BasisOrder, monomials):
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "monomials", tuple(monomials))
        object.__setattr__(
            self, "index", {e: i for i, e in enumerate(self.monomials)}
        )
        object.__setattr__(self, "degrees", tuple(sum(e) for e in self.monomials))
        offsets = None
        if order is BasisOrder.GRADED:
            offsets = [0]
            for i in range(1, len(self.monomials)):
                if self.degrees[i] != self.degrees[i - 1]:
                    offsets.append(i)
            offsets.append(len(self.monomials))
            offsets = tuple(offsets)
        object.__setattr__(self, "degree_offsets", offsets)

    def __setattr__(self, name, _value):
        raise AttributeError("GradedBasis is immutable")

    def __len__(self) -> int:
        return len(self.monomials)

    def component_indices(self, k: int) -> tuple[int, ...]:
        if self.degree_offsets is not None:
            lo, hi = self.degree_offsets[k], self.degree_offsets[k + 1]
            return tuple(range(lo, hi))
        return tuple(i for i, deg in enumerate(self.degrees) if deg == k)


def mci_basis(d: MciDescriptor, order: BasisOrder = BasisOrder.GRADED) -> GradedBasis:
    """The complete ordered monomial basis of the quotient."""
    if order is BasisOrder.DOUBLING and any(deg != 1 for deg in d.degrees):
        raise OrderNotApplicable("the doubling order requires all degrees equal to 1")
    exps = [tuple(e) for e in product(*(range(deg + 1) for deg in d.degrees))]
    if order is BasisOrder.DOUBLING:
        exps.sort(key=lambda e: sum(b << i for i, b in enumerate(e)))
    else:
        exps.sort(key=lambda e: (sum(e), tuple(reversed(e))))
    return GradedBasis(order, exps)


class AlgebraElement:
    """A quotient-algebra element as a sparse coefficient map.

    Keys are exponent tuples, values are raw field values; zero
    coefficients are dropped. Elements are plain containers; the
    arithmetic that knows about degree bounds and the field lives in
    :func:`multiply_elements` and :func:`element_power`.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: dict):
        cleaned = {tuple(e): c for e, c in coefficients.items() if c != 0}
        object.__setattr__(self, "coefficients", cleaned)

    def __setattr__(self, name, _value):
        raise AttributeError("AlgebraElement is immutable")

    @classmethod
    def one(cls, nvars: int) -> "AlgebraElement":
        return cls({(0,) * nvars: 1})

    @classmethod
    def variable(cls, i: int, nvars: int) -> "AlgebraElement":
        if not 0 <= i < nvars:
            raise InvalidRange(f"variable index {i} out of range")
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): 1})

    @classmethod
    def sum_of_variables(cls, nvars: int, coefficients=None) -> "AlgebraElement":
        """The linear form c_1 x_1 + ... + c_n x_n (all ones by default)."""
        if coefficients is None:
            coefficients = [1] * nvars
        coefficients = list(coefficients)
        if len(coefficients) != nvars:
            raise InvalidRange("one coefficient per variable is required")
        terms = {}
        for i, c in enumerate(coefficients):
            e = [0] * nvars
            e[i] = 1
            terms[tuple(e)] = c
        return cls(terms)

    @classmethod
    def product_of_one_plus_variables(cls, nvars: int) -> "AlgebraElement":
        """(1+x_1)(1+x_2)...(1+x_n): the sum of all square-free monomials."""
        return cls({e: 1 for e in product((0, 1), repeat=nvars)})

    def is_zero(self) -> bool:
        return not self.coefficients

    def constant_term(self):
        if not self.coefficients:
            return 0
        nvars = len(next(iter(self.coefficients)))
        return self.coefficients.get((0,) * nvars, 0)

    def is_homogeneous(self, degree: int) -> bool:
        return all(sum(e) == degree for e in self.coefficients)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.coefficients)
        for e, c in other.coefficients.items():
            out[e] = out.get(e, 0) + c
        return AlgebraElement(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __repr__(self) -> str:
        return f"AlgebraElement({self.coefficients})"

    def to_list(self, field: FieldSpec) -> list[dict]:
        return [
            {"exponents": list(e), "coeff": field.format(c)}
            for e, c in sorted(self.coefficients.items())
        ]

    @classmethod
    def parse(cls, obj, d: MciDescriptor) -> "AlgebraElement":
        """Read the JSON list-of-terms form, validating against ``d``."""
        if isinstance(obj, str):
            try:
                obj = json.loads(obj)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON: {exc}") from None
        if not isinstance(obj, list):
            raise ParseError("an element is a list of {exponents, coeff} terms")
        terms = {}
        for item in obj:
            try:
                e = tuple(int(x) for x in item["exponents"])
                c = d.field.coerce(str(item["coeff"]))
            except (KeyError, TypeError, ValueError) as exc:
                raise ParseError(f"malformed element term {item!r}: {exc}") from None
            if len(e) != d.nvars:
                raise ParseError(f"term {e} has {len(e)} exponents, expected {d.nvars}")
            if any(x < 0 or x > bound for x, bound in zip(e, d.degrees)):
                raise ParseError(f"term {e} exceeds the degree bounds {d.degrees}")
            terms[e] = terms.get(e, 0) + c
        return cls(terms)


def multiply_elements(
    a: AlgebraElement, b: AlgebraElement, d: MciDescriptor
) -> AlgebraElement:
    """Product in the quotient: overflowing exponents kill the term."""
    p = d.field.p if d.field.is_prime_field else None
    bounds = d.degrees
    out: dict[tuple[int, ...], object] = {}
    for ea, ca in a.coefficients.items():
        for eb, cb in b.coefficients.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if any(x > bound for x, bound in zip(e, bounds)):
                continue
            out[e] = out.get(e, 0) + ca * cb
    if p is not None:
        out = {e: c % p for e, c in out.items()}
    return AlgebraElement(out)


def element_power(a: AlgebraElement, k: int, d: MciDescriptor) -> AlgebraElement:
    if k < 0:
        raise InvalidRange("negative element powers are undefined")
    result = AlgebraElement.one(d.nvars)
    for _ in range(k):
        result = multiply_elements(result, a, d)
    return result


def mult_matrix(
    f: AlgebraElement, d: MciDescriptor, basis: GradedBasis | None = None
) -> ExactMatrix:
    """Matrix of multiplication by ``f`` acting on coordinate rows.

    Row i holds the expansion of f * (basis monomial i), so in the
    doubling order the product over all (1+x_i) reproduces the doubling
    0/1 matrix exactly.
    """
    if basis is None:
        basis = mci_basis(d)
    p = d.field.p if d.field.is_prime_field else None
    bounds = d.degrees
    dim = len(basis)
    index = basis.index
    rows = []
    for mono in basis.monomials:
        row = [0] * dim
        for ef, c in f.coefficients.items():
            e = tuple(x + y for x, y in zip(mono, ef))
            if any(x > bound for x, bound in zip(e, bounds)):
                continue
            row[index[e]] += c
        if p is not None:
            row = [x % p for x in row]
        rows.append(row)
    return ExactMatrix(rows, d.field)


def _require_linear(l: AlgebraElement) -> None:
    if l.is_zero() or not l.is_homogeneous(1):
        raise InvalidRange("a nonzero homogeneous linear form is required")


def graded_power_map(
    l: AlgebraElement, d: MciDescriptor, k: int, e: int
) -> ExactMatrix:
    """Matrix of multiplication by the e-th power of the linear form ``l``,
    restricted to the degree-k component and acting on coordinate columns;
    the shape is h_(k+e) by h_k."""
    _require_linear(l)
    n_top = d.socle_degree
    if not 0 <= k <= n_top or e < 0 or k + e > n_top:
        raise InvalidRange(f"component map k={k}, e={e} out of range for socle {n_top}")
    basis = mci_basis(d)
    power = element_power(l, e, d)
    source = basis.component_indices(k)
    target = basis.component_indices(k + e)
    target_pos = {basis.monomials[t]: row for row, t in enumerate(target)}
    cols = []
    for s in source:
        image = multiply_elements(
            power, AlgebraElement({basis.monomials[s]: 1}), d
        )
        col = [0] * len(target)
        for mono, c in image.coefficients.items():
            col[target_pos[mono]] = c
        cols.append(col)
    return ExactMatrix([list(row) for row in zip(*cols)], d.field)


@dataclass(frozen=True)
class LefschetzReport:
    """Outcome of a full-rank scan of the graded multiplication maps."""

    kind: str
    holds: bool
    witness_failures: tuple[tuple[int, int, int, int], ...]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "holds": self.holds,
            "witness_failures": [list(w) for w in self.witness_failures],
        }


def _lefschetz_scan(d: MciDescriptor, l: AlgebraElement, powers) -> tuple:
    h = hilbert_function(d)
    failures = []
    for k in range(d.socle_degree + 1):
        for e in powers:
            if k + e > d.socle_degree:
                continue
            expected = min(h[k], h[k + e])
            actual = graded_power_map(l, d, k, e).rank()
            if actual != expected:
                failures.append((k, e, expected, actual))
    return tuple(failures)


def strong_lefschetz_check(
    d: MciDescriptor, l: AlgebraElement | None = None
) -> LefschetzReport:
    """Check that every power of ``l`` maps between components with full rank."""
    if l is None:
        l = AlgebraElement.sum_of_variables(d.nvars)
    _require_linear(l)
    failures = _lefschetz_scan(d, l, range(d.socle_degree + 1))
    return LefschetzReport("strong", not failures, failures)


def weak_lefschetz_check(
    d: MciDescriptor, l: AlgebraElement | None = None
) -> LefschetzReport:
    """The single-step restriction: only multiplication by ``l`` itself."""
    if l is None:
        l = AlgebraElement.sum_of_variables(d.nvars)
    _require_linear(l)
    failures = _lefschetz_scan(d, l, (1,))
    return LefschetzReport("weak", not failures, failures)


def weyr_of_general_element(
    d: MciDescriptor, coefficients=None
) -> tuple[Partition, Partition, bool]:
    """Structure of multiplication by the variable sum versus the sorted
    Hilbert coefficients.

    Returns ``(structure, sorted_hilbert, agree)``. The computation also
    cross-checks that shifting the element by 1 moves the eigenvalue from
    0 to 1 without changing the structure. Custom linear
    ``coefficients`` are accepted, with no guarantee the comparison holds
    for degenerate choices.
    """
    if not char_guard(d.field, d.socle_degree):
        raise CharacteristicTooSmall(
            f"field {d.field} needs characteristic 0 or p > {d.socle_degree}"
        )
    l = AlgebraElement.sum_of_variables(d.nvars, coefficients)
    _require_linear(l)
    basis = mci_basis(d)
    m_l = mult_matrix(l, d, basis)
    structure = weyr_structure_at(m_l, 0).structure
    shifted = l + AlgebraElement.one(d.nvars)
    m_shifted = mult_matrix(shifted, d, basis)
    structure_at_one = weyr_structure_at(m_shifted, 1).structure
    if structure != structure_at_one:
        raise ArithmeticError(
            "structures at eigenvalues 0 and 1 diverged; this should be impossible"
        )
    sorted_hilbert = Partition.sorted_from(hilbert_function(d))
    return structure, sorted_hilbert, structure == sorted_hilbert


def group_embedding_map(grouping, k: int, field: FieldSpec = QQ) -> ExactMatrix:
    """Degree-k component of the embedding induced by grouping variables.

    Grouping the n variables of the quadratic quotient into consecutive
    blocks of sizes (g_1, ..., g_r) and sending the i-th new variable to
    the sum of its block embeds the quotient with degree bounds
    (g_1, ..., g_r) into the quadratic one. Columns are the images of
    the smaller algebra's degree-k monomials in the square-free basis.
    """
    try:
        grouping = grouping if isinstance(grouping, Partition) else Partition(grouping)
    except ValueError as exc:
        raise InvalidGrouping(str(exc)) from None
    n = grouping.total
    if not 0 <= k <= n:
        raise InvalidRange(f"component {k} out of range for socle {n}")
    ambient = MciDescriptor((1,) * n, field)
    small = MciDescriptor(grouping.parts, field)
    ambient_basis = mci_basis(ambient)
    small_basis = mci_basis(small)
    # Images of the r new variables: sums over consecutive blocks.
    images = []
    offset = 0
    for size in grouping.parts:
        coeffs = [1 if offset <= i < offset + size else 0 for i in range(n)]
        images.append(AlgebraElement.sum_of_variables(n, coeffs))
        offset += size
    target = ambient_basis.component_indices(k)
    target_pos = {ambient_basis.monomials[t]: row for row, t in enumerate(target)}
    cols = []
    for s in small_basis.component_indices(k):
        mono = small_basis.monomials[s]
        image = AlgebraElement.one(n)
        for i, exp in enumerate(mono):
            for _ in range(exp):
                image = multiply_elements(image, images[i], ambient)
        col = [0] * len(target)
        for e, c in image.coefficients.items():
            col[target_pos[e]] = c
        cols.append(col)
    return ExactMatrix([list(row) for row in zip(*cols)], field)
