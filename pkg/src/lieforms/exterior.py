"""Graded exterior algebra over an n-dimensional coframe with Scalar coefficients.

Forms are stored as maps from strictly increasing index tuples (values 1..n)
to Scalars; wedge uses the Koszul sign obtained by sorting concatenated
indices.  The exterior derivative of a left-invariant form is driven by the
structure equations of a Lie algebra (any object exposing ``dimension`` and
``differentials``); coefficients are constants on the group, so d never
differentiates them.  The parameter derivative partial_t acts coefficient-wise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .scalars import Scalar, UnsupportedScalarError

Index = tuple[int, ...]

__all__ = [
    "CoframeMap",
    "Form",
    "SpanReport",
    "apply_coframe_map",
    "exterior_derivative",
    "partial_t",
    "span_rank",
    "wedge",
]


def sort_index(indices: Sequence[int]) -> tuple[int, Index]:
    """Sort an index tuple, returning the Koszul sign (0 on repeats)."""
    idx = list(indices)
    sign = 1
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(idx, idx[1:]):
        if a == b:
            return 0, ()
    return sign, tuple(idx)


@dataclass
class Form:
    """A degree-k exterior form over an n-dimensional coframe."""

    dimension: int
    degree: int
    coeffs: dict[Index, Scalar] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for idx in self.coeffs:
            if len(idx) != self.degree:
                raise ValueError(f"index {idx} has wrong length for degree {self.degree}")

    @staticmethod
    def zero(dimension: int, degree: int) -> Form:
        return Form(dimension, degree)

    @staticmethod
    def from_terms(dimension: int, degree: int,
                   terms: Iterable[tuple[Sequence[int], Scalar | Fraction | int]]) -> Form:
        """Build a form from possibly unsorted index tuples, normalizing signs."""
        coeffs: dict[Index, Scalar] = {}
        for indices, value in terms:
            if len(indices) != degree:
                raise ValueError(f"index {tuple(indices)} has wrong length for degree {degree}")
            for i in indices:
                if not 1 <= i <= dimension:
                    raise ValueError(f"index {i} out of range 1..{dimension}")
            sign, idx = sort_index(indices)
            if sign == 0:
                continue
            scal = value if isinstance(value, Scalar) else Scalar.rational(value)
            if sign < 0:
                scal = -scal
            acc = coeffs.get(idx, Scalar.zero()) + scal
            if acc.is_zero():
                coeffs.pop(idx, None)
            else:
                coeffs[idx] = acc
        return Form(dimension, degree, coeffs)

    @staticmethod
    def generator(dimension: int, index: int) -> Form:
        """The coframe 1-form e^index."""
        return Form.from_terms(dimension, 1, [((index,), 1)])

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, indices: Sequence[int]) -> Scalar:
        sign, idx = sort_index(indices)
        if sign == 0:
            return Scalar.zero()
        value = self.coeffs.get(idx, Scalar.zero())
        return value if sign > 0 else -value

    def _check_compatible(self, other: Form) -> None:
        if self.dimension != other.dimension:
            raise ValueError("forms live over different coframe dimensions")
        if self.degree != other.degree:
            raise ValueError("forms have different degrees")

    def __add__(self, other: Form) -> Form:
        if not isinstance(other, Form):
            return NotImplemented
        self._check_compatible(other)
        coeffs = dict(self.coeffs)
        for idx, val in other.coeffs.items():
            acc = coeffs.get(idx, Scalar.zero()) + val
            if acc.is_zero():
                coeffs.pop(idx, None)
            else:
                coeffs[idx] = acc
        return Form(self.dimension, self.degree, coeffs)

    def __sub__(self, other: Form) -> Form:
        return self + (-other)

    def __neg__(self) -> Form:
        return Form(self.dimension, self.degree,
                    {idx: -val for idx, val in self.coeffs.items()})

    def scale(self, factor: Scalar | Fraction | int) -> Form:
        scal = factor if isinstance(factor, Scalar) else Scalar.rational(factor)
        if scal.is_zero():
            return Form.zero(self.dimension, self.degree)
        return Form(self.dimension, self.degree,
                    {idx: scal * val for idx, val in self.coeffs.items()})

    def __mul__(self, factor: Scalar | Fraction | int) -> Form:
        return self.scale(factor)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return (self.dimension == other.dimension and self.degree == other.degree
                and self.coeffs == other.coeffs)

    def evaluate(self, vectors: Sequence[Sequence[Scalar | Fraction | int]]) -> Scalar:
        """Evaluate on degree-many frame vectors given by coefficient tuples."""
        if len(vectors) != self.degree:
            raise ValueError("wrong number of vectors")
        total = Scalar.zero()
        for idx, coeff in self.coeffs.items():
            for perm in itertools.permutations(range(self.degree)):
                sign = _perm_sign(perm)
                prod = coeff * sign
                for slot, pos in enumerate(perm):
                    comp = vectors[pos][idx[slot] - 1]
                    comp = comp if isinstance(comp, Scalar) else Scalar.rational(comp)
                    prod = prod * comp
                total = total + prod
        return total

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for idx in sorted(self.coeffs):
            coeff = self.coeffs[idx]
            token = "e" + "".join(str(i) for i in idx) if idx else "1"
            text, negative = _coeff_text(coeff, token)
            if not parts:
                parts.append(f"-{text}" if negative else text)
            else:
                parts.append(f"- {text}" if negative else f"+ {text}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Form({self.dimension}d deg {self.degree}: {self.render()})"


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def _coeff_text(coeff: Scalar, token: str) -> tuple[str, bool]:
    """Render coeff * e-token, factoring a leading minus when unambiguous."""
    text = coeff.render()
    if text == "1":
        return token, False
    if text == "-1":
        return token, True
    negative = False
    if (" " not in text) and text.startswith("-"):
        negative = True
        text = text[1:]
    if " " in text:
        text = f"({text})"
    return f"{text}*{token}", negative


def wedge(a: Form, b: Form) -> Form:
    """Exterior product with the Koszul sign convention."""
    if a.dimension != b.dimension:
        raise ValueError("forms live over different coframe dimensions")
    out: dict[Index, Scalar] = {}
    for ia, ca in a.coeffs.items():
        for ib, cb in b.coeffs.items():
            sign, idx = sort_index(ia + ib)
            if sign == 0:
                continue
            term = ca * cb
            if sign < 0:
                term = -term
            acc = out.get(idx, Scalar.zero()) + term
            if acc.is_zero():
                out.pop(idx, None)
            else:
                out[idx] = acc
    return Form(a.dimension, a.degree + b.degree, out)


def wedge_all(forms: Sequence[Form]) -> Form:
    result = forms[0]
    for f in forms[1:]:
        result = wedge(result, f)
    return result


def wedge_power(a: Form, k: int) -> Form:
    if k < 0:
        raise ValueError("negative wedge power")
    if k == 0:
        return Form(a.dimension, 0, {(): Scalar.one()})
    out = a
    for _ in range(k - 1):
        out = wedge(out, a)
    return out


def contract(vector: Sequence[Scalar | Fraction | int], a: Form) -> Form:
    """Interior product i_X a for X given by frame components."""
    if a.degree == 0:
        raise ValueError("cannot contract a degree-0 form")
    if len(vector) != a.dimension:
        raise ValueError("vector has wrong number of components")
    comps = [v if isinstance(v, Scalar) else Scalar.rational(v) for v in vector]
    out = Form.zero(a.dimension, a.degree - 1)
    for idx, coeff in a.coeffs.items():
        for pos, i in enumerate(idx):
            comp = comps[i - 1]
            if comp.is_zero():
                continue
            rest = idx[:pos] + idx[pos + 1:]
            term = coeff * comp
            if pos % 2:
                term = -term
            out = out + Form(a.dimension, a.degree - 1, {rest: term})
    return out


@dataclass
class CoframeMap:
    """A linear map on the coframe, J e^i = sum_j M[i][j] e^j."""

    matrix: list[list[Scalar]]

    @staticmethod
    def from_rows(rows: Sequence[Sequence[Scalar | Fraction | int]]) -> CoframeMap:
        out = [[v if isinstance(v, Scalar) else Scalar.rational(v) for v in row]
               for row in rows]
        n = len(out)
        if any(len(row) != n for row in out):
            raise ValueError("coframe matrix must be square")
        return CoframeMap(out)

    @property
    def dimension(self) -> int:
        return len(self.matrix)

    def image_of_generator(self, i: int) -> Form:
        n = self.dimension
        return Form(n, 1, {(j + 1,): c for j, c in enumerate(self.matrix[i - 1])
                           if not c.is_zero()})

    def compose(self, other: CoframeMap) -> CoframeMap:
        n = self.dimension
        rows = [[Scalar.zero()] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                acc = Scalar.zero()
                for k in range(n):
                    acc = acc + self.matrix[i][k] * other.matrix[k][j]
                rows[i][j] = acc
        return CoframeMap(rows)

    def squares_to_minus_identity(self) -> bool:
        sq = self.compose(self).matrix
        n = self.dimension
        for i in range(n):
            for j in range(n):
                want = Scalar.rational(-1) if i == j else Scalar.zero()
                if sq[i][j] != want:
                    return False
        return True

    def is_orthogonal(self) -> bool:
        n = self.dimension
        for i in range(n):
            for j in range(n):
                acc = Scalar.zero()
                for k in range(n):
                    acc = acc + self.matrix[i][k] * self.matrix[j][k]
                want = Scalar.one() if i == j else Scalar.zero()
                if acc != want:
                    return False
        return True

    def as_fraction_matrix(self) -> list[list[Fraction]]:
        return [[c.as_fraction() for c in row] for row in self.matrix]


def apply_coframe_map(cmap: CoframeMap, a: Form) -> Form:
    """Extend the coframe map to k-forms factor-wise (algebra morphism)."""
    if cmap.dimension != a.dimension:
        raise ValueError("coframe map dimension mismatch")
    if a.degree == 0:
        return a
    images = [cmap.image_of_generator(i) for i in range(1, a.dimension + 1)]
    out = Form.zero(a.dimension, a.degree)
    for idx, coeff in a.coeffs.items():
        piece = wedge_all([images[i - 1] for i in idx])
        out = out + piece.scale(coeff)
    return out


def exterior_derivative(algebra, a: Form) -> Form:
    """d extended as an antiderivation from the algebra's structure equations."""
    if algebra.dimension != a.dimension:
        raise ValueError("form does not live on the given algebra")
    out = Form.zero(a.dimension, a.degree + 1)
    for idx, coeff in a.coeffs.items():
        for pos, i in enumerate(idx):
            dgen = algebra.differentials[i - 1]
            if dgen.is_zero():
                continue
            rest = Form(a.dimension, a.degree - 1, {idx[:pos] + idx[pos + 1:]: Scalar.one()})
            term = wedge(dgen, rest).scale(coeff)
            if pos % 2:
                term = -term
            out = out + term
    return out


def partial_t(a: Form) -> Form:
    """Coefficient-wise d/dt."""
    coeffs = {}
    for idx, coeff in a.coeffs.items():
        d = coeff.diff()
        if not d.is_zero():
            coeffs[idx] = d
    return Form(a.dimension, a.degree, coeffs)


@dataclass(frozen=True)
class SpanReport:
    rank: int
    basis_indices: tuple[int, ...]
    secondary_rank: int | None = None

    @property
    def agrees(self) -> bool:
        return self.secondary_rank is None or self.secondary_rank == self.rank


def span_rank(items: Sequence[Form] | Sequence[Sequence[Sequence[Fraction]]],
              at: Fraction | int | None = None) -> SpanReport:
    """Rank of a span via exact Gaussian elimination over the rationals.

    Forms with parametric coefficients require an evaluation point ``at``; a
    second engine-chosen point cross-checks the rank, and a disagreement is
    reported through ``secondary_rank``.
    """
    if not items:
        return SpanReport(0, ())
    if isinstance(items[0], Form):
        forms = list(items)  # type: ignore[arg-type]
        dim, deg = forms[0].dimension, forms[0].degree
        for f in forms:
            if f.dimension != dim or f.degree != deg:
                raise ValueError("forms in a span must share dimension and degree")
        universe = sorted({idx for f in forms for idx in f.coeffs})
        parametric = any(c.depends_on_t() for f in forms for c in f.coeffs.values())
        if parametric and at is None:
            raise ValueError("parametric span requires an evaluation point")
        if not parametric:
            vectors = [[f.coeffs.get(idx, Scalar.zero()).as_fraction() for idx in universe]
                       for f in forms]
            rank, basis = _eliminate(vectors)
            return SpanReport(rank, tuple(basis))
        t0 = Fraction(at)  # type: ignore[arg-type]
        vectors = [_evaluated_vector(f, universe, t0) for f in forms]
        rank, basis = _eliminate(vectors)
        t1 = _second_point(forms, universe, t0)
        rank2, _ = _eliminate([_evaluated_vector(f, universe, t1) for f in forms])
        return SpanReport(rank, tuple(basis), secondary_rank=rank2)
    shapes = {(len(mat), len(mat[0]) if mat else 0) for mat in items}  # type: ignore[arg-type]
    if len(shapes) != 1:
        raise ValueError("matrices in a span must share one shape")
    vectors = [[Fraction(c) for row in mat for c in row] for mat in items]  # type: ignore[union-attr]
    rank, basis = _eliminate(vectors)
    return SpanReport(rank, tuple(basis))


def _evaluated_vector(f: Form, universe: Sequence[Index], t0: Fraction) -> list[Fraction]:
    return [f.coeffs.get(idx, Scalar.zero()).evaluate_exact(t0) for idx in universe]


def _second_point(forms, universe, t0: Fraction) -> Fraction:
    for shift in (1, 2, 3, 5, 7):
        cand = t0 + shift
        try:
            for f in forms:
                _evaluated_vector(f, universe, cand)
            return cand
        except (UnsupportedScalarError, ValueError):
            continue
    raise ValueError("no rational secondary evaluation point found near the given one")


def _eliminate(vectors: list[list[Fraction]]) -> tuple[int, list[int]]:
    """Row-reduce copies of the vectors; first-nonzero pivoting, input order."""
    echelon: list[list[Fraction]] = []
    pivots: list[int] = []
    basis: list[int] = []
    for item_index, vec in enumerate(vectors):
        row = list(vec)
        for erow, p in zip(echelon, pivots):
            if row[p] != 0:
                factor = row[p] / erow[p]
                for c in range(len(row)):
                    row[c] -= factor * erow[c]
        pivot = next((c for c, v in enumerate(row) if v != 0), None)
        if pivot is not None:
            echelon.append(row)
            pivots.append(pivot)
            basis.append(item_index)
    return len(echelon), basis
