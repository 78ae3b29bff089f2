"""Lie algebras from structure equations, input grammars, cohomology, extensions.

Two input formats are supported.  The compact notation lists one entry per
generator, e.g. ``(0, 0, 0, 12, 14 + 23)`` meaning d e^4 = e^12 and
d e^5 = e^14 + e^23; it is limited to dimension <= 9 and unit coefficients.
The rich, line-oriented grammar handles everything else:

    # comment
    [algebra]
    dim = 6
    d e5 = e13 - e24
    d e6 = -2 e12 + e14 + e23 + 2 e34

    [structure]
    F = e12 + e34 + e56
    J: e1 -> -e2, e2 -> e1, ...

    [family]
    param = t
    domain = (-inf, 2/3)
    eta = ((2-3*t)/2)^(1/3) * e1

Wedge between form atoms is written ``^``; ``*`` multiplies by scalars and
juxtaposition ("2 e34") does the same.  Scalar powers use ``^(p/q)``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ._linalg import (
    fraction_nullspace,
    insert_echelon_row,
    scalar_matrix_determinant,
    scalar_matrix_inverse,
)
from .exterior import (
    CoframeMap,
    Form,
    apply_coframe_map,
    exterior_derivative,
    wedge,
    wedge_power,
)
from .scalars import Scalar, UnsupportedScalarError

__all__ = [
    "BasisChangeReport",
    "CohomologyReport",
    "Interval",
    "JacobiReport",
    "LieAlgebra",
    "ParseError",
    "StructureFile",
    "central_extension",
    "ce_cohomology",
    "check_jacobi",
    "extend_by_line",
    "matrix_determinant",
    "matrix_inverse",
    "parse_compact",
    "parse_equations",
    "parse_form_expr",
    "parse_scalar_expr",
    "verify_basis_change",
]


@dataclass
class LieAlgebra:
    """Structure equations: the differential of each coframe generator."""

    dimension: int
    differentials: tuple[Form, ...]
    name: str | None = None

    def __post_init__(self) -> None:
        if len(self.differentials) != self.dimension:
            raise ValueError("need one differential per generator")
        for d in self.differentials:
            if d.dimension != self.dimension or d.degree != 2:
                raise ValueError("differentials must be degree-2 forms in the algebra dimension")

    @staticmethod
    def abelian(dimension: int, name: str | None = None) -> LieAlgebra:
        return LieAlgebra(dimension, tuple(Form.zero(dimension, 2) for _ in range(dimension)), name)

    def d(self, a: Form) -> Form:
        return exterior_derivative(self, a)

    def structure_constants(self) -> list[list[list[Fraction]]]:
        """c[a][b][i] with [e_a, e_b] = sum_i c[a][b][i] e_i, from d e^i = -e^i([.,.])."""
        n = self.dimension
        c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for i, diff in enumerate(self.differentials):
            for (a, b), coeff in diff.coeffs.items():
                q = coeff.as_fraction()
                c[a - 1][b - 1][i] = -q
                c[b - 1][a - 1][i] = q
        return c

    def is_rational(self) -> bool:
        return all(coeff.is_rational()
                   for d in self.differentials for coeff in d.coeffs.values())


@dataclass(frozen=True)
class JacobiReport:
    passed: bool
    residuals: tuple[tuple[int, Form], ...]  # (generator, d(d e^i)) for failures

    def render(self) -> str:
        if self.passed:
            return "jacobi: pass (d^2 = 0 on every generator)"
        lines = ["jacobi: FAIL"]
        for i, r in self.residuals:
            lines.append(f"  d^2 e{i} = {r.render()}")
        return "\n".join(lines)


def check_jacobi(algebra: LieAlgebra) -> JacobiReport:
    bad = []
    for i, diff in enumerate(algebra.differentials, start=1):
        residual = exterior_derivative(algebra, diff)
        if not residual.is_zero():
            bad.append((i, residual))
    return JacobiReport(not bad, tuple(bad))


# ---------------------------------------------------------------------------
# Compact notation.
# ---------------------------------------------------------------------------

_COMPACT_TERM = re.compile(r"([+-]?)\s*([1-9])([1-9])\s*")


def parse_compact(text: str, name: str | None = None) -> LieAlgebra:
    """Parse notation like "(0, 0, 0, 12, 14 + 23)"; dimension <= 9."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    entries = [e.strip() for e in body.split(",")]
    n = len(entries)
    if n > 9:
        raise ParseError("compact notation supports dimension <= 9; use the rich grammar", 1, 1)
    diffs = []
    for k, entry in enumerate(entries, start=1):
        if entry == "0":
            diffs.append(Form.zero(n, 2))
            continue
        terms = []
        pos = 0
        while pos < len(entry):
            m = _COMPACT_TERM.match(entry, pos)
            if not m:
                raise ParseError(f"malformed compact entry {entry!r}", 1, pos + 1)
            sign, i, j = m.group(1), int(m.group(2)), int(m.group(3))
            if i > n or j > n:
                raise ParseError(f"index out of range in compact entry {entry!r}", 1, pos + 1)
            terms.append(((i, j), -1 if sign == "-" else 1))
            pos = m.end()
        diffs.append(Form.from_terms(n, 2, terms))
    return LieAlgebra(n, tuple(diffs), name or text.strip())


# ---------------------------------------------------------------------------
# Rich grammar.
# ---------------------------------------------------------------------------


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


_TOKEN_RE = re.compile(
    r"[ \t]*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<arrow>->)|(?P<op>[+\-*/^(),:=|]))"
)


def _tokenize(text: str, lineno: int) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos] == "#":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos]!r}", lineno, pos + 1)
        if m.group("num"):
            tokens.append(("num", m.group("num"), m.start("num") + 1))
        elif m.group("name"):
            tokens.append(("name", m.group("name"), m.start("name") + 1))
        elif m.group("arrow"):
            tokens.append(("op", "->", m.start("arrow") + 1))
        else:
            tokens.append(("op", m.group("op"), m.start("op") + 1))
        pos = m.end()
    return tokens


_GENERATOR_RE = re.compile(r"^e([1-9])$")
_ETOKEN_RE = re.compile(r"^e([1-9]+)$")

# Values carried through the expression parser: Scalars or Forms.
Value = object


class _ExprParser:
    """Pratt parser over a token list producing Scalar or Form values."""

    def __init__(self, tokens, lineno: int, dimension: int, env: dict[str, Value],
                 allow_dt: bool, param_allowed: bool):
        self.tokens = tokens
        self.lineno = lineno
        self.pos = 0
        self.dimension = dimension
        self.env = env
        self.allow_dt = allow_dt
        self.param_allowed = param_allowed

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def error(self, message: str):
        col = self.tokens[self.pos][2] if self.pos < len(self.tokens) else 0
        raise ParseError(message, self.lineno, col)

    def parse(self) -> Value:
        value = self.expression(0)
        if self.pos != len(self.tokens):
            self.error(f"unexpected trailing token {self.tokens[self.pos][1]!r}")
        return value

    def expression(self, min_prec: int) -> Value:
        value = self.atom()
        while True:
            tok = self.peek()
            if tok is None:
                return value
            kind, text, _ = tok
            if kind == "op" and text in ("+", "-") and min_prec <= 10:
                self.pos += 1
                rhs = self.expression(11)
                value = self.combine_add(value, rhs, text)
            elif kind == "op" and text in ("*", "/") and min_prec <= 20:
                self.pos += 1
                rhs = self.expression(21)
                value = self.combine_mul(value, rhs, text)
            elif kind == "op" and text == "^" and min_prec <= 30:
                self.pos += 1
                rhs = self.expression(30)  # right-assoc
                value = self.combine_power(value, rhs)
            elif kind in ("num", "name") or (kind == "op" and text == "("):
                if min_prec > 20:
                    return value
                rhs = self.expression(21)
                value = self.combine_mul(value, rhs, "*")
            else:
                return value

    def atom(self) -> Value:
        tok = self.peek()
        if tok is None:
            self.error("expected an expression")
        kind, text, _ = tok
        if kind == "op" and text == "-":
            self.pos += 1
            value = self.expression(25)
            return -value if isinstance(value, Scalar) else value.scale(-1)  # type: ignore[union-attr]
        if kind == "op" and text == "+":
            self.pos += 1
            return self.expression(25)
        if kind == "num":
            self.pos += 1
            return Scalar.rational(int(text))
        if kind == "op" and text == "(":
            self.pos += 1
            value = self.expression(0)
            tok = self.peek()
            if tok is None or tok[1] != ")":
                self.error("expected ')'")
            self.pos += 1
            return value
        if kind == "name":
            self.pos += 1
            if text == "t":
                if not self.param_allowed:
                    self.error("parameter t is not declared in this context")
                return Scalar.t()
            if text == "dt":
                if not self.allow_dt:
                    self.error("dt is only available in family sections")
                return Form.generator(self.dimension, self.dimension)
            m = _ETOKEN_RE.match(text)
            if m:
                digits = [int(c) for c in m.group(1)]
                for d in digits:
                    if d > self.dimension:
                        self.error(f"generator e{d} exceeds dimension {self.dimension}")
                return Form.from_terms(self.dimension, len(digits), [(digits, 1)])
            if text in self.env:
                return self.env[text]
            self.error(f"unknown name {text!r}")
        self.error(f"unexpected token {text!r}")

    def combine_add(self, a: Value, b: Value, op: str) -> Value:
        if isinstance(a, Scalar) and isinstance(b, Scalar):
            return a + b if op == "+" else a - b
        if isinstance(a, Form) and isinstance(b, Form):
            return a + b if op == "+" else a - b
        # allow `form + 0` style mixing only through explicit zeros
        if isinstance(a, Form) and isinstance(b, Scalar) and b.is_zero():
            return a
        if isinstance(a, Scalar) and a.is_zero() and isinstance(b, Form):
            return b if op == "+" else b.scale(-1)
        self.error("cannot add a scalar and a form")

    def combine_mul(self, a: Value, b: Value, op: str) -> Value:
        if isinstance(a, Scalar) and isinstance(b, Scalar):
            return a * b if op == "*" else a / b
        if isinstance(a, Scalar) and isinstance(b, Form):
            if op == "/":
                self.error("cannot divide a scalar by a form")
            return b.scale(a)
        if isinstance(a, Form) and isinstance(b, Scalar):
            return a.scale(b) if op == "*" else a.scale(Scalar.one() / b)
        self.error("cannot multiply two forms with '*'; use '^' for wedge")

    def combine_power(self, a: Value, b: Value) -> Value:
        if isinstance(a, Form) and isinstance(b, Form):
            return wedge(a, b)
        if isinstance(a, Form) and isinstance(b, Scalar):
            k = b.as_fraction()
            if k.denominator != 1 or k < 0:
                self.error("form powers must be nonnegative integers")
            return wedge_power(a, int(k))
        if isinstance(a, Scalar) and isinstance(b, Scalar):
            try:
                return a.rational_power(b.as_fraction())
            except UnsupportedScalarError as exc:
                self.error(str(exc))
        self.error("unsupported '^' operands")


def parse_form_expr(text: str, dimension: int, env: dict[str, Value] | None = None,
                    allow_dt: bool = False, param_allowed: bool = True,
                    lineno: int = 1) -> Form:
    value = _parse_expr(text, dimension, env, allow_dt, param_allowed, lineno)
    if isinstance(value, Scalar):
        if value.is_zero():
            raise ParseError("a bare scalar is not a form (write it times a generator)",
                             lineno, 1)
        raise ParseError("expected a form, found a scalar", lineno, 1)
    return value  # type: ignore[return-value]


def parse_scalar_expr(text: str, lineno: int = 1) -> Scalar:
    value = _parse_expr(text, 1, None, False, True, lineno)
    if not isinstance(value, Scalar):
        raise ParseError("expected a scalar, found a form", lineno, 1)
    return value


def _parse_expr(text: str, dimension: int, env, allow_dt, param_allowed, lineno):
    tokens = _tokenize(text, lineno)
    if not tokens:
        raise ParseError("empty expression", lineno, 1)
    parser = _ExprParser(tokens, lineno, dimension, env or {}, allow_dt, param_allowed)
    return parser.parse()


@dataclass(frozen=True)
class Interval:
    lo: Fraction | None  # None = -inf
    hi: Fraction | None  # None = +inf

    def samples(self, count: int = 3) -> list[Fraction]:
        if self.lo is None and self.hi is None:
            return [Fraction(-1), Fraction(0), Fraction(1)][:count]
        if self.lo is None:
            assert self.hi is not None
            return [self.hi - k for k in range(1, count + 1)]
        if self.hi is None:
            return [self.lo + k for k in range(1, count + 1)]
        width = self.hi - self.lo
        return [self.lo + width * Fraction(k, count + 1) for k in range(1, count + 1)]

    def render(self) -> str:
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "inf" if self.hi is None else str(self.hi)
        return f"({lo}, {hi})"


@dataclass
class FamilySection:
    param: str = "t"
    domain: tuple[Interval, ...] = (Interval(None, None),)
    forms: dict[str, Form] = field(default_factory=dict)  # ambient dimension n+1


@dataclass
class BasisChangeSection:
    matrix: list[list[Scalar]]
    target: LieAlgebra


@dataclass
class StructureFile:
    algebra: LieAlgebra
    forms: dict[str, Form] = field(default_factory=dict)
    coframe_map: CoframeMap | None = None
    family: FamilySection | None = None
    basis_change: BasisChangeSection | None = None
    theta: tuple[Fraction, Fraction] | None = None  # (cos, sin)


def parse_equations(text: str, name: str | None = None) -> StructureFile:
    """Parse the rich line-oriented grammar into a structure file."""
    lines = text.splitlines()
    section = "algebra"
    dim: int | None = None
    alg_name = name
    raw_diffs: dict[int, tuple[str, int]] = {}
    compact: LieAlgebra | None = None
    structure_lines: list[tuple[str, str, int]] = []
    family_lines: list[tuple[str, str, int]] = []
    basis_lines: list[tuple[str, str, int]] = []
    theta_text: tuple[str, int] | None = None

    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ParseError("malformed section header", lineno, 1)
            section = line[1:-1].strip().lower()
            if section not in ("algebra", "structure", "family", "basis_change"):
                raise ParseError(f"unknown section [{section}]", lineno, 1)
            continue
        if "=" not in line and not line.startswith("J"):
            raise ParseError("expected an assignment", lineno, 1)
        if section == "algebra":
            key, _, rhs = line.partition("=")
            key = key.strip()
            rhs = rhs.strip()
            if key == "dim":
                if dim is not None:
                    raise ParseError("duplicate dim declaration", lineno, 1)
                dim = int(rhs)
            elif key == "name":
                alg_name = rhs
            elif key == "compact":
                compact = parse_compact(rhs, alg_name)
            elif re.match(r"^d\s*e[1-9]$", key):
                m = re.match(r"^d\s*e([1-9])$", key)
                assert m is not None
                k = int(m.group(1))
                if k in raw_diffs:
                    raise ParseError(f"duplicate definition of d e{k}", lineno, 1)
                raw_diffs[k] = (rhs, lineno)
            else:
                raise ParseError(f"unknown algebra statement {key!r}", lineno, 1)
        elif section == "structure":
            if line.startswith("J"):
                structure_lines.append(("J", line, lineno))
            else:
                key, _, rhs = line.partition("=")
                if key.strip() == "theta":
                    theta_text = (rhs.strip(), lineno)
                else:
                    structure_lines.append((key.strip(), rhs.strip(), lineno))
        elif section == "family":
            key, _, rhs = line.partition("=")
            family_lines.append((key.strip(), rhs.strip(), lineno))
        else:
            key, _, rhs = line.partition("=")
            basis_lines.append((key.strip(), rhs.strip(), lineno))

    if compact is not None:
        if dim is not None and dim != compact.dimension:
            raise ParseError("dim contradicts the compact declaration", 1, 1)
        algebra = compact
        if raw_diffs:
            raise ParseError("cannot mix compact and explicit differentials", 1, 1)
    else:
        if dim is None:
            raise ParseError("missing dim declaration", 1, 1)
        diffs = []
        for k in range(1, dim + 1):
            if k in raw_diffs:
                rhs, lineno = raw_diffs[k]
                value = _parse_expr(rhs, dim, {}, False, True, lineno)
                if isinstance(value, Scalar):
                    if not value.is_zero():
                        raise ParseError("a differential must be a 2-form or 0", lineno, 1)
                    value = Form.zero(dim, 2)
                if value.degree != 2:
                    raise ParseError(f"d e{k} must have degree 2", lineno, 1)
                diffs.append(value)
            else:
                diffs.append(Form.zero(dim, 2))
        for k, (rhs, lineno) in raw_diffs.items():
            if k > dim:
                raise ParseError(f"generator e{k} exceeds dimension {dim}", lineno, 1)
        algebra = LieAlgebra(dim, tuple(diffs), alg_name)

    out = StructureFile(algebra)
    env: dict[str, Value] = {}
    n = algebra.dimension

    for key, rhs, lineno in structure_lines:
        if key == "J":
            out.coframe_map = _parse_j_line(rhs, n, lineno)
            continue
        value = _parse_expr(rhs, n, env, False, True, lineno)
        env[key] = value
        if isinstance(value, Form):
            out.forms[key] = value
    if theta_text is not None:
        out.theta = _parse_theta(*theta_text)

    if family_lines:
        fam = FamilySection()
        fam_env: dict[str, Value] = dict(env)
        for key, rhs, lineno in family_lines:
            if key == "param":
                if rhs != "t":
                    raise ParseError("the family parameter must be t", lineno, 1)
                fam.param = rhs
            elif key == "domain":
                fam.domain = _parse_domain(rhs, lineno)
            else:
                value = _parse_expr(rhs, n + 1, fam_env, True, True, lineno)
                if not isinstance(value, Form):
                    raise ParseError(f"{key} must be a form", lineno, 1)
                fam_env[key] = value
                fam.forms[key] = value
        out.family = fam

    if basis_lines:
        rows: dict[int, list[Scalar]] = {}
        target: LieAlgebra | None = None
        for key, rhs, lineno in basis_lines:
            if key == "target":
                target = parse_compact(rhs)
                continue
            m = re.match(r"^f([1-9])$", key)
            if not m:
                raise ParseError(f"basis change rows are f1..f{n}, got {key!r}", lineno, 1)
            value = _parse_expr(rhs, n, {}, False, True, lineno)
            if not isinstance(value, Form) or value.degree != 1:
                raise ParseError(f"{key} must be a 1-form", lineno, 1)
            rows[int(m.group(1))] = [value.coefficient((j,)) for j in range(1, n + 1)]
        if target is None:
            raise ParseError("basis_change section needs a target", 1, 1)
        if sorted(rows) != list(range(1, n + 1)):
            raise ParseError("basis_change must define f1..fn exactly once each", 1, 1)
        out.basis_change = BasisChangeSection([rows[i] for i in range(1, n + 1)], target)

    return out


def _parse_j_line(line: str, dimension: int, lineno: int) -> CoframeMap:
    body = line[1:].lstrip()
    if not body.startswith(":"):
        raise ParseError("expected 'J:'", lineno, 1)
    rows: dict[int, Form] = {}
    for chunk in body[1:].split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        lhs, _, rhs = chunk.partition("->")
        m = _GENERATOR_RE.match(lhs.strip())
        if not m:
            raise ParseError(f"bad J entry {chunk!r}", lineno, 1)
        i = int(m.group(1))
        image = _parse_expr(rhs.strip(), dimension, {}, False, True, lineno)
        if not isinstance(image, Form) or image.degree != 1:
            raise ParseError(f"J must map generators to 1-forms: {chunk!r}", lineno, 1)
        rows[i] = image
    if sorted(rows) != list(range(1, dimension + 1)):
        raise ParseError("J must specify the image of every generator", lineno, 1)
    matrix = [[rows[i].coefficient((j,)) for j in range(1, dimension + 1)]
              for i in range(1, dimension + 1)]
    return CoframeMap(matrix)


def _parse_theta(text: str, lineno: int) -> tuple[Fraction, Fraction]:
    text = text.strip()
    named = {
        "0": (Fraction(1), Fraction(0)),
        "pi/2": (Fraction(0), Fraction(1)),
        "pi": (Fraction(-1), Fraction(0)),
        "3pi/2": (Fraction(0), Fraction(-1)),
        "-pi/2": (Fraction(0), Fraction(-1)),
    }
    if text in named:
        return named[text]
    m = re.match(r"^\(\s*(-?\d+(?:/\d+)?)\s*,\s*(-?\d+(?:/\d+)?)\s*\)$", text)
    if not m:
        raise ParseError(
            "theta must be 0, pi/2, pi, 3pi/2 or a rational (cos, sin) pair", lineno, 1)
    c, s = Fraction(m.group(1)), Fraction(m.group(2))
    if c * c + s * s != 1:
        raise ParseError("theta pair must satisfy cos^2 + sin^2 = 1", lineno, 1)
    return c, s


_INTERVAL_RE = re.compile(
    r"^\(\s*(-inf|-?\d+(?:/\d+)?)\s*,\s*(inf|-?\d+(?:/\d+)?)\s*\)$")


def _parse_domain(text: str, lineno: int) -> tuple[Interval, ...]:
    out = []
    for part in text.split("|"):
        m = _INTERVAL_RE.match(part.strip())
        if not m:
            raise ParseError(f"bad interval {part.strip()!r}", lineno, 1)
        lo = None if m.group(1) == "-inf" else Fraction(m.group(1))
        hi = None if m.group(2) == "inf" else Fraction(m.group(2))
        if lo is not None and hi is not None and lo >= hi:
            raise ParseError("empty interval", lineno, 1)
        out.append(Interval(lo, hi))
    return tuple(out)


# ---------------------------------------------------------------------------
# Chevalley-Eilenberg cohomology.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CohomologyReport:
    betti: tuple[int, ...]  # degrees 0..max_degree
    representatives: tuple[tuple[Form, ...], ...]

    def render(self) -> str:
        lines = []
        for k, (b, reps) in enumerate(zip(self.betti, self.representatives)):
            shown = ", ".join(f"[{r.render()}]" for r in reps)
            lines.append(f"b{k} = {b}" + (f"  representatives: {shown}" if shown else ""))
        return "\n".join(lines)


def ce_cohomology(algebra: LieAlgebra, max_degree: int | None = None) -> CohomologyReport:
    if not algebra.is_rational():
        raise UnsupportedScalarError("cohomology requires rational structure constants")
    jac = check_jacobi(algebra)
    if not jac.passed:
        raise ValueError("algebra fails the Jacobi identity; d^2 != 0")
    n = algebra.dimension
    top = n if max_degree is None else min(max_degree, n)
    bases = [list(itertools.combinations(range(1, n + 1), k)) for k in range(top + 2)]

    def d_vectors(k: int) -> list[list[Fraction]]:
        """Images of the degree-k basis as vectors over the (k+1)-basis."""
        target_index = {idx: pos for pos, idx in enumerate(bases[k + 1])}
        out = []
        for idx in bases[k]:
            image = exterior_derivative(algebra, Form(n, k, {idx: Scalar.one()}))
            vec = [Fraction(0)] * len(bases[k + 1])
            for jdx, coeff in image.coeffs.items():
                vec[target_index[jdx]] = coeff.as_fraction()
            out.append(vec)
        return out

    betti: list[int] = []
    reps: list[tuple[Form, ...]] = []
    prev_images: list[list[Fraction]] = []
    for k in range(top + 1):
        vectors = d_vectors(k) if k < n else [[] for _ in bases[k]]
        kernel = _nullspace(vectors, len(bases[k + 1]) if k < n else 0)
        echelon: list[list[Fraction]] = []
        pivots: list[int] = []
        for img in prev_images:
            _insert_row(echelon, pivots, img)
        chosen: list[Form] = []
        for vec in kernel:
            if _insert_row(echelon, pivots, vec):
                coeffs = {bases[k][i]: Scalar.rational(c)
                          for i, c in enumerate(vec) if c != 0}
                chosen.append(Form(n, k, coeffs))
        betti.append(len(chosen))
        reps.append(tuple(chosen))
        prev_images = d_vectors(k) if k < n else []
        # images live in degree k+1 coordinates for the next round
    return CohomologyReport(tuple(betti), tuple(reps))


_insert_row = insert_echelon_row
_nullspace = fraction_nullspace


# ---------------------------------------------------------------------------
# Extensions and basis changes.
# ---------------------------------------------------------------------------


def lift_form(a: Form, new_dimension: int) -> Form:
    if new_dimension < a.dimension:
        raise ValueError("cannot lift to a smaller dimension")
    return Form(new_dimension, a.degree, dict(a.coeffs))


def extend_by_line(algebra: LieAlgebra) -> LieAlgebra:
    """Append a closed generator (labelled dt) as e^(n+1)."""
    n = algebra.dimension
    diffs = tuple(lift_form(d, n + 1) for d in algebra.differentials)
    diffs = diffs + (Form.zero(n + 1, 2),)
    suffix = " x R" if algebra.name else None
    return LieAlgebra(n + 1, diffs, (algebra.name + suffix) if suffix else None)


def central_extension(algebra: LieAlgebra, curvature: Form) -> LieAlgebra:
    """Circle-bundle model: new generator rho with d rho = curvature."""
    if algebra.dimension != curvature.dimension or curvature.degree != 2:
        raise ValueError("curvature must be a 2-form on the base algebra")
    if not exterior_derivative(algebra, curvature).is_zero():
        raise ValueError("curvature 2-form must be closed")
    n = algebra.dimension
    diffs = tuple(lift_form(d, n + 1) for d in algebra.differentials)
    diffs = diffs + (lift_form(curvature, n + 1),)
    return LieAlgebra(n + 1, diffs)


matrix_determinant = scalar_matrix_determinant
matrix_inverse = scalar_matrix_inverse


@dataclass(frozen=True)
class BasisChangeReport:
    passed: bool
    computed: tuple[Form, ...]       # d f^i expressed in the e-basis
    target_in_e: tuple[Form, ...]    # target differentials pushed through M
    scalings: tuple[Scalar | None, ...]  # c_i with d f^i = c_i * target_i, if proportional

    @property
    def proportional(self) -> bool:
        return all(c is not None for c in self.scalings)

    def render(self) -> str:
        lines = [f"basis change: {'pass' if self.passed else 'FAIL'}"]
        for i, (lhs, c) in enumerate(zip(self.computed, self.scalings), start=1):
            extra = ""
            if not self.passed and c is not None:
                extra = f"   (matches target up to factor {c.render()})"
            lines.append(f"  d f{i} = {lhs.render()}{extra}")
        return "\n".join(lines)


def verify_basis_change(algebra: LieAlgebra, matrix: Sequence[Sequence[Scalar]],
                        target: LieAlgebra) -> BasisChangeReport:
    """Check d f^i = target differentials under f^i = sum_j M[i][j] e^j.

    Both sides are compared in the e-basis: the left side is sum_j M[i][j]
    d e^j, the right side is the target differential with every generator
    substituted by the corresponding row of M.  No matrix inversion is
    needed, which keeps everything inside exact scalar arithmetic.
    """
    n = algebra.dimension
    if target.dimension != n or len(matrix) != n or any(len(r) != n for r in matrix):
        raise ValueError("matrix and algebras must share one dimension")
    det = matrix_determinant(matrix)
    if det.is_zero():
        raise ValueError("basis-change matrix is singular")
    cmap = CoframeMap([list(row) for row in matrix])
    computed = []
    target_in_e = []
    scalings: list[Scalar | None] = []
    all_exact = True
    for i in range(n):
        lhs = Form.zero(n, 2)
        for j in range(n):
            if not matrix[i][j].is_zero():
                lhs = lhs + algebra.differentials[j].scale(matrix[i][j])
        rhs = apply_coframe_map(cmap, target.differentials[i])
        computed.append(lhs)
        target_in_e.append(rhs)
        if lhs == rhs:
            scalings.append(Scalar.one())
            continue
        all_exact = False
        scalings.append(_proportionality(lhs, rhs))
    return BasisChangeReport(all_exact, tuple(computed), tuple(target_in_e), tuple(scalings))


def _proportionality(lhs: Form, rhs: Form) -> Scalar | None:
    if rhs.is_zero():
        return None if not lhs.is_zero() else Scalar.one()
    if lhs.is_zero():
        return None
    ratio = None
    for idx in sorted(rhs.coeffs):
        try:
            ratio = lhs.coefficient(idx) / rhs.coeffs[idx]
            break
        except UnsupportedScalarError:
            continue
    if ratio is None:
        return None
    return ratio if lhs == rhs.scale(ratio) else None
