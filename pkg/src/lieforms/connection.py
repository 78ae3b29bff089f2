"""Metric connections on a Lie algebra with orthonormal coframe: Levi-Civita,
the Hermitian connection with totally skew torsion, curvature and the
infinitesimal holonomy span.

Conventions, pinned by reproducing published connection tables exactly:
brackets are read from the structure equations through da(X, Y) = -a([X, Y]),
connection coefficients satisfy nabla_{e_k} e_j = sum_i G[i][j][k] e_i with
1-forms omega^i_j = sum_k G[i][j][k] e^k, and the skew-torsion connection is
the Levi-Civita connection shifted by half the torsion 3-form T = J dF.  Two
independent code paths (Koszul plus torsion correction, and the closed-form
solution of the first Cartan structure equation with prescribed skew torsion)
must agree on every input.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from ._linalg import insert_echelon_row
from .algebras import LieAlgebra
from .exterior import CoframeMap, Form, apply_coframe_map, wedge
from .scalars import Scalar

__all__ = [
    "ConnectionSheet",
    "CurvatureSheet",
    "HolonomyReport",
    "MetricFrame",
    "bismut_connection",
    "connection_from_cartan",
    "covariant_derivative_curvature",
    "curvature",
    "holonomy_algebra",
    "levi_civita",
    "nabla_matrices",
    "torsion_form",
]

Matrix = list[list[Fraction]]


@dataclass
class MetricFrame:
    """Declares e^1..e^n orthonormal for g and carries the coframe map J."""

    algebra: LieAlgebra
    J: CoframeMap
    name: str | None = None

    def __post_init__(self) -> None:
        n = self.algebra.dimension
        if n % 2:
            raise ValueError("Hermitian frames need even dimension")
        if self.J.dimension != n:
            raise ValueError("J dimension mismatch")
        if not self.algebra.is_rational():
            raise ValueError("connection computations need rational structure constants")
        if not self.J.squares_to_minus_identity():
            raise ValueError("J must square to minus the identity")
        if not self.J.is_orthogonal():
            raise ValueError("J must preserve the frame metric")

    def j_matrix(self) -> Matrix:
        return self.J.as_fraction_matrix()


@dataclass
class ConnectionSheet:
    frame: MetricFrame
    gamma: list[list[list[Fraction]]]       # gamma[i][j][k]: nabla_{e_k} e_j ~ e_i
    torsion: Form | None                    # None for torsion-free
    torsion_components: dict[tuple[int, int, int], Fraction]

    def omega(self, i: int, j: int) -> Form:
        """Connection 1-form omega^i_j (1-based indices)."""
        n = self.frame.algebra.dimension
        return Form(n, 1, {(k + 1,): Scalar.rational(self.gamma[i - 1][j - 1][k])
                           for k in range(n)
                           if self.gamma[i - 1][j - 1][k] != 0})

    def tau(self, i: int) -> Form:
        """Torsion 2-form tau^i = sum_{j<k} T_{ijk} e^jk."""
        n = self.frame.algebra.dimension
        coeffs = {}
        for j in range(1, n + 1):
            for k in range(j + 1, n + 1):
                val = _torsion_lookup(self.torsion_components, i, j, k)
                if val:
                    coeffs[(j, k)] = Scalar.rational(val)
        return Form(n, 2, coeffs)

    def is_metric(self) -> bool:
        n = self.frame.algebra.dimension
        return all(self.gamma[i][j][k] == -self.gamma[j][i][k]
                   for i in range(n) for j in range(n) for k in range(n))

    def cartan_residuals(self) -> list[Form]:
        """de^i + sum_j omega^i_j ^ e^j - tau^i, all of which must vanish."""
        n = self.frame.algebra.dimension
        out = []
        for i in range(1, n + 1):
            acc = self.frame.algebra.differentials[i - 1]
            for j in range(1, n + 1):
                acc = acc + wedge(self.omega(i, j), Form.generator(n, j))
            acc = acc - self.tau(i)
            out.append(acc)
        return out

    def preserves_j(self) -> bool:
        """nabla J = 0: each direction matrix commutes with J."""
        n = self.frame.algebra.dimension
        jm = self.frame.j_matrix()
        for k in range(n):
            gk = [[self.gamma[i][j][k] for j in range(n)] for i in range(n)]
            if _mat_mul(gk, jm) != _mat_mul(jm, gk):
                return False
        return True

    def first_bianchi_residuals(self, curv: CurvatureSheet) -> list[Form]:
        """d tau^i + sum_j omega^i_j ^ tau^j - sum_j Omega^i_j ^ e^j (diagnostic)."""
        n = self.frame.algebra.dimension
        out = []
        for i in range(1, n + 1):
            acc = self.frame.algebra.d(self.tau(i))
            for j in range(1, n + 1):
                acc = acc + wedge(self.omega(i, j), self.tau(j))
                acc = acc - wedge(curv.omega_form(i, j), Form.generator(n, j))
            out.append(acc)
        return out

    def render(self) -> str:
        n = self.frame.algebra.dimension
        lines = []
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                form = self.omega(i, j)
                if not form.is_zero():
                    lines.append(f"omega^{i}_{j} = {form.render()}")
        return "\n".join(lines) if lines else "all connection forms vanish"


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def torsion_form(frame: MetricFrame, kaehler_form: Form) -> tuple[Form, dict]:
    """T = J(dF) with components T_{ijk}; also feeds tau^i of the Cartan system."""
    if apply_coframe_map(frame.J, kaehler_form) != kaehler_form:
        raise ValueError("J must fix the Kaehler 2-form")
    df = frame.algebra.d(kaehler_form)
    torsion = apply_coframe_map(frame.J, df)
    components: dict[tuple[int, int, int], Fraction] = {}
    for idx, coeff in torsion.coeffs.items():
        components[idx] = coeff.as_fraction()
    return torsion, components


def _torsion_lookup(components: dict, i: int, j: int, k: int) -> Fraction:
    trio = (i, j, k)
    order = tuple(sorted(trio))
    if len(set(trio)) < 3:
        return Fraction(0)
    base = components.get(order, Fraction(0))
    if base == 0:
        return base
    # parity of the permutation taking sorted order to (i, j, k)
    perm = [order.index(x) for x in trio]
    sign = 1
    for a in range(3):
        for b in range(a + 1, 3):
            if perm[a] > perm[b]:
                sign = -sign
    return sign * base


def levi_civita(frame: MetricFrame) -> ConnectionSheet:
    """Koszul formula in an orthonormal left-invariant frame."""
    n = frame.algebra.dimension
    c = frame.algebra.structure_constants()
    gamma = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                gamma[i][j][k] = (c[k][j][i] - c[j][i][k] + c[i][k][j]) / 2
    return ConnectionSheet(frame, gamma, None, {})


def bismut_connection(frame: MetricFrame, kaehler_form: Form) -> ConnectionSheet:
    """Levi-Civita plus half the skew torsion, cross-checked against the
    closed-form Cartan solution."""
    torsion, components = torsion_form(frame, kaehler_form)
    lc = levi_civita(frame)
    n = frame.algebra.dimension
    gamma = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                gamma[i][j][k] = (lc.gamma[i][j][k]
                                  + _torsion_lookup(components, k + 1, j + 1, i + 1) / 2)
    sheet = ConnectionSheet(frame, gamma, torsion, components)
    other = connection_from_cartan(frame, components, torsion)
    if sheet.gamma != other.gamma:
        raise AssertionError(
            "Koszul-plus-torsion and Cartan-solution connection paths disagree")
    return sheet


def connection_from_cartan(frame: MetricFrame, components: dict,
                           torsion: Form | None = None) -> ConnectionSheet:
    """Unique skew solution of de^i + sum omega^i_j ^ e^j = tau^i.

    Writing D_{ijk} = de^i(e_j, e_k) - T_{ijk}, the solution is
    gamma^i_{jk} = (D_{ijk} + D_{jki} - D_{kij}) / 2.
    """
    n = frame.algebra.dimension

    def dval(i: int, a: int, b: int) -> Fraction:
        return (frame.algebra.differentials[i - 1].coefficient((a, b)).as_fraction()
                - _torsion_lookup(components, i, a, b))

    gamma = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                gamma[i - 1][j - 1][k - 1] = (
                    dval(i, j, k) + dval(j, k, i) - dval(k, i, j)) / 2
    return ConnectionSheet(frame, gamma, torsion, dict(components))


@dataclass
class CurvatureSheet:
    frame: MetricFrame
    forms: dict[tuple[int, int], Form]  # Omega^i_j for i < j; skew elsewhere

    def omega_form(self, i: int, j: int) -> Form:
        n = self.frame.algebra.dimension
        if i == j:
            return Form.zero(n, 2)
        if i < j:
            return self.forms.get((i, j), Form.zero(n, 2))
        return -self.forms.get((j, i), Form.zero(n, 2))

    def endomorphism(self, k: int, l: int) -> Matrix:
        """R(e_k, e_l) as the matrix [Omega^i_j(e_k, e_l)]."""
        n = self.frame.algebra.dimension
        out = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), form in self.forms.items():
            val = form.coefficient((k, l)).as_fraction()
            if val:
                out[i - 1][j - 1] = val
                out[j - 1][i - 1] = -val
        return out

    def tensor(self) -> dict[tuple[int, int], Matrix]:
        n = self.frame.algebra.dimension
        out = {}
        for k, l in itertools.combinations(range(1, n + 1), 2):
            mat = self.endomorphism(k, l)
            if any(any(row) for row in mat):
                out[(k, l)] = mat
        return out

    def render(self) -> str:
        lines = []
        for (i, j) in sorted(self.forms):
            form = self.forms[(i, j)]
            if not form.is_zero():
                lines.append(f"Omega^{i}_{j} = {form.render()}")
        return "\n".join(lines) if lines else "flat: all curvature forms vanish"


def curvature(sheet: ConnectionSheet) -> CurvatureSheet:
    """Second Cartan structure equation Omega^i_j = d omega^i_j + omega^i_r ^ omega^r_j."""
    frame = sheet.frame
    n = frame.algebra.dimension
    forms = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            acc = frame.algebra.d(sheet.omega(i, j))
            for r in range(1, n + 1):
                acc = acc + wedge(sheet.omega(i, r), sheet.omega(r, j))
            if not acc.is_zero():
                forms[(i, j)] = acc
    return CurvatureSheet(frame, forms)


# Keys of derivative tensors: (k, l, m_1, ..., m_g) with the 2-form slot first.
TensorDict = dict[tuple[int, ...], Matrix]


def _derive_tensor(sheet: ConnectionSheet, tensor: TensorDict) -> TensorDict:
    """One covariant derivative in every frame direction.

    Every index of the (1, 3+g)-tensor receives a connection correction; the
    frame-derivative term is absent because components are constant on the
    group.  Corrections are scattered, since they can create components at
    2-form slots where the input tensor had none.
    """
    n = sheet.frame.algebra.dimension
    gammas = [[[sheet.gamma[i][j][m] for j in range(n)] for i in range(n)]
              for m in range(n)]
    # connection direction matrices are sparse; iterate nonzero entries only
    gamma_entries = [[(i, r, gm[i][r]) for i in range(n) for r in range(n)
                      if gm[i][r]] for gm in gammas]
    out: TensorDict = {}

    def accumulate(key: tuple[int, ...], mat: Matrix, scale: Fraction) -> None:
        k, l = key[0], key[1]
        if k == l:
            return
        if k > l:
            key = (l, k) + key[2:]
            scale = -scale
        entry = out.get(key)
        if entry is None:
            entry = [[Fraction(0)] * n for _ in range(n)]
            out[key] = entry
        for i in range(n):
            row = mat[i]
            erow = entry[i]
            for j in range(n):
                if row[j]:
                    erow[j] += scale * row[j]

    for key, base in tensor.items():
        for m in range(n):
            entries = gamma_entries[m]
            commutator = [[Fraction(0)] * n for _ in range(n)]
            for i, r, v in entries:
                brow = base[r]
                crow = commutator[i]
                for j in range(n):
                    if brow[j]:
                        crow[j] += v * brow[j]
            for r, j, v in entries:
                for i in range(n):
                    if base[i][r]:
                        commutator[i][j] -= base[i][r] * v
            accumulate(key + (m + 1,), commutator, Fraction(1))
            # lower-slot corrections: (nabla_m T)(.., e_s, ..) picks up
            # -gamma^{r}_{s m} T(.., e_r, ..) for each slot holding r
            gm = gammas[m]
            for pos in range(len(key)):
                r = key[pos]
                grow = gm[r - 1]
                for s in range(1, n + 1):
                    coeff = grow[s - 1]
                    if coeff == 0:
                        continue
                    accumulate(key[:pos] + (s,) + key[pos + 1:] + (m + 1,),
                               base, -coeff)
    return {k: v for k, v in out.items() if any(any(row) for row in v)}


def covariant_derivative_curvature(sheet: ConnectionSheet, curv: CurvatureSheet,
                                   order: int = 1) -> list[TensorDict]:
    """Iterated covariant derivatives of the curvature tensor, one per order."""
    if order < 1:
        raise ValueError("order must be >= 1")
    out = []
    current: TensorDict = curv.tensor()
    for _ in range(order):
        current = _derive_tensor(sheet, current)
        out.append(current)
    return out


def nabla_matrices(sheet: ConnectionSheet, curv: CurvatureSheet,
                   direction: int) -> dict[tuple[int, int], Form]:
    """nabla_{E_direction} Omega^i_j as 2-forms, for report rendering."""
    n = sheet.frame.algebra.dimension
    first = covariant_derivative_curvature(sheet, curv, 1)[0]
    out: dict[tuple[int, int], Form] = {}
    for (k, l, m), mat in first.items():
        if m != direction:
            continue
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                val = mat[i - 1][j - 1]
                if val:
                    prev = out.get((i, j), Form.zero(n, 2))
                    out[(i, j)] = prev + Form(n, 2, {(k, l): Scalar.rational(val)})
    return out


@dataclass(frozen=True)
class HolonomyReport:
    span_dimension: int
    generation_dimensions: tuple[int, ...]
    basis: tuple[tuple[tuple[Fraction, ...], ...], ...]
    contained_in_u_n: bool
    contained_in_su_n: bool
    stabilized_at_order: int | None

    def render(self) -> str:
        gens = ", ".join(str(d) for d in self.generation_dimensions)
        stab = (str(self.stabilized_at_order) if self.stabilized_at_order is not None
                else f">{len(self.generation_dimensions) - 1} (max order hit)")
        return (f"holonomy: dim={self.span_dimension}, generations=[{gens}], "
                f"u(n)={'yes' if self.contained_in_u_n else 'no'}, "
                f"su(n)={'yes' if self.contained_in_su_n else 'no'}, "
                f"stabilized at order {stab}")


def holonomy_algebra(sheet: ConnectionSheet, curv: CurvatureSheet,
                     max_order: int = 6) -> HolonomyReport:
    """Span of curvature endomorphisms and their iterated covariant derivatives.

    Spans are computed by exact elimination after each generation; the scan
    stops one generation after the span stops growing, or at max_order.
    """
    n = sheet.frame.algebra.dimension
    echelon: list[list[Fraction]] = []
    pivots: list[int] = []
    basis: list[Matrix] = []

    def absorb(tensor: TensorDict) -> bool:
        grew = False
        for key in sorted(tensor):
            mat = tensor[key]
            flat = [mat[i][j] for i in range(n) for j in range(n)]
            if insert_echelon_row(echelon, pivots, flat):
                basis.append(mat)
                grew = True
        return grew

    generations = []
    absorb(curv.tensor())
    generations.append(len(echelon))
    stabilized: int | None = None
    current: TensorDict = curv.tensor()
    for order in range(1, max_order + 1):
        current = _derive_tensor(sheet, current)
        grew = absorb(current)
        generations.append(len(echelon))
        if not grew:
            stabilized = order - 1
            break
    jm = sheet.frame.j_matrix()
    in_u = all(_mat_mul(mat, jm) == _mat_mul(jm, mat) for mat in basis)
    in_su = in_u and all(
        sum(sum(jm[i][r] * mat[r][i] for r in range(n)) for i in range(n)) == 0
        for mat in basis)
    frozen = tuple(tuple(tuple(row) for row in mat) for mat in basis)
    return HolonomyReport(len(echelon), tuple(generations), frozen, in_u, in_su,
                          stabilized)
