"""SU(2) quadruplets and SU(n) triples: validity, balanced/hypo conditions,
hypersurface restriction, suspension, circle bundles, conformal couples.

An SU(2)-structure on a 5-dimensional algebra is a quadruplet (eta, omega1,
omega2, omega3) whose 2-forms wedge to a common volume 4-form, pairwise
orthogonally, with a positivity condition.  Positivity is checked through the
derived endomorphisms on ker eta: with omega1 = omega3(A., .) and
omega2 = omega3(B., .), a valid quadruplet has A^2 = B^2 = -Id, AB = -BA and
a symmetric positive-definite reconstructed metric eta(x)eta(y) - omega2(x, Ay).
This reproduces the normal form eta = e1, omega1 = e24 + e53,
omega2 = e25 + e34, omega3 = e23 + e45, which pins all sign conventions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._linalg import (
    fraction_nullspace,
    positive_definite,
    scalar_identity,
    scalar_mat_eq,
    scalar_mat_mul,
    scalar_mat_neg,
    scalar_matrix_inverse,
    symmetric,
)
from .algebras import LieAlgebra, central_extension, extend_by_line, lift_form
from .exterior import CoframeMap, Form, apply_coframe_map, contract, wedge, wedge_power
from .scalars import Scalar, UnsupportedScalarError

__all__ = [
    "SU2Structure",
    "SUnStructure",
    "balanced_report_su2",
    "check_conformal_couple",
    "circle_bundle_preconditions",
    "circle_bundle_structure",
    "complex_volume_forms",
    "hypo_report",
    "is_balanced_su2",
    "is_balanced_sun",
    "is_hypo",
    "restrict_to_hypersurface",
    "restrictable_directions",
    "standard_quadruplet",
    "suspend_su2",
    "validate_su2",
    "validate_sun",
]


@dataclass
class SU2Structure:
    algebra: LieAlgebra
    eta: Form
    omega1: Form
    omega2: Form
    omega3: Form
    name: str | None = None

    def __post_init__(self) -> None:
        if self.algebra.dimension != 5:
            raise ValueError("SU(2)-structures live on 5-dimensional algebras")
        for f, deg in ((self.eta, 1), (self.omega1, 2), (self.omega2, 2), (self.omega3, 2)):
            if f.dimension != 5 or f.degree != deg:
                raise ValueError("quadruplet has wrong degrees or dimension")


@dataclass
class SUnStructure:
    algebra: LieAlgebra
    F: Form
    psi_plus: Form
    psi_minus: Form
    J: CoframeMap
    name: str | None = None

    def __post_init__(self) -> None:
        if self.algebra.dimension % 2:
            raise ValueError("SU(n)-structures live on even-dimensional algebras")

    @property
    def n(self) -> int:
        return self.algebra.dimension // 2


def complex_volume_forms(pairs: list[tuple[Form, Form]]) -> tuple[Form, Form]:
    """Real and imaginary parts of the wedge of complex 1-forms re + i*im."""
    re, im = pairs[0]
    for re2, im2 in pairs[1:]:
        re, im = (wedge(re, re2) - wedge(im, im2),
                  wedge(re, im2) + wedge(im, re2))
    return re, im


def standard_quadruplet(algebra: LieAlgebra, name: str | None = None) -> SU2Structure:
    """eta = e1, omega1 = e24 + e53, omega2 = e25 + e34, omega3 = e23 + e45."""
    mk = lambda *terms: Form.from_terms(5, 2, terms)
    return SU2Structure(
        algebra,
        eta=Form.generator(5, 1),
        omega1=mk(((2, 4), 1), ((5, 3), 1)),
        omega2=mk(((2, 5), 1), ((3, 4), 1)),
        omega3=mk(((2, 3), 1), ((4, 5), 1)),
        name=name,
    )


# ---------------------------------------------------------------------------
# SU(2) validation.
# ---------------------------------------------------------------------------


@dataclass
class Su2Geometry:
    """Derived frame data: Reeb vector, kernel basis, endomorphisms, metric."""

    xi: list[Scalar]                  # frame components of the Reeb vector
    kernel_basis: list[list[Scalar]]  # four frame vectors spanning ker eta
    endo_a: list[list[Scalar]]        # omega1 = omega3(A., .) on ker eta
    endo_b: list[list[Scalar]]
    metric: list[list[Scalar]]        # 5x5 frame metric


@dataclass(frozen=True)
class Su2ValidationReport:
    wedge_identities: dict[str, bool]
    volume_nonzero: bool
    reeb_contractions_vanish: bool
    quaternion_relations: bool
    metric_symmetric: bool
    metric_positive: bool | None   # None when positivity was not decidable exactly

    @property
    def passed(self) -> bool:
        return (all(self.wedge_identities.values()) and self.volume_nonzero
                and self.reeb_contractions_vanish and self.quaternion_relations
                and self.metric_symmetric and bool(self.metric_positive))

    def render(self) -> str:
        lines = [f"su2 validation: {'pass' if self.passed else 'FAIL'}"]
        for key, ok in self.wedge_identities.items():
            lines.append(f"  {key}: {'ok' if ok else 'FAIL'}")
        lines.append(f"  volume form nonzero: {'ok' if self.volume_nonzero else 'FAIL'}")
        lines.append("  reeb contractions vanish: "
                     + ("ok" if self.reeb_contractions_vanish else "FAIL"))
        lines.append(f"  A^2 = B^2 = -1, AB = -BA: "
                     + ("ok" if self.quaternion_relations else "FAIL"))
        lines.append(f"  metric symmetric: {'ok' if self.metric_symmetric else 'FAIL'}")
        lines.append(f"  metric positive-definite: "
                     + ("ok" if self.metric_positive else "FAIL"))
        return "\n".join(lines)


def su2_wedge_identities(s: SU2Structure) -> tuple[dict[str, bool], Form]:
    """The Prop-2.1-style identities omega_i ^ omega_j = delta_ij v, exactly."""
    v = wedge(s.omega1, s.omega1)
    flags = {
        "omega1^omega1 = omega2^omega2": wedge(s.omega2, s.omega2) == v,
        "omega1^omega1 = omega3^omega3": wedge(s.omega3, s.omega3) == v,
        "omega1^omega2 = 0": wedge(s.omega1, s.omega2).is_zero(),
        "omega1^omega3 = 0": wedge(s.omega1, s.omega3).is_zero(),
        "omega2^omega3 = 0": wedge(s.omega2, s.omega3).is_zero(),
    }
    return flags, v


def su2_geometry(s: SU2Structure) -> Su2Geometry:
    """Reeb vector, endomorphisms A, B on ker eta and the frame metric.

    Exact throughout.  Rational quadruplets go through Fraction elimination;
    parametric ones require eta to be a multiple of a single generator (the
    shape of every catalog family), so the kernel stays rational.
    """
    if s.eta.is_zero():
        raise ValueError("eta must be a nowhere vanishing 1-form")
    rational = all(c.is_rational() for f in (s.eta, s.omega1, s.omega2, s.omega3)
                   for c in f.coeffs.values())
    if rational:
        xi, kernel = _reeb_and_kernel_rational(s)
    else:
        xi, kernel = _reeb_and_kernel_single_eta(s)

    omega3_k = _restricted_matrix(s.omega3, kernel)
    try:
        omega3_inv = scalar_matrix_inverse(omega3_k)
    except ValueError as exc:
        raise ValueError("omega3 is degenerate on ker eta") from exc
    omega1_k = _restricted_matrix(s.omega1, kernel)
    omega2_k = _restricted_matrix(s.omega2, kernel)
    endo_a = scalar_mat_mul(omega3_inv, omega1_k)
    endo_b = scalar_mat_mul(omega3_inv, omega2_k)
    gk = scalar_mat_neg(scalar_mat_mul(omega2_k, endo_a))

    metric = [[Scalar.zero()] * 5 for _ in range(5)]
    eta_of = [s.eta.coefficient((i,)) for i in range(1, 6)]
    # coordinates of the projection of each frame vector onto ker eta
    proj = []
    for x in range(5):
        frame_vec = [Scalar.rational(1 if i == x else 0) for i in range(5)]
        p = [frame_vec[i] - eta_of[x] * xi[i] for i in range(5)]
        proj.append(_kernel_coordinates(p, kernel))
    for x in range(5):
        for y in range(5):
            val = eta_of[x] * eta_of[y]
            for p in range(4):
                for q in range(4):
                    if not proj[x][p].is_zero() and not proj[y][q].is_zero():
                        val = val + proj[x][p] * proj[y][q] * gk[p][q]
            metric[x][y] = val
    return Su2Geometry(xi, kernel, endo_a, endo_b, metric)


def _reeb_and_kernel_rational(s: SU2Structure):
    w = [[s.omega3.coefficient((x + 1, y + 1)).as_fraction() for y in range(5)]
         for x in range(5)]
    columns = [[w[r][c] for r in range(5)] for c in range(5)]
    null = fraction_nullspace(columns, 5)
    if len(null) != 1:
        raise ValueError("omega3 must have a one-dimensional kernel")
    xi0 = null[0]
    pairing = sum(s.eta.coefficient((i + 1,)).as_fraction() * xi0[i] for i in range(5))
    if pairing == 0:
        raise ValueError("omega3 is degenerate on ker eta")
    xi = [Scalar.rational(c / pairing) for c in xi0]
    eta_vec = [s.eta.coefficient((i + 1,)).as_fraction() for i in range(5)]
    kernel_frac = fraction_nullspace([[e] for e in eta_vec], 1)
    kernel = [[Scalar.rational(c) for c in vec] for vec in kernel_frac]
    _check_reeb(s, xi)
    return xi, kernel


def _reeb_and_kernel_single_eta(s: SU2Structure):
    if len(s.eta.coeffs) != 1:
        raise UnsupportedScalarError(
            "parametric quadruplets need eta proportional to a single generator")
    ((idx,), _coeff), = s.eta.coeffs.items()
    xi = _pfaffian_kernel_vector(s.omega3)
    pairing = Scalar.zero()
    for i in range(5):
        if not xi[i].is_zero():
            pairing = pairing + s.eta.coefficient((i + 1,)) * xi[i]
    if pairing.is_zero():
        raise ValueError("omega3 is degenerate on ker eta")
    xi = [c / pairing for c in xi]
    kernel = []
    for i in range(5):
        if i == idx - 1:
            continue
        vec = [Scalar.rational(1 if j == i else 0) for j in range(5)]
        kernel.append(vec)
    _check_reeb(s, xi)
    return xi, kernel


def _pfaffian_kernel_vector(omega3: Form) -> list[Scalar]:
    """The kernel line of a rank-4 skew 5x5 pairing, via sub-Pfaffians.

    For skew W the vector v_i = (-1)^i Pf(W with row/col i removed) satisfies
    W v = 0; it vanishes identically exactly when rank W < 4.
    """
    w = [[omega3.coefficient((x + 1, y + 1)) for y in range(5)] for x in range(5)]
    out = []
    for i in range(5):
        rest = [r for r in range(5) if r != i]
        a, b, c, d = rest
        pf = (w[a][b] * w[c][d] - w[a][c] * w[b][d] + w[a][d] * w[b][c])
        out.append(-pf if i % 2 == 0 else pf)
    if all(c.is_zero() for c in out):
        raise ValueError("omega3 must have a one-dimensional kernel")
    return out


def _check_reeb(s: SU2Structure, xi) -> None:
    if not contract(xi, s.omega3).is_zero():
        raise ValueError("the Reeb direction must contract omega3 to zero")


def _restricted_matrix(form2: Form, kernel) -> list[list[Scalar]]:
    k = len(kernel)
    return [[form2.evaluate([kernel[p], kernel[q]]) for q in range(k)] for p in range(k)]


def _kernel_coordinates(vec, kernel) -> list[Scalar]:
    """Coordinates of vec in the kernel basis.

    Each kernel vector has an indicator position where it is the only basis
    vector with a nonzero entry (the free coordinate of the nullspace), so
    coordinates read off directly.
    """
    coords = []
    for i, kvec in enumerate(kernel):
        indicator = next(
            p for p, c in enumerate(kvec)
            if not c.is_zero() and all(kernel[j][p].is_zero()
                                       for j in range(len(kernel)) if j != i))
        coords.append(vec[indicator] / kvec[indicator])
    residual = list(vec)
    for coord, kvec in zip(coords, kernel):
        residual = [r - coord * k for r, k in zip(residual, kvec)]
    if any(not r.is_zero() for r in residual):
        raise ValueError("vector does not lie in ker eta")
    return coords


def validate_su2(s: SU2Structure) -> Su2ValidationReport:
    """Exact structure validation; raises for eta = 0 or degenerate omega3.

    Parametric quadruplets are validated symbolically except for metric
    positivity, which is reported as None (families sample it numerically).
    """
    flags, v = su2_wedge_identities(s)
    volume_ok = not wedge(v, s.eta).is_zero()
    geo = su2_geometry(s)
    reeb_ok = (contract(geo.xi, s.omega1).is_zero()
               and contract(geo.xi, s.omega2).is_zero())
    minus_id = scalar_mat_neg(scalar_identity(4))
    ab = scalar_mat_mul(geo.endo_a, geo.endo_b)
    ba = scalar_mat_mul(geo.endo_b, geo.endo_a)
    quaternion = (scalar_mat_eq(scalar_mat_mul(geo.endo_a, geo.endo_a), minus_id)
                  and scalar_mat_eq(scalar_mat_mul(geo.endo_b, geo.endo_b), minus_id)
                  and scalar_mat_eq(ab, scalar_mat_neg(ba)))
    sym = symmetric(geo.metric)
    try:
        positive = positive_definite(geo.metric)
    except UnsupportedScalarError:
        positive = None
    return Su2ValidationReport(flags, volume_ok, reeb_ok, quaternion, sym, positive)


# ---------------------------------------------------------------------------
# Balanced and hypo conditions.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ResidualReport:
    residuals: tuple[tuple[str, Form], ...]

    @property
    def passed(self) -> bool:
        return all(f.is_zero() for _, f in self.residuals)

    def flags(self) -> dict[str, bool]:
        return {name: f.is_zero() for name, f in self.residuals}

    def render(self) -> str:
        lines = []
        for name, f in self.residuals:
            lines.append(f"  {name} = {f.render()}" + ("" if f.is_zero() else "   [nonzero]"))
        return "\n".join(lines)


def is_balanced_su2(s: SU2Structure) -> ResidualReport:
    """Residuals of d(omega1^eta) = d(omega2^eta) = d(omega3^omega3) = 0."""
    d = s.algebra.d
    return ResidualReport((
        ("d(omega1^eta)", d(wedge(s.omega1, s.eta))),
        ("d(omega2^eta)", d(wedge(s.omega2, s.eta))),
        ("d(omega3^omega3)", d(wedge(s.omega3, s.omega3))),
    ))


balanced_report_su2 = is_balanced_su2


def is_hypo(s: SU2Structure) -> ResidualReport:
    """Residuals of d(omega1^eta) = d(omega2^eta) = d(omega3) = 0."""
    d = s.algebra.d
    return ResidualReport((
        ("d(omega1^eta)", d(wedge(s.omega1, s.eta))),
        ("d(omega2^eta)", d(wedge(s.omega2, s.eta))),
        ("d(omega3)", d(s.omega3)),
    ))


hypo_report = is_hypo


# ---------------------------------------------------------------------------
# SU(n) validation and balancedness.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SunValidationReport:
    j_squares_to_minus_id: bool
    j_fixes_f: bool
    metric_symmetric: bool
    metric_positive: bool
    rotation_identity: bool
    psi_wedge_orthogonal: bool | None   # n = 4 only: psi+ ^ psi- = 0
    psi_squares_match: bool | None      # n = 4 only: psi+^2 = psi-^2
    volume_ratio: Fraction | None       # psi+ ^ psi- = ratio * F^n (or the n=4 analogue)

    @property
    def passed(self) -> bool:
        extra = ((self.psi_wedge_orthogonal is not False)
                 and (self.psi_squares_match is not False))
        return (self.j_squares_to_minus_id and self.j_fixes_f and self.metric_symmetric
                and self.metric_positive and self.rotation_identity and extra
                and self.volume_ratio is not None and self.volume_ratio > 0)

    def render(self) -> str:
        lines = [f"su(n) validation: {'pass' if self.passed else 'FAIL'}"]
        lines.append(f"  J^2 = -1: {'ok' if self.j_squares_to_minus_id else 'FAIL'}")
        lines.append(f"  J(F) = F: {'ok' if self.j_fixes_f else 'FAIL'}")
        lines.append(f"  metric symmetric: {'ok' if self.metric_symmetric else 'FAIL'}")
        lines.append(f"  metric positive-definite: {'ok' if self.metric_positive else 'FAIL'}")
        lines.append(f"  volume form rotation identity: "
                     + ("ok" if self.rotation_identity else "FAIL"))
        if self.volume_ratio is not None:
            lines.append(f"  psi+ ^ psi- proportionality constant: {self.volume_ratio}")
        else:
            lines.append("  psi+ ^ psi- not proportional to F^n: FAIL")
        return "\n".join(lines)


def sun_metric_matrix(s: SUnStructure) -> list[list[Scalar]]:
    """g(x, y) = F(x, Jy) in the frame."""
    n = s.algebra.dimension
    fmat = [[s.F.coefficient((x + 1, y + 1)) for y in range(n)] for x in range(n)]
    return scalar_mat_mul(fmat, s.J.matrix)


def validate_sun(s: SUnStructure) -> SunValidationReport:
    if s.J is None:
        raise ValueError("an SU(n)-structure needs its coframe map J")
    dim = s.algebra.dimension
    n = s.n
    j_sq = s.J.squares_to_minus_identity()
    j_fix = apply_coframe_map(s.J, s.F) == s.F
    g = sun_metric_matrix(s)
    sym = symmetric(g)
    try:
        pos = positive_definite(g)
    except UnsupportedScalarError:
        pos = False
    jp = apply_coframe_map(s.J, s.psi_plus)
    jm = apply_coframe_map(s.J, s.psi_minus)
    if n % 2:
        rotation = (jp == s.psi_minus) and (jm == -s.psi_plus)
    else:
        rotation = (jp == s.psi_plus) and (jm == s.psi_minus)
    orth = None
    squares = None
    if n == 3:
        top = wedge(s.psi_plus, s.psi_minus)
    else:
        orth = wedge(s.psi_plus, s.psi_minus).is_zero()
        squares = wedge_power(s.psi_plus, 2) == wedge_power(s.psi_minus, 2)
        top = wedge_power(s.psi_plus, 2) + wedge_power(s.psi_minus, 2)
    fn = wedge_power(s.F, n)
    ratio = _top_form_ratio(top, fn, dim)
    return SunValidationReport(j_sq, j_fix, sym, pos, rotation, orth, squares, ratio)


def _top_form_ratio(a: Form, b: Form, dim: int) -> Fraction | None:
    idx = tuple(range(1, dim + 1))
    ca = a.coeffs.get(idx, Scalar.zero())
    cb = b.coeffs.get(idx, Scalar.zero())
    if cb.is_zero():
        return None
    try:
        ratio = ca / cb
        if a != b.scale(ratio):
            return None
        return ratio.as_fraction()
    except UnsupportedScalarError:
        return None


@dataclass(frozen=True)
class BalancedSunReport:
    residuals: tuple[tuple[str, Form], ...]
    df: Form
    half_flat: bool
    kaehler: bool

    @property
    def passed(self) -> bool:
        return all(f.is_zero() for _, f in self.residuals)

    def flags(self) -> dict[str, bool]:
        return {name: f.is_zero() for name, f in self.residuals}

    def render(self) -> str:
        lines = [f"balanced: {'yes' if self.passed else 'NO'}"]
        for name, f in self.residuals:
            lines.append(f"  {name} = {f.render()}")
        lines.append(f"  dF = {self.df.render()}")
        lines.append(f"  kaehler (dF = 0): {'yes' if self.kaehler else 'no'}")
        lines.append(f"  half-flat (dF^2 = dpsi+ = 0): {'yes' if self.half_flat else 'no'}")
        return "\n".join(lines)


def is_balanced_sun(s: SUnStructure) -> BalancedSunReport:
    d = s.algebra.d
    n = s.n
    df = d(s.F)
    residuals = (
        (f"dF^{n - 1}", d(wedge_power(s.F, n - 1))),
        ("dpsi+", d(s.psi_plus)),
        ("dpsi-", d(s.psi_minus)),
    )
    half_flat = d(wedge_power(s.F, 2)).is_zero() and d(s.psi_plus).is_zero()
    return BalancedSunReport(residuals, df, half_flat, df.is_zero())


# ---------------------------------------------------------------------------
# Hypersurface restriction and suspension.
# ---------------------------------------------------------------------------


def _drop_index(a: Form, k: int) -> Form:
    """Pull back along the inclusion of the coframe complement of e^k."""
    coeffs = {}
    for idx, coeff in a.coeffs.items():
        if k in idx:
            continue
        coeffs[tuple(i - 1 if i > k else i for i in idx)] = coeff
    return Form(a.dimension - 1, a.degree, coeffs)


def restrictable_directions(s: SUnStructure) -> list[int]:
    """Frame indices whose coframe complement is closed under d.

    Dropping e^k is the pullback to an invariant hypersurface only when the
    complement of e_k is a subalgebra, i.e. when d e^k has no component free
    of e^k; other directions admit no invariant hypersurface at all.
    """
    out = []
    for k in range(1, s.algebra.dimension + 1):
        if _drop_index(s.algebra.differentials[k - 1], k).is_zero():
            out.append(k)
    return out


def restrict_to_hypersurface(s: SUnStructure, unit: list[Scalar | Fraction | int]) -> SU2Structure:
    """Restrict a 6-dimensional structure along a unit frame direction.

    unit must be +-(frame vector) whose g-orthogonal complement is spanned by
    the remaining frame vectors and is closed under d; the quadruplet is
    eta = -i_U F, omega1 = i_U psi-, omega2 = -i_U psi+, omega3 = F pulled
    back.
    """
    if s.algebra.dimension != 6:
        raise ValueError("restriction is implemented for 6-dimensional structures")
    comps = [c if isinstance(c, Scalar) else Scalar.rational(c) for c in unit]
    if len(comps) != 6:
        raise ValueError("the normal direction needs 6 frame components")
    nonzero = [(i, c) for i, c in enumerate(comps) if not c.is_zero()]
    if len(nonzero) != 1 or abs(nonzero[0][1].as_fraction()) != 1:
        raise ValueError("restriction supports only +-(unit frame vector) directions")
    k = nonzero[0][0] + 1
    g = sun_metric_matrix(s)
    if g[k - 1][k - 1] != Scalar.one():
        raise ValueError("the normal direction is not unit length")
    if any(not g[k - 1][j].is_zero() for j in range(6) if j != k - 1):
        raise ValueError("the frame complement of the direction is not g-orthogonal")
    if k not in restrictable_directions(s):
        raise ValueError(
            f"the complement of e{k} is not closed under d (no invariant "
            f"hypersurface normal to e{k} exists)")

    eta = _drop_index(contract(comps, s.F).scale(-1), k)
    omega1 = _drop_index(contract(comps, s.psi_minus), k)
    omega2 = _drop_index(contract(comps, s.psi_plus).scale(-1), k)
    omega3 = _drop_index(s.F, k)

    diffs = []
    for i in range(1, 7):
        if i == k:
            continue
        diffs.append(_drop_index(s.algebra.differentials[i - 1], k))
    algebra = LieAlgebra(5, tuple(diffs),
                         (s.algebra.name or "algebra") + f" restricted along e{k}")
    return SU2Structure(algebra, eta, omega1, omega2, omega3,
                        name=(s.name or "structure") + f" | e{k}")


def suspend_su2(s: SU2Structure, validate: bool = True) -> SUnStructure:
    """The 6-dimensional structure F = omega3 + eta^dt, psi = (omega1 + i omega2)(eta + i dt)."""
    if validate and not validate_su2(s).passed:
        raise ValueError("cannot suspend an invalid SU(2)-structure")
    ambient = extend_by_line(s.algebra)
    dt = Form.generator(6, 6)
    eta = lift_form(s.eta, 6)
    w1 = lift_form(s.omega1, 6)
    w2 = lift_form(s.omega2, 6)
    w3 = lift_form(s.omega3, 6)
    f = w3 + wedge(eta, dt)
    psi_plus = wedge(w1, eta) - wedge(w2, dt)
    psi_minus = wedge(w2, eta) + wedge(w1, dt)
    cmap = suspension_coframe_map(s)
    return SUnStructure(ambient, f, psi_plus, psi_minus, cmap, name=s.name)


def suspension_coframe_map(s: SU2Structure) -> CoframeMap:
    """The complex structure of the suspension: J3 on ker eta, J xi = dt."""
    geo = su2_geometry(s)
    omega3_k = _restricted_matrix(s.omega3, geo.kernel_basis)
    gk = scalar_mat_neg(scalar_mat_mul(_restricted_matrix(s.omega2, geo.kernel_basis),
                                       geo.endo_a))
    j3 = scalar_mat_mul(scalar_matrix_inverse(omega3_k), gk)
    eta_of = [s.eta.coefficient((i,)) for i in range(1, 6)]
    columns: list[list[Scalar]] = []
    for x in range(5):
        frame_vec = [Scalar.rational(1 if i == x else 0) for i in range(5)]
        proj = [frame_vec[i] - eta_of[x] * geo.xi[i] for i in range(5)]
        coords = _kernel_coordinates(proj, geo.kernel_basis)
        image = [Scalar.zero()] * 6
        for p in range(4):
            for q in range(4):
                if not coords[q].is_zero() and not j3[p][q].is_zero():
                    for i in range(5):
                        image[i] = image[i] + j3[p][q] * coords[q] * geo.kernel_basis[p][i]
        image[5] = image[5] + eta_of[x]  # J xi = dt direction
        columns.append(image)
    # J dt = -xi
    columns.append([-geo.xi[i] for i in range(5)] + [Scalar.zero()])
    matrix = [[columns[j][i] for j in range(6)] for i in range(6)]
    return CoframeMap(matrix)


# ---------------------------------------------------------------------------
# Circle bundles over 4-dimensional holomorphic symplectic bases.
# ---------------------------------------------------------------------------


def circle_bundle_preconditions(base: LieAlgebra, omega1: Form, omega2: Form,
                                omega3: Form, curvature: Form,
                                theta: tuple[Fraction, Fraction]) -> dict[str, bool]:
    d = base.d
    cos_t, sin_t = theta
    w1t = omega1.scale(cos_t) + omega2.scale(sin_t)
    w2t = omega1.scale(-sin_t) + omega2.scale(cos_t)
    sq = wedge(omega1, omega1)
    return {
        "d(omega1) = 0": d(omega1).is_zero(),
        "d(omega2) = 0": d(omega2).is_zero(),
        "squares equal": (wedge(omega2, omega2) == sq and wedge(omega3, omega3) == sq),
        "squares nonzero": not sq.is_zero(),
        "pairwise orthogonal": (wedge(omega1, omega2).is_zero()
                                and wedge(omega1, omega3).is_zero()
                                and wedge(omega2, omega3).is_zero()),
        "d(curvature) = 0": d(curvature).is_zero(),
        "curvature^omega1_theta = 0": wedge(curvature, w1t).is_zero(),
        "curvature^omega2_theta = 0": wedge(curvature, w2t).is_zero(),
    }


def circle_bundle_structure(base: LieAlgebra, omega1: Form, omega2: Form, omega3: Form,
                            curvature: Form,
                            theta: tuple[Fraction, Fraction] = (Fraction(1), Fraction(0)),
                            ) -> SU2Structure:
    """The quadruplet (rho, rotated omega1, rotated omega2, omega3) on the total space."""
    if base.dimension != 4:
        raise ValueError("the base of the circle bundle must be 4-dimensional")
    cos_t, sin_t = theta
    if cos_t * cos_t + sin_t * sin_t != 1:
        raise ValueError("theta must be given by a rational (cos, sin) pair on the circle")
    pre = circle_bundle_preconditions(base, omega1, omega2, omega3, curvature, theta)
    bad = [name for name, ok in pre.items() if not ok]
    if bad:
        raise ValueError("circle bundle preconditions failed: " + "; ".join(bad))
    total = central_extension(base, curvature)
    w1t = lift_form(omega1.scale(cos_t) + omega2.scale(sin_t), 5)
    w2t = lift_form(omega1.scale(-sin_t) + omega2.scale(cos_t), 5)
    w3t = lift_form(omega3, 5)
    out = SU2Structure(total, Form.generator(5, 5), w1t, w2t, w3t)
    residual = is_balanced_su2(out)
    if not residual.passed:
        raise ValueError("constructed circle-bundle structure is not balanced: "
                         + residual.render())
    return out


@dataclass(frozen=True)
class ConformalCoupleReport:
    closed_omega1: bool
    closed_omega2: bool
    orthogonality: dict[str, bool]
    squares_equal: bool
    squares_nonzero: bool
    d_omega3: Form

    @property
    def passed(self) -> bool:
        return (self.closed_omega1 and self.closed_omega2 and self.squares_equal
                and self.squares_nonzero and all(self.orthogonality.values()))

    def render(self) -> str:
        lines = [f"conformal symplectic couple: {'pass' if self.passed else 'FAIL'}"]
        lines.append(f"  d(omega1) = 0: {'ok' if self.closed_omega1 else 'FAIL'}")
        lines.append(f"  d(omega2) = 0: {'ok' if self.closed_omega2 else 'FAIL'}")
        for name, ok in self.orthogonality.items():
            lines.append(f"  {name}: {'ok' if ok else 'FAIL'}")
        lines.append(f"  omega1^2 = omega2^2 = omega3^2: "
                     + ("ok" if self.squares_equal else "FAIL"))
        lines.append(f"  squares are volume forms: {'ok' if self.squares_nonzero else 'FAIL'}")
        lines.append(f"  d(omega3) = {self.d_omega3.render()}")
        return "\n".join(lines)


def check_conformal_couple(base: LieAlgebra, omega1: Form, omega2: Form,
                           omega3: Form) -> ConformalCoupleReport:
    if base.dimension != 4:
        raise ValueError("conformal couples live on 4-dimensional algebras")
    d = base.d
    sq1 = wedge(omega1, omega1)
    return ConformalCoupleReport(
        closed_omega1=d(omega1).is_zero(),
        closed_omega2=d(omega2).is_zero(),
        orthogonality={
            "omega1^omega2 = 0": wedge(omega1, omega2).is_zero(),
            "omega1^omega3 = 0": wedge(omega1, omega3).is_zero(),
            "omega2^omega3 = 0": wedge(omega2, omega3).is_zero(),
        },
        squares_equal=(wedge(omega2, omega2) == sq1 and wedge(omega3, omega3) == sq1),
        squares_nonzero=not sq1.is_zero(),
        d_omega3=d(omega3),
    )
