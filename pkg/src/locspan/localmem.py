"""Decision procedures for subspaces of vectors of linear forms.

A subspace is spanned by vectors whose components are homogeneous linear
polynomials.  The procedures here decide whether the coordinate vector
(y1, ..., yn) lies in the span with base-field coefficients, with
rational-function coefficients (producing a Cramer witness with reduced
fractions), and "locally": whether at every point of affine space over the
algebraic closure the evaluated coordinate vector lies in the evaluated
span.  The local decision is exact, via radical membership of augmented
minors in the determinantal ideals of the basis matrix; a finite-field
point-enumeration variant serves as an independent check at rational
points.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from .exactalg import (
    QQ,
    Field,
    Polynomial,
    PrimeField,
    coordinate_vector,
    poly_gcd,
    poly_lcm,
    reduce_fraction,
    try_exact_div,
)
from .groebner import Ideal, radical_membership
from .polymat import PolyMatrix, ScalarMatrix, rank, solve_over_field, nullspace_over_field


class BudgetExceededError(RuntimeError):
    """An enumeration would exceed the configured budget."""


#: Default cap on the number of points a finite-field enumeration may visit.
DEFAULT_POINT_BUDGET = 1_000_000


def _is_linear_form(p: Polynomial) -> bool:
    return p.is_zero() or p.homogeneous_degree() == 1


def _linear_coefficients(p: Polynomial) -> list:
    """Coefficient row of a linear form: entry i is the coefficient of y_{i+1}."""
    field = p.field
    row = [field.zero] * p.nvars
    for mono, coeff in p.terms.items():
        row[mono.index(1)] = coeff
    return row


class LinearSubspace:
    """A spanning list of vectors of linear forms, with coefficient matrices.

    Each spanning vector ``q`` satisfies ``q = b . y`` for a unique scalar
    matrix ``b``; the matrices are derived on construction.  The list is not
    required to be linearly independent (see `has_free_rank`), but zero
    vectors and non-linear components are rejected.
    """

    def __init__(self, vectors: Sequence[Sequence[Polynomial]]):
        vectors = tuple(tuple(v) for v in vectors)
        if not vectors:
            raise ValueError("a subspace needs at least one spanning vector")
        first = vectors[0][0]
        nvars, field = first.nvars, first.field
        for vec in vectors:
            if len(vec) != nvars:
                raise ValueError(
                    f"vector has {len(vec)} components, expected {nvars}")
            for comp in vec:
                first._check(comp)
                if not _is_linear_form(comp):
                    raise ValueError(f"component {comp} is not a linear form")
            if all(comp.is_zero() for comp in vec):
                raise ValueError("zero vectors are not allowed in a basis")
        if len(vectors) > nvars:
            raise ValueError("more spanning vectors than ambient dimension")
        self.nvars = nvars
        self.field = field
        self.dim = len(vectors)
        self.basis = vectors
        self.coeff_matrices = tuple(
            ScalarMatrix([_linear_coefficients(comp) for comp in vec], field)
            for vec in vectors)

    @classmethod
    def from_matrices(cls, matrices: Sequence[ScalarMatrix]) -> "LinearSubspace":
        """Subspace spanned by ``b . y`` for each given square matrix ``b``."""
        vectors = []
        for b in matrices:
            if b.rows != b.cols:
                raise ValueError("coefficient matrices must be square")
            y = coordinate_vector(b.rows, b.field)
            vectors.append(tuple(
                sum((y[j].scale(b[i, j]) for j in range(b.cols)),
                    Polynomial.zero(b.rows, b.field))
                for i in range(b.rows)))
        return cls(vectors)

    @cached_property
    def basis_matrix(self) -> PolyMatrix:
        """The n x d matrix whose columns are the spanning vectors."""
        return PolyMatrix.from_columns(self.basis)

    @cached_property
    def fraction_rank(self) -> int:
        return self.basis_matrix.rank_over_fractions()

    def coordinate_target(self) -> tuple:
        return coordinate_vector(self.nvars, self.field)

    def augmented_matrix(self, target: Optional[Sequence[Polynomial]] = None) -> PolyMatrix:
        target = self.coordinate_target() if target is None else tuple(target)
        return self.basis_matrix.augment(target)

    def __repr__(self):
        return (f"LinearSubspace(n={self.nvars}, d={self.dim}, "
                f"field={self.field!r})")


@dataclass(frozen=True)
class CramerWitness:
    """Fraction coefficients expressing a target in the span.

    ``index_set`` is the 0-based row set whose basis minor was used as the
    Cramer denominator; ``lambdas`` are the reduced coefficients and
    ``denominator_lcm`` the lcm of their denominators.
    """

    index_set: tuple
    lambdas: tuple
    denominator_lcm: Polynomial


@dataclass(frozen=True)
class MinorFailure:
    """An augmented minor outside the radical of the basis minor ideal."""

    stratum: int
    rows: tuple
    cols: tuple
    minor: Polynomial


@dataclass(frozen=True)
class PointFailure:
    """A rational point where the augmented matrix jumps in rank."""

    point: tuple
    rank_basis: int
    rank_augmented: int


@dataclass(frozen=True)
class LocalDecision:
    """Outcome of a local membership decision, with a failure witness."""

    holds: bool
    method: str
    failure_witness: object = None


@dataclass(frozen=True)
class WitnessBoundsReport:
    """Structural checks on a Cramer witness.

    ``fractions_ok``: every nonzero coefficient has coprime homogeneous
    numerator and denominator of equal degree at most d, monic denominator,
    and zero coefficients have denominator 1.  ``divisibility_ok``: the lcm
    of the denominators divides every maximal basis minor.
    """

    identity_ok: bool
    fractions_ok: bool
    divisibility_ok: bool
    lcm_degree: int
    dimension: int
    lambda_degrees: tuple

    @property
    def lcm_degree_below_dim(self) -> bool:
        return self.lcm_degree < self.dimension

    @property
    def ok(self) -> bool:
        return self.identity_ok and self.fractions_ok and self.divisibility_ok


def has_free_rank(subspace: LinearSubspace) -> bool:
    """Whether the spanning vectors stay independent over the fraction field."""
    return subspace.fraction_rank == subspace.dim


def _validate_target(subspace: LinearSubspace, target) -> tuple:
    if target is None:
        return subspace.coordinate_target()
    target = tuple(target)
    if len(target) != subspace.nvars:
        raise ValueError("target has the wrong number of components")
    for comp in target:
        subspace.basis[0][0]._check(comp)
        if not _is_linear_form(comp):
            raise ValueError(f"target component {comp} is not a linear form")
    return target


def span_over_field(subspace: LinearSubspace, target=None) -> Optional[tuple]:
    """Base-field coefficients with ``target = sum c_i q_i``, or None.

    Solved as a linear system over the coefficient matrices; when a
    solution exists the one with free variables set to 0 is returned.
    """
    target = _validate_target(subspace, target)
    field = subspace.field
    n = subspace.nvars
    target_rows = [_linear_coefficients(comp) for comp in target]
    system = []
    rhs = []
    for r in range(n):
        for c in range(n):
            system.append([subspace.coeff_matrices[i][r, c]
                           for i in range(subspace.dim)])
            rhs.append(target_rows[r][c])
    return solve_over_field(ScalarMatrix(system, field), rhs)


def span_over_fractions(subspace: LinearSubspace, target=None) -> Optional[CramerWitness]:
    """Cramer witness for membership of the target in the fraction-field span.

    Requires an independent spanning set (`has_free_rank`).  The first row
    set (lexicographically) with a nonzero maximal minor is used; the
    candidate coefficients are verified on all components, so None means
    the target genuinely lies outside the span.
    """
    target = _validate_target(subspace, target)
    if not has_free_rank(subspace):
        raise ValueError("spanning vectors are dependent over the fraction field")
    n, d = subspace.nvars, subspace.dim
    q = subspace.basis_matrix
    index_set = None
    det_q = None
    for rows in itertools.combinations(range(n), d):
        candidate = q.submatrix(rows, range(d))
        det = candidate.det()
        if not det.is_zero():
            index_set = rows
            det_q = det
            square = candidate
            break
    target_part = [target[i] for i in index_set]
    numerators = []
    for j in range(d):
        numerators.append(square.with_column(j, target_part).det())
    # verify sum_j mu_j q_j = det * target componentwise (clears denominators)
    for comp in range(n):
        lhs = Polynomial.zero(subspace.nvars, subspace.field)
        for j in range(d):
            lhs = lhs + numerators[j] * subspace.basis[j][comp]
        if lhs != det_q * target[comp]:
            return None
    lambdas = tuple(reduce_fraction(mu, det_q) for mu in numerators)
    lcm = Polynomial.one(subspace.nvars, subspace.field)
    for lam in lambdas:
        lcm = poly_lcm(lcm, lam.denominator)
    return CramerWitness(index_set, lambdas, lcm)


def verify_witness_bounds(witness: CramerWitness, subspace: LinearSubspace,
                          target=None) -> WitnessBoundsReport:
    """Re-check a Cramer witness: identity, degree/coprimality shape, and
    divisibility of every maximal basis minor by the denominator lcm."""
    target = _validate_target(subspace, target)
    n, d = subspace.nvars, subspace.dim
    field = subspace.field
    m = witness.denominator_lcm

    identity_ok = True
    for comp in range(n):
        lhs = Polynomial.zero(n, field)
        for j, lam in enumerate(witness.lambdas):
            cofactor = try_exact_div(m, lam.denominator)
            if cofactor is None:
                identity_ok = False
                break
            lhs = lhs + lam.numerator * cofactor * subspace.basis[j][comp]
        if not identity_ok or lhs != m * target[comp]:
            identity_ok = False
            break

    fractions_ok = True
    degrees = []
    for lam in witness.lambdas:
        num, den = lam.numerator, lam.denominator
        if num.is_zero():
            degrees.append((None, 0))
            if not den.is_one():
                fractions_ok = False
            continue
        deg_num = num.homogeneous_degree()
        deg_den = den.homogeneous_degree()
        degrees.append((deg_num, deg_den))
        if deg_num is None or deg_den is None or deg_num != deg_den:
            fractions_ok = False
        elif deg_num > d:
            fractions_ok = False
        if den.leading_coefficient() != field.one:
            fractions_ok = False
        if not poly_gcd(num, den).is_one():
            fractions_ok = False

    divisibility_ok = True
    q = subspace.basis_matrix
    for rows in itertools.combinations(range(n), d):
        det = q.submatrix(rows, range(d)).det()
        if try_exact_div(det, m) is None:
            divisibility_ok = False
            break

    lcm_degree = m.total_degree()
    return WitnessBoundsReport(
        identity_ok=identity_ok,
        fractions_ok=fractions_ok,
        divisibility_ok=divisibility_ok,
        lcm_degree=int(lcm_degree) if m else 0,
        dimension=d,
        lambda_degrees=tuple(degrees))


def local_membership_closure(subspace: LinearSubspace) -> LocalDecision:
    """Exact local membership decision over the algebraic closure.

    For every point ``a`` the evaluated coordinate vector must lie in the
    evaluated span, i.e. the augmented matrix may never jump in rank.  Per
    stratum ``s`` this is equivalent to: every s x s minor of the augmented
    matrix using the target column lies in the radical of the ideal of all
    s x s basis minors (the stratum ``s = d + 1`` has the zero ideal, so
    those minors must vanish identically).  The first failing minor in the
    fixed enumeration order is reported.
    """
    n, d = subspace.nvars, subspace.dim
    if d >= n:
        raise ValueError("local membership decision requires dim < n")
    augmented = subspace.augmented_matrix()
    q = subspace.basis_matrix
    for s in range(1, d + 2):
        if s <= d:
            minor_ideal = Ideal([m for _, _, m in q.minors(s)],
                                nvars=n, field=subspace.field)
        else:
            minor_ideal = Ideal([], nvars=n, field=subspace.field)
        for rows, cols, minor in augmented.minors(s):
            if d not in cols:
                continue  # only minors that involve the target column
            if not radical_membership(minor, minor_ideal):
                return LocalDecision(
                    holds=False, method="closure_radical",
                    failure_witness=MinorFailure(s, rows, cols, minor))
    return LocalDecision(holds=True, method="closure_radical")


def local_membership_points(subspace: LinearSubspace,
                            budget: int = DEFAULT_POINT_BUDGET) -> LocalDecision:
    """Local membership at all rational points of a prime-field instance.

    Enumerates every point of ``F_p^n`` and compares the rank of the
    evaluated basis matrix with the rank of the augmented one.  Necessary
    for the closure property, and equivalent to it in the rational-point
    statements used for matrix subspaces.
    """
    field = subspace.field
    if not isinstance(field, PrimeField):
        raise ValueError("point enumeration needs a prime-field instance")
    n = subspace.nvars
    if field.p ** n > budget:
        raise BudgetExceededError(
            f"{field.p}^{n} points exceed the budget of {budget}")
    matrices = subspace.coeff_matrices
    for point in itertools.product(range(field.p), repeat=n):
        columns = [b.matvec(point) for b in matrices]
        basis_eval = ScalarMatrix.from_columns(columns, field)
        augmented_eval = ScalarMatrix.from_columns(columns + [point], field)
        r_basis = rank(basis_eval)
        r_aug = rank(augmented_eval)
        if r_aug > r_basis:
            return LocalDecision(
                holds=False, method="point_enumeration",
                failure_witness=PointFailure(point, r_basis, r_aug))
    return LocalDecision(holds=True, method="point_enumeration")


def incidence_ideal(subspace: LinearSubspace) -> Ideal:
    """The ideal in F[y1..yn, c1..cd] cutting out (point, coefficients) pairs.

    One generator per component j: ``c_1 q_{1,j} + ... + c_d q_{d,j} - y_j``.
    Its vanishing locus projects onto exactly the points where the
    coordinate vector lies in the evaluated span.
    """
    n, d = subspace.nvars, subspace.dim
    ext = n + d
    field = subspace.field
    c_vars = [Polynomial.variable(n + i, ext, field) for i in range(d)]
    y_vars = [Polynomial.variable(j, ext, field) for j in range(n)]
    generators = []
    for j in range(n):
        g = Polynomial.zero(ext, field)
        for i in range(d):
            g = g + c_vars[i] * subspace.basis[i][j].extend(ext)
        generators.append(g - y_vars[j])
    return Ideal(generators, nvars=ext, field=field)


def pencil_coefficients(subspace: LinearSubspace) -> list:
    """Scalar matrices A_1..A_n with ``[q_1 .. q_{n-1} | y] = sum y_j A_j``.

    Only defined when the subspace has exactly n - 1 spanning vectors.
    """
    n, d = subspace.nvars, subspace.dim
    if d != n - 1:
        raise ValueError("pencil decomposition needs exactly n - 1 vectors")
    augmented = subspace.augmented_matrix()
    field = subspace.field
    out = []
    for j in range(n):
        mono = tuple(1 if i == j else 0 for i in range(n))
        out.append(ScalarMatrix(
            [[augmented[r, c].coefficient_of(mono) for c in range(n)]
             for r in range(n)], field))
    return out


def common_nullvector(matrices: Sequence[ScalarMatrix]) -> Optional[tuple]:
    """A nonzero vector annihilated by every matrix, or None.

    Computed from the stacked nullspace; with an independent pencil the
    intersection is at most one-dimensional and the last coordinate of a
    found vector is nonzero, so the caller can renormalize.
    """
    if not matrices:
        raise ValueError("empty pencil")
    n = matrices[0].cols
    field = matrices[0].field
    for m in matrices:
        if m.cols != n or m.field != field:
            raise ValueError("pencil matrices are inconsistent")
    stacked = ScalarMatrix([row for m in matrices for row in m.entries],
                           field, cols=n)
    basis = nullspace_over_field(stacked)
    if not basis:
        return None
    return basis[0]


def local_only_example(n: int, d: int, field: Optional[Field] = None) -> LinearSubspace:
    """A subspace with local membership everywhere but no base-field witness.

    Defined for n >= 4 and 3 <= d < n.  The first three vectors are
    ``y - y1 e_{n-1}``, ``y1 e_{n-1} - y2 e_n`` and ``y1 e_n``; additional
    vectors ``y_j e_{j-3}`` keep the spanning set independent inside the
    span of the first n - 3 coordinates.
    """
    if n < 4 or not 3 <= d < n:
        raise ValueError("family defined for n >= 4 and 3 <= d < n")
    field = QQ if field is None else field
    y = coordinate_vector(n, field)
    zero = Polynomial.zero(n, field)

    def unit(index, value):
        return tuple(value if i == index else zero for i in range(n))

    q1 = list(y)
    q1[n - 2] = y[n - 2] - y[0]
    q2 = [zero] * n
    q2[n - 2] = y[0]
    q2[n - 1] = -y[1]
    q3 = list(unit(n - 1, y[0]))
    vectors = [tuple(q1), tuple(q2), tuple(q3)]
    for j in range(4, d + 1):
        vectors.append(unit(j - 4, y[j - 1]))
    subspace = LinearSubspace(vectors)
    if not has_free_rank(subspace):
        raise AssertionError("family construction lost independence")
    return subspace


def fraction_span_only_example(n: int = 3, field: Optional[Field] = None) -> LinearSubspace:
    """A subspace whose fraction-field witness exists but local membership fails.

    For n >= 3: first vector ``y - y2 e_2``, second vector ``y1 e_2``.  At
    points with first coordinate 0 and second nonzero the coordinate vector
    leaves the evaluated span.
    """
    if n < 3:
        raise ValueError("needs n >= 3")
    field = QQ if field is None else field
    y = coordinate_vector(n, field)
    zero = Polynomial.zero(n, field)
    q1 = list(y)
    q1[1] = zero
    q2 = [zero] * n
    q2[1] = y[0]
    return LinearSubspace([tuple(q1), tuple(q2)])
