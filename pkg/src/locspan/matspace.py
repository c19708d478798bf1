"""Subspaces of n x n matrices: trace pairing, complements, rank-1 idempotents.

A matrix subspace corresponds to a subspace of vectors of linear forms by
reading each matrix ``b`` as the vector ``b . y`` and vice versa.  The
orthogonal complement under the trace pairing transports local-membership
decisions into decisions about rank-1 idempotents: a subspace of
codimension below n contains no rank-1 idempotent over the algebraic
closure exactly when the corresponding subspace of linear-form vectors has
the local membership property.  A finite-field brute-force search provides
an independent check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .exactalg import Field, Polynomial, PrimeField, coordinate_vector
from .localmem import (
    BudgetExceededError,
    LinearSubspace,
    LocalDecision,
    local_membership_closure,
)
from .polymat import (
    ScalarMatrix,
    nullspace_over_field,
    outer_product,
    rank,
    solve_over_field,
)

#: Default cap on p**(2n), the candidate count of the idempotent search.
DEFAULT_SEARCH_BUDGET = 10_000_000


class MatrixSubspace:
    """A subspace of n x n matrices given by an independent basis."""

    def __init__(self, basis: Sequence[ScalarMatrix], n: Optional[int] = None,
                 field: Optional[Field] = None):
        basis = tuple(basis)
        if basis:
            n = basis[0].rows if n is None else n
            field = basis[0].field if field is None else field
        elif n is None or field is None:
            raise ValueError("an empty basis needs explicit n and field")
        for b in basis:
            if b.rows != n or b.cols != n or b.field != field:
                raise ValueError("basis matrices must all be n x n over one field")
        if basis:
            stacked = ScalarMatrix([_vectorize(b) for b in basis], field,
                                   cols=n * n)
            if rank(stacked) != len(basis):
                raise ValueError("basis matrices are linearly dependent")
        self.n = n
        self.field = field
        self.basis = basis

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return self.n * self.n - len(self.basis)

    def contains(self, matrix: ScalarMatrix) -> bool:
        if not self.basis:
            return all(x == self.field.zero for row in matrix.entries for x in row)
        stacked = [_vectorize(b) for b in self.basis]
        target = _vectorize(matrix)
        field = self.field
        system = ScalarMatrix(
            [[stacked[j][i] for j in range(len(stacked))]
             for i in range(self.n * self.n)], field, cols=len(stacked))
        return solve_over_field(system, target) is not None

    def same_subspace(self, other: "MatrixSubspace") -> bool:
        if self.n != other.n or self.field != other.field or self.dim != other.dim:
            return False
        return all(self.contains(b) for b in other.basis)

    def __repr__(self):
        return (f"MatrixSubspace(n={self.n}, dim={self.dim}, "
                f"codim={self.codim}, field={self.field!r})")


def _vectorize(matrix: ScalarMatrix) -> list:
    return [matrix.entries[i][j]
            for i in range(matrix.rows) for j in range(matrix.cols)]


def _unvectorize(vec: Sequence, n: int, field: Field) -> ScalarMatrix:
    return ScalarMatrix([[vec[i * n + j] for j in range(n)] for i in range(n)],
                        field)


@dataclass(frozen=True)
class Rank1Idempotent:
    """Vectors u, v with v^T u = 1; the matrix u v^T is a rank-1 idempotent."""

    u: tuple
    v: tuple

    def matrix(self, field: Field) -> ScalarMatrix:
        return outer_product(self.u, self.v, field)


def flat(subspace: LinearSubspace) -> MatrixSubspace:
    """The matrix subspace spanned by the coefficient matrices of the basis."""
    return MatrixSubspace(subspace.coeff_matrices, n=subspace.nvars,
                          field=subspace.field)


def unflat(matrix: ScalarMatrix) -> tuple:
    """The vector of linear forms ``b . y`` of a square matrix ``b``."""
    if matrix.rows != matrix.cols:
        raise ValueError("unflat needs a square matrix")
    n = matrix.rows
    field = matrix.field
    y = coordinate_vector(n, field)
    out = []
    for i in range(n):
        acc = Polynomial.zero(n, field)
        for j in range(n):
            acc = acc + y[j].scale(matrix[i, j])
        out.append(acc)
    return tuple(out)


def trace_pairing(a: ScalarMatrix, b: ScalarMatrix):
    """The symmetric bilinear form Tr(a b)."""
    if a.rows != b.rows or a.cols != b.cols or a.rows != a.cols:
        raise ValueError("trace pairing needs square matrices of equal size")
    field = a.field
    total = field.zero
    for i in range(a.rows):
        for j in range(a.cols):
            total = field.add(total, field.mul(a[i, j], b[j, i]))
    return total


def perp(subspace: MatrixSubspace) -> MatrixSubspace:
    """Orthogonal complement under the trace pairing."""
    n = subspace.n
    field = subspace.field
    # Tr(x b) = sum_{i,j} x[i][j] b[j][i]: one linear constraint per basis b
    constraints = [[b[j, i] for i in range(n) for j in range(n)]
                   for b in subspace.basis]
    system = ScalarMatrix(constraints, field, cols=n * n)
    basis = [_unvectorize(v, n, field) for v in nullspace_over_field(system)]
    return MatrixSubspace(basis, n=n, field=field)


def is_subspace_of_tracezero(subspace: MatrixSubspace) -> bool:
    """Whether every basis matrix has trace zero."""
    return all(b.trace() == subspace.field.zero for b in subspace.basis)


def is_rank1_idempotent_free(subspace: MatrixSubspace) -> LocalDecision:
    """Exact decision: no rank-1 idempotent over the algebraic closure.

    Requires codimension below n.  The complement under the trace pairing
    is read as a subspace of vectors of linear forms, whose local
    membership decision answers the question.  The full matrix algebra
    (codimension 0) trivially contains rank-1 idempotents and is reported
    directly with one of them as witness.
    """
    if subspace.codim >= subspace.n:
        raise ValueError("decision only applies to codimension below n")
    if subspace.codim == 0:
        n = subspace.n
        e1 = tuple(subspace.field.one if i == 0 else subspace.field.zero
                   for i in range(n))
        return LocalDecision(holds=False, method="closure_radical",
                             failure_witness=Rank1Idempotent(e1, e1))
    complement = perp(subspace)
    derived = LinearSubspace([unflat(b) for b in complement.basis])
    return local_membership_closure(derived)


def _projective_representatives(p: int, n: int):
    """Nonzero vectors whose first nonzero coordinate is 1, lexicographically."""
    for vec in itertools.product(range(p), repeat=n):
        first = next((x for x in vec if x), None)
        if first == 1:
            yield vec


def find_rank1_idempotent(subspace: MatrixSubspace,
                          budget: int = DEFAULT_SEARCH_BUDGET
                          ) -> Optional[Rank1Idempotent]:
    """Exhaustive rank-1 idempotent search over a prime field.

    Scans u over projective representatives (first nonzero coordinate 1)
    and, per u, all v with v^T u = 1, in lexicographic order; the first
    pair whose outer product lies in the subspace wins.  Membership is a
    handful of dot products against precomputed complement constraints.
    """
    field = subspace.field
    if not isinstance(field, PrimeField):
        raise ValueError("idempotent search needs a prime-field instance")
    p = field.p
    n = subspace.n
    if p ** (2 * n) > budget:
        raise BudgetExceededError(
            f"{p}^{2 * n} candidates exceed the budget of {budget}")
    # u v^T lies in the subspace iff u^T C v = 0 for each constraint C
    stacked = ScalarMatrix([_vectorize(b) for b in subspace.basis], field,
                           cols=n * n)
    constraint_mats = [_unvectorize(c, n, field)
                       for c in nullspace_over_field(stacked)]
    for u in _projective_representatives(p, n):
        rows = [tuple(c.transpose().matvec(u)) for c in constraint_mats]
        for v in itertools.product(range(p), repeat=n):
            if sum(x * y for x, y in zip(u, v)) % p != 1:
                continue
            if all(sum(r[i] * v[i] for i in range(n)) % p == 0 for r in rows):
                return Rank1Idempotent(u, v)
    return None
