"""Lie algebra models carrying a left-invariant contact metric structure.

The (2n+1)-dimensional algebra is spanned by the ordered basis
(xi, X_1..X_n, Y_1..Y_n); all tables in the package index into this
order.  Index 0 is xi, index i is X_i and index n+i is Y_i (1-based i).
The bracket table depends on two rational parameters alpha, beta with
beta^2 > alpha^2; pairs the table does not list commute, and the Jacobi
checker guards that reading.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DegenerateModelError,
    DimensionMismatchError,
    UnsupportedDimensionError,
)
from .linalg import Mat, Vec, rat


@dataclass(frozen=True)
class LieAlgebraModel:
    """Structure constants plus the orthonormal left-invariant metric.

    ``structure[i][j]`` is the coefficient vector of [e_i, e_j].
    """

    n: int
    alpha: Fraction
    beta: Fraction
    dim: int
    structure: tuple
    metric: Mat

    def x(self, i: int) -> int:
        """Basis index of X_i (1-based)."""
        return i

    def y(self, i: int) -> int:
        """Basis index of Y_i (1-based)."""
        return self.n + i

    @property
    def xi_index(self) -> int:
        return 0

    def basis_vector(self, k: int) -> Vec:
        return Vec.basis(self.dim, k)

    def basis_name(self, k: int) -> str:
        if k == 0:
            return "xi"
        if 1 <= k <= self.n:
            return f"X{k}"
        return f"Y{k - self.n}"


@dataclass(frozen=True)
class JacobiReport:
    """Result of sweeping the Jacobi identity over all basis triples."""

    max_residual: Fraction
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


def build_boeckx_model(n: int, alpha, beta) -> LieAlgebraModel:
    """Construct the bracket table of the standard model family.

    Requires n >= 2 (the table refers to X_2, Y_2 unconditionally) and
    beta^2 > alpha^2 (otherwise h would vanish and the model degenerates
    into the excluded boundary case).
    """
    if n < 2:
        raise UnsupportedDimensionError(
            f"n={n} unsupported: the bracket table references X_2 and Y_2, so n >= 2"
        )
    alpha = rat(alpha)
    beta = rat(beta)
    if alpha < 0:
        raise DegenerateModelError(f"alpha must be >= 0, got {alpha}")
    if beta * beta <= alpha * alpha:
        raise DegenerateModelError(
            f"beta^2 > alpha^2 required, got alpha={alpha}, beta={beta}"
        )

    dim = 2 * n + 1
    XI = 0

    def X(i):
        return i

    def Y(i):
        return n + i

    def vec(*terms) -> Vec:
        coeffs = [Fraction(0)] * dim
        for coeff, index in terms:
            coeffs[index] += coeff
        return Vec(coeffs)

    table = {}

    def put(a, b, value: Vec):
        assert (a, b) not in table and (b, a) not in table
        table[(a, b)] = value

    half_ab = alpha * beta / 2
    half_a2 = alpha * alpha / 2
    half_b2 = beta * beta / 2

    put(XI, X(1), vec((-half_ab, X(2)), (-half_a2, Y(1))))
    put(XI, X(2), vec((half_ab, X(1)), (-half_a2, Y(2))))
    put(XI, Y(1), vec((half_b2, X(1)), (-half_ab, Y(2))))
    put(XI, Y(2), vec((half_b2, X(2)), (half_ab, Y(1))))
    for i in range(3, n + 1):
        put(XI, X(i), vec((-half_a2, Y(i))))
        put(XI, Y(i), vec((half_b2, X(i))))

    for i in range(2, n + 1):
        put(X(1), X(i), vec((alpha, X(i))))
    for i in range(2, n + 1):
        for j in range(i + 1, n + 1):
            put(X(i), X(j), vec())

    put(Y(2), Y(1), vec((beta, Y(1))))
    for i in range(3, n + 1):
        put(Y(2), Y(i), vec((beta, Y(i))))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if i != 2 and j != 2:
                put(Y(i), Y(j), vec())

    put(X(1), Y(1), vec((-beta, X(2)), (2, XI)))
    for i in range(2, n + 1):
        put(X(1), Y(i), vec())
    put(X(2), Y(1), vec((beta, X(1)), (-alpha, Y(2))))
    put(X(2), Y(2), vec((alpha, Y(1)), (2, XI)))
    for i in range(3, n + 1):
        put(X(2), Y(i), vec((beta, X(i))))
    for i in range(3, n + 1):
        put(X(i), Y(1), vec((-alpha, Y(i))))
        put(X(i), Y(2), vec())
        for j in range(3, n + 1):
            if i == j:
                put(X(i), Y(j), vec((-beta, X(2)), (alpha, Y(1)), (2, XI)))
            else:
                put(X(i), Y(j), vec())

    zero = Vec.zero(dim)
    structure = [[zero] * dim for _ in range(dim)]
    for (a, b), value in table.items():
        structure[a][b] = value
        structure[b][a] = -value
    structure = tuple(tuple(row) for row in structure)

    return LieAlgebraModel(
        n=n,
        alpha=alpha,
        beta=beta,
        dim=dim,
        structure=structure,
        metric=Mat.identity(dim),
    )


def model_with_structure(model: LieAlgebraModel, structure) -> LieAlgebraModel:
    """Internal constructor swapping in an arbitrary structure table.

    Exists for fault-injection tests only; no validation is performed.
    """
    structure = tuple(tuple(row) for row in structure)
    return LieAlgebraModel(
        n=model.n,
        alpha=model.alpha,
        beta=model.beta,
        dim=model.dim,
        structure=structure,
        metric=model.metric,
    )


def bracket(model: LieAlgebraModel, u: Vec, v: Vec) -> Vec:
    """Bilinear antisymmetric extension of the structure constants."""
    dim = model.dim
    if len(u) != dim or len(v) != dim:
        raise DimensionMismatchError(
            f"bracket operands of length {len(u)}, {len(v)} on a dim-{dim} model"
        )
    out = Vec.zero(dim)
    for i in range(dim):
        if u[i] == 0:
            continue
        for j in range(dim):
            if v[j] == 0:
                continue
            term = model.structure[i][j]
            if not term.is_zero():
                out = out + (u[i] * v[j]) * term
    return out


def check_jacobi(model: LieAlgebraModel) -> JacobiReport:
    """Sweep [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] = 0.

    Returns the largest residual magnitude over all components and the
    list of violating (i, j, k) triples; both are empty/zero for every
    valid model.
    """
    dim = model.dim
    c = model.structure
    max_residual = Fraction(0)
    violations = []
    for i in range(dim):
        for j in range(i + 1, dim):
            cij = c[i][j]
            for k in range(j + 1, dim):
                acc = Vec.zero(dim)
                for m in range(dim):
                    if cij[m] != 0:
                        acc = acc + cij[m] * c[m][k]
                    if c[j][k][m] != 0:
                        acc = acc + c[j][k][m] * c[m][i]
                    if c[k][i][m] != 0:
                        acc = acc + c[k][i][m] * c[m][j]
                if not acc.is_zero():
                    violations.append((i, j, k))
                    worst = max(abs(x) for x in acc)
                    if worst > max_residual:
                        max_residual = worst
    return JacobiReport(max_residual=max_residual, violations=tuple(violations))
