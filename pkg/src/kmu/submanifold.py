"""Legendrian distributions and their leaf geometry.

Every tensor in play is left-invariant, so all submanifold identities
are verified pointwise at the group identity on a spanning frame of the
distribution; that certifies them on the whole leaf.  Frames are kept
unnormalized (for the diagonal family the spanning vectors have length
sqrt(c^2 + d^2), which is irrational) and every check used is
normalization-independent.

The normal space of a Legendrian distribution D is span(xi) + phi(D);
the h operator of the ambient space splits on tangents as

    h X = h1 X + phi h2 X,

with h1 the tangential part and h2 recovered as -phi(normal part),
which is the unique left inverse because phi^2 = -Id off xi.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .connection import ConnectionTable, CurvatureTable
from .contact import ContactStructure, ModelInvariants, standard_phi
from .errors import NonInvolutiveError, ParameterError, StructureError
from .liealg import LieAlgebraModel, bracket
from .linalg import Mat, Vec, inner, rat, rat_str
from .report import IdentityRecord, failed_record, passed_record

KINDS = ("x", "y", "mixed", "diagonal")


@dataclass(frozen=True)
class DistributionSpec:
    """A rank-n Legendrian distribution given by spanning vectors."""

    kind: str
    vectors: tuple
    c: Fraction | None = None
    d: Fraction | None = None
    z_choices: tuple | None = None

    @property
    def rank(self) -> int:
        return len(self.vectors)


@dataclass(frozen=True)
class ThetaData:
    """Exact (sin, cos) parametrization of the diagonal family."""

    sin_theta: Fraction
    cos_theta: Fraction
    a: Fraction
    b: Fraction


@dataclass(frozen=True)
class InvolutivityVerdict:
    ok: bool
    witness_pair: tuple | None = None
    offending: Vec | None = None


@dataclass(frozen=True)
class SubmanifoldGeometry:
    """Second fundamental form data and the classification verdict."""

    frame: tuple
    sigma: tuple
    mean_curvature_vector: Vec
    classification: str
    umbilical_vector: Vec | None
    h1: Mat | None = None
    h2: Mat | None = None
    theta_data: ThetaData | None = None


def build_distribution(
    model: LieAlgebraModel,
    kind: str,
    k: int | None = None,
    z_choices=None,
    c=None,
    d=None,
) -> DistributionSpec:
    """Spanning vectors for one of the four example families.

    kind "x": {X_1..X_n};  "y": {Y_1..Y_n};
    "mixed": {X_1, Y_2, Z_3..Z_n} with each Z_i one of X_i / Y_i, given
    either explicitly (z_choices, entries "x"/"y") or through the
    eigenspace dimension k = 1 + #{Z_i = X_i};
    "diagonal": {c X_i + d Y_i} for nonzero rationals c, d.

    The spanning set is verified Legendrian: orthogonal to xi and
    anti-invariant (pairwise phi-orthogonal).
    """
    n, dim = model.n, model.dim
    if kind not in KINDS:
        raise ParameterError(f"unknown distribution kind {kind!r}; one of {KINDS}")

    if kind == "x":
        vectors = tuple(Vec.basis(dim, model.x(i)) for i in range(1, n + 1))
        spec = DistributionSpec(kind=kind, vectors=vectors)
    elif kind == "y":
        vectors = tuple(Vec.basis(dim, model.y(i)) for i in range(1, n + 1))
        spec = DistributionSpec(kind=kind, vectors=vectors)
    elif kind == "mixed":
        if z_choices is None:
            if k is None:
                raise ParameterError("mixed distribution needs z_choices or k")
            if not 1 <= k <= n - 1:
                raise ParameterError(f"k must be in 1..{n - 1}, got {k}")
            z_choices = ("x",) * (k - 1) + ("y",) * (n - 1 - k)
        z_choices = tuple(z_choices)
        if len(z_choices) != n - 2 or any(z not in ("x", "y") for z in z_choices):
            raise ParameterError(
                f"z_choices must be {n - 2} entries of 'x'/'y', got {z_choices!r}"
            )
        vectors = [Vec.basis(dim, model.x(1)), Vec.basis(dim, model.y(2))]
        for i, z in enumerate(z_choices, start=3):
            idx = model.x(i) if z == "x" else model.y(i)
            vectors.append(Vec.basis(dim, idx))
        spec = DistributionSpec(kind=kind, vectors=tuple(vectors), z_choices=z_choices)
    else:
        c = rat(c) if c is not None else None
        d = rat(d) if d is not None else None
        if not c or not d:
            raise ParameterError(
                "diagonal distribution requires nonzero rationals c and d"
            )
        vectors = tuple(
            c * Vec.basis(dim, model.x(i)) + d * Vec.basis(dim, model.y(i))
            for i in range(1, n + 1)
        )
        spec = DistributionSpec(kind=kind, vectors=vectors, c=c, d=d)

    _check_legendrian(model, spec)
    return spec


def _check_legendrian(model: LieAlgebraModel, spec: DistributionSpec):
    G = model.metric
    phi = standard_phi(model)
    if len(spec.vectors) != model.n:
        raise StructureError(
            f"expected {model.n} spanning vectors, got {len(spec.vectors)}"
        )
    for a, v in enumerate(spec.vectors):
        if inner(v, Vec.basis(model.dim, 0), G) != 0:
            raise StructureError(f"spanning vector {a} is not orthogonal to xi")
    for a, u in enumerate(spec.vectors):
        for b, v in enumerate(spec.vectors):
            if inner(u, phi @ v, G) != 0:
                raise StructureError(
                    f"anti-invariance fails: g(v_{a}, phi v_{b}) != 0"
                )
    # pairwise orthogonal with nonzero norms: the frame assumption every
    # projection below relies on
    for a, u in enumerate(spec.vectors):
        if inner(u, u, G) == 0:
            raise StructureError(f"spanning vector {a} has zero length")
        for b in range(a + 1, len(spec.vectors)):
            if inner(u, spec.vectors[b], G) != 0:
                raise StructureError(
                    f"spanning vectors {a}, {b} are not orthogonal"
                )


class _Frame:
    """Projection and frame-coordinate helpers for one distribution."""

    def __init__(self, vectors, metric: Mat):
        self.vectors = tuple(vectors)
        self.G = metric
        self.dim = len(self.vectors[0])
        self.norms = [inner(v, v, metric) for v in self.vectors]

    @classmethod
    def of(cls, model: LieAlgebraModel, spec: DistributionSpec) -> "_Frame":
        return cls(spec.vectors, model.metric)

    def tangential(self, w: Vec) -> Vec:
        out = Vec.zero(self.dim)
        for v, nv in zip(self.vectors, self.norms):
            coeff = inner(w, v, self.G) / nv
            if coeff != 0:
                out = out + coeff * v
        return out

    def normal(self, w: Vec) -> Vec:
        return w - self.tangential(w)

    def coords(self, w: Vec):
        """Frame coordinates of a tangent vector; raises if not tangent."""
        coeffs = [inner(w, v, self.G) / nv for v, nv in zip(self.vectors, self.norms)]
        rebuilt = Vec.zero(self.dim)
        for coeff, v in zip(coeffs, self.vectors):
            rebuilt = rebuilt + coeff * v
        if rebuilt != w:
            raise StructureError("vector is not tangent to the distribution")
        return coeffs

    def from_coords(self, coeffs) -> Vec:
        out = Vec.zero(self.dim)
        for coeff, v in zip(coeffs, self.vectors):
            if coeff != 0:
                out = out + coeff * v
        return out

    def induced_metric(self, a: int, b: int) -> Fraction:
        return inner(self.vectors[a], self.vectors[b], self.G)


def check_involutive(model: LieAlgebraModel, spec: DistributionSpec) -> InvolutivityVerdict:
    """True iff every bracket of spanning vectors stays in the span."""
    frame = _Frame.of(model, spec)
    for a in range(spec.rank):
        for b in range(a + 1, spec.rank):
            br = bracket(model, spec.vectors[a], spec.vectors[b])
            off = frame.normal(br)
            if not off.is_zero():
                return InvolutivityVerdict(ok=False, witness_pair=(a, b), offending=off)
    return InvolutivityVerdict(ok=True)


def second_fundamental_form(
    model: LieAlgebraModel, conn: ConnectionTable, spec: DistributionSpec
) -> SubmanifoldGeometry:
    """sigma table, mean curvature and the classification verdict.

    sigma(v_a, v_b) is the normal part of nabla_{v_a} v_b; the verdict
    is totally_geodesic when sigma vanishes, totally_umbilical when
    sigma(X, Y) = g(X, Y) V for the mean curvature vector V, otherwise
    generic.  Refuses non-involutive distributions, which bound no
    integral submanifold.
    """
    verdict = check_involutive(model, spec)
    if not verdict.ok:
        a, b = verdict.witness_pair
        raise NonInvolutiveError(
            f"distribution is not involutive: [v_{a}, v_{b}] leaves the span"
        )
    frame = _Frame.of(model, spec)
    n = spec.rank
    sigma = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            sigma[a][b] = frame.normal(conn.nabla(spec.vectors[a], spec.vectors[b]))
    for a in range(n):
        for b in range(a + 1, n):
            if sigma[a][b] != sigma[b][a]:
                raise StructureError(f"sigma is not symmetric at ({a}, {b})")
    sigma = tuple(tuple(row) for row in sigma)

    mean = Vec.zero(model.dim)
    for a in range(n):
        mean = mean + (Fraction(1) / frame.norms[a]) * sigma[a][a]
    mean = Fraction(1, n) * mean

    if all(sigma[a][b].is_zero() for a in range(n) for b in range(n)):
        classification = "totally_geodesic"
        umbilical = None
    else:
        umbilical = mean
        is_umbilical = all(
            sigma[a][b] == frame.induced_metric(a, b) * mean
            for a in range(n)
            for b in range(n)
        )
        classification = "totally_umbilical" if is_umbilical else "generic"
        if not is_umbilical:
            umbilical = None

    return SubmanifoldGeometry(
        frame=spec.vectors,
        sigma=sigma,
        mean_curvature_vector=mean,
        classification=classification,
        umbilical_vector=umbilical,
    )


def split_h(cs: ContactStructure, spec: DistributionSpec) -> tuple[Mat, Mat]:
    """Tangential / phi-twisted-normal components of h on the frame.

    Returns (h1, h2) as rank-n matrices in frame coordinates.  The
    normal part of h X is checked to carry no xi component before
    applying -phi to it, and h2 X is checked to be tangent.
    """
    if cs.h is None:
        raise StructureError("h has not been computed for this structure")
    model_dim = len(cs.xi)
    n = spec.rank
    frame = _Frame(spec.vectors, cs.metric)
    h1_cols, h2_cols = [], []
    for a in range(n):
        hv = cs.h @ spec.vectors[a]
        tangent = Vec.zero(model_dim)
        coeffs = []
        for v, nv in zip(spec.vectors, frame.norms):
            coeff = inner(hv, v, cs.metric) / nv
            coeffs.append(coeff)
            if coeff != 0:
                tangent = tangent + coeff * v
        normal = hv - tangent
        if inner(normal, cs.xi, cs.metric) != 0:
            raise StructureError(
                f"normal part of h v_{a} has a xi component; split undefined"
            )
        h1_cols.append(coeffs)
        h2v = -(cs.phi @ normal)
        h2_cols.append(frame.coords(h2v))
    h1 = Mat.from_columns(h1_cols)
    h2 = Mat.from_columns(h2_cols)
    return h1, h2


def theta_parametrization(c, d, lam) -> ThetaData:
    """Exact (sin, cos) of the angle parametrizing the diagonal family.

    sin = (c^2 - d^2)/(c^2 + d^2), cos = -2cd/(c^2 + d^2); then
    b = lam * sin is the h1 eigenvalue and a = lam * cos the h2
    eigenvalue of the corresponding submanifold, with a^2 + b^2 = lam^2.
    """
    c, d, lam = rat(c), rat(d), rat(lam)
    if c == 0 or d == 0:
        raise ParameterError("c and d must be nonzero (the angle avoids +-pi/2)")
    denom = c * c + d * d
    sin_theta = (c * c - d * d) / denom
    cos_theta = (-2 * c * d) / denom
    assert sin_theta * sin_theta + cos_theta * cos_theta == 1
    return ThetaData(
        sin_theta=sin_theta,
        cos_theta=cos_theta,
        a=lam * cos_theta,
        b=lam * sin_theta,
    )


def _operator_symmetry_residuals(frame: _Frame, M: Mat):
    """g(M v_a, v_b) - g(v_a, M v_b) over the frame, nonzero entries."""
    n = len(frame.vectors)
    for a in range(n):
        for b in range(n):
            lhs = M[b, a] * frame.norms[b]
            rhs = M[a, b] * frame.norms[a]
            if lhs != rhs:
                yield (a, b), lhs - rhs


def verify_split_identities(
    model: LieAlgebraModel,
    cs: ContactStructure,
    spec: DistributionSpec,
    geom: SubmanifoldGeometry,
    h1: Mat,
    h2: Mat,
    kappa: Fraction,
) -> list[IdentityRecord]:
    """The h-decomposition identity suite on one distribution.

    Checks the defining split h X = h1 X + phi h2 X, symmetry of both
    operators, h1^2 + h2^2 = (1 - kappa) Id, commutation, and the
    sigma-h2 pairing g(sigma(X, Y), xi) + g(X, h2 Y) = 0.
    """
    frame = _Frame.of(model, spec)
    n = spec.rank
    records = []

    def scan(identity_id, residual_iter):
        for witness, residual in residual_iter:
            records.append(failed_record(identity_id, witness, residual))
            return
        records.append(passed_record(identity_id))

    def split_residuals():
        for a in range(n):
            recon = frame.from_coords([h1[i, a] for i in range(n)]) + cs.phi @ (
                frame.from_coords([h2[i, a] for i in range(n)])
            )
            res = cs.h @ spec.vectors[a] - recon
            if not res.is_zero():
                yield (a,), max(abs(x) for x in res)

    scan("h_split", split_residuals())
    scan("h1_symmetric", _operator_symmetry_residuals(frame, h1))
    scan("h2_symmetric", _operator_symmetry_residuals(frame, h2))

    def square_sum_residuals():
        M = h1 @ h1 + h2 @ h2 - (1 - kappa) * Mat.identity(n)
        for a in range(n):
            for b in range(n):
                if M[a, b] != 0:
                    yield (a, b), M[a, b]

    scan("h1_sq_plus_h2_sq", square_sum_residuals())

    def commute_residuals():
        M = h1 @ h2 - h2 @ h1
        for a in range(n):
            for b in range(n):
                if M[a, b] != 0:
                    yield (a, b), M[a, b]

    scan("h1_h2_commute", commute_residuals())

    def sigma_xi_residuals():
        for a in range(n):
            for b in range(n):
                h2vb = frame.from_coords([h2[i, b] for i in range(n)])
                val = inner(geom.sigma[a][b], cs.xi, cs.metric) + inner(
                    spec.vectors[a], h2vb, cs.metric
                )
                if val != 0:
                    yield (a, b), val

    scan("sigma_xi_h2", sigma_xi_residuals())

    return records


def verify_prop32(
    model: LieAlgebraModel,
    conn: ConnectionTable,
    cs: ContactStructure,
    spec: DistributionSpec,
    geom: SubmanifoldGeometry,
    h1: Mat,
    h2: Mat,
) -> list[IdentityRecord]:
    """Covariant-derivative identities of the split operators.

    Verifies, on all frame pairs: the shape operator relation
    A_{phi Y} X = -phi sigma(X, Y); the normal connection relation
    nabla^perp_X phi Y = phi nablabar_X Y + g(X, Y + h1 Y) xi; and

        (nablabar_X h1) Y = -phi sigma(X, h2 Y) - h2 phi sigma(X, Y),
        (nablabar_X h2) Y =  phi sigma(X, h1 Y) + h1 phi sigma(X, Y).
    """
    frame = _Frame.of(model, spec)
    n = spec.rank
    records = []

    # nablabar in frame coordinates: nb[a][b] = coords of tangential
    # nabla_{v_a} v_b
    nb = [
        [frame.coords(frame.tangential(conn.nabla(spec.vectors[a], spec.vectors[b])))
         for b in range(n)]
        for a in range(n)
    ]

    def sigma_bilinear(coords_u, coords_w) -> Vec:
        out = Vec.zero(model.dim)
        for a in range(n):
            if coords_u[a] == 0:
                continue
            for b in range(n):
                if coords_w[b] != 0:
                    out = out + (coords_u[a] * coords_w[b]) * geom.sigma[a][b]
        return out

    def basis_coords(a):
        return [Fraction(1) if i == a else Fraction(0) for i in range(n)]

    def scan(identity_id, residual_iter):
        for witness, residual in residual_iter:
            records.append(failed_record(identity_id, witness, residual))
            return
        records.append(passed_record(identity_id))

    def wein1_residuals():
        for a in range(n):
            for b in range(n):
                # A_{phi v_b} v_a assembled from sigma through the
                # shape-operator pairing
                shape = Vec.zero(model.dim)
                for cdx in range(n):
                    coeff = inner(
                        geom.sigma[a][cdx], cs.phi @ spec.vectors[b], cs.metric
                    ) / frame.norms[cdx]
                    if coeff != 0:
                        shape = shape + coeff * spec.vectors[cdx]
                res = shape + cs.phi @ geom.sigma[a][b]
                if not res.is_zero():
                    yield (a, b), max(abs(x) for x in res)

    scan("shape_operator_phi", wein1_residuals())

    def wein2_residuals():
        for a in range(n):
            for b in range(n):
                lhs = frame.normal(conn.nabla(spec.vectors[a], cs.phi @ spec.vectors[b]))
                h1vb = frame.from_coords([h1[i, b] for i in range(n)])
                rhs = cs.phi @ frame.from_coords(nb[a][b]) + inner(
                    spec.vectors[a], spec.vectors[b] + h1vb, cs.metric
                ) * cs.xi
                res = lhs - rhs
                if not res.is_zero():
                    yield (a, b), max(abs(x) for x in res)

    scan("normal_connection_phi", wein2_residuals())

    def matvec(M, coords):
        return [
            sum(M[i, j] * coords[j] for j in range(n)) for i in range(n)
        ]

    def nablabar_of_field(a, field_coords):
        # nablabar_{v_a} of a constant-coefficient tangent field
        out = [Fraction(0)] * n
        for b in range(n):
            if field_coords[b] != 0:
                out = [o + field_coords[b] * x for o, x in zip(out, nb[a][b])]
        return out

    def nabla_h_op_residuals(identity_id, M, sign, other):
        # (nablabar_X M) Y vs sign * (phi sigma(X, other Y) + other phi sigma(X, Y))
        def gen():
            for a in range(n):
                ea = basis_coords(a)
                for b in range(n):
                    eb = basis_coords(b)
                    lhs = [
                        x - y
                        for x, y in zip(
                            nablabar_of_field(a, matvec(M, eb)),
                            matvec(M, nb[a][b]),
                        )
                    ]
                    other_eb = matvec(other, eb)
                    term1 = frame.coords(cs.phi @ sigma_bilinear(ea, other_eb))
                    term2 = matvec(other, frame.coords(cs.phi @ sigma_bilinear(ea, eb)))
                    rhs = [sign * (t1 + t2) for t1, t2 in zip(term1, term2)]
                    diff = [x - y for x, y in zip(lhs, rhs)]
                    if any(x != 0 for x in diff):
                        yield (a, b), max(abs(x) for x in diff)

        scan(identity_id, gen())

    nabla_h_op_residuals("nabla_h1", h1, Fraction(-1), h2)
    nabla_h_op_residuals("nabla_h2", h2, Fraction(1), h1)

    return records


def intrinsic_curvature(
    model: LieAlgebraModel, conn: ConnectionTable, spec: DistributionSpec
):
    """Leaf curvature in frame coordinates.

    Returns (table, lowered) where table[a][b][c] is the coordinate list
    of Rbar(v_a, v_b) v_c and lowered(a, b, c, d) the fully lowered
    component with respect to the induced metric.
    """
    frame = _Frame.of(model, spec)
    n = spec.rank
    nb = [
        [frame.coords(frame.tangential(conn.nabla(spec.vectors[a], spec.vectors[b])))
         for b in range(n)]
        for a in range(n)
    ]
    br = [
        [frame.coords(bracket(model, spec.vectors[a], spec.vectors[b]))
         for b in range(n)]
        for a in range(n)
    ]

    def nablabar_of_coords(a, coords):
        out = [Fraction(0)] * n
        for b in range(n):
            if coords[b] != 0:
                out = [o + coords[b] * x for o, x in zip(out, nb[a][b])]
        return out

    table = []
    for a in range(n):
        plane = []
        for b in range(n):
            row = []
            for cdx in range(n):
                first = nablabar_of_coords(a, nb[b][cdx])
                second = nablabar_of_coords(b, nb[a][cdx])
                third = [Fraction(0)] * n
                for e in range(n):
                    if br[a][b][e] != 0:
                        third = [
                            t + br[a][b][e] * x for t, x in zip(third, nb[e][cdx])
                        ]
                row.append([f - s - t for f, s, t in zip(first, second, third)])
            plane.append(row)
        table.append(plane)

    gram = [[frame.induced_metric(a, b) for b in range(n)] for a in range(n)]

    def lowered(a, b, cdx, ddx):
        return sum(table[a][b][cdx][e] * gram[e][ddx] for e in range(n))

    return table, lowered


def gauss_codazzi_residuals(
    model: LieAlgebraModel,
    R: CurvatureTable,
    conn: ConnectionTable,
    spec: DistributionSpec,
    geom: SubmanifoldGeometry,
) -> list[IdentityRecord]:
    """Ambient-vs-intrinsic curvature compatibility on all frame tuples.

    Gauss:  R(X,Y,Z,W) = Rbar(X,Y,Z,W) - g(sigma(X,W), sigma(Y,Z))
                                       + g(sigma(X,Z), sigma(Y,W)).
    Codazzi: (R(X,Y)Z)^perp = (nabla_X sigma)(Y,Z) - (nabla_Y sigma)(X,Z)
    with (nabla_X sigma)(Y,Z) = nabla^perp_X(sigma(Y,Z))
         - sigma(nablabar_X Y, Z) - sigma(Y, nablabar_X Z).
    """
    frame = _Frame.of(model, spec)
    n = spec.rank
    records = []
    _, lowered_bar = intrinsic_curvature(model, conn, spec)
    nb = [
        [frame.coords(frame.tangential(conn.nabla(spec.vectors[a], spec.vectors[b])))
         for b in range(n)]
        for a in range(n)
    ]

    def sigma_bilinear(coords_u, b) -> Vec:
        out = Vec.zero(model.dim)
        for a in range(n):
            if coords_u[a] != 0:
                out = out + coords_u[a] * geom.sigma[a][b]
        return out

    def scan(identity_id, residual_iter):
        for witness, residual in residual_iter:
            records.append(failed_record(identity_id, witness, residual))
            return
        records.append(passed_record(identity_id))

    G = conn.metric

    def gauss_gen():
        for a in range(n):
            for b in range(n):
                for cdx in range(n):
                    for ddx in range(n):
                        ambient = R.lowered(
                            spec.vectors[a],
                            spec.vectors[b],
                            spec.vectors[cdx],
                            spec.vectors[ddx],
                        )
                        val = (
                            lowered_bar(a, b, cdx, ddx)
                            - inner(geom.sigma[a][ddx], geom.sigma[b][cdx], G)
                            + inner(geom.sigma[a][cdx], geom.sigma[b][ddx], G)
                        )
                        if ambient != val:
                            yield (a, b, cdx, ddx), ambient - val

    scan("gauss", gauss_gen())

    def nabla_sigma(a, b, cdx) -> Vec:
        term = frame.normal(conn.nabla(spec.vectors[a], geom.sigma[b][cdx]))
        term = term - sigma_bilinear(nb[a][b], cdx)
        term = term - sigma_bilinear(nb[a][cdx], b)
        return term

    def codazzi_gen():
        for a in range(n):
            for b in range(n):
                for cdx in range(n):
                    lhs = frame.normal(
                        R.apply(spec.vectors[a], spec.vectors[b], spec.vectors[cdx])
                    )
                    rhs = nabla_sigma(a, b, cdx) - nabla_sigma(b, a, cdx)
                    res = lhs - rhs
                    if not res.is_zero():
                        yield (a, b, cdx), max(abs(x) for x in res)

    scan("codazzi", codazzi_gen())

    return records


def eigen_split_dims(cs: ContactStructure, spec: DistributionSpec):
    """(dim E(lambda), dim E(-lambda)) among frame vectors, else None.

    None is returned for frames that are not h-eigenvector frames (the
    diagonal family).
    """
    plus = minus = 0
    for v in spec.vectors:
        hv = cs.h @ v
        if hv == cs.lam * v:
            plus += 1
        elif hv == -cs.lam * v:
            minus += 1
        else:
            return None
    return plus, minus


def leaf_curvature_records(
    model: LieAlgebraModel,
    conn: ConnectionTable,
    cs: ContactStructure,
    spec: DistributionSpec,
    geom: SubmanifoldGeometry,
    inv: ModelInvariants,
) -> tuple[list[IdentityRecord], dict]:
    """Constant-curvature verdicts for the leaf.

    Totally geodesic leaves: sectional curvature is 2 lambda (I + 1) on
    planes inside E(lambda), 2 lambda (I - 1) on planes inside
    E(-lambda), 0 on mixed planes.  Umbilical diagonal leaves are space
    forms of curvature 2 (1 - mu/2 + lambda sin theta) < 0.  Returns the
    records plus a summary dict with the constants found.
    """
    frame = _Frame.of(model, spec)
    n = spec.rank
    _, lowered_bar = intrinsic_curvature(model, conn, spec)
    records = []
    summary: dict = {}

    def scan(identity_id, residual_iter):
        for witness, residual in residual_iter:
            records.append(failed_record(identity_id, witness, residual))
            return
        records.append(passed_record(identity_id))

    def sectional_bar(a, b):
        denom = frame.norms[a] * frame.norms[b] - frame.induced_metric(a, b) ** 2
        return lowered_bar(a, b, b, a) / denom

    def space_form_residuals(K):
        for a in range(n):
            for b in range(n):
                for cdx in range(n):
                    for ddx in range(n):
                        expected = K * (
                            frame.induced_metric(a, ddx) * frame.induced_metric(b, cdx)
                            - frame.induced_metric(a, cdx) * frame.induced_metric(b, ddx)
                        )
                        got = lowered_bar(a, b, cdx, ddx)
                        if got != expected:
                            yield (a, b, cdx, ddx), got - expected

    if geom.classification == "totally_geodesic":
        split = eigen_split_dims(cs, spec)
        if split is None:
            return records, summary
        k_plus, k_minus = split
        summary["e_lambda_dim"] = k_plus
        summary["e_minus_lambda_dim"] = k_minus
        K_plus = 2 * inv.lam * (inv.boeckx_invariant + 1)
        K_minus = 2 * inv.lam * (inv.boeckx_invariant - 1)
        plus_idx = [
            a for a, v in enumerate(spec.vectors) if cs.h @ v == inv.lam * v
        ]
        minus_idx = [a for a in range(n) if a not in plus_idx]

        def block_gen(indices, K):
            for ia, a in enumerate(indices):
                for b in indices[ia + 1 :]:
                    got = sectional_bar(a, b)
                    if got != K:
                        yield (a, b), got - K

        if k_plus >= 2:
            scan("leaf_curvature_e_lambda", block_gen(plus_idx, K_plus))
            summary["e_lambda_curvature"] = rat_str(K_plus)
        if k_minus >= 2:
            scan("leaf_curvature_e_minus_lambda", block_gen(minus_idx, K_minus))
            summary["e_minus_lambda_curvature"] = rat_str(K_minus)

        def mixed_gen():
            for a in plus_idx:
                for b in minus_idx:
                    got = sectional_bar(a, b)
                    if got != 0:
                        yield (a, b), got

        if plus_idx and minus_idx:
            scan("leaf_curvature_mixed_planes", mixed_gen())
        if not (plus_idx and minus_idx):
            # pure eigenleaf: a genuine space form
            K = K_plus if plus_idx else K_minus
            scan("leaf_space_form", space_form_residuals(K))
            summary["leaf_curvature"] = rat_str(K)
    elif geom.classification == "totally_umbilical" and spec.kind == "diagonal":
        theta = theta_parametrization(spec.c, spec.d, inv.lam)
        K = 2 * (1 - inv.mu / 2 + theta.b)
        scan("leaf_space_form", space_form_residuals(K))
        if K >= 0:
            records.append(failed_record("leaf_curvature_negative", None, K))
        else:
            records.append(passed_record("leaf_curvature_negative"))
        summary["leaf_curvature"] = rat_str(K)
        summary["theta"] = {
            "sin": rat_str(theta.sin_theta),
            "cos": rat_str(theta.cos_theta),
        }

    return records, summary


def analyze_submanifold(
    model: LieAlgebraModel,
    conn: ConnectionTable,
    R: CurvatureTable,
    cs: ContactStructure,
    inv: ModelInvariants,
    spec: DistributionSpec,
) -> tuple[SubmanifoldGeometry, list[IdentityRecord], dict]:
    """Full verification pipeline for one distribution.

    Returns the completed geometry (sigma, classification, h1/h2 and
    theta data), the concatenated identity records, and a summary dict
    for reports.
    """
    geom = second_fundamental_form(model, conn, spec)
    h1, h2 = split_h(cs, spec)
    theta = (
        theta_parametrization(spec.c, spec.d, inv.lam)
        if spec.kind == "diagonal"
        else None
    )
    geom = replace(geom, h1=h1, h2=h2, theta_data=theta)

    records = []
    records += verify_split_identities(model, cs, spec, geom, h1, h2, inv.kappa)
    records += verify_prop32(model, conn, cs, spec, geom, h1, h2)
    records += gauss_codazzi_residuals(model, R, conn, spec, geom)
    leaf_records, summary = leaf_curvature_records(model, conn, cs, spec, geom, inv)
    records += leaf_records

    n = spec.rank
    summary["kind"] = spec.kind
    summary["involutive"] = True
    summary["classification"] = geom.classification
    summary["V"] = (
        [rat_str(x) for x in geom.umbilical_vector]
        if geom.umbilical_vector is not None
        else None
    )
    summary.setdefault("leaf_curvature", None)
    summary.setdefault("theta", None)

    def scalar_multiple_of_identity(M):
        s = M[0, 0]
        for a in range(n):
            for b in range(n):
                if M[a, b] != (s if a == b else 0):
                    return None
        return s

    s1 = scalar_multiple_of_identity(h1)
    s2 = scalar_multiple_of_identity(h2)
    summary["h1_eigenvalue"] = rat_str(s1) if s1 is not None else None
    summary["h2_eigenvalue"] = rat_str(s2) if s2 is not None else None
    split = eigen_split_dims(cs, spec)
    if split is not None:
        summary.setdefault("e_lambda_dim", split[0])
        summary.setdefault("e_minus_lambda_dim", split[1])
    return geom, records, summary
