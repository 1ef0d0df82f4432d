"""Projective symmetries of plane cubics.

Transforms live in PGL(3, C): matrices act on column coordinate vectors and
two matrices describe the same transform exactly when they differ by a
scalar.  Normalizing determinants to one reduces that scalar ambiguity to a
cube root of unity, which pgl_equal quotients away.
"""

from __future__ import annotations

import itertools

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .curve import (
    CubicForm,
    CurvePoint,
    PointSet,
    fermat_cubic,
    inflection_points,
    line_curve_points,
    polish_onto_curve,
)
from .errors import InputError, NumericalError
from .numeric import ProjectivePoint, chordal_distance, normalize_point

_OMEGA = np.exp(2j * np.pi / 3)


class ProjectiveTransform:
    """An invertible 3x3 complex matrix taken modulo scalars."""

    def __init__(self, matrix) -> None:
        M = np.array(matrix, dtype=complex)
        if M.shape != (3, 3):
            raise InputError("a projective transform needs a 3x3 matrix")
        if not np.all(np.isfinite(M)):
            raise InputError("transform entries must be finite")
        det = complex(np.linalg.det(M))
        hadamard = float(np.prod(np.linalg.norm(M, axis=1)))
        if abs(det) <= 1e-12 * max(hadamard, 1e-300):
            raise InputError("transform matrix is singular")
        self.matrix = M / det ** (1.0 / 3.0)
        self.matrix.setflags(write=False)

    @classmethod
    def identity(cls) -> "ProjectiveTransform":
        return cls(np.eye(3))

    def inverse(self) -> "ProjectiveTransform":
        return ProjectiveTransform(np.linalg.inv(self.matrix))

    def __matmul__(self, other: "ProjectiveTransform") -> "ProjectiveTransform":
        return ProjectiveTransform(self.matrix @ other.matrix)

    def pgl_equal(self, other: "ProjectiveTransform", tol: float = 1e-8) -> bool:
        """Equality in PGL: unit-determinant forms agree up to a cube root of unity."""
        scale = float(np.linalg.norm(other.matrix))
        return any(
            float(np.linalg.norm(self.matrix - _OMEGA**k * other.matrix)) <= tol * scale
            for k in range(3)
        )

    def is_identity(self, tol: float = 1e-8) -> bool:
        return self.pgl_equal(ProjectiveTransform.identity(), tol)

    def __repr__(self) -> str:
        rows = "; ".join(
            " ".join(f"{c:.4g}" for c in row) for row in self.matrix
        )
        return f"ProjectiveTransform([{rows}])"


def act_on_point(T: ProjectiveTransform, point) -> ProjectivePoint:
    v = point.array if hasattr(point, "array") else np.asarray(point, dtype=complex)
    return normalize_point(T.matrix @ v.reshape(3))


def act_on_cubic(T: ProjectiveTransform, f: CubicForm) -> CubicForm:
    """Push the curve forward: the result vanishes on T(P) for P on f."""
    N = T.inverse().matrix
    return CubicForm(f.poly.compose_linear(N), label=None)


def preserves_cubic(
    T: ProjectiveTransform, f: CubicForm, tol: Tolerances = DEFAULT_TOLERANCES
) -> bool:
    g = act_on_cubic(T, f)
    return g.poly.proportionality_residual(f.poly) <= tol.tau_match


def _require_automorphism(
    T: ProjectiveTransform, f: CubicForm, tol: Tolerances
) -> None:
    if not preserves_cubic(T, f, tol):
        raise InputError("the transform does not preserve the curve")


def fixed_points_on_curve(
    T: ProjectiveTransform, f: CubicForm, tol: Tolerances = DEFAULT_TOLERANCES
) -> PointSet:
    """Fixed points of a curve automorphism, found by eigenspace analysis.

    A one-dimensional eigenspace contributes its eigenvector when that point
    lies on the curve; a two-dimensional eigenspace is a pointwise-fixed
    line and contributes the full line-curve intersection.
    """
    _require_automorphism(T, f, tol)
    if T.is_identity():
        raise InputError("the identity fixes the whole curve")
    M = T.matrix
    evals = np.linalg.eigvals(M)
    scale = float(np.abs(evals).max())
    reps: list[complex] = []
    for lam in evals:
        if all(abs(lam - mu) > 1e-8 * scale for mu in reps):
            reps.append(complex(lam))
    found: list[CurvePoint] = []
    for lam in reps:
        _, s, vh = np.linalg.svd(M - lam * np.eye(3))
        dim = int(np.sum(s <= 1e-9 * max(s[0], 1e-300)))
        dim = max(dim, 1)
        if dim >= 3:
            raise InputError("the identity fixes the whole curve")
        if dim == 2:
            u = np.conj(vh[1])
            w = np.conj(vh[2])
            found.extend(line_curve_points(f, u, w, tol))
            continue
        w = np.conj(vh[2])
        P = normalize_point(w)
        if f.residual_at(P) > tol.tau_on_curve:
            continue
        cp = polish_onto_curve(f, P.array, tol)
        if chordal_distance(act_on_point(T, cp.point), cp.point) <= tol.tau_match:
            found.append(cp)
    out: list[CurvePoint] = []
    for cp in sorted(found, key=lambda c: c.residual):
        if all(
            chordal_distance(cp.point, q.point) > tol.tau_match for q in out
        ):
            out.append(cp)
    return PointSet(out, tol.tau_match).sorted_canonical()


def lefschetz_trace(
    T: ProjectiveTransform, f: CubicForm, tol: Tolerances = DEFAULT_TOLERANCES
) -> int:
    """Trace of the induced action on first homology: two minus the fixed-point count.

    Fixed points of an automorphism of a genus-one curve are simple, so the
    count itself is the Lefschetz number.
    """
    return 2 - len(fixed_points_on_curve(T, f, tol))


def generate_group(
    generators: list[ProjectiveTransform], cap: int = 200
) -> list[ProjectiveTransform]:
    """Closure of the generators in PGL, by breadth-first multiplication."""
    elems = [ProjectiveTransform.identity()]
    frontier = [ProjectiveTransform.identity()]
    while frontier:
        nxt: list[ProjectiveTransform] = []
        for g in frontier:
            for h in generators:
                gh = g @ h
                if any(gh.pgl_equal(e) for e in elems):
                    continue
                elems.append(gh)
                nxt.append(gh)
                if len(elems) > cap:
                    raise NumericalError(
                        f"group closure exceeded the cap of {cap} elements"
                    )
        frontier = nxt
    return elems


_translations_checked = False


def fermat_translations(
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> tuple[ProjectiveTransform, ProjectiveTransform]:
    """Generators of the nine translations of the Fermat cubic in PGL(3, C).

    The first cycles the coordinates, the second scales them by cube roots
    of unity.  On first use four properties are verified numerically and the
    result cached: each generator preserves the curve, each has order three,
    the two commute in PGL, and no nonidentity product fixes a curve point.
    """
    global _translations_checked
    a = ProjectiveTransform([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    b = ProjectiveTransform(np.diag([1.0, _OMEGA, _OMEGA**2]))
    if not _translations_checked:
        f = fermat_cubic()
        for g, name in ((a, "cycle"), (b, "scale")):
            if not preserves_cubic(g, f, tol):
                raise NumericalError(f"translation generator {name} moves the curve")
            if not (g @ g @ g).is_identity():
                raise NumericalError(f"translation generator {name} is not of order three")
        comm = a @ b @ a.inverse() @ b.inverse()
        if not comm.is_identity():
            raise NumericalError("translation generators do not commute in PGL")
        group = generate_group([a, b], cap=30)
        if len(group) != 9:
            raise NumericalError("translations generate the wrong group order")
        for g in group:
            if g.is_identity():
                continue
            if len(fixed_points_on_curve(g, f, tol)) != 0:
                raise NumericalError("a nonidentity translation fixes a curve point")
        _translations_checked = True
    return a, b


class OrbitReport:
    """How a finite matrix group permutes a finite invariant point set."""

    def __init__(
        self,
        permutations: list[list[int]],
        orbits: list[list[int]],
        free: bool,
    ) -> None:
        self.permutations = permutations
        self.orbits = orbits
        self.free = free

    def __repr__(self) -> str:
        sizes = sorted(len(o) for o in self.orbits)
        return f"OrbitReport(orbits={sizes}, free={self.free})"


def orbit_decomposition(
    group: list[ProjectiveTransform],
    points: PointSet,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> OrbitReport:
    """Permutation action of a group on a point set, with orbit partition.

    permutations[g][i] = j means group[g] carries points[i] to points[j].
    The action is free when no element other than the identity transform
    fixes any point; an element acting as the identity permutation while
    not being the identity in PGL therefore also destroys freeness.
    """
    n = len(points)
    perms: list[list[int]] = []
    free = True
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for T in group:
        images = [act_on_point(T, cp.point) for cp in points]
        perm: list[int] = []
        for img in images:
            j = points.index_of(img)
            if j is None:
                raise InputError("the point set is not invariant under the group")
            perm.append(j)
        if len(set(perm)) != n:
            raise InputError("group action collapses points within tolerance")
        perms.append(perm)
        if not T.is_identity() and any(perm[i] == i for i in range(n)):
            free = False
        for i, j in enumerate(perm):
            parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    orbits = sorted(groups.values())
    return OrbitReport(perms, orbits, free)


# ---------------------------------------------------------------------------
# Hesse normalization


def _no_three_collinear(vs: list[np.ndarray], rel: float = 1e-8) -> bool:
    for trio in itertools.combinations(vs, 3):
        M = np.stack(trio)
        bound = float(np.prod(np.linalg.norm(M, axis=1)))
        if abs(np.linalg.det(M)) <= rel * bound:
            return False
    return True


def _through_four(vs: list[np.ndarray]) -> np.ndarray | None:
    """Matrix sending the standard frame e1, e2, e3, (1,1,1) to the four points."""
    B = np.stack(vs[:3], axis=1)
    try:
        c = np.linalg.solve(B, vs[3])
    except np.linalg.LinAlgError:
        return None
    if np.abs(c).min() <= 1e-10 * np.abs(c).max():
        return None
    return B * c


def hesse_base_points() -> list[np.ndarray]:
    """The nine points shared by every member of the Hesse pencil."""
    out = []
    for i in range(3):
        for k in range(3):
            v = np.zeros(3, dtype=complex)
            v[i] = -(_OMEGA**k)
            v[(i + 1) % 3] = 1.0
            out.append(v)
    return out


def hesse_normalize(
    f: CubicForm, tol: Tolerances = DEFAULT_TOLERANCES
) -> tuple[ProjectiveTransform, complex]:
    """Coordinates in which the curve joins the Hesse pencil.

    Returns (T, lam) with act_on_cubic(T, f) proportional to
    x^3 + y^3 + z^3 + lam*x*y*z within tau_hesse.  The search maps a frame
    of four inflection points, no three collinear, onto frames of the nine
    pencil base points until the coefficient fit succeeds.
    """
    flexes = inflection_points(f, tol)
    coords = [cp.point.array for cp in flexes]
    src = None
    for quad in itertools.permutations(range(9), 4):
        vs = [coords[i] for i in quad]
        if _no_three_collinear(vs):
            src = vs
            break
    if src is None:
        raise NumericalError("no spanning frame among the inflection points")
    Mp = _through_four(src)
    if Mp is None:
        raise NumericalError("inflection frame is numerically degenerate")
    Mp_inv = np.linalg.inv(Mp)
    base = hesse_base_points()
    fermat = fermat_cubic()
    keys = [(i, j, 3 - i - j) for i in range(4) for j in range(4 - i)]
    fvec = np.array([fermat.poly.coeff(*k) for k in keys])
    xvec = np.array([1.0 + 0.0j if k == (1, 1, 1) else 0.0 for k in keys])
    A = np.stack([fvec, xvec], axis=1)
    for quad in itertools.permutations(range(9), 4):
        vs = [base[i] for i in quad]
        if not _no_three_collinear(vs):
            continue
        Mq = _through_four(vs)
        if Mq is None:
            continue
        try:
            T = ProjectiveTransform(Mq @ Mp_inv)
        except InputError:
            continue
        g = act_on_cubic(T, f)
        gvec = np.array([g.poly.coeff(*k) for k in keys])
        sol, *_ = np.linalg.lstsq(A, gvec, rcond=None)
        resid = float(np.linalg.norm(A @ sol - gvec) / np.linalg.norm(gvec))
        if resid <= tol.tau_hesse and abs(sol[0]) > 1e-12 * abs(sol[1]):
            return T, complex(sol[1] / sol[0])
    raise NumericalError("no Hesse normalization found within tolerance")
