"""Group structure on a smooth plane cubic with a chosen inflection as identity.

The chord-tangent law is computed directly on the plane model through the
polarization identity

    f(sP + tQ) = s^3 f(P) + s^2 t grad_f(P).Q + s t^2 grad_f(Q).P + t^3 f(Q),

so a chord's third intersection needs no elimination.  Torsion is found in a
Weierstrass chart via division polynomials and mapped back, then certified
against the group law itself.
"""

from __future__ import annotations

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .curve import (
    CubicForm,
    CurvePoint,
    PointSet,
    polish_onto_curve,
)
from .errors import InputError, NumericalError
from .numeric import (
    ProjectivePoint,
    UniPoly,
    chordal_distance,
    normalize_point,
    solve_univariate,
)
from .symmetry import ProjectiveTransform, act_on_point
from .trivariate import TriPoly

__all__ = [
    "EllipticChart",
    "make_chart",
    "third_intersection",
    "torsion_points",
    "points_of_type",
    "jordan_totient_2",
    "constructible_sizes",
    "size_witness",
    "translation_certificate",
]


def _coords(p) -> np.ndarray:
    if hasattr(p, "array"):
        return np.asarray(p.array, dtype=complex).reshape(3)
    v = np.asarray(p, dtype=complex).reshape(3)
    if not np.all(np.isfinite(v.real)) or not np.all(np.isfinite(v.imag)):
        raise InputError("point coordinates must be finite")
    return v


def _on_curve(f: CubicForm, v: np.ndarray, tol: Tolerances) -> CurvePoint:
    P = normalize_point(v)
    if f.residual_at(P) > 1e-3:
        raise InputError("point is not on the curve")
    cp = polish_onto_curve(f, P.array, tol)
    if cp.residual > tol.tau_on_curve:
        raise NumericalError("could not polish the point onto the curve")
    return cp


def _tangent_direction(f: CubicForm, P: np.ndarray) -> np.ndarray:
    """A vector spanning the tangent line at P together with P itself.

    The gradient's null plane contains P (Euler identity), so project P out
    Hermitian-orthogonally and keep the larger remainder.
    """
    g = f.gradient(P)
    gn = float(np.linalg.norm(g))
    if gn == 0.0:
        raise NumericalError("vanishing gradient: the curve is singular here")
    _, _, vh = np.linalg.svd(g.reshape(1, 3) / gn)
    best = None
    best_norm = -1.0
    pp = float(np.vdot(P, P).real)
    for row in vh[1:]:
        v = np.conj(row)
        v = v - (np.vdot(P, v) / pp) * P
        n = float(np.linalg.norm(v))
        if n > best_norm:
            best, best_norm = v, n
    if best_norm <= 1e-8:
        raise NumericalError("tangent direction collapsed onto the point")
    return best / best_norm


def third_intersection(
    f: CubicForm, p, q, tol: Tolerances = DEFAULT_TOLERANCES
) -> CurvePoint:
    """Third point in which the line through p and q meets the cubic.

    Coincident inputs (within tau_match) use the tangent line; inputs that
    are distinct but closer than ten times tau_match are rejected as an
    ill-conditioned chord.
    """
    cp = _on_curve(f, _coords(p), tol)
    cq = _on_curve(f, _coords(q), tol)
    P = cp.array
    Q = cq.array
    d = chordal_distance(cp.point, cq.point)
    if d <= tol.tau_match:
        T = _tangent_direction(f, P)
        c0 = f.evaluate(T)
        c1 = complex(f.gradient(T) @ P)
        R = c0 * P - c1 * T
        scale = max(abs(c0), abs(c1)) * max(np.abs(P).max(), np.abs(T).max())
    elif d <= 10.0 * tol.tau_match:
        raise NumericalError(
            "chord through nearly coincident points is ill conditioned"
        )
    else:
        g1 = complex(f.gradient(P) @ Q)
        g2 = complex(f.gradient(Q) @ P)
        R = g2 * P - g1 * Q
        scale = max(abs(g1), abs(g2)) * max(np.abs(P).max(), np.abs(Q).max())
    if float(np.abs(R).max()) <= 1e-10 * max(scale, 1e-300):
        raise NumericalError("third intersection is numerically indeterminate")
    out = polish_onto_curve(f, R, tol)
    if out.residual > tol.tau_on_curve:
        raise NumericalError("third intersection failed to settle on the curve")
    return out


# ---------------------------------------------------------------------------
# Weierstrass chart


def _shift_matrix(d: complex, e: complex) -> np.ndarray:
    return np.array([[1, 0, 0], [d, 1, e], [0, 0, 1]], dtype=complex)


class EllipticChart:
    """A smooth cubic with a marked inflection, carrying the group structure.

    to_w sends the curve into short Weierstrass form y^2 z = x^3 + a x z^2
    + b z^3 with the identity at (0:1:0); arithmetic that benefits from
    that shape (torsion hunting) happens there, while single group
    operations stay on the original plane model.
    """

    def __init__(
        self,
        curve: CubicForm,
        identity: ProjectivePoint,
        a: complex,
        b: complex,
        to_w: ProjectiveTransform,
        tol: Tolerances,
    ) -> None:
        self.curve = curve
        self.identity = identity
        self.a = complex(a)
        self.b = complex(b)
        self.to_w = to_w
        self.from_w = to_w.inverse()
        self.tol = tol

    def __repr__(self) -> str:
        return f"EllipticChart(a={self.a:.6g}, b={self.b:.6g}, O={self.identity})"

    def weierstrass_form(self) -> CubicForm:
        return CubicForm.from_coeffs(
            {(0, 2, 1): 1.0, (3, 0, 0): -1.0, (1, 0, 2): -self.a, (0, 0, 3): -self.b}
        )

    def j_invariant(self) -> complex:
        num = 4.0 * self.a**3
        den = num + 27.0 * self.b**2
        scale = max(abs(num), abs(27.0 * self.b**2))
        if abs(den) <= 1e-12 * max(scale, 1e-300):
            raise NumericalError("vanishing discriminant: the curve is singular")
        return complex(1728.0 * num / den)

    def to_weierstrass(self, p) -> ProjectivePoint:
        return act_on_point(self.to_w, _coords(p))

    def from_weierstrass(self, p) -> ProjectivePoint:
        return act_on_point(self.from_w, _coords(p))

    # -- group law ---------------------------------------------------------

    def negate(self, p) -> CurvePoint:
        return third_intersection(self.curve, self.identity, p, self.tol)

    def add(self, p, q) -> CurvePoint:
        s = third_intersection(self.curve, p, q, self.tol)
        return third_intersection(self.curve, self.identity, s, self.tol)

    def multiply(self, m: int, p) -> CurvePoint:
        if not isinstance(m, (int, np.integer)):
            raise InputError("the multiplier must be an integer")
        if m == 0:
            return polish_onto_curve(self.curve, self.identity.array, self.tol)
        if m < 0:
            return self.negate(self.multiply(-m, p))
        result: CurvePoint | None = None
        addend = _on_curve(self.curve, _coords(p), self.tol)
        mm = int(m)
        while mm:
            if mm & 1:
                result = addend if result is None else self.add(result, addend)
            mm >>= 1
            if mm:
                addend = self.add(addend, addend)
        assert result is not None
        return result


def _structural_coeff(poly: TriPoly, key: tuple[int, int, int]) -> complex:
    return complex(poly.coeff(*key))


def make_chart(
    f: CubicForm, identity, tol: Tolerances = DEFAULT_TOLERANCES
) -> EllipticChart:
    """Build the group chart for a smooth cubic with an inflection as identity.

    The transform is assembled in four moves: send the identity to (0:1:0)
    with its tangent to the line z = 0, shear away the cross terms in y,
    translate away the x^2 z term, and rescale so the model reads
    y^2 z = x^3 + a x z^2 + b z^3 with max(|a|, |b|) normalized to 1 when
    nonzero.
    """
    cp = _on_curve(f, _coords(identity), tol)
    h = f.hessian()
    if h.residual_at(cp.point) > 1e2 * tol.tau_on_curve:
        raise InputError("the identity must be an inflection point of the curve")
    O = cp.array
    n = f.gradient(O)
    nn = float(np.linalg.norm(n))
    if nn == 0.0:
        raise InputError("singular point cannot serve as the identity")
    _, _, vh = np.linalg.svd(O.reshape(1, 3))
    best_row = None
    best_det = -1.0
    for row in vh[1:]:
        cand = np.conj(row)
        M = np.stack([cand, np.conj(O) / np.linalg.norm(O), n / nn])
        dt = abs(np.linalg.det(M))
        if dt > best_det:
            best_det, best_row = dt, cand
    M1 = np.stack([best_row, np.conj(O) / np.linalg.norm(O), n / nn])
    if best_det <= 1e-8:
        raise NumericalError("frame at the identity is numerically degenerate")
    g1 = f.poly.compose_linear(np.linalg.inv(M1))
    top = g1.norm_inf()
    for key in ((0, 3, 0), (1, 2, 0), (2, 1, 0)):
        if abs(_structural_coeff(g1, key)) > 1e-6 * top:
            raise NumericalError(
                "the marked point does not behave like an inflection"
            )
    c = _structural_coeff(g1, (0, 2, 1))
    a3 = _structural_coeff(g1, (3, 0, 0))
    if abs(c) <= 1e-8 * top or abs(a3) <= 1e-8 * top:
        raise NumericalError("degenerate tangent frame at the identity")
    d = _structural_coeff(g1, (1, 1, 1))
    e = _structural_coeff(g1, (0, 1, 2))
    T2 = _shift_matrix(d / (2.0 * c), e / (2.0 * c))
    g2 = g1.compose_linear(np.linalg.inv(T2))
    a2 = _structural_coeff(g2, (2, 0, 1))
    s = a2 / (3.0 * a3)
    T3 = np.array([[1, 0, s], [0, 1, 0], [0, 0, 1]], dtype=complex)
    g3 = g2.compose_linear(np.linalg.inv(T3))
    a1 = _structural_coeff(g3, (1, 0, 2))
    a0 = _structural_coeff(g3, (0, 0, 3))
    q = np.sqrt(-a3 / c)
    T4 = np.diag([1.0, 1.0 / q, 1.0]).astype(complex)
    A = a1 / a3
    B = a0 / a3
    u = max(abs(A) ** 0.25, abs(B) ** (1.0 / 6.0))
    if u > 0.0:
        T5 = np.diag([1.0 / u**2, 1.0 / u**3, 1.0]).astype(complex)
        A = A / u**4
        B = B / u**6
    else:
        T5 = np.eye(3, dtype=complex)
    W = ProjectiveTransform(T5 @ T4 @ T3 @ T2 @ M1)
    chart = EllipticChart(f, cp.point, A, B, W, tol)
    model = chart.weierstrass_form()
    pushed = f.poly.compose_linear(W.inverse().matrix)
    if TriPoly.proportionality_residual(pushed, model.poly) > 1e-6:
        raise NumericalError("Weierstrass reduction failed the invariant check")
    if chordal_distance(chart.to_weierstrass(cp.point), np.array([0, 1, 0])) > tol.tau_match:
        raise NumericalError("identity did not land at the point at infinity")
    return chart


# ---------------------------------------------------------------------------
# torsion via division polynomials


def _division_polys(m: int, A: complex, B: complex) -> dict[int, UniPoly]:
    """Division polynomials in x only, with the odd/even parity folded in.

    With R = x^3 + A x + B, entry k here equals the classical psi_k for odd
    k and psi_k / y for even k; the recurrences below are the classical
    ones after substituting y^2 = R.
    """
    R = UniPoly([B, A, 0.0, 1.0])
    R2 = R * R
    f: dict[int, UniPoly] = {
        0: UniPoly([0.0]),
        1: UniPoly([1.0]),
        2: UniPoly([2.0]),
        3: UniPoly([-(A**2), 12.0 * B, 6.0 * A, 0.0, 3.0]),
        4: UniPoly(
            [
                4.0 * (-8.0 * B**2 - A**3),
                4.0 * (-4.0 * A * B),
                4.0 * (-5.0 * A**2),
                4.0 * 20.0 * B,
                4.0 * 5.0 * A,
                0.0,
                4.0,
            ]
        ),
    }
    for k in range(5, m + 1):
        if k % 2:
            j = (k - 1) // 2
            if j % 2 == 0:
                f[k] = R2 * f[j + 2] * f[j] * f[j] * f[j] - f[j - 1] * f[j + 1] * f[j + 1] * f[j + 1]
            else:
                f[k] = f[j + 2] * f[j] * f[j] * f[j] - R2 * f[j - 1] * f[j + 1] * f[j + 1] * f[j + 1]
        else:
            j = k // 2
            f[k] = 0.5 * (f[j] * (f[j + 2] * f[j - 1] * f[j - 1] - f[j - 2] * f[j + 1] * f[j + 1]))
        expected = (k * k - 1) // 2 if k % 2 else (k * k - 4) // 2
        if f[k].degree != expected:
            raise NumericalError(
                f"division polynomial {k} lost its leading coefficient"
            )
    return f


def torsion_points(
    chart: EllipticChart, m: int, certify: bool = True
) -> PointSet:
    """All points P with m P = O, as a PointSet of exactly m^2 points.

    Certification multiplies every found point by m through the plane group
    law and demands the identity within tau_match.
    """
    tol = chart.tol
    if not isinstance(m, (int, np.integer)) or m < 1:
        raise InputError("the torsion order must be a positive integer")
    if m > tol.max_torsion_order:
        raise InputError(
            f"torsion order {m} exceeds the configured limit "
            f"{tol.max_torsion_order}"
        )
    ident = polish_onto_curve(chart.curve, chart.identity.array, tol)
    found: list[CurvePoint] = [ident]
    if m > 1:
        A, B = chart.a, chart.b
        R = UniPoly([B, A, 0.0, 1.0])
        xs: list[tuple[complex, bool]] = []
        if m % 2 == 0:
            xs.extend((x, True) for x, _ in solve_univariate(R, tol))
        if m > 2:
            fm = _division_polys(m, A, B)[m]
            xs.extend((x, False) for x, _ in solve_univariate(fm, tol))
        elif m == 2:
            pass
        for x0, is_two in xs:
            ys = [0.0 + 0.0j] if is_two else [np.sqrt(complex(R(x0)))]
            if not is_two:
                ys.append(-ys[0])
            for y0 in ys:
                w = np.array([x0, y0, 1.0], dtype=complex)
                back = chart.from_weierstrass(w)
                cp = polish_onto_curve(chart.curve, back.array, tol)
                if cp.residual <= tol.tau_on_curve:
                    found.append(cp)
    dedup: list[CurvePoint] = []
    for cp in sorted(found, key=lambda c: c.residual):
        if all(
            chordal_distance(cp.point, q.point) > tol.tau_match for q in dedup
        ):
            dedup.append(cp)
    if len(dedup) != m * m:
        raise NumericalError(
            f"expected {m * m} points of order dividing {m}, found {len(dedup)}"
        )
    if certify:
        for cp in dedup:
            back = chart.multiply(int(m), cp)
            if chordal_distance(back.point, chart.identity) > tol.tau_match:
                raise NumericalError(
                    "a candidate torsion point failed the group-law check"
                )
    return PointSet(dedup, tol.tau_match).sorted_canonical()


def _divisors(k: int) -> list[int]:
    return [d for d in range(1, k + 1) if k % d == 0]


def points_of_type(
    chart: EllipticChart, k: int, certify: bool = True
) -> PointSet:
    """Points of type 3k: killed by 3k but by no smaller multiple 3d, d | k.

    Their count is nine times the second Jordan totient of k; anything else
    raises NumericalError.
    """
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise InputError("the type index must be a positive integer")
    out = torsion_points(chart, 3 * int(k), certify=certify)
    for d in _divisors(int(k))[:-1]:
        out = out.minus(torsion_points(chart, 3 * d, certify=False))
    expected = 9 * jordan_totient_2(int(k))
    if len(out) != expected:
        raise NumericalError(
            f"type-{3 * k} count came out as {len(out)}, expected {expected}"
        )
    return out.sorted_canonical()


# ---------------------------------------------------------------------------
# admissible sizes


def jordan_totient_2(k: int) -> int:
    """J_2(k) = k^2 prod_{p | k} (1 - 1/p^2), computed exactly."""
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise InputError("the Jordan totient needs a positive integer")
    n = int(k)
    result = n * n
    p = 2
    while p * p <= n:
        if n % p == 0:
            result = result // (p * p) * (p * p - 1)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        result = result // (n * n) * (n * n - 1)
    return result


def _totient_terms(m: int) -> list[tuple[int, int]]:
    # J_2(k) > 0.6 k^2, so k stays below sqrt(m / 0.6) + 2
    out = []
    k = 1
    while k * k * 3 <= 5 * m + 30:
        j = jordan_totient_2(k)
        if j <= m:
            out.append((k, j))
        k += 1
    return out


def constructible_sizes(bound: int) -> list[int]:
    """All sizes up to the bound of the form 9 * sum of J_2 over distinct orders."""
    if not isinstance(bound, (int, np.integer)) or bound < 1:
        raise InputError("the bound must be a positive integer")
    m = int(bound) // 9
    sums = {0}
    for _, j in _totient_terms(m):
        sums |= {s + j for s in sums if s + j <= m}
    return sorted(9 * s for s in sums if s > 0)


def translation_certificate(
    chart: EllipticChart,
    T: ProjectiveTransform,
    samples: list[CurvePoint],
) -> float:
    """Spread of T(P) - P (group subtraction) over the sample points.

    An automorphism acting as a group translation makes this difference a
    constant point, so the returned max chordal deviation from the first
    sample's difference is ~0 exactly for translations.
    """
    if not samples:
        raise InputError("at least one sample point is required")
    diffs = [
        chart.add(act_on_point(T, cp.point), chart.negate(cp))
        for cp in samples
    ]
    base = diffs[0].array
    return max(chordal_distance(base, d.array) for d in diffs)


def size_witness(n: int) -> list[int] | None:
    """Lexicographically smallest set of distinct orders k with 9 sum J_2(k) = n.

    Returns None when no such set exists (including all n not divisible by
    nine).
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InputError("the size must be a positive integer")
    if n % 9:
        return None
    m = int(n) // 9
    terms = _totient_terms(m)
    reach: list[set[int]] = [set() for _ in range(len(terms) + 1)]
    reach[len(terms)] = {0}
    for i in range(len(terms) - 1, -1, -1):
        j = terms[i][1]
        reach[i] = reach[i + 1] | {s + j for s in reach[i + 1] if s + j <= m}
    if m not in reach[0]:
        return None
    out: list[int] = []
    rem = m
    for i, (k, j) in enumerate(terms):
        if rem == 0:
            break
        if j <= rem and rem - j in reach[i + 1]:
            out.append(k)
            rem -= j
    return out
