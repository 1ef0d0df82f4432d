"""Numeric kernel: univariate polynomials, roots, resultants, projective metric.

Every higher-level computation (intersection, torsion, tracking) bottoms
out here, so the routines certify their own output: roots are Newton
polished and rejected unless the relative residual clears tau_root, and
projective points carry a canonical normalized representative.

Conventions:
- polynomial coefficients are stored lowest degree first;
- resultant(p, q) = lead(q)^deg(p) * prod of p over the roots of q, the
  Sylvester determinant with the q block on top (so resultant(x, x-1) = 1);
- the projective metric is the chordal one, sqrt(1 - |<P,Q>|^2 / (|P|^2 |Q|^2)).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import InputError, NumericalError

__all__ = [
    "UniPoly",
    "ProjectivePoint",
    "solve_univariate",
    "resultant",
    "chordal_distance",
    "chordal_matrix",
    "normalize_point",
]

# Slack (in units of machine epsilon) for the max-modulus pivot search in
# normalize_point; keeps renormalization bitwise idempotent on exact ties.
_PIVOT_SLACK = 4.0 * np.finfo(float).eps


class UniPoly:
    """Univariate polynomial over the complex numbers, lowest degree first.

    Trailing (highest-degree) coefficients that are exactly zero are
    trimmed on construction, so lead() is nonzero unless the polynomial
    is identically zero, which is stored as the single coefficient 0.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs) -> None:
        c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
        if c.ndim != 1 or c.size == 0:
            raise InputError("coefficients must form a nonempty 1-d sequence")
        if not np.all(np.isfinite(c.real)) or not np.all(np.isfinite(c.imag)):
            raise InputError("non-finite polynomial coefficient")
        nz = np.nonzero(c)[0]
        c = c[: nz[-1] + 1] if nz.size else c[:1] * 0
        self.coeffs = c

    @classmethod
    def from_roots(cls, roots, lead: complex = 1.0) -> "UniPoly":
        c = np.atleast_1d(np.asarray([lead], dtype=complex))
        for r in roots:
            c = np.convolve(c, np.array([-r, 1.0], dtype=complex))
        return cls(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.degree == 0 and self.coeffs[0] == 0

    def lead(self) -> complex:
        return complex(self.coeffs[-1])

    def __call__(self, z):
        return np.polynomial.polynomial.polyval(z, self.coeffs)

    def derivative(self) -> "UniPoly":
        if self.degree == 0:
            return UniPoly([0.0])
        return UniPoly(np.polynomial.polynomial.polyder(self.coeffs))

    def __mul__(self, other):
        if isinstance(other, UniPoly):
            return UniPoly(np.convolve(self.coeffs, other.coeffs))
        return UniPoly(self.coeffs * complex(other))

    __rmul__ = __mul__

    def __add__(self, other: "UniPoly") -> "UniPoly":
        return UniPoly(np.polynomial.polynomial.polyadd(self.coeffs, other.coeffs))

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return UniPoly(np.polynomial.polynomial.polysub(self.coeffs, other.coeffs))

    def __repr__(self) -> str:
        return f"UniPoly({list(self.coeffs)!r})"


@dataclass(frozen=True)
class ProjectivePoint:
    """Point of the complex projective plane, stored normalized.

    The representative has its max-modulus coordinate equal to 1 (lowest
    index wins ties). Equality of the dataclass is representation
    equality; geometric identity is chordal_distance below a tolerance.
    """

    coords: tuple[complex, complex, complex]

    @classmethod
    def from_array(cls, v) -> "ProjectivePoint":
        return normalize_point(v)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coords, dtype=complex)

    def __repr__(self) -> str:
        x, y, z = self.coords
        return f"({x:.6g} : {y:.6g} : {z:.6g})"


def normalize_point(v) -> ProjectivePoint:
    """Canonical representative: max-modulus coordinate rescaled to exactly 1.

    Ties go to the lowest coordinate index; the comparison carries a few
    ulps of slack so the map is idempotent even on exact modulus ties.
    """
    a = np.asarray(v, dtype=complex).reshape(-1)
    if a.size != 3:
        raise InputError("projective point needs exactly 3 coordinates")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise InputError("non-finite coordinate")
    mods = np.abs(a)
    top = mods.max()
    if top == 0.0:
        raise InputError("the zero vector is not a projective point")
    pivot = int(np.nonzero(mods >= top * (1.0 - _PIVOT_SLACK))[0][0])
    w = a / a[pivot]
    w[pivot] = 1.0
    return ProjectivePoint((complex(w[0]), complex(w[1]), complex(w[2])))


def chordal_distance(p, q) -> float:
    """Chordal (Fubini-Study sine) distance between two projective points.

    Takes ProjectivePoint or raw coordinate triples; scale invariant,
    symmetric, range [0, 1], and a metric on the projective plane.
    """
    a = p.array if isinstance(p, ProjectivePoint) else np.asarray(p, dtype=complex)
    b = q.array if isinstance(q, ProjectivePoint) else np.asarray(q, dtype=complex)
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        raise InputError("the zero vector is not a projective point")
    # Lagrange identity: |a|^2 |b|^2 - |<a, conj(b)>|^2 = |a x b|^2, which
    # avoids the cancellation that a direct 1 - |<a,b>|^2 suffers near 0.
    num = float(np.linalg.norm(np.cross(a, b)))
    return min(1.0, num / (na * nb))


def chordal_matrix(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Pairwise chordal distances between two stacks of coordinate rows."""
    An = A / np.linalg.norm(A, axis=1, keepdims=True)
    Bn = B / np.linalg.norm(B, axis=1, keepdims=True)
    g = np.abs(An @ Bn.conj().T) ** 2
    return np.sqrt(np.clip(1.0 - g, 0.0, None))


def _newton(p: UniPoly, z: complex, iters: int = 40) -> complex:
    dp = p.derivative()
    for _ in range(iters):
        d = dp(z)
        if d == 0:
            return z
        step = p(z) / d
        z = z - step
        if abs(step) <= 1e-16 * max(1.0, abs(z)):
            break
    return z


def _residual_scale(p: UniPoly, z: complex) -> float:
    return float(np.max(np.abs(p.coeffs))) * max(1.0, abs(z)) ** p.degree


def _cluster(values: np.ndarray, radius: float) -> list[list[int]]:
    # Union-find on pairwise closeness; radius scales with the root size.
    n = len(values)
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            lim = radius * max(1.0, abs(values[i]))
            if abs(values[i] - values[j]) <= lim:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def solve_univariate(
    p: UniPoly, tol: Tolerances = DEFAULT_TOLERANCES
) -> list[tuple[complex, int]]:
    """All complex roots of p with multiplicities, certified by residual.

    Companion-matrix eigenvalues seed the roots, clusters within
    tau_cluster merge into multiple roots, and each representative is
    Newton polished (on the (m-1)-th derivative for an m-fold root).
    Raises NumericalError if any polished root fails the relative
    residual bound tau_root, InputError on constants.
    """
    if p.is_zero():
        raise InputError("cannot solve the zero polynomial")
    if p.degree == 0:
        raise InputError("cannot solve a constant polynomial")
    raw = np.roots(p.coeffs[::-1])

    def polish_groups(groups: list[list[int]], values: np.ndarray):
        out = []
        for g in groups:
            m = len(g)
            z = complex(np.mean(values[g]))
            target = p
            for _ in range(m - 1):
                target = target.derivative()
            z = _newton(target, z)
            out.append((z, m))
        return out

    roots = polish_groups(_cluster(raw, tol.tau_cluster), raw)
    # Polishing can reunite a cluster the first pass split; merge again.
    vals = np.array([z for z, _ in roots])
    regrouped = _cluster(vals, tol.tau_cluster)
    merged: list[tuple[complex, int]] = []
    for g in regrouped:
        mult = sum(roots[i][1] for i in g)
        z = complex(np.mean([roots[i][0] for i in g]))
        if len(g) > 1:
            target = p
            for _ in range(mult - 1):
                target = target.derivative()
            z = _newton(target, z)
        merged.append((z, mult))
    for z, m in merged:
        res = abs(p(z))
        if res > tol.tau_root * _residual_scale(p, z):
            raise NumericalError(
                f"root polishing failed: residual {res:.3g} at {z:.6g} "
                f"exceeds {tol.tau_root:g} relative"
            )
    merged.sort(key=lambda zm: (zm[0].real, zm[0].imag))
    return merged


def resultant(p: UniPoly, q: UniPoly) -> complex:
    """Sylvester resultant, q block on top.

    Equals lead(q)^deg(p) times the product of p over the roots of q;
    zero exactly when p and q share a root. Both inputs must have
    degree >= 1.
    """
    if p.is_zero() or q.is_zero():
        raise InputError("resultant of the zero polynomial is undefined")
    m, n = p.degree, q.degree
    if m < 1 or n < 1:
        raise InputError("resultant needs two polynomials of degree >= 1")
    size = m + n
    S = np.zeros((size, size), dtype=complex)
    qd = q.coeffs[::-1]
    pd = p.coeffs[::-1]
    for i in range(m):
        S[i, i : i + n + 1] = qd
    for i in range(n):
        S[m + i, i : i + m + 1] = pd
    return complex(np.linalg.det(S))
