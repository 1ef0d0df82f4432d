"""Tracking labeled point sections along paths of smooth cubics.

A path is piecewise linear in coefficient space.  Tracking recomputes the
section from scratch at every step and matches points by nearest neighbor,
which is sound exactly when the step is small against the section's
separation; ambiguous matches trigger step bisection rather than guesswork.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .curve import (
    CubicForm,
    PointSet,
    inflection_points,
    smoothness,
)
from .elliptic import (
    constructible_sizes,
    make_chart,
    points_of_type,
    size_witness,
)
from .errors import (
    DiscriminantPathError,
    InputError,
    NumericalError,
    TrackingAmbiguityError,
)
from .numeric import chordal_matrix
from .symmetry import ProjectiveTransform, act_on_point

__all__ = [
    "Permutation",
    "ParameterPath",
    "TrackResult",
    "track",
    "permutation_of_automorphism",
    "canonical_section",
    "SizeVerdict",
    "section_verdict",
    "FreeActionReport",
    "verify_free_K_action",
]


class Permutation:
    """Bijection of {0, ..., n-1}; composition applies the right factor first."""

    __slots__ = ("images",)

    def __init__(self, images) -> None:
        imgs = [int(i) for i in images]
        if sorted(imgs) != list(range(len(imgs))):
            raise InputError("images do not describe a permutation")
        self.images = tuple(imgs)

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        if len(other) != len(self):
            raise InputError("cannot compose permutations of different sizes")
        return Permutation([self.images[other.images[i]] for i in range(len(self))])

    def inverse(self) -> "Permutation":
        out = [0] * len(self)
        for i, j in enumerate(self.images):
            out[j] = i
        return Permutation(out)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Cycle decomposition, fixed points included, smallest entry first."""
        seen = [False] * len(self)
        out: list[tuple[int, ...]] = []
        for start in range(len(self)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def __repr__(self) -> str:
        parts = ["(" + " ".join(str(i) for i in c) + ")" for c in self.cycles() if len(c) > 1]
        return "Permutation(" + ("".join(parts) if parts else "id") + ")"


class ParameterPath:
    """Piecewise-linear path through cubic coefficient space."""

    def __init__(self, waypoints: list[CubicForm], steps: int = 64) -> None:
        if len(waypoints) < 2:
            raise InputError("a path needs at least two waypoints")
        if not isinstance(steps, (int, np.integer)) or steps < 1:
            raise InputError("the step count must be a positive integer")
        self.waypoints = list(waypoints)
        self.steps = int(steps)

    @classmethod
    def from_samples(cls, cubics, steps: int = 64) -> "ParameterPath":
        return cls([c if isinstance(c, CubicForm) else CubicForm(c) for c in cubics], steps)

    def at(self, t: float) -> CubicForm:
        if not 0.0 <= t <= 1.0:
            raise InputError("path parameter must lie in [0, 1]")
        nseg = len(self.waypoints) - 1
        x = t * nseg
        i = min(int(np.floor(x)), nseg - 1)
        s = x - i
        p = self.waypoints[i].poly
        q = self.waypoints[i + 1].poly
        return CubicForm(p * (1.0 - s) + q * s)

    def is_closed(self, tol: float = 1e-9) -> bool:
        first = self.waypoints[0].poly
        last = self.waypoints[-1].poly
        return first.proportionality_residual(last) <= tol

    def reversed(self) -> "ParameterPath":
        return ParameterPath(list(reversed(self.waypoints)), self.steps)

    def concatenate(self, other: "ParameterPath") -> "ParameterPath":
        a = self.waypoints[-1].poly
        b = other.waypoints[0].poly
        if a.proportionality_residual(b) > 1e-9:
            raise InputError("paths do not meet end to start")
        return ParameterPath(
            self.waypoints + other.waypoints[1:], self.steps + other.steps
        )


@dataclass
class TrackResult:
    """Outcome of tracking: labeled start and end sections, loop permutation.

    end.points[i] is where the point that started at start.points[i] ended
    up.  For a closed path, permutation(j) = i says the track that started
    at label i came home to slot j.
    """

    start: PointSet
    end: PointSet
    permutation: Permutation | None
    steps_taken: int
    min_margin: float


_MIN_STEP = 1e-6


def track(
    path: ParameterPath,
    section,
    tol: Tolerances = DEFAULT_TOLERANCES,
    steps: int | None = None,
) -> TrackResult:
    """Continue a section along the path by recomputation and matching.

    The section argument maps a CubicForm to a PointSet.  Raises
    DiscriminantPathError when any visited curve is singular or within
    smoothness_margin of it, and TrackingAmbiguityError when matching stays
    ambiguous at the minimal step size.
    """
    base = 1.0 / (steps if steps is not None else path.steps)
    f0 = path.at(0.0)
    rep = smoothness(f0, tol)
    if not rep.smooth or rep.margin <= tol.smoothness_margin:
        raise DiscriminantPathError("path starts on or near the discriminant")
    min_margin = rep.margin
    start = section(f0)
    n = len(start)
    if n == 0:
        raise InputError("cannot track an empty section")
    if start.min_separation() <= 2.0 * tol.tau_match:
        raise NumericalError("section points start closer than the matching scale")
    current = start.arrays.copy()
    ordered = list(start.points)
    t = 0.0
    dt = base
    taken = 0
    while t < 1.0 - 1e-12:
        t2 = min(1.0, t + dt)
        f2 = path.at(t2)
        rep = smoothness(f2, tol)
        if not rep.smooth or rep.margin <= tol.smoothness_margin:
            raise DiscriminantPathError(
                f"path meets the discriminant near parameter {t2:.6g}"
            )
        try:
            S2 = section(f2)
        except NumericalError:
            dt *= 0.5
            if dt < _MIN_STEP:
                raise TrackingAmbiguityError(
                    f"section could not be recomputed near parameter {t2:.6g}"
                )
            continue
        ok = S2.min_separation() > 2.0 * tol.tau_match and len(S2) == n
        assignment: list[int] = []
        if ok:
            D = chordal_matrix(current, S2.arrays)
            sep = 0.25 * S2.min_separation()
            for i in range(n):
                order = np.argsort(D[i])
                d1 = D[i, order[0]]
                d2 = D[i, order[1]] if n > 1 else np.inf
                if d2 <= 10.0 * d1 or d1 > sep:
                    ok = False
                    break
                assignment.append(int(order[0]))
            if ok and len(set(assignment)) != n:
                ok = False
        if not ok:
            dt *= 0.5
            if dt < _MIN_STEP:
                raise TrackingAmbiguityError(
                    f"point matching stayed ambiguous near parameter {t2:.6g}"
                )
            continue
        current = S2.arrays[assignment]
        ordered = [S2.points[j] for j in assignment]
        min_margin = min(min_margin, rep.margin)
        t = t2
        taken += 1
        dt = min(base, dt * 2.0)
    end = PointSet(ordered, tol.tau_match)
    perm = None
    if path.is_closed():
        D = chordal_matrix(start.arrays, end.arrays)
        images = []
        for j in range(n):
            i = int(np.argmin(D[j]))
            if D[j, i] > tol.tau_match:
                raise TrackingAmbiguityError(
                    "closed path did not return the section onto itself"
                )
            images.append(i)
        if len(set(images)) != n:
            raise TrackingAmbiguityError("arrival matching is not a bijection")
        perm = Permutation(images)
    return TrackResult(start, end, perm, taken, min_margin)


def permutation_of_automorphism(
    T: ProjectiveTransform, points: PointSet, tol: Tolerances = DEFAULT_TOLERANCES
) -> Permutation:
    """sigma(i) = j when the transform carries points[i] to points[j].

    With composition applying the right factor first, this assignment is a
    homomorphism: sigma_(S T) = sigma_S * sigma_T.
    """
    images = []
    for cp in points:
        j = points.index_of(act_on_point(T, cp.point))
        if j is None:
            raise InputError("the transform does not permute the point set")
        images.append(j)
    if len(set(images)) != len(points):
        raise InputError("the transform collapses points within tolerance")
    return Permutation(images)


def canonical_section(name: str, tol: Tolerances = DEFAULT_TOLERANCES):
    """Resolve a section name to a callable CubicForm -> PointSet.

    Supported names: "inflections", and "type3k:K" for a positive integer
    K, which marks the first inflection in canonical order as identity (the
    resulting set does not depend on that choice).
    """
    if name == "inflections":
        return lambda f: inflection_points(f, tol)
    if name.startswith("type3k:"):
        tail = name.split(":", 1)[1]
        try:
            k = int(tail)
        except ValueError:
            raise InputError(f"bad type index in section name: {name!r}") from None
        if k < 1:
            raise InputError("the type index must be a positive integer")

        def sec(f: CubicForm) -> PointSet:
            flexes = inflection_points(f, tol)
            chart = make_chart(f, flexes[0].point, tol)
            return points_of_type(chart, k, certify=False)

        return sec
    raise InputError(f"unknown section name: {name!r}")


# ---------------------------------------------------------------------------
# verdicts for requested section sizes


@dataclass(frozen=True)
class SizeVerdict:
    n: int
    status: str
    witness: list[int] | None
    detail: str


def section_verdict(n: int) -> SizeVerdict:
    """Classify a requested section size as obstructed, constructible, or open.

    Sizes not divisible by nine are obstructed.  Divisible sizes are
    constructible when they split as nine times a sum of second Jordan
    totients over distinct orders, witnessed by the lexicographically
    smallest such set; the rest stay open.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InputError("the section size must be a positive integer")
    n = int(n)
    if n % 9:
        return SizeVerdict(
            n,
            "obstructed",
            None,
            "not divisible by nine, so no consistent choice of this size exists",
        )
    w = size_witness(n)
    if w is not None:
        return SizeVerdict(
            n,
            "constructible",
            w,
            "realized by the union of the type-3k layers for k in "
            + "{" + ", ".join(str(k) for k in w) + "}",
        )
    return SizeVerdict(
        n,
        "open",
        None,
        "divisible by nine but not a sum of distinct layer counts; not settled either way",
    )


@dataclass(frozen=True)
class FreeActionReport:
    free: bool
    point_count: int
    orbit_sizes: tuple[int, ...]


def verify_free_K_action(
    k: int, tol: Tolerances = DEFAULT_TOLERANCES
) -> FreeActionReport:
    """Check that the nine Fermat translations act freely on the type-3k points."""
    from .curve import fermat_cubic
    from .symmetry import fermat_translations, generate_group, orbit_decomposition

    f = fermat_cubic()
    a, b = fermat_translations(tol)
    group = generate_group([a, b], cap=30)
    flexes = inflection_points(f, tol)
    chart = make_chart(f, flexes[0].point, tol)
    pts = points_of_type(chart, int(k))
    rep = orbit_decomposition(group, pts, tol)
    return FreeActionReport(
        free=rep.free,
        point_count=len(pts),
        orbit_sizes=tuple(sorted(len(o) for o in rep.orbits)),
    )
