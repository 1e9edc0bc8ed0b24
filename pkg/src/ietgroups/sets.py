"""Finite point sets and finite unions of half-open intervals in [0, 1).

Also houses the obstruction sets attached to an IET ``S`` and an integer
``q``: ``x_q`` (discontinuities of ``S^-1``, the grid ``(1/q)N`` and its
image), its projection ``y_q`` modulo ``1/q``, the periodised ``z_q``, and the
smallest gap ``alpha_q``.

Open neighbourhoods are stored as half-open intervals ``[p - eps, p + eps)``.
Every downstream use is a strict-threshold inclusion test, so the boundary
convention never changes a result.
"""

from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction
from typing import Iterable

from .iet import Iet, inverse
from .scalar import Scalar, as_scalar, floor

ZERO = Fraction(0)
ONE = Fraction(1)


class IntervalSet:
    """Sorted disjoint union of half-open intervals ``[lo, hi)`` inside [0, 1).

    Overlapping or touching intervals are merged and everything is clipped to
    [0, 1), so two sets are equal iff their interval tuples are equal.
    """

    __slots__ = ("intervals",)

    def __init__(self, intervals: Iterable[tuple] = ()):
        raw = []
        for lo, hi in intervals:
            lo, hi = as_scalar(lo), as_scalar(hi)
            lo = max(lo, ZERO)
            hi = min(hi, ONE)
            if lo < hi:
                raw.append((lo, hi))
        raw.sort(key=lambda iv: iv[0])
        out: list[tuple] = []
        for lo, hi in raw:
            if out and lo <= out[-1][1]:
                if hi > out[-1][1]:
                    out[-1] = (out[-1][0], hi)
            else:
                out.append((lo, hi))
        self.intervals = tuple(out)

    @classmethod
    def full(cls) -> "IntervalSet":
        return cls([(ZERO, ONE)])

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)

    def __bool__(self):
        return bool(self.intervals)

    def is_empty(self) -> bool:
        return not self.intervals

    def __eq__(self, other):
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self.intervals == other.intervals

    def __hash__(self):
        return hash(self.intervals)

    def __repr__(self):
        body = ", ".join(f"[{lo}, {hi})" for lo, hi in self.intervals)
        return f"IntervalSet({body or 'empty'})"

    def __contains__(self, x) -> bool:
        i = bisect_right([lo for lo, _ in self.intervals], x) - 1
        return i >= 0 and x < self.intervals[i][1]

    def measure(self) -> Scalar:
        return sum((hi - lo for lo, hi in self.intervals), ZERO)

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet(self.intervals + other.intervals)

    __or__ = union

    def complement(self) -> "IntervalSet":
        out = []
        prev = ZERO
        for lo, hi in self.intervals:
            if prev < lo:
                out.append((prev, lo))
            prev = hi
        if prev < ONE:
            out.append((prev, ONE))
        return IntervalSet(out)

    def intersection(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        a, b = self.intervals, other.intervals
        i = j = 0
        while i < len(a) and j < len(b):
            lo = max(a[i][0], b[j][0])
            hi = min(a[i][1], b[j][1])
            if lo < hi:
                out.append((lo, hi))
            if a[i][1] < b[j][1]:
                i += 1
            else:
                j += 1
        return IntervalSet(out)

    __and__ = intersection

    def difference(self, other: "IntervalSet") -> "IntervalSet":
        return self & other.complement()

    __sub__ = difference

    def issubset(self, other: "IntervalSet") -> bool:
        return (self - other).is_empty()

    __le__ = issubset

    def isdisjoint(self, other: "IntervalSet") -> bool:
        return (self & other).is_empty()

    def translate(self, t) -> "IntervalSet":
        return IntervalSet((lo + t, hi + t) for lo, hi in self.intervals)

    def to_json(self) -> list:
        from .scalar import encode_scalar

        return [[encode_scalar(lo), encode_scalar(hi)] for lo, hi in self.intervals]

    @classmethod
    def from_json(cls, obj) -> "IntervalSet":
        from .scalar import decode_scalar

        if not isinstance(obj, list):
            raise ValueError("interval set JSON must be a list of [lo, hi] pairs")
        out = []
        for pair in obj:
            if not isinstance(pair, list) or len(pair) != 2:
                raise ValueError("interval set JSON must be a list of [lo, hi] pairs")
            out.append((decode_scalar(pair[0]), decode_scalar(pair[1])))
        return cls(out)


def point_set(points: Iterable) -> tuple:
    """Sorted, deduplicated tuple of scalars: the PointSet representation."""
    return tuple(sorted(set(as_scalar(p) for p in points)))


def grid(q: int, *, include_one: bool = True) -> tuple:
    """The points ``0, 1/q, ..., 1`` of ``(1/q)N`` in [0, 1]."""
    top = q + 1 if include_one else q
    return tuple(Fraction(j, q) for j in range(top))


def mod_q(x: Scalar, q: int) -> Scalar:
    """Representative of ``x`` modulo ``1/q`` in ``[0, 1/q)``."""
    return x - Fraction(floor(x * q), q)


def project_mod_q(points: Iterable, q: int) -> tuple:
    if q < 1:
        raise ValueError("q must be a positive integer")
    return point_set(mod_q(as_scalar(p), q) for p in points)


def x_q(S: Iet, q: int) -> tuple:
    """``Delta(S^-1)`` together with ``S`` of the grid and the grid itself, in [0, 1]."""
    if q < 1:
        raise ValueError("q must be a positive integer")
    pts = set(inverse(S).discontinuities)
    pts.update(S(Fraction(j, q)) for j in range(q))
    pts.update(grid(q))
    return point_set(pts)


def y_q(S: Iet, q: int) -> tuple:
    return project_mod_q(x_q(S, q), q)


def z_q(S: Iet, q: int) -> tuple:
    y = y_q(S, q)
    pts = [Fraction(j, q) + p for j in range(q) for p in y]
    pts.append(ONE)
    return point_set(pts)


def gaps(points: tuple, q: int) -> list:
    """Lengths of the components of ``[0, 1/q)`` minus ``points`` (which contain 0)."""
    ends = list(points[1:]) + [Fraction(1, q)]
    return [b - a for a, b in zip(points, ends)]


def alpha_q(S: Iet, q: int) -> Scalar:
    """Smallest gap of ``Y_q(S)`` in ``[0, 1/q)``; zero exactly for q-rational ``S``."""
    y = y_q(S, q)
    if len(y) == 1:
        # Y_q(S) = {0}: the q-rational case
        return ZERO
    return min(gaps(y, q))


def in_U_eps_q(R: Iet, eps, q: int) -> bool:
    eps = as_scalar(eps)
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    return alpha_q(R, q) > eps


def neighborhood(points: Iterable, eps) -> IntervalSet:
    """``eps``-neighbourhood of a point set, clipped to [0, 1) and stored half-open."""
    eps = as_scalar(eps)
    if not eps > 0:
        raise ValueError("eps must be positive")
    return IntervalSet((p - eps, p + eps) for p in points)


def image_set(T: Iet, A: IntervalSet) -> IntervalSet:
    """Exact image of ``A`` under ``T``: each fragment is translated separately."""
    out = []
    starts = T.starts
    ends = starts[1:] + (ONE,)
    for lo, hi in A:
        j = bisect_right(starts, lo) - 1
        a = lo
        while a < hi:
            b = min(hi, ends[j])
            t = T.translations[j]
            out.append((a + t, b + t))
            a = b
            j += 1
    return IntervalSet(out)


def pairwise_distinct_mod_q(points: Iterable, q: int) -> bool:
    pts = point_set(points)
    return len(project_mod_q(pts, q)) == len(pts)


def remark_hypothesis(S: Iet, q: int) -> bool:
    """Distinct points of ``Delta(S^-1) u {0}`` lie in distinct classes mod ``1/q``.

    Under this hypothesis and ``eps < alpha_q(S)`` the set of IETs with
    ``alpha_q > eps`` is a neighbourhood of ``S``.
    """
    return pairwise_distinct_mod_q(set(inverse(S).discontinuities) | {ZERO}, q)


def proposition_hypothesis(S: Iet, q: int) -> bool:
    """Distinct points of ``Delta(S)`` lie in distinct classes mod ``1/q``."""
    return pairwise_distinct_mod_q(S.discontinuities, q)
