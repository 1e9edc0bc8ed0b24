"""Interval exchange transformations of [0, 1) in canonical (merged) form.

An IET is stored as its length vector and its permutation ``perm``, where
``perm[i]`` is the 1-based position of interval ``i + 1`` in the image.
Adjacent intervals that are translated by the same amount are always merged,
so two IETs are equal exactly when their canonical data are equal.
"""

from __future__ import annotations

import math
import random
from bisect import bisect_right
from collections import OrderedDict
from fractions import Fraction
from typing import Iterable, Sequence

from .scalar import Scalar, as_scalar, decode_scalar, encode_scalar, qa

__all__ = [
    "Iet",
    "identity",
    "rotation",
    "compose",
    "inverse",
    "power",
    "remember_power",
    "equals",
    "is_identity",
    "distance",
    "support",
    "pointwise_oracle",
    "translation_form",
    "canonical_permutation",
    "is_canonical_permutation",
    "random_iet",
    "random_canonical_permutation",
]

ZERO = Fraction(0)
ONE = Fraction(1)


def translation_form(values: Sequence[Scalar], perm: Sequence[int]) -> tuple:
    """Map a length-like vector to translations: ``sum_{perm[j]<perm[i]} x_j - sum_{j<i} x_j``.

    This is the linear map giving translation lengths from interval lengths,
    and drifting vectors from drifting directions.
    """
    n = len(perm)
    by_image = sorted(range(n), key=lambda i: perm[i])
    image_start = [ZERO] * n
    acc = ZERO
    for i in by_image:
        image_start[i] = acc
        acc = acc + values[i]
    out = []
    acc = ZERO
    for i in range(n):
        out.append(image_start[i] - acc)
        acc = acc + values[i]
    return tuple(out)


def is_canonical_permutation(perm: Sequence[int]) -> bool:
    n = len(perm)
    if sorted(perm) != list(range(1, n + 1)):
        return False
    return all(perm[i + 1] != perm[i] + 1 for i in range(n - 1))


def canonical_permutation(lengths, perm):
    """Merge runs with ``perm[i+1] == perm[i] + 1``; return new lengths and permutation."""
    runs_len = []
    runs_start = []
    for i, (l, p) in enumerate(zip(lengths, perm)):
        if i and p == perm[i - 1] + 1:
            runs_len[-1] = runs_len[-1] + l
        else:
            runs_len.append(l)
            runs_start.append(p)
    order = sorted(runs_start)
    rank = {p: r + 1 for r, p in enumerate(order)}
    return tuple(runs_len), tuple(rank[p] for p in runs_start)


class Iet:
    """Interval exchange transformation of [0, 1).

    Parameters
    ----------
    lengths : sequence of scalars
        Positive lengths of the intervals of continuity, summing to 1.
    perm : sequence of int
        ``perm[i]`` is the image position (1-based) of interval ``i + 1``.

    Non-canonical input is merged on construction.
    """

    __slots__ = ("lengths", "perm", "starts", "translations", "_hash")

    def __init__(self, lengths: Iterable, perm: Iterable[int]):
        lengths = tuple(as_scalar(l) for l in lengths)
        perm = tuple(int(p) for p in perm)
        if len(lengths) != len(perm) or not lengths:
            raise ValueError("lengths and permutation must be nonempty and of equal size")
        if sorted(perm) != list(range(1, len(perm) + 1)):
            raise ValueError(f"{list(perm)} is not a permutation of 1..{len(perm)}")
        if any(not (l > 0) for l in lengths):
            raise ValueError("interval lengths must be strictly positive")
        total = sum(lengths, ZERO)
        if total != 1:
            raise ValueError(f"interval lengths sum to {total}, not 1")
        lengths, perm = canonical_permutation(lengths, perm)
        self.lengths = lengths
        self.perm = perm
        starts = [ZERO]
        for l in lengths[:-1]:
            starts.append(starts[-1] + l)
        self.starts = tuple(starts)
        self.translations = translation_form(lengths, perm)
        self._hash = None

    @classmethod
    def from_pieces(cls, pieces: Sequence[tuple]) -> "Iet":
        """Build from ``(lo, hi, translation)`` pieces sorted by ``lo`` covering [0, 1)."""
        merged: list[list] = []
        for lo, hi, t in pieces:
            if merged and merged[-1][2] == t:
                merged[-1][1] = hi
            else:
                merged.append([lo, hi, t])
        images = sorted(range(len(merged)), key=lambda i: merged[i][0] + merged[i][2])
        perm = [0] * len(merged)
        for rank, i in enumerate(images):
            perm[i] = rank + 1
        return cls([hi - lo for lo, hi, _ in merged], perm)

    # -- structure maps ------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.lengths)

    @property
    def breakpoints(self) -> tuple:
        """Interior points of discontinuity ``(b_1, ..., b_{n-1})``."""
        return self.starts[1:]

    @property
    def discontinuities(self) -> tuple:
        # in merged form every interior breakpoint is a genuine discontinuity
        return self.starts[1:]

    def pieces(self) -> list[tuple]:
        ends = self.starts[1:] + (ONE,)
        return list(zip(self.starts, ends, self.translations))

    def image_breakpoints(self) -> tuple:
        """Interior breakpoints of the image partition, i.e. ``Delta(T^{-1})``."""
        return tuple(sorted(s + t for s, t in zip(self.starts, self.translations)))[1:]

    def structure_maps(self) -> dict:
        return {
            "lengths": self.lengths,
            "breakpoints": self.breakpoints,
            "perm": self.perm,
            "translations": self.translations,
            "discontinuities": self.discontinuities,
        }

    # -- evaluation ----------------------------------------------------------

    def index(self, x: Scalar) -> int:
        """0-based index of the interval of continuity containing ``x``."""
        if not (0 <= x < 1):
            raise ValueError(f"point {x} is outside [0, 1)")
        return bisect_right(self.starts, x) - 1

    def __call__(self, x) -> Scalar:
        x = as_scalar(x)
        return x + self.translations[self.index(x)]

    evaluate = __call__

    def __mul__(self, other: "Iet") -> "Iet":
        return compose(self, other)

    def __pow__(self, m: int) -> "Iet":
        return power(self, m)

    def __invert__(self) -> "Iet":
        return inverse(self)

    def is_identity(self) -> bool:
        return self.n == 1

    def __eq__(self, other):
        if not isinstance(other, Iet):
            return NotImplemented
        return self.perm == other.perm and self.lengths == other.lengths

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.perm, self.lengths))
        return self._hash

    def __repr__(self):
        lengths = ", ".join(str(l) for l in self.lengths)
        return f"Iet([{lengths}], {list(self.perm)})"

    # -- serialisation -------------------------------------------------------

    def to_json(self) -> dict:
        return {"lengths": [encode_scalar(l) for l in self.lengths], "perm": list(self.perm)}

    @classmethod
    def from_json(cls, obj: dict) -> "Iet":
        if not isinstance(obj, dict) or "lengths" not in obj or "perm" not in obj:
            raise ValueError("IET JSON needs 'lengths' and 'perm'")
        return cls([decode_scalar(l) for l in obj["lengths"]], obj["perm"])


def identity() -> Iet:
    return Iet([ONE], [1])


def rotation(angle) -> Iet:
    """Rotation ``x -> x + angle mod 1``; the identity for integer angles."""
    angle = as_scalar(angle)
    angle = angle - math.floor(angle)
    if angle == 0:
        return identity()
    return Iet([1 - angle, angle], [2, 1])


def equals(S: Iet, T: Iet) -> bool:
    return S == T


def is_identity(T: Iet) -> bool:
    return T.is_identity()


def inverse(T: Iet) -> Iet:
    pieces = sorted(
        ((lo + t, hi + t, -t) for lo, hi, t in T.pieces()), key=lambda p: p[0]
    )
    return Iet.from_pieces(pieces)


def compose(S: Iet, T: Iet) -> Iet:
    """Canonical form of ``S o T`` (apply ``T`` first)."""
    starts = S.starts
    ends = starts[1:] + (ONE,)
    st = S.translations
    pieces = []
    for lo, hi, t in T.pieces():
        a, b = lo + t, hi + t
        j = bisect_right(starts, a) - 1
        while True:
            cut = ends[j]
            if cut >= b:
                pieces.append((a - t, hi, t + st[j]))
                break
            pieces.append((a - t, cut - t, t + st[j]))
            a = cut
            j += 1
    return Iet.from_pieces(pieces)


_POWER_CACHE: "OrderedDict[tuple, Iet]" = OrderedDict()
_POWER_CACHE_SIZE = 64


def remember_power(T: Iet, m: int, P: Iet) -> None:
    """Record ``P = T**m`` in the small LRU cache used by :func:`power`."""
    _POWER_CACHE[(T, m)] = P
    _POWER_CACHE.move_to_end((T, m))
    while len(_POWER_CACHE) > _POWER_CACHE_SIZE:
        _POWER_CACHE.popitem(last=False)


def power(T: Iet, m: int) -> Iet:
    """``T**m`` by binary exponentiation; recent results are cached."""
    if m == 0:
        return identity()
    hit = _POWER_CACHE.get((T, m))
    if hit is not None:
        _POWER_CACHE.move_to_end((T, m))
        return hit
    base = T if m > 0 else inverse(T)
    n = abs(m)
    result = None
    while n:
        if n & 1:
            result = base if result is None else compose(result, base)
        n >>= 1
        if n:
            base = compose(base, base)
    remember_power(T, m, result)
    return result


def distance(S: Iet, T: Iet):
    """L1 distance of length vectors for equal permutations, ``math.inf`` otherwise."""
    if S.perm != T.perm:
        return math.inf
    return sum((abs(x - y) for x, y in zip(S.lengths, T.lengths)), ZERO)


def support(T: Iet):
    """Union of the intervals of continuity that are moved."""
    from .sets import IntervalSet

    return IntervalSet([(lo, hi) for lo, hi, t in T.pieces() if t != 0])


def pointwise_oracle(S: Iet, T: Iet) -> bool:
    """Brute-force equality: compare at every common breakpoint and one midpoint per piece."""
    points = sorted(set(S.starts) | set(T.starts))
    ends = points[1:] + [ONE]
    for lo, hi in zip(points, ends):
        for x in (lo, (lo + hi) / 2):
            if S(x) != T(x):
                return False
    return True


def random_canonical_permutation(rng: random.Random, n: int) -> tuple:
    while True:
        perm = list(range(1, n + 1))
        rng.shuffle(perm)
        if is_canonical_permutation(perm):
            return tuple(perm)


def _random_cuts_rational(rng, n, denominator):
    cuts = sorted(rng.sample(range(1, denominator), n - 1))
    return [Fraction(c, denominator) for c in cuts]


def _random_cuts_cubic(rng, n):
    cuts: set = set()
    while len(cuts) < n - 1:
        x = qa(*(Fraction(rng.randint(-40, 40), 40) for _ in range(3)))
        if 0 < x < 1:
            cuts.add(x)
    return sorted(cuts)


def random_iet(
    rng: random.Random, n: int, *, cubic: bool = False, denominator: int | None = None
) -> Iet:
    """Random IET with ``n`` intervals (before merging) and a canonical permutation.

    Rational lengths use a random denominator unless one is given; cubic
    lengths are differences of random points ``r0 + r1*a + r2*a**2`` in (0, 1).
    """
    if n == 1:
        return identity()
    perm = random_canonical_permutation(rng, n)
    if cubic:
        cuts = _random_cuts_cubic(rng, n)
    else:
        if denominator is None:
            denominator = rng.randint(n, 60)
        cuts = _random_cuts_rational(rng, n, denominator)
    points = [ZERO] + cuts + [ONE]
    lengths = [b - a for a, b in zip(points, points[1:])]
    return Iet(lengths, perm)
