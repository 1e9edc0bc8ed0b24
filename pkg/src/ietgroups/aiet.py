"""Affine interval exchanges over Q and the ping-pong certificate for free pairs.

An AIET is a right-continuous bijection of [0, 1) that is affine with
positive slope on each of finitely many half-open pieces.  Pieces are stored
as ``(lo, hi, slope, offset)`` meaning ``x -> slope*x + offset`` on
``[lo, hi)``; adjacent pieces carrying the same affine map are merged, so
equality of AIETs is equality of piece tuples.
"""

from __future__ import annotations

import itertools
from bisect import bisect_right
from fractions import Fraction
from typing import Iterable, Iterator

from .iet import Iet
from .sets import IntervalSet

__all__ = [
    "Aiet",
    "aiet_identity",
    "aiet_evaluate",
    "aiet_inverse",
    "aiet_compose",
    "aiet_image_set",
    "from_iet",
    "pingpong_check",
    "pingpong_report",
    "standard_pingpong_pair",
    "reduced_words",
    "evaluate_aiet_word",
]

ZERO = Fraction(0)
ONE = Fraction(1)


def _frac(x) -> Fraction:
    if isinstance(x, bool):
        raise ValueError("booleans are not rationals")
    try:
        return Fraction(x)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"AIET data must be rational, got {x!r}") from exc


class Aiet:
    __slots__ = ("pieces", "_starts")

    def __init__(self, pieces: Iterable[tuple]):
        raw = [tuple(_frac(v) for v in piece) for piece in pieces]
        if any(len(p) != 4 for p in raw):
            raise ValueError("each piece is (lo, hi, slope, offset)")
        raw.sort(key=lambda p: p[0])
        if not raw or raw[0][0] != 0 or raw[-1][1] != 1:
            raise ValueError("piece domains must cover [0, 1)")
        for (lo, hi, slope, _), nxt in zip(raw, raw[1:] + [None]):
            if not lo < hi:
                raise ValueError(f"empty piece domain [{lo}, {hi})")
            if slope <= 0:
                raise ValueError("slopes must be positive")
            if nxt is not None and nxt[0] != hi:
                raise ValueError("piece domains must partition [0, 1)")
        images = sorted((s * lo + b, s * hi + b) for lo, hi, s, b in raw)
        if images[0][0] != 0 or images[-1][1] != 1 or any(a[1] != b[0] for a, b in zip(images, images[1:])):
            raise ValueError("piece images must partition [0, 1): not a bijection")
        merged: list[tuple] = []
        for lo, hi, s, b in raw:
            if merged and merged[-1][2] == s and merged[-1][3] == b:
                merged[-1] = (merged[-1][0], hi, s, b)
            else:
                merged.append((lo, hi, s, b))
        self.pieces = tuple(merged)
        self._starts = [p[0] for p in merged]

    def __call__(self, x) -> Fraction:
        x = _frac(x)
        if not 0 <= x < 1:
            raise ValueError(f"point {x} outside [0, 1)")
        _, _, s, b = self.pieces[bisect_right(self._starts, x) - 1]
        return s * x + b

    def is_identity(self) -> bool:
        return self.pieces == ((ZERO, ONE, ONE, ZERO),)

    def __eq__(self, other):
        if not isinstance(other, Aiet):
            return NotImplemented
        return self.pieces == other.pieces

    def __hash__(self):
        return hash(self.pieces)

    def __repr__(self):
        body = ", ".join(f"[{lo}, {hi}) -> {s}x + {b}" for lo, hi, s, b in self.pieces)
        return f"Aiet({body})"

    def __matmul__(self, other: "Aiet") -> "Aiet":
        return aiet_compose(self, other)

    def inverse(self) -> "Aiet":
        return aiet_inverse(self)

    def to_json(self) -> dict:
        return {
            "pieces": [
                {"lo": str(lo), "hi": str(hi), "slope": str(s), "offset": str(b)} for lo, hi, s, b in self.pieces
            ]
        }

    @classmethod
    def from_json(cls, obj) -> "Aiet":
        if not isinstance(obj, dict) or not isinstance(obj.get("pieces"), list):
            raise ValueError('AIET JSON must be {"pieces": [...]}')
        try:
            return cls((p["lo"], p["hi"], p["slope"], p["offset"]) for p in obj["pieces"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed AIET piece: {exc}") from exc


def aiet_identity() -> Aiet:
    return Aiet([(0, 1, 1, 0)])


def aiet_evaluate(F: Aiet, x) -> Fraction:
    return F(x)


def aiet_inverse(F: Aiet) -> Aiet:
    return Aiet((s * lo + b, s * hi + b, 1 / s, -b / s) for lo, hi, s, b in F.pieces)


def aiet_compose(F: Aiet, G: Aiet) -> Aiet:
    """``F o G``: pieces of ``G`` are cut where their images cross breakpoints of ``F``."""
    out = []
    starts = F._starts
    for lo, hi, s, b in G.pieces:
        y0, y1 = s * lo + b, s * hi + b
        i = bisect_right(starts, y0) - 1
        while y0 < y1:
            flo, fhi, fs, fb = F.pieces[i]
            top = min(fhi, y1)
            out.append(((y0 - b) / s, (top - b) / s, fs * s, fs * b + fb))
            y0 = top
            i += 1
    return Aiet(out)


def aiet_image_set(F: Aiet, A: IntervalSet) -> IntervalSet:
    """Exact image: each fragment of ``A`` inside one piece maps affinely."""
    out = []
    for lo, hi, s, b in F.pieces:
        for a0, a1 in A & IntervalSet([(lo, hi)]):
            out.append((s * a0 + b, s * a1 + b))
    return IntervalSet(out)


def from_iet(T: Iet) -> Aiet:
    """Embed a rational IET as an AIET with all slopes 1."""
    return Aiet((lo, hi, 1, t) for lo, hi, t in T.pieces())


# -- ping-pong ---------------------------------------------------------------


def pingpong_report(f: Aiet, g: Aiet, V: IntervalSet, W: IntervalSet, X: IntervalSet, Y: IntervalSet) -> dict:
    sets = (V, W, X, Y)
    full = IntervalSet.full()
    union = IntervalSet()
    for A in sets:
        union = union | A
    return {
        "nonempty": all(not A.is_empty() for A in sets),
        "pairwise_disjoint": all(A.isdisjoint(B) for A, B in itertools.combinations(sets, 2)),
        "union_proper": union != full,
        "f_out_of_V_into_W": aiet_image_set(f, full - V) <= W,
        "f_inv_out_of_W_into_V": aiet_image_set(aiet_inverse(f), full - W) <= V,
        "g_out_of_X_into_Y": aiet_image_set(g, full - X) <= Y,
        "g_inv_out_of_Y_into_X": aiet_image_set(aiet_inverse(g), full - Y) <= X,
    }


def pingpong_check(f: Aiet, g: Aiet, V: IntervalSet, W: IntervalSet, X: IntervalSet, Y: IntervalSet) -> bool:
    """Exact check of the four trapping inclusions; when True, ``<f, g>`` is free of rank 2."""
    return all(pingpong_report(f, g, V, W, X, Y).values())


def standard_pingpong_pair() -> tuple:
    """A fixed rational pair ``(f, g, V, W, X, Y)`` passing :func:`pingpong_check`.

    ``f`` expands ``V`` onto the complement of ``W`` with two pieces and
    squeezes the rest into ``W``; ``g`` does the same for ``X`` and ``Y``.
    """
    F = Fraction
    V = IntervalSet([(0, F(1, 5))])
    W = IntervalSet([(F(7, 10), F(4, 5))])
    X = IntervalSet([(F(2, 5), F(1, 2))])
    Y = IntervalSet([(F(9, 10), 1)])
    f = Aiet(
        [
            (0, F(7, 45), F(9, 2), 0),
            (F(7, 45), F(1, 5), F(9, 2), F(1, 10)),
            (F(1, 5), 1, F(1, 8), F(27, 40)),
        ]
    )
    g = Aiet(
        [
            (0, F(2, 5), F(1, 9), F(9, 10)),
            (F(2, 5), F(1, 2), 9, F(-18, 5)),
            (F(1, 2), 1, F(1, 9), F(8, 9)),
        ]
    )
    return f, g, V, W, X, Y


# A word is a tuple of (letter, +-1) with letters "f" and "g".


def reduced_words(max_length: int) -> Iterator[tuple]:
    """All nonempty freely reduced words in ``f, g`` up to ``max_length``."""
    gens = (("f", 1), ("f", -1), ("g", 1), ("g", -1))
    layer = [(x,) for x in gens]
    for _ in range(max_length):
        yield from layer
        layer = [w + (x,) for w in layer for x in gens if x != (w[-1][0], -w[-1][1])]


def evaluate_aiet_word(word: Iterable[tuple], f: Aiet, g: Aiet) -> Aiet:
    """Compose the letters; the rightmost letter acts first."""
    table = {("f", 1): f, ("f", -1): aiet_inverse(f), ("g", 1): g, ("g", -1): aiet_inverse(g)}
    result = aiet_identity()
    for x in word:
        result = aiet_compose(result, table[x])
    return result
