"""q-rational IETs, nearest q-rational approximation and the Arnoux-Yoccoz sweep."""

from __future__ import annotations

import csv
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .iet import Iet, compose, rotation
from .scalar import A, Scalar, floor, format_scalar, to_decimal


class NotQRational(ValueError):
    pass


def is_q_rational(T: Iet, q: int) -> bool:
    return all((b * q).denominator == 1 if isinstance(b, Fraction) else False for b in T.breakpoints)


@dataclass(frozen=True)
class GridPermutation:
    """Action of a q-rational IET on the cells ``[i/q, (i+1)/q)``, indexed from 0."""

    q: int
    images: tuple

    def cycles(self) -> list[tuple]:
        seen = [False] * self.q
        out = []
        for start in range(self.q):
            if seen[start]:
                continue
            cyc = []
            i = start
            while not seen[i]:
                seen[i] = True
                cyc.append(i)
                i = self.images[i]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles()))


def grid_permutation(T: Iet, q: int) -> GridPermutation:
    if not is_q_rational(T, q):
        raise NotQRational(f"IET is not {q}-rational")
    images = []
    for cell in range(q):
        t = T.translations[T.index(Fraction(cell, q))]
        images.append(cell + int(t * q))
    return GridPermutation(q, tuple(images))


def order(T0: Iet, q: int) -> int:
    """Order of a q-rational IET: lcm of the cycle lengths of its grid permutation."""
    return grid_permutation(T0, q).order()


def _cost(l: Scalar, p: int, q: int) -> Scalar:
    return abs(l - Fraction(p, q))


def nearest_q_rational(S: Iet, q: int) -> tuple[Iet, Scalar]:
    """Closest IET with the permutation of ``S`` and all lengths in ``(1/q)N``.

    Minimises the L1 distance of length vectors over integer numerators
    ``p_i >= 1`` with ``sum p_i = q``.  Per-coordinate rounding followed by
    greedy unit repairs is exact for this separable convex objective.
    """
    n = S.n
    if q < n:
        raise ValueError(f"q = {q} is smaller than the number of intervals {n}")
    lengths = S.lengths
    p = [max(1, floor(l * q + Fraction(1, 2))) for l in lengths]
    while sum(p) != q:
        step = 1 if sum(p) < q else -1
        best, best_gain = None, None
        for i, l in enumerate(lengths):
            if p[i] + step < 1:
                continue
            gain = _cost(l, p[i] + step, q) - _cost(l, p[i], q)
            if best is None or gain < best_gain:
                best, best_gain = i, gain
        p[best] += step
    T0 = Iet([Fraction(x, q) for x in p], S.perm)
    delta = sum((_cost(l, x, q) for l, x in zip(lengths, p)), Fraction(0))
    return T0, delta


def nearest_q_rational_exhaustive(S: Iet, q: int) -> Scalar:
    """Brute-force minimum over all compositions of ``q`` into ``n`` positive parts."""
    n = S.n
    best = None
    for cuts in itertools.combinations(range(1, q), n - 1):
        parts = [b - a for a, b in zip((0,) + cuts, cuts + (q,))]
        d = sum((_cost(l, x, q) for l, x in zip(S.lengths, parts)), Fraction(0))
        if best is None or d < best:
            best = d
    return best


def arnoux_yoccoz() -> tuple[Iet, Iet, Iet]:
    """The IETs ``g``, ``h`` and ``f = h o g`` over Q(a)."""
    a, a2, a3 = A, A**2, A**3
    g = Iet([a / 2, a / 2, a2 / 2, a2 / 2, a3 / 2, a3 / 2], [2, 1, 4, 3, 6, 5])
    h = rotation(Fraction(1, 2))
    return g, h, compose(h, g)


@dataclass(frozen=True)
class SweepRow:
    q: int
    delta: Scalar
    order: int
    bound: Scalar

    @property
    def bound_lt_1(self) -> bool:
        return self.bound < 1

    def consistent(self) -> bool:
        return self.bound == 40 * self.q * (self.order + 2) * self.delta

    def csv_row(self, digits: int = 30) -> list:
        return [
            self.q,
            format_scalar(self.delta),
            str(to_decimal(self.delta, digits)),
            self.order,
            format_scalar(self.bound),
            str(to_decimal(self.bound, digits)),
            str(self.bound_lt_1).lower(),
        ]


CSV_COLUMNS = ["q", "delta_exact", "delta_decimal", "order", "bound_exact", "bound_decimal", "bound_lt_1"]


def sweep_row(f: Iet, q: int) -> SweepRow:
    T0, delta = nearest_q_rational(f, q)
    o = order(T0, q)
    return SweepRow(q, delta, o, 40 * q * (o + 2) * delta)


def _row_for(q: int) -> SweepRow:
    return sweep_row(arnoux_yoccoz()[2], q)


def ay_sweep(q_min: int, q_max: int, *, jobs: int = 1) -> list[SweepRow]:
    """Nearest q-rational approximation of the Arnoux-Yoccoz ``f`` for each q."""
    if q_min < 7:
        raise ValueError("q_min must be at least 7 (f has 7 intervals)")
    qs = range(q_min, q_max + 1)
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_row_for, qs, chunksize=32))
    f = arnoux_yoccoz()[2]
    return [sweep_row(f, q) for q in qs]


def write_csv(rows: Iterable[SweepRow], fh) -> None:
    writer = csv.writer(fh)
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(row.csv_row())


def _svg_scatter(xs: Sequence[float], ys: Sequence[float], title: str, ylabel: str) -> str:
    width, height, pad = 640, 400, 50
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(min(ys), 0.0), max(ys)
    if x1 == x0:
        x1 = x0 + 1
    if y1 == y0:
        y1 = y0 + 1

    def sx(x):
        return pad + (x - x0) / (x1 - x0) * (width - 2 * pad)

    def sy(y):
        return height - pad - (y - y0) / (y1 - y0) * (height - 2 * pad)

    dots = "\n".join(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="1.2"/>' for x, y in zip(xs, ys))
    return f"""<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">
<rect width="100%" height="100%" fill="white"/>
<text x="{width / 2}" y="20" text-anchor="middle" font-size="14">{title}</text>
<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="black"/>
<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>
<text x="{pad}" y="{height - pad + 16}" font-size="10">{x0:g}</text>
<text x="{width - pad}" y="{height - pad + 16}" font-size="10" text-anchor="end">{x1:g}</text>
<text x="{pad - 4}" y="{height - pad}" font-size="10" text-anchor="end">{y0:.3g}</text>
<text x="{pad - 4}" y="{pad + 4}" font-size="10" text-anchor="end">{y1:.3g}</text>
<text x="{width / 2}" y="{height - 10}" text-anchor="middle" font-size="12">q</text>
<text x="14" y="{height / 2}" font-size="12" transform="rotate(-90 14 {height / 2})" text-anchor="middle">{ylabel}</text>
<g fill="steelblue">
{dots}
</g>
</svg>
"""


def write_svgs(rows: Sequence[SweepRow], directory) -> list:
    """Write ``delta.svg``, ``order.svg`` and ``bound.svg`` scatter plots."""
    from pathlib import Path

    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    qs = [r.q for r in rows]
    plots = {
        "delta.svg": ([float(to_decimal(r.delta, 17)) for r in rows], "distance to closest q-rational IET", "delta(q)"),
        "order.svg": ([float(r.order) for r in rows], "order of closest q-rational IET", "o(q)"),
        "bound.svg": ([float(to_decimal(r.bound, 17)) for r in rows], "bound 40 q (o + 2) delta", "b(q)"),
    }
    written = []
    for name, (ys, title, label) in plots.items():
        path = out / name
        path.write_text(_svg_scatter(qs, ys, title, label))
        written.append(path)
    return written
