"""Admissibility, drifting directions and drift powers.

A drifting direction for a permutation is a zero-sum change ``d`` of the
lengths whose induced change ``v`` of every translation length is positive.
Directions are found by exact Fourier-Motzkin elimination over Q on the
system ``sum(d) = 0, v_i(d) >= 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .iet import Iet, compose, remember_power, translation_form
from .scalar import Scalar, as_scalar, decode_scalar, encode_scalar
from .sets import mod_q


class DriftPowerError(ValueError):
    """No power of ``T`` lands its translations in the requested window."""


class ThetaTooLarge(ValueError):
    pass


def is_admissible(perm: Sequence[int]) -> bool:
    """False iff some ``k`` has ``perm[k] = k`` and ``perm({1..k}) = {1..k}``."""
    top = 0
    for k, p in enumerate(perm, start=1):
        top = max(top, p)
        if p == k and top == k:
            return False
    return True


@dataclass(frozen=True)
class DriftData:
    direction: tuple
    vector: tuple

    @property
    def ratio(self) -> Scalar:
        return max(self.vector) / min(self.vector)

    @property
    def v_min(self) -> Scalar:
        return min(self.vector)

    @property
    def v_max(self) -> Scalar:
        return max(self.vector)

    @property
    def l1_norm(self) -> Scalar:
        return sum((abs(x) for x in self.direction), Fraction(0))

    def to_json(self) -> dict:
        return {
            "direction": [encode_scalar(x) for x in self.direction],
            "vector": [encode_scalar(x) for x in self.vector],
            "ratio": encode_scalar(self.ratio),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "DriftData":
        return cls(
            tuple(decode_scalar(x) for x in obj["direction"]),
            tuple(decode_scalar(x) for x in obj["vector"]),
        )


def drift_vector(direction: Sequence, perm: Sequence[int]) -> tuple:
    return translation_form([as_scalar(x) for x in direction], perm)


def is_drifting(direction: Sequence, perm: Sequence[int]) -> bool:
    if sum(direction, Fraction(0)) != 0:
        return False
    return all(v > 0 for v in drift_vector(direction, perm))


# -- Fourier-Motzkin --------------------------------------------------------
# A constraint is (coeffs, rhs) meaning sum(coeffs[j] * x[j]) >= rhs.


def _eliminate(constraints, var):
    pos, neg, rest = [], [], []
    for c in constraints:
        coeff = c[0][var]
        if coeff > 0:
            pos.append(c)
        elif coeff < 0:
            neg.append(c)
        else:
            rest.append(c)
    for pc, prhs in pos:
        for nc, nrhs in neg:
            a, b = pc[var], -nc[var]
            coeffs = tuple(b * x + a * y for x, y in zip(pc, nc))
            rest.append((coeffs, b * prhs + a * nrhs))
    return _dedupe(rest)


def _dedupe(constraints):
    seen = {}
    for coeffs, rhs in constraints:
        scale = next((abs(c) for c in coeffs if c), None)
        if scale is None:
            key = (coeffs, rhs)
        else:
            key = (tuple(c / scale for c in coeffs), rhs / scale)
        # for identical left-hand sides only the tightest bound matters
        lhs, r = key
        if lhs not in seen or r > seen[lhs]:
            seen[lhs] = r
    return [(lhs, r) for lhs, r in seen.items()]


def _bounds(constraints, var, values):
    lower, upper = None, None
    for coeffs, rhs in constraints:
        c = coeffs[var]
        if not c:
            continue
        rest = rhs - sum(coeffs[j] * values[j] for j in values)
        bound = rest / c
        if c > 0:
            lower = bound if lower is None else max(lower, bound)
        else:
            upper = bound if upper is None else min(upper, bound)
    return lower, upper


def fourier_motzkin(constraints, nvars: int) -> Optional[tuple]:
    """Find a point with ``A x >= b`` or return ``None`` when infeasible.

    Variables are eliminated in index order; back-substitution picks the
    midpoint of two finite bounds, the single finite bound otherwise, or 0.
    """
    constraints = _dedupe([(tuple(Fraction(c) for c in a), Fraction(b)) for a, b in constraints])
    stages = [constraints]
    for var in range(nvars):
        stages.append(_eliminate(stages[-1], var))
    if any(rhs > 0 for _, rhs in stages[-1]):
        return None
    values: dict[int, Fraction] = {}
    for var in reversed(range(nvars)):
        lower, upper = _bounds(stages[var], var, values)
        if lower is not None and upper is not None:
            if lower > upper:
                return None
            values[var] = (lower + upper) / 2
        elif lower is not None:
            values[var] = lower
        elif upper is not None:
            values[var] = upper
        else:
            values[var] = Fraction(0)
    return tuple(values[j] for j in range(nvars))


def find_drifting_direction(perm: Sequence[int]) -> Optional[DriftData]:
    """Drifting data for ``perm`` normalised to ``max|d_i| = 1``, or ``None``."""
    n = len(perm)
    if n < 2:
        return None
    # substitute d_n = -(d_1 + ... + d_{n-1}); each v_i is linear in d_1..d_{n-1}
    basis = []
    for j in range(n - 1):
        e = [Fraction(0)] * n
        e[j] = Fraction(1)
        e[n - 1] = Fraction(-1)
        basis.append(translation_form(e, perm))
    constraints = [(tuple(basis[j][i] for j in range(n - 1)), 1) for i in range(n)]
    sol = fourier_motzkin(constraints, n - 1)
    if sol is None:
        return None
    d = list(sol) + [-sum(sol, Fraction(0))]
    scale = max(abs(x) for x in d)
    d = tuple(x / scale for x in d)
    return DriftData(d, drift_vector(d, perm))


def drifted_iet(T0: Iet, u: Sequence, theta) -> Iet:
    """IET with the permutation of ``T0`` and lengths ``lambda(T0) + theta*u``."""
    theta = as_scalar(theta)
    u = [as_scalar(x) for x in u]
    if len(u) != T0.n:
        raise ValueError("direction has the wrong dimension")
    if sum(u, Fraction(0)) != 0:
        raise ValueError("direction must sum to zero")
    lengths = [l + theta * x for l, x in zip(T0.lengths, u)]
    if any(not (l > 0) for l in lengths):
        raise ThetaTooLarge("theta too large: a length became nonpositive")
    out = Iet(lengths, T0.perm)
    if out.perm != T0.perm:
        raise ValueError("drifted IET changed permutation")
    return out


def in_window(T: Iet, q: int, low, high) -> bool:
    """All translation lengths of ``T`` reduced mod ``1/q`` lie in ``[low, high]``."""
    return all(low <= mod_q(t, q) <= high for t in T.translations)


def find_drift_power(
    T: Iet,
    q: int,
    eps,
    alpha,
    *,
    drift: Optional[DriftData] = None,
    theta=None,
    cap: Optional[int] = None,
) -> int:
    """Smallest ``k >= 1`` such that the translations of ``T^k`` lie in ``[2 eps, alpha - 2 eps]`` mod ``1/q``."""
    eps, alpha = as_scalar(eps), as_scalar(alpha)
    low, high = 2 * eps, alpha - 2 * eps
    if not low < high:
        raise DriftPowerError("empty drift window: need eps < alpha / 4")
    if cap is None:
        if drift is not None and theta is not None:
            cap = math.ceil(10 / (as_scalar(theta) * drift.v_min))
        else:
            cap = 10 * q * math.factorial(T.n)
    P = T
    for k in range(1, cap + 1):
        if in_window(P, q, low, high):
            remember_power(T, k, P)
            return k
        P = compose(P, T)
    raise DriftPowerError(f"no drift power found up to k = {cap}")
