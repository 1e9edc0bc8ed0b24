"""Certified relations between a fixed IET ``S`` and perturbed rational IETs.

Starting from a q-rational ``T0`` with admissible permutation, the certifier
drifts ``T0`` to ``T``, forms ``U = [T^e, S T^e S^-1]`` with ``e = q!``, finds
a power ``T^k`` moving the support of ``U`` off itself, and checks that the
nontrivial word ``[u, t^k u t^-k]`` evaluates to the identity on ``(S, T)``.
Everything is exact; a :class:`Certificate` records every parameter and can
be replayed from its JSON form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .drift import (
    DriftData,
    drift_vector,
    drifted_iet,
    find_drift_power,
    find_drifting_direction,
    in_window,
    is_admissible,
)
from .iet import Iet, compose, distance, inverse, pointwise_oracle, power, support
from .rational import is_q_rational
from .scalar import Scalar, as_scalar, decode_scalar, encode_scalar
from .sets import IntervalSet, alpha_q, grid, image_set, neighborhood, x_q
from .words import Word, evaluate_word


class CertificationError(ValueError):
    pass


class NotAdmissible(CertificationError):
    pass


class RationalCase(CertificationError):
    pass


# -- lemma predicates --------------------------------------------------------


def check_small_translations(F: Iet, excluded: IntervalSet, eps) -> bool:
    """On each component of ``[0,1) - excluded`` ``F`` is one translation of length < eps."""
    eps = as_scalar(eps)
    breaks = F.breakpoints
    for lo, hi in excluded.complement():
        if any(lo < b < hi for b in breaks):
            return False
        if not abs(F.translations[F.index(lo)]) < eps:
            return False
    return True


def commutator_u(S: Iet, T: Iet, e: int) -> Iet:
    """``T^e o (S T^e S^-1) o T^-e o (S T^-e S^-1)``."""
    if e < 1:
        raise ValueError("exponent must be positive")
    Te = power(T, e)
    Te_inv = inverse(Te)
    S_inv = inverse(S)
    conj = compose(S, compose(Te, S_inv))
    conj_inv = compose(S, compose(Te_inv, S_inv))
    return compose(Te, compose(conj, compose(Te_inv, conj_inv)))


def disjoint_support_commutation(U: Iet, V: Iet) -> bool:
    """True iff the supports are disjoint; then ``UV = VU`` is verified as well."""
    if not support(U).isdisjoint(support(V)):
        return False
    if compose(U, V) != compose(V, U):
        raise AssertionError("IETs with disjoint supports failed to commute")
    return True


def in_V_ball(T: Iet, center: Iet, mu) -> bool:
    """``T`` lies in the open ``mu``-ball around ``center`` (same permutation)."""
    return distance(T, center) < as_scalar(mu)


# -- words -------------------------------------------------------------------


def u_word(e: int) -> Word:
    """``t^e r t^e r^-1 t^-e r t^-e r^-1``, the word of ``U``."""
    return Word([("t", e), ("r", 1), ("t", e), ("r", -1), ("t", -e), ("r", 1), ("t", -e), ("r", -1)])


def w_word(e: int, k: int) -> Word:
    """``u t^k u t^-k u^-1 t^k u^-1 t^-k``, freely reduced."""
    u = u_word(e)
    tk = Word([("t", k)])
    return u * tk * u * ~tk * ~u * tk * ~u * ~tk


# -- parameter schedule ------------------------------------------------------


@dataclass(frozen=True)
class Parameters:
    delta: Scalar
    eps: Scalar
    eta: Scalar
    theta: Scalar
    mu: Scalar

    def as_dict(self) -> dict:
        return {
            "delta": self.delta,
            "epsilon": self.eps,
            "eta": self.eta,
            "theta": self.theta,
            "mu": self.mu,
        }


def choose_parameters(S: Iet, q: int, drift: DriftData) -> Parameters:
    """Each parameter is half of its strict upper bound, starting from ``delta = alpha_q(S)/2``."""
    alpha = alpha_q(S, q)
    if alpha == 0:
        raise RationalCase(f"S is {q}-rational: rational case delegated")
    fact = math.factorial(q)
    delta = alpha / 2
    eps = delta / (11 * drift.ratio) / 2
    eta = eps / (4 * fact) / 2
    theta = min(eps / drift.v_min, eta / (2 * drift.l1_norm)) / 2
    mu = min(theta * drift.v_min / 4, eta / 2) / 2
    params = Parameters(delta, eps, eta, theta, mu)
    if not schedule_holds(params, alpha, q, drift):
        raise AssertionError("parameter schedule violated")
    return params


def schedule_holds(p: Parameters, alpha, q: int, drift: DriftData) -> bool:
    fact = math.factorial(q)
    return all(
        [
            0 < p.delta < alpha,
            0 < p.eps < p.delta / (11 * drift.ratio),
            0 < p.eta < p.eps / (4 * fact),
            0 < p.theta < min(p.eps / drift.v_min, p.eta / (2 * drift.l1_norm)),
            0 < p.mu < min(p.theta * drift.v_min / 4, p.eta / 2),
        ]
    )


# -- certificate -------------------------------------------------------------

CHECK_NAMES = (
    "schedule",
    "distance_T_T0_lt_eta",
    "small_translations",
    "support_in_neighborhood",
    "drift_window",
    "drift_disjoint",
    "disjoint_commutation",
    "word_reduced_nonempty",
    "word_identity_equals",
    "word_identity_oracle",
)


@dataclass
class Certificate:
    q: int
    S: Iet
    T0: Iet
    T: Iet
    params: Parameters
    drift: DriftData
    k: int
    word: Word
    word_kind: str
    checks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "S": self.S.to_json(),
            "T0": self.T0.to_json(),
            "T": self.T.to_json(),
            **{name: encode_scalar(v) for name, v in self.params.as_dict().items()},
            "drift": self.drift.to_json(),
            "k": self.k,
            "word_kind": self.word_kind,
            "word": self.word.to_json(),
            "checks": dict(self.checks),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Certificate":
        try:
            params = Parameters(
                decode_scalar(obj["delta"]),
                decode_scalar(obj["epsilon"]),
                decode_scalar(obj["eta"]),
                decode_scalar(obj["theta"]),
                decode_scalar(obj["mu"]),
            )
            q, k = obj["q"], obj["k"]
            if not isinstance(q, int) or not isinstance(k, int):
                raise ValueError("q and k must be integers")
            return cls(
                q=q,
                S=Iet.from_json(obj["S"]),
                T0=Iet.from_json(obj["T0"]),
                T=Iet.from_json(obj["T"]),
                params=params,
                drift=DriftData.from_json(obj["drift"]),
                k=k,
                word=Word.from_json(obj["word"]),
                word_kind=obj["word_kind"],
                checks=dict(obj.get("checks", {})),
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed certificate: {exc}") from exc


def _run_checks(S, T0, T, q, params, drift, k, word) -> dict:
    e = math.factorial(q)
    alpha = alpha_q(S, q)
    eps = params.eps
    U = commutator_u(S, T, e)
    supp = support(U)
    Tk = power(T, k)
    V = compose(Tk, compose(U, inverse(Tk)))
    relation = evaluate_word(word, S, T)
    return {
        "schedule": schedule_holds(params, alpha, q, drift),
        "distance_T_T0_lt_eta": distance(T, T0) < params.eta,
        "small_translations": check_small_translations(power(T, e), neighborhood(grid(q), eps), eps),
        "support_in_neighborhood": supp <= neighborhood(x_q(S, q), eps),
        "drift_window": in_window(Tk, q, 2 * eps, params.delta - 2 * eps),
        "drift_disjoint": image_set(Tk, supp).isdisjoint(supp),
        "disjoint_commutation": U.is_identity() or disjoint_support_commutation(U, V),
        "word_reduced_nonempty": word.is_reduced() and not word.is_trivial(),
        "word_identity_equals": relation.is_identity(),
        "word_identity_oracle": pointwise_oracle(relation, Iet([1], [1])),
    }


def certify_relation(S: Iet, T0: Iet, q: int) -> Certificate:
    """Build and check a nontrivial relation between ``S`` and a drift of ``T0``."""
    if q < 1:
        raise CertificationError("q must be positive")
    if not is_q_rational(T0, q):
        raise CertificationError(f"T0 is not {q}-rational")
    if not is_admissible(T0.perm):
        raise NotAdmissible(f"permutation {list(T0.perm)} of T0 is not admissible")
    drift = find_drifting_direction(T0.perm)
    if drift is None:
        raise NotAdmissible(f"permutation {list(T0.perm)} of T0 is not driftable")
    params = choose_parameters(S, q, drift)
    T = drifted_iet(T0, drift.direction, params.theta)
    e = math.factorial(q)
    k = find_drift_power(T, q, params.eps, params.delta, drift=drift, theta=params.theta)
    U = commutator_u(S, T, e)
    if U.is_identity():
        word, kind = u_word(e), "u"
    else:
        word, kind = w_word(e, k), "w"
    checks = _run_checks(S, T0, T, q, params, drift, k, word)
    cert = Certificate(q, S, T0, T, params, drift, k, word, kind, checks)
    if not cert.passed:
        failed = [name for name, ok in checks.items() if not ok]
        raise CertificationError(f"certificate checks failed: {failed}")
    return cert


def verify_certificate(cert: Certificate) -> dict:
    """Replay a certificate from scratch; every entry of the result must be True.

    Stored parameters must coincide with the ones recomputed from ``S``,
    ``T0`` and ``q``, and stored check flags must agree with the replay.
    """
    out: dict[str, bool] = {}
    q, S, T0 = cert.q, cert.S, cert.T0
    d = cert.drift
    out["T0_q_rational"] = q >= 1 and is_q_rational(T0, q)
    out["T0_admissible"] = is_admissible(T0.perm)
    out["drift_consistent"] = (
        len(d.direction) == T0.n
        and sum(d.direction, Fraction(0)) == 0
        and d.vector == drift_vector(d.direction, T0.perm)
        and all(v > 0 for v in d.vector)
    )
    if not all(out.values()):
        return out
    expected_drift = find_drifting_direction(T0.perm)
    out["drift_matches"] = expected_drift == d
    try:
        params = choose_parameters(S, q, d)
    except CertificationError:
        out["params_match"] = False
        return out
    out["params_match"] = params == cert.params
    T = drifted_iet(T0, d.direction, params.theta)
    out["T_matches"] = T == cert.T
    if cert.k < 1:
        out["k_matches"] = False
        return out
    e = math.factorial(q)
    k = None
    # after a mismatch the power search could run to a huge cap for nothing
    if out["params_match"] and out["T_matches"]:
        try:
            k = find_drift_power(T, q, params.eps, params.delta, drift=d, theta=params.theta)
        except ValueError:
            pass
    out["k_matches"] = k == cert.k
    U = commutator_u(S, T, e)
    kind = "u" if U.is_identity() else "w"
    out["word_kind_matches"] = kind == cert.word_kind
    expected_word = u_word(e) if kind == "u" else w_word(e, cert.k)
    out["word_matches"] = expected_word == cert.word
    checks = _run_checks(S, T0, cert.T, q, cert.params, d, cert.k, cert.word)
    out.update(checks)
    out["stored_checks_match"] = cert.checks == checks
    return out


def lemma_power_window(cert: Certificate) -> bool:
    """The drift-power window ``[2 eps, delta - 2 eps]`` mod ``1/q`` checked on ``T^k``."""
    Tk = power(cert.T, cert.k)
    return in_window(Tk, cert.q, 2 * cert.params.eps, cert.params.delta - 2 * cert.params.eps)
