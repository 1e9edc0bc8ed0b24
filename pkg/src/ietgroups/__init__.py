"""Exact interval exchange transformations and certified relations in their groups."""

from .aiet import Aiet, aiet_compose, aiet_image_set, aiet_inverse, pingpong_check, standard_pingpong_pair
from .drift import DriftData, find_drift_power, find_drifting_direction, is_admissible
from .iet import Iet, compose, distance, identity, inverse, pointwise_oracle, power, rotation, support
from .rational import arnoux_yoccoz, ay_sweep, is_q_rational, nearest_q_rational, order
from .relation import Certificate, certify_relation, verify_certificate
from .scalar import A, Qa, qa
from .sets import IntervalSet, alpha_q, neighborhood, x_q, y_q, z_q
from .words import Word, evaluate_word

__version__ = "0.1.0"

__all__ = [
    "A",
    "Aiet",
    "Certificate",
    "DriftData",
    "Iet",
    "IntervalSet",
    "Qa",
    "Word",
    "aiet_compose",
    "aiet_image_set",
    "aiet_inverse",
    "alpha_q",
    "arnoux_yoccoz",
    "ay_sweep",
    "certify_relation",
    "compose",
    "distance",
    "evaluate_word",
    "find_drift_power",
    "find_drifting_direction",
    "identity",
    "inverse",
    "is_admissible",
    "is_q_rational",
    "nearest_q_rational",
    "neighborhood",
    "order",
    "pingpong_check",
    "pointwise_oracle",
    "power",
    "qa",
    "rotation",
    "standard_pingpong_pair",
    "support",
    "verify_certificate",
    "x_q",
    "y_q",
    "z_q",
]
