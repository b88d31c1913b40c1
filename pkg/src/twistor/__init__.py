"""Twistor module initialization."""

from .incidence import (
    IncidenceContext,
    TARGET_NAMES,
    incidence_pullback,
    pi_degree,
    bidegree,
    bidegree_law,
    expected_commutator,
    fibre_coordinate,
    twistor_commutator_check,
    twistor_star_exp,
    twistor_oracle_check,
    specialize_pi,
    x_form,
)

__all__ = [
    'IncidenceContext', 'TARGET_NAMES', 'incidence_pullback', 'pi_degree', 'bidegree', 'bidegree_law',
    'expected_commutator', 'fibre_coordinate', 'twistor_commutator_check', 'twistor_star_exp',
    'twistor_oracle_check', 'specialize_pi', 'x_form',
]
