"""
Finite distributions, events and conditioning.
"""

from engine.core.distributions import (
    condition,
    conditional_probability,
    event_probability,
    validate_distribution,
)

__all__ = ['validate_distribution', 'event_probability', 'condition', 'conditional_probability']
