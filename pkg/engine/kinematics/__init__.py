"""
Belief change: Jeffrey's rule, rigidity and the C3 constraint.
"""

from engine.kinematics.constraints import c3_conditionals, c3_deviation
from engine.kinematics.jeffrey import jeffrey_update, verify_rigidity

__all__ = ['jeffrey_update', 'verify_rigidity', 'c3_conditionals', 'c3_deviation']
