"""
Expected utility under the three belief representations and act selection.
"""

from engine.decision.expected_utility import eu_first_order, eu_joint, eu_second_order
from engine.decision.selection import ActSelector, compare_modes, optimal_acts

__all__ = ['eu_first_order', 'eu_second_order', 'eu_joint', 'ActSelector', 'optimal_acts', 'compare_modes']
