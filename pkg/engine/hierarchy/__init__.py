"""
Second-order structure: predictive, coherence, flattening and marginals.
"""

from engine.hierarchy.coherence import coherence_check, predictive
from engine.hierarchy.joint import (
    condition_joint,
    flatten,
    is_product_form,
    marginal_model,
    marginal_world,
    model_event,
    same_marginals_witness,
    unflatten,
)
from engine.hierarchy.spread import second_order_spread

__all__ = [
    'flatten', 'predictive', 'marginal_world', 'marginal_model', 'is_product_form',
    'same_marginals_witness', 'coherence_check', 'unflatten', 'model_event',
    'condition_joint', 'second_order_spread',
]
