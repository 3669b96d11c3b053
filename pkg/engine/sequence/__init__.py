"""
I.i.d. trials under loading hypotheses: posterior, predictive and the bet decision.
"""

from engine.sequence.die_model import (
    build_bet_problem,
    posterior,
    posterior_trajectory,
    predictive_next,
    with_prior,
)

__all__ = ['posterior', 'posterior_trajectory', 'predictive_next', 'build_bet_problem', 'with_prior']
