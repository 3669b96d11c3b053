"""
Default numerical tolerances shared by the engine.
"""

# Accepted |sum(weights) - 1| when a distribution is constructed.
NORMALIZATION_TOLERANCE = 1e-9

# A conditioning event with probability at or below this is treated as null.
ZERO_TOLERANCE = 1e-12

# Acts whose expected utilities are this close to the best are tied.
TIE_TOLERANCE = 1e-9

# Candidate matching for the model event [P(a) = x].
MATCH_TOLERANCE = 1e-9

# A claimed first-order vector this close to the predictive is coherent.
COHERENCE_TOLERANCE = 1e-9

# Maximum disagreement allowed between the three EU representations.
EQUIVALENCE_TOLERANCE = 1e-10

PRODUCT_FORM_TOLERANCE = 1e-12
RIGIDITY_TOLERANCE = 1e-12
