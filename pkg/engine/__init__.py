"""
Higher-Order Probability Engine Package.

Finite first-order distributions, second-order distributions over them, their
flattening into a joint distribution, and the decision, updating and
coherence machinery that operates on all three representations.

Sub-packages are imported directly (``engine.core``, ``engine.hierarchy``,
``engine.decision``, ``engine.kinematics``, ``engine.sequence``); the root
``models`` module depends on this package, so nothing is re-exported here.
"""

__version__ = "1.0.0"
