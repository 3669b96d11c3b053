"""
Utility modules: seeded instances, deviation tracking and the self-test.
"""

from engine.utils.instance_generator import InstanceGenerator
from engine.utils.selftest import SelfTest
from engine.utils.statistics import DeviationTracker

__all__ = ['InstanceGenerator', 'DeviationTracker', 'SelfTest']
