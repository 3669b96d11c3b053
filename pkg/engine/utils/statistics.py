"""
Deviation tracking for the randomized property checks.
"""
from typing import Any, Dict, List


class DeviationTracker:
    """
    Tracks, per property, how many instances were checked and the largest
    deviation observed against the property's tolerance.
    """

    def __init__(self):
        """Initialize the deviation tracker."""
        self.tolerances: Dict[str, float] = {}
        self.max_deviation: Dict[str, float] = {}
        self.checked: Dict[str, int] = {}
        self.failures: Dict[str, List[int]] = {}

    def register(self, name: str, tolerance: float) -> None:
        """
        Declare a property before recording deviations for it.

        Args:
            name: Property name
            tolerance: Largest deviation that still passes
        """
        self.tolerances[name] = tolerance
        self.max_deviation[name] = 0.0
        self.checked[name] = 0
        self.failures[name] = []

    def record(self, name: str, deviation: float, instance: int) -> None:
        """
        Record one checked instance.

        Args:
            name: Registered property name
            deviation: Observed deviation (0 for an exact match)
            instance: Index of the instance, kept when it fails
        """
        self.checked[name] += 1
        if deviation > self.max_deviation[name]:
            self.max_deviation[name] = deviation
        if not deviation <= self.tolerances[name]:
            self.failures[name].append(instance)

    def record_flag(self, name: str, holds: bool, instance: int) -> None:
        """Record a boolean property as deviation 0 (holds) or 1 (fails)."""
        self.record(name, 0.0 if holds else 1.0, instance)

    @property
    def passed(self) -> bool:
        return not any(self.failures.values())

    def get_final_stats(self) -> Dict[str, Any]:
        """
        Get final statistics.

        Returns:
            Dict[str, Any]: Per-property checked count, max deviation,
            tolerance, first failing instances and verdict
        """
        return {
            name: {
                "checked": self.checked[name],
                "max_deviation": self.max_deviation[name],
                "tolerance": self.tolerances[name],
                "failing_instances": self.failures[name][:10],
                "passed": not self.failures[name],
            }
            for name in self.tolerances
        }
