"""
Controladores de la interfaz.
"""

from src.cli.controllers.command_controller import CommandController, DECISION_MODES

__all__ = ['CommandController', 'DECISION_MODES']
