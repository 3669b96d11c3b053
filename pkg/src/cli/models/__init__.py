"""
Modelos de la interfaz: archivo de modelo, reporte y configuraciones.
"""

from src.cli.models.model_file import ModelFile, parse_labels
from src.cli.models.report import Report
from src.cli.models.settings_model import SettingsModel

__all__ = ['ModelFile', 'parse_labels', 'Report', 'SettingsModel']
