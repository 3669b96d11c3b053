"""
Vistas de la interfaz.
"""

from src.cli.views.report_view import ReportView

__all__ = ['ReportView']
