"""
Vista de reportes: JSON para scripts y texto legible con plantillas jinja2.
"""
import json
import logging
import os
from typing import Any

from jinja2 import Environment, FileSystemLoader, StrictUndefined

from src.cli.models.report import Report

TEMPLATE_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "templates")


class ReportView:
    """Convierte un Report en el texto que se imprime"""

    def __init__(self, decimals: int = 6, template_dir: str = TEMPLATE_DIR):
        """
        Inicializar la vista.

        Args:
            decimals: Decimales de las probabilidades en el modo legible
            template_dir: Directorio con las plantillas {comando}.txt.j2
        """
        self.decimals = decimals
        self.logger = logging.getLogger("HigherOrder.ReportView")
        self.env = Environment(
            loader=FileSystemLoader(template_dir),
            undefined=StrictUndefined,
            trim_blocks=True,
            lstrip_blocks=True,
            keep_trailing_newline=True,
        )
        self.env.filters["fixed"] = self.fixed
        self.env.filters["fixed_list"] = lambda values: "[" + ", ".join(self.fixed(v) for v in values) + "]"

    def fixed(self, value: Any) -> str:
        """Número con la cantidad configurada de decimales"""
        return f"{float(value):.{self.decimals}f}"

    def render_json(self, report: Report) -> str:
        """
        Documento JSON del reporte.

        Los flotantes se escriben con repr, por lo que leerlos de vuelta
        recupera exactamente el valor interno.
        """
        return json.dumps(report.to_dict(), indent=2, allow_nan=False) + "\n"

    def render_human(self, report: Report) -> str:
        """Tabla legible del reporte, usando la plantilla del subcomando"""
        if not report.results:
            return ""
        template_name = f"{report.command}.txt.j2"
        self.logger.debug(f"Renderizando {template_name}")
        template = self.env.get_template(template_name)
        return template.render(
            arguments=report.arguments,
            results=report.results,
            warnings=report.warnings,
        )

    def render_error(self, report: Report) -> str:
        """Mensaje de una línea para la salida de error"""
        error = report.error or {}
        location = f"{error.get('location')}: " if error.get("location") else ""
        return f"error: {error.get('type', 'Error')}: {location}{error.get('message', '')}\n"
