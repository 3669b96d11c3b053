"""
Modelo del reporte que produce cada subcomando.
"""
from typing import Any, Dict, List, Optional

from engine.errors import EXIT_OK, HigherOrderError


class Report:
    """Eco del comando, resultados numéricos, advertencias y código de salida"""

    def __init__(self, command: str, arguments: Dict[str, Any]) -> None:
        """
        Inicializar el reporte.

        Args:
            command: Nombre del subcomando
            arguments: Argumentos con los que se invocó
        """
        self.command = command
        self.arguments = arguments
        self.results: Dict[str, Any] = {}
        self.warnings: List[str] = []
        self.error: Optional[Dict[str, Any]] = None
        self.exit_status = EXIT_OK

    def warn(self, message: str) -> None:
        self.warnings.append(message)

    def fail(self, error: HigherOrderError) -> None:
        """Marcar el reporte como fallido; los resultados parciales se descartan"""
        self.results = {}
        self.error = {
            "type": type(error).__name__,
            "message": error.message,
            "location": error.location,
        }
        self.exit_status = error.exit_code

    def to_dict(self) -> Dict[str, Any]:
        """Convertir el reporte a diccionario para serialización"""
        document: Dict[str, Any] = {
            "command": self.command,
            "arguments": self.arguments,
        }
        if self.error is not None:
            document["error"] = self.error
        if self.error is None or self.results:
            document["results"] = self.results
        document["warnings"] = self.warnings
        document["exit_status"] = self.exit_status
        return document
