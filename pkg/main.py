"""
Punto de entrada principal para la herramienta de probabilidad de segundo orden.
"""
import argparse
import logging
import math
import os
import sys
from typing import Callable, Dict, List, Optional

# Añadir la ruta raíz para importaciones
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from engine import __version__
from engine.errors import EXIT_INTERNAL_ERROR, EXIT_PARSE_ERROR, HigherOrderError
from src.cli.controllers.command_controller import CommandController, DECISION_MODES
from src.cli.models.report import Report
from src.cli.models.settings_model import SettingsModel
from src.cli.views.report_view import ReportView

logger = logging.getLogger('HigherOrder')

# Argumentos que se repiten en el reporte de error de cada subcomando
ECHOED_ARGUMENTS: Dict[str, tuple] = {
    "validate": ("model",),
    "decide": ("model", "mode"),
    "flatten": ("model",),
    "jeffrey": ("model", "event", "to"),
    "check-c3": ("model", "a", "b", "x"),
    "sequence": ("model", "observe", "bet", "stake"),
    "selftest": ("seed", "instances"),
}


def setup_logging(verbosity: int = 0):
    """
    Configurar el sistema de logging.

    La salida estándar queda reservada para los reportes, así que los
    mensajes van a la salida de error.
    """
    levels = {0: logging.WARNING, 1: logging.INFO}
    logging.basicConfig(
        level=levels.get(verbosity, logging.DEBUG),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.StreamHandler(sys.stderr)
        ],
        force=True
    )


def _finite_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number")
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"{text!r} is not a finite number")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    """Construir el parser con un subcomando por operación"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Print the machine-readable JSON report")
    common.add_argument("--settings", metavar="PATH", help="JSON settings file (tolerances, seed, decimals)")
    common.add_argument("-v", "--verbose", action="count", default=0, help="Log progress (-v) or debug detail (-vv)")

    parser = argparse.ArgumentParser(
        prog="higher-order",
        description="Finite first-order and second-order probability: decisions, flattening, updating, coherence",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    def command(name: str, help_text: str, with_model: bool = True) -> argparse.ArgumentParser:
        sub = subparsers.add_parser(name, parents=[common], help=help_text, description=help_text)
        if with_model:
            sub.add_argument("model", help="Path to the JSON model file ('-' reads standard input)")
        return sub

    command("validate", "Validate a model and report its predictive distribution and coherence gap")

    decide = command("decide", "Choose the act of maximum expected utility")
    decide.add_argument("--mode", choices=DECISION_MODES, default="all",
                        help="Belief representation to decide under (default: all three, checked for agreement)")

    command("flatten", "Print the joint distribution over candidates x worlds and a same-marginals witness")

    jeffrey = command("jeffrey", "Shift the probability of a named event by Jeffrey's rule")
    jeffrey.add_argument("--event", required=True, help="Name of the event whose probability shifts")
    jeffrey.add_argument("--to", required=True, type=_finite_float, help="New probability, strictly between 0 and 1")

    c3 = command("check-c3", "Measure the deviation from PP(b | a & P(a) = x) = PP(b | a)")
    c3.add_argument("--a", required=True, help="Name of the event a")
    c3.add_argument("--b", required=True, help="Name of the event b")
    c3.add_argument("--x", required=True, type=_finite_float, help="Value of P(a) that selects candidates")

    sequence = command("sequence", "Posterior over loading hypotheses after i.i.d. observations")
    sequence.add_argument("--observe", metavar="W1,W2,...",
                          help="Comma-separated observed worlds (default: the model's observations)")
    sequence.add_argument("--bet", metavar="WORLD", help="Decide an even-money bet on this world")
    sequence.add_argument("--stake", type=_finite_float, help="Stake of the bet (default from settings)")

    selftest = command("selftest", "Run the seeded randomized property checks", with_model=False)
    selftest.add_argument("--seed", type=int, help="Seed of the random instances (default from settings)")
    selftest.add_argument("--instances", type=_positive_int, help="Instances per property family")

    return parser


def _dispatch(controller: CommandController, args: argparse.Namespace) -> Report:
    handlers: Dict[str, Callable[[], Report]] = {
        "validate": lambda: controller.validate(args.model),
        "decide": lambda: controller.decide(args.model, args.mode),
        "flatten": lambda: controller.flatten(args.model),
        "jeffrey": lambda: controller.jeffrey(args.model, args.event, args.to),
        "check-c3": lambda: controller.check_c3(args.model, args.a, args.b, args.x),
        "sequence": lambda: controller.sequence(args.model, args.observe, args.bet, args.stake),
        "selftest": lambda: controller.selftest(args.seed, args.instances),
    }
    return handlers[args.command]()


def main(argv: Optional[List[str]] = None) -> int:
    """
    Ejecutar un subcomando y escribir su reporte.

    Returns:
        int: Código de salida (0 éxito, 1 interno, 2 lectura, 3 validación,
        4 precondición, 5 equivalencia)
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse sale con 2 en errores de uso y 0 con --help
        return EXIT_PARSE_ERROR if e.code not in (0, None) else 0

    setup_logging(args.verbose)
    settings_model = SettingsModel(args.settings)
    controller = CommandController(settings_model)
    view = ReportView(decimals=int(settings_model.get_setting("human_decimals")))

    try:
        logger.info(f"Ejecutando {args.command}")
        report = _dispatch(controller, args)
    except HigherOrderError as e:
        logger.error(f"{args.command} falló: {e}")
        report = Report(args.command, {k: getattr(args, k) for k in ECHOED_ARGUMENTS[args.command]})
        report.fail(e)
    except Exception as e:
        logger.error(f"Error crítico: {str(e)}", exc_info=True)
        report = Report(args.command, {k: getattr(args, k) for k in ECHOED_ARGUMENTS[args.command]})
        report.error = {"type": type(e).__name__, "message": str(e), "location": None}
        report.exit_status = EXIT_INTERNAL_ERROR

    if args.json:
        sys.stdout.write(view.render_json(report))
    else:
        sys.stdout.write(view.render_human(report))
        if report.error is not None:
            sys.stderr.write(view.render_error(report))
    return report.exit_status


if __name__ == '__main__':
    sys.exit(main())
