"""Staged pipeline behind the command-line front end.

Each command runs the same stages: parse the expression, build the model,
compute, and optionally verify against the Fock oracle. Stages are methods
that take the current state and return the keys they update.
"""
import logging
from datetime import datetime, timezone
from typing import Any, Callable, Dict, List, Literal, Optional, Tuple, TypedDict

from pydantic import BaseModel, Field

from .algebra.operators import OperatorSymbol, Statistics
from .dsl import OperatorExpr, parse
from .errors import ModelError, OracleError, ParseError, WickError
from .models import AbstractModel, BcsModel, BecModel, FermiSeaModel, ModelDictionary, load_model_file
from .oracle import FockOracle, FockSpace, build_state, check_operator_identity
from .settings import get_settings
from .time_ordered import n_particle_green, time_order, wick_expand_t
from .wick import ExpansionOptions, vev, wick_expand

logger = logging.getLogger(__name__)

Command = Literal["expand", "vev", "green", "check"]

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_MODEL_ERROR = 3
EXIT_INTERNAL_ERROR = 4


class CommandOptions(BaseModel):
    """Flags shared by all commands."""
    statistics: Statistics = Statistics.FERMI
    model: Optional[Literal["abstract", "fermisea", "bcs", "bec"]] = None
    model_file: Optional[str] = None
    time_ordered: bool = False
    output_format: Literal["text", "json"] = "text"
    oracle_check: bool = False
    modes: Optional[int] = Field(None, ge=1)
    cutoff: Optional[int] = Field(None, ge=1)
    filled: int = Field(0, ge=0)
    pairs: Optional[str] = Field(None, description="Comma separated u:v amplitudes")
    density: float = Field(0.0, ge=0)
    volume: float = Field(1.0, gt=0)
    frequencies: Optional[List[float]] = None
    evaluate: bool = False
    expand_fields: bool = False
    summary: bool = False
    xs: Optional[str] = None
    ys: Optional[str] = None
    workers: Optional[int] = Field(None, ge=1)


class CommandState(TypedDict, total=False):
    """State passed between pipeline stages."""
    command: str
    expression: str
    options: CommandOptions

    expr: OperatorExpr
    symbols: Tuple[OperatorSymbol, ...]
    model: ModelDictionary
    result: Dict[str, Any]


DEFAULT_MODELS = {"expand": "abstract", "vev": "abstract", "green": "fermisea", "check": "fermisea"}


def parse_amplitudes(text: str) -> List[Tuple[complex, complex]]:
    """``"0.6:0.8,1:0"`` -> [(0.6, 0.8), (1, 0)]."""
    amplitudes = []
    for item in text.split(","):
        try:
            u, v = item.split(":")
            amplitudes.append((complex(u.strip().replace("i", "j")), complex(v.strip().replace("i", "j"))))
        except ValueError:
            raise ParseError(f"malformed pair amplitude {item!r}; expected u:v") from None
    return amplitudes


def parse_points(text: str) -> List[Tuple[int, float]]:
    """``"1@0.5,2@0"`` -> [(0, 0.5), (1, 0.0)] with 0-based modes."""
    points = []
    for item in text.split(","):
        mode, sep, time = item.strip().partition("@")
        if not sep or not mode.isdigit() or int(mode) < 1:
            raise ParseError(f"malformed point {item!r}; expected mode@time")
        try:
            points.append((int(mode) - 1, float(time)))
        except ValueError:
            raise ParseError(f"malformed time in point {item!r}") from None
    return points


def failure_result(command: str, error: Exception, exit_code: int) -> Dict[str, Any]:
    """Result dict for a command that did not finish."""
    return {
        "status": "failed",
        "command": command,
        "error": str(error),
        "success": False,
        "exit_code": exit_code,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }


class CommandOrchestrator:
    """
    Runs one command through the staged pipeline.

    The pipeline is parse -> build model -> compute -> oracle check; every
    stage logs what it does and failures are mapped to exit codes.
    """

    def __init__(self):
        self.settings = get_settings()
        self.workflow: List[Tuple[str, Callable[[CommandState], Dict[str, Any]]]] = self._build_workflow()

    def _build_workflow(self):
        return [
            ("parse_expression", self._parse_expression),
            ("build_model", self._build_model),
            ("compute", self._compute),
            ("oracle_check", self._oracle_check),
        ]

    def process_request(self, command: Command, expression: str, options: Optional[CommandOptions] = None) -> Dict[str, Any]:
        """
        Process a command through the pipeline.

        Args:
            command: One of expand, vev, green, check
            expression: Operator expression (ignored by green)
            options: Command flags

        Returns:
            Dict with status, success, exit_code, the result or the error
        """
        state: CommandState = {"command": command, "expression": expression, "options": options or CommandOptions()}
        try:
            logger.info(f"Running {command}")
            for name, node in self.workflow:
                logger.debug(f"Stage {name}")
                state.update(node(state))
            result = state["result"]
            exit_code = EXIT_CHECK_FAILED if result.get("passed") is False else EXIT_OK
            logger.info(f"{command} finished with exit code {exit_code}")
            return {
                "status": "completed",
                "command": command,
                "result": result,
                "model": state["model"].describe(),
                "success": True,
                "exit_code": exit_code,
                "timestamp": datetime.now(timezone.utc).isoformat(),
            }
        except ParseError as e:
            return self._failure(command, e, EXIT_PARSE_ERROR)
        except WickError as e:
            return self._failure(command, e, EXIT_MODEL_ERROR)
        except Exception as e:
            logger.error(f"Error in {command}: {str(e)}", exc_info=True)
            return failure_result(command, e, EXIT_INTERNAL_ERROR)

    def _failure(self, command: str, error: Exception, exit_code: int) -> Dict[str, Any]:
        logger.warning(f"{command} failed: {error}")
        return failure_result(command, error, exit_code)

    # Node implementations

    def _parse_expression(self, state: CommandState) -> Dict[str, Any]:
        if state["command"] == "green":
            return {"symbols": ()}
        logger.info("Parsing expression...")
        expr = parse(state["expression"])
        return {"expr": expr, "symbols": expr.to_symbols()}

    def _build_model(self, state: CommandState) -> Dict[str, Any]:
        logger.info("Building model...")
        options = state["options"]
        if options.model_file:
            model = load_model_file(options.model_file)
            if model.statistics is not options.statistics:
                logger.warning(f"Model file statistics {model.statistics.value} override --stats {options.statistics.value}")
            return {"model": model}

        name = options.model or DEFAULT_MODELS[state["command"]]
        symbols = state["symbols"]
        n_modes = options.modes or max((s.mode + 1 for s in symbols), default=0)
        if state["command"] == "green":
            points = parse_points(options.xs or "") + parse_points(options.ys or "")
            n_modes = options.modes or max(p[0] + 1 for p in points)

        if name == "abstract":
            return {"model": AbstractModel(options.statistics, n_modes=options.modes)}
        if name == "fermisea":
            if n_modes < 1:
                raise ModelError("cannot infer the number of modes; pass --modes")
            return {"model": FermiSeaModel(n_modes, options.filled, frequencies=options.frequencies,
                                           statistics=options.statistics)}
        if name == "bcs":
            if not options.pairs:
                raise ModelError("the bcs model needs --pairs u:v,...")
            return {"model": BcsModel(parse_amplitudes(options.pairs))}
        if n_modes < 1:
            raise ModelError("cannot infer the number of modes; pass --modes")
        return {"model": BecModel(n_modes, options.density, options.volume, frequencies=options.frequencies)}

    def _compute(self, state: CommandState) -> Dict[str, Any]:
        command = state["command"]
        options = state["options"]
        model = state["model"]
        symbols = state["symbols"]
        workers = options.workers or self.settings.pairing_workers

        if command == "expand" or command == "check":
            logger.info("Expanding product...")
            expansion = self._expand(symbols, model, options, symbolic=command == "check" or not options.evaluate)
            result: Dict[str, Any] = {"expansion": expansion, "summary": options.summary}
            if command == "check":
                result.update(self._check(symbols, expansion, model, options))
            return {"result": result}

        if command == "vev":
            logger.info("Summing pair partitions...")
            value = vev(symbols, model, time_ordered=options.time_ordered, workers=workers)
            return {"result": {"value": value}}

        logger.info("Evaluating Green function...")
        xs = parse_points(options.xs or "")
        ys = parse_points(options.ys or "")
        method = "pairings" if model.has_anomalous or model.has_condensate else (
            "determinant" if model.statistics.is_fermionic else "permanent")
        return {"result": {"value": n_particle_green(xs, ys, model), "method": method}}

    def _expand(self, symbols, model, options: CommandOptions, symbolic: bool):
        expansion_options = ExpansionOptions(symbolic=symbolic, expand_fields=options.expand_fields)
        if options.time_ordered:
            return wick_expand_t(symbols, model, expansion_options)
        return wick_expand(symbols, model, expansion_options)

    def _space(self, model, options: CommandOptions) -> FockSpace:
        return FockSpace(model.statistics, model.n_modes, options.cutoff)

    def _check(self, symbols, expansion, model, options: CommandOptions) -> Dict[str, Any]:
        logger.info("Checking operator identity on the Fock oracle...")
        deviation = check_operator_identity(
            symbols, expansion, self._space(model, options), model.reference_state(), model,
            time_ordered=options.time_ordered,
        )
        tolerance = self.settings.oracle_tolerance
        return {"deviation": deviation, "tolerance": tolerance, "passed": deviation <= tolerance,
                "n_terms": len(expansion)}

    def _oracle_check(self, state: CommandState) -> Dict[str, Any]:
        options = state["options"]
        command = state["command"]
        if not options.oracle_check or command in ("check", "green"):
            return {}
        result = dict(state["result"])
        model = state["model"]
        symbols = state["symbols"]
        if command == "expand":
            deviation = check_operator_identity(
                symbols, result["expansion"], self._space(model, options), model.reference_state(), model,
                time_ordered=options.time_ordered,
            )
        else:
            spec = model.reference_state()
            if spec is None:
                raise OracleError(f"the {model.name} reference state has no exact Fock-space image")
            oracle = FockOracle(self._space(model, options), model)
            vector = build_state(oracle.space, spec)
            if options.time_ordered:
                ordered = time_order(symbols, model.statistics)
                matrix = ordered.coefficient * oracle.product(ordered.normal_factors)
            else:
                matrix = oracle.product(symbols)
            deviation = float(abs(vector.conj() @ matrix @ vector - result["value"]))
        if deviation > self.settings.identity_tolerance:
            logger.warning(f"Oracle deviation {deviation:.3e} exceeds {self.settings.identity_tolerance:.0e}")
        result["oracle_deviation"] = deviation
        return {"result": result}
