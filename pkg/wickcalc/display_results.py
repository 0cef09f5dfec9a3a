"""Text and JSON renderers for command results."""
import json
import math
from typing import Any, Dict, List

from .algebra.operators import Expansion, SignedTerm
from .dsl import format_symbol
from .settings import get_settings

SCHEMA_VERSION = 1


def format_float(x: float, digits: int = 17) -> str:
    return f"{x + 0.0:.{digits}g}"


def format_complex(z: complex, digits: int = 17) -> str:
    """Render a complex number as ``re``, ``im i`` or ``re+im i``."""
    re, im = z.real + 0.0, z.imag + 0.0
    if im == 0:
        return format_float(re, digits)
    imag = format_float(abs(im), digits) + "i"
    if re == 0:
        return ("-" if im < 0 else "") + imag
    return f"{format_float(re, digits)}{'-' if im < 0 else '+'}{imag}"


def format_term(term: SignedTerm, expansion: Expansion, digits: int = 17) -> str:
    """One line of an expansion, e.g. ``- <1 3> N[A(2)]``."""
    prefix = "T" if expansion.time_ordered else ""
    parts: List[str] = []
    coefficient = term.coefficient
    if expansion.symbolic and coefficient in (1, -1):
        parts.append("+" if coefficient.real > 0 else "-")
    else:
        parts.append(f"({format_complex(coefficient, digits)})")
    parts.extend(f"{prefix}<{i + 1} {j + 1}>" for i, j in term.contractions)
    if term.normal_factors:
        parts.append("N[" + " ".join(format_symbol(f) for f in term.normal_factors) + "]")
    elif not term.contractions:
        parts.append("1")
    return " ".join(parts)


def display_expansion(expansion: Expansion, digits: int = 17) -> str:
    """Format an expansion as text, one term per line."""
    if not expansion.terms:
        return "0\n"
    lines = [format_term(term, expansion, digits) for term in expansion.terms]
    return "\n".join(lines) + "\n"


def display_summary(expansion: Expansion) -> str:
    counts = ", ".join(f"{k}: {n}" for k, n in expansion.count_by_contractions().items())
    return f"# {len(expansion)} terms (by number of contractions: {counts})\n"


def expansion_to_dict(expansion: Expansion) -> Dict[str, Any]:
    return {
        "statistics": expansion.statistics.value,
        "time_ordered": expansion.time_ordered,
        "symbolic": expansion.symbolic,
        "n_terms": len(expansion),
        "terms": [
            {
                "coefficient": complex_to_dict(term.coefficient),
                "contractions": [[i + 1, j + 1] for i, j in term.contractions],
                "normal": [format_symbol(f) for f in term.normal_factors],
            }
            for term in expansion.terms
        ],
    }


def complex_to_dict(z: complex) -> Dict[str, float]:
    return {"re": z.real + 0.0, "im": z.imag + 0.0}


def to_json(payload: Dict[str, Any], digits: int = 17) -> str:
    """Deterministic JSON with ``digits`` significant digits for every float."""
    return _dump({"schema": SCHEMA_VERSION, **payload}, digits) + "\n"


def _dump(value: Any, digits: int) -> str:
    if isinstance(value, bool) or value is None:
        return json.dumps(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            return "null"
        text = f"{value + 0.0:.{digits}g}"
        return text if any(c in text for c in ".e") else text + ".0"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_dump(v, digits)}" for k, v in value.items()) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_dump(v, digits) for v in value) + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def display_results(data: Dict[str, Any], output_format: str = "text") -> str:
    """Render a finished command state."""
    digits = get_settings().float_digits
    if not data.get("success"):
        message = data.get("error", "unknown error")
        if output_format == "json":
            return to_json({"command": data.get("command"), "error": message, "exit_code": data.get("exit_code")}, digits)
        return f"error: {message}\n"

    command = data["command"]
    result = data["result"]
    if output_format == "json":
        payload: Dict[str, Any] = {"command": command}
        if command == "expand":
            payload.update(expansion_to_dict(result["expansion"]))
        elif command in ("vev", "green"):
            payload["value"] = complex_to_dict(result["value"])
            if "method" in result:
                payload["method"] = result["method"]
        elif command == "check":
            payload.update({
                "deviation": result["deviation"],
                "tolerance": result["tolerance"],
                "passed": result["passed"],
                "n_terms": result["n_terms"],
            })
        if "oracle_deviation" in result:
            payload["oracle_deviation"] = result["oracle_deviation"]
        if "model" in data:
            payload["model"] = data["model"]
        return to_json(payload, digits)

    output = []
    if command == "expand":
        if result.get("summary"):
            output.append(display_summary(result["expansion"]))
        output.append(display_expansion(result["expansion"], digits))
    elif command == "vev":
        output.append(format_complex(result["value"], digits) + "\n")
    elif command == "green":
        output.append(f"G = {format_complex(result['value'], digits)}  ({result['method']})\n")
    elif command == "check":
        verdict = "OK" if result["passed"] else "FAILED"
        output.append(f"max deviation {result['deviation']:.3e} over {result['n_terms']} terms "
                      f"(tolerance {result['tolerance']:.0e}): {verdict}\n")
    if "oracle_deviation" in result:
        output.append(f"# oracle deviation {result['oracle_deviation']:.3e}\n")
    return "".join(output)
