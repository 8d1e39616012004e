import json
import math
from typing import Any

import numpy as np
import pandas as pd
import yaml

from QMUtils.constants import CSV_SEPARATOR, SIGNIFICANT_DIGITS
from QMUtils.exceptions import AdvancedExceptionHandler
from QMUtils.types import SimpleJson


_exception_handler = AdvancedExceptionHandler()


def format_number(value: float, digits: int = SIGNIFICANT_DIGITS) -> str:
    """
    Renders a float with a fixed number of significant digits.

    Non-finite values are rendered as the strings "nan", "inf" and "-inf".
    """
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.{digits}g}"


def to_serializable(content: Any, digits: int = SIGNIFICANT_DIGITS) -> Any:
    """
    Converts report content to plain JSON-compatible structures.

    Floats are rounded to ``digits`` significant digits so that repeated runs
    produce byte-identical output. numpy scalars and arrays, complex numbers,
    tuples and dataclass-like objects exposing ``to_dict`` are supported.

    Args:
        content (Any): Nested structure of dicts, lists and numbers.
        digits (int): Number of significant digits kept for floats.

    Returns:
        Any: A structure ``json.dumps`` can render.
    """
    if isinstance(content, bool) or content is None or isinstance(content, str):
        return content
    if isinstance(content, (int, np.integer)):
        return int(content)
    if isinstance(content, (float, np.floating)):
        value = float(content)
        if not math.isfinite(value):
            return format_number(value)
        return float(format_number(value, digits))
    if isinstance(content, (complex, np.complexfloating)):
        return {
            "re": to_serializable(content.real, digits),
            "im": to_serializable(content.imag, digits),
        }
    if isinstance(content, np.ndarray):
        return [to_serializable(item, digits) for item in content.tolist()]
    if isinstance(content, dict):
        return {str(key): to_serializable(val, digits) for key, val in content.items()}
    if isinstance(content, (list, tuple)):
        return [to_serializable(item, digits) for item in content]
    if hasattr(content, "to_dict"):
        return to_serializable(content.to_dict(), digits)
    return str(content)


def dump_json_report(content: SimpleJson, digits: int = SIGNIFICANT_DIGITS) -> str:
    """
    Serializes a report to a JSON string with sorted keys.

    Args:
        content (SimpleJson): Report content.
        digits (int): Significant digits for floats.

    Returns:
        str: The JSON document.
    """
    try:
        return json.dumps(to_serializable(content, digits), sort_keys=True, indent=2)
    except Exception as exc:
        _exception_handler.handle_exception(exc, "Failed to serialize JSON report.")
        raise


def dump_csv_report(
    rows: list,
    columns: list,
    sep: str = CSV_SEPARATOR,
    digits: int = SIGNIFICANT_DIGITS
) -> str:
    """
    Renders long-format rows as CSV text through pandas.

    Args:
        rows (list): Row dictionaries.
        columns (list): Column order of the output.
        sep (str): Field delimiter.
        digits (int): Significant digits for floats.

    Returns:
        str: The CSV document including a header line.
    """
    try:
        data = pd.DataFrame(rows, columns=columns)
        return data.to_csv(
            sep=sep,
            index=False,
            float_format=f"%.{digits}g",
            lineterminator="\n"
        )
    except Exception as exc:
        _exception_handler.handle_exception(exc, "Failed to render CSV report.")
        raise


def read_yaml_to_dict(file_path: str) -> dict:
    """
    Reads a YAML file and returns a dictionary.

    Args:
        file_path (str): Path to the YAML file.

    Returns:
        dict: The YAML file content as a dictionary.
    """
    try:
        with open(file_path, "rb") as file:
            data = yaml.safe_load(file)
        return data or {}
    except Exception as exc:
        _exception_handler.handle_exception(exc)
        raise
