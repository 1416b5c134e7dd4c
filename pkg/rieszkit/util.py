import json
import json.encoder
import logging
import os
from typing import Any, Dict, List, Optional, Tuple

from allennlp.common import Params

import rieszkit
from rieszkit.checks import ConfigurationError
from rieszkit.coefficients.types import (UNDETERMINED, DiagonalLambdaCoeffs, DiagonalOmegaCoeffs, KernelExpansion)
from rieszkit.exact_scalar import ZERO, ExactScalar
from rieszkit.manifolds import Manifold, Observable

logger = logging.getLogger(__name__)

MANIFOLD_ALIASES = {"halfline": "half_line", "half-line": "half_line"}
OBSERVABLE_KEYS = ("observable", "x", "y")
COEFFICIENT_KINDS = ("heat", "cylinder", "lambda-diag", "omega-diag")


def _set_path(config: Dict[str, Any], dotted: str, value):
    keys = dotted.split(".")
    target = config
    for key in keys[:-1]:
        target = target.setdefault(key, {})
    target[keys[-1]] = value


def merge_configs(params_config_path: str, manifold_config_path: Optional[str] = None,
                  overrides: Optional[Dict[str, Any]] = None, seed: int = -1) -> Params:
    """
    Defaults from ``params_config_path``, the manifold spec under ``manifold``, then
    command-line ``overrides`` given as dotted keys. A seed of -1 keeps the configured one.
    """
    config = Params.from_file(params_config_path).as_dict(quiet=True)
    if manifold_config_path:
        config["manifold"] = Params.from_file(manifold_config_path).as_dict(quiet=True)
    for key, value in (overrides or {}).items():
        if value is not None:
            _set_path(config, key, value)
    if seed != -1:
        config["random_seed"] = seed
    if "random_seed" not in config:
        raise ConfigurationError("no random_seed in %s and none given" % params_config_path)
    return Params(config)


def manifold_from_config(spec: Dict[str, Any]) -> Tuple[Manifold, Observable]:
    """Translates {"manifold": "circle", "L": 1.0, "observable": "trace", ...} into registrable params."""
    spec = dict(spec)
    if "manifold" not in spec:
        raise ConfigurationError("manifold spec needs a 'manifold' name")
    name = spec.pop("manifold")
    name = MANIFOLD_ALIASES.get(name, name)
    observable = Observable(spec.get("observable", "diagonal"), spec.get("x"), spec.get("y"))
    for key in OBSERVABLE_KEYS:
        spec.pop(key, None)
    spec["type"] = name
    manifold = Manifold.from_params(Params(spec))
    manifold.validate(observable)
    return manifold, observable


def _scalar_text(value) -> str:
    if value is UNDETERMINED:
        return "undetermined"
    return ExactScalar.coerce(value).to_text()


def _parse_scalar(text, where: str, allow_undetermined: bool = True):
    if isinstance(text, int) and not isinstance(text, bool):
        return ExactScalar.coerce(text)
    if not isinstance(text, str):
        raise ConfigurationError("%s must be an exact scalar string, got %r" % (where, text))
    if text.strip() == "undetermined":
        if not allow_undetermined:
            raise ConfigurationError("%s cannot be undetermined" % where)
        return UNDETERMINED
    try:
        return ExactScalar.from_text(text)
    except ValueError as error:
        raise ConfigurationError("%s: %s" % (where, error))


def read_coefficients(path: str):
    """
    Reads a coefficient file {"m", "kind", "coeffs": [{"s", "value", "log"}, ...]} where
    values are exact scalar strings such as "1/2*pi^(-1/2)" or "undetermined".
    """
    data = Params.from_file(path).as_dict(quiet=True)
    return coefficients_from_dict(data, path)


def _coefficient_slots(entries, where: str) -> Tuple[list, list]:
    if not isinstance(entries, list):
        raise ConfigurationError("%s: coeffs must be a list of {s, value} entries" % where)
    slots: Dict[int, Tuple[Any, Any]] = {}
    for entry in entries:
        if not isinstance(entry, dict) or "s" not in entry or "value" not in entry:
            raise ConfigurationError("%s: every coeffs entry needs 's' and 'value', got %r" % (where, entry))
        s = entry["s"]
        if not isinstance(s, int) or isinstance(s, bool) or s < 0:
            raise ConfigurationError("%s: s must be a nonnegative integer, got %r" % (where, s))
        if s in slots:
            raise ConfigurationError("%s: s=%d appears twice" % (where, s))
        value = _parse_scalar(entry["value"], "%s value at s=%d" % (where, s))
        log = _parse_scalar(entry.get("log", "0"), "%s log at s=%d" % (where, s), allow_undetermined=False)
        slots[s] = (value, log)
    size = max(slots) + 1 if slots else 0
    values = [slots.get(s, (ZERO, ZERO))[0] for s in range(size)]
    logs = [slots.get(s, (ZERO, ZERO))[1] for s in range(size)]
    return values, logs


def coefficients_from_dict(data: Dict[str, Any], where: str = "coefficient file"):
    """Missing s slots below the largest listed one are zero."""
    for key in ("m", "kind", "coeffs"):
        if key not in data:
            raise ConfigurationError("%s lacks %r" % (where, key))
    kind, m = data["kind"], data["m"]
    if kind not in COEFFICIENT_KINDS:
        raise ConfigurationError("%s: kind must be one of %s, got %r" % (where, COEFFICIENT_KINDS, kind))
    if not isinstance(m, int) or isinstance(m, bool):
        raise ConfigurationError("%s: m must be an integer" % where)
    values, logs = _coefficient_slots(data["coeffs"], where)
    if kind in ("heat", "cylinder"):
        return KernelExpansion(m, kind, tuple(values), tuple(logs))
    if kind == "lambda-diag":
        if any(not log.is_zero() for log in logs):
            raise ConfigurationError("%s: lambda-diag tables have no log coefficients" % where)
        return DiagonalLambdaCoeffs(m, tuple(values))
    return DiagonalOmegaCoeffs(m, tuple(values), tuple(logs))


def _entries(values, logs=None) -> List[Dict[str, str]]:
    entries = []
    for s, value in enumerate(values):
        entry = {"s": s, "value": _scalar_text(value)}
        if logs is not None and not logs[s].is_zero():
            entry["log"] = _scalar_text(logs[s])
        entries.append(entry)
    return entries


def coefficients_to_dict(coefficients) -> Dict[str, Any]:
    if isinstance(coefficients, KernelExpansion):
        return {"m": coefficients.m, "kind": coefficients.kind,
                "coeffs": _entries(coefficients.coefficients, coefficients.logs)}
    if isinstance(coefficients, DiagonalLambdaCoeffs):
        return {"m": coefficients.m, "kind": "lambda-diag", "coeffs": _entries(coefficients.a)}
    if isinstance(coefficients, DiagonalOmegaCoeffs):
        return {"m": coefficients.m, "kind": "omega-diag", "coeffs": _entries(coefficients.c, coefficients.d)}
    raise ConfigurationError("cannot serialise %r" % (coefficients,))


def write_coefficients(coefficients, path: str):
    with open(path, "w") as handle:
        json.dump(coefficients_to_dict(coefficients), handle, indent=4)
        handle.write("\n")
    logger.info("Wrote %s", path)


def _float_text(value: float) -> str:
    if value != value or value in (float("inf"), float("-inf")):
        return "null"
    return "%.17g" % value


class ReportEncoder(json.JSONEncoder):
    """Writes every float with 17 significant digits, e.g. 0.1 as 0.10000000000000001."""

    def iterencode(self, o, _one_shot=False):
        encode_string = json.encoder.encode_basestring_ascii if self.ensure_ascii else json.encoder.encode_basestring
        markers = {} if self.check_circular else None
        return json.encoder._make_iterencode(markers, self.default, encode_string, self.indent, _float_text,
                                             self.key_separator, self.item_separator, self.sort_keys,
                                             self.skipkeys, _one_shot)(o, 0)


def _clean(value):
    """JSON-safe copy: non-finite floats become null, tuples become lists."""
    if isinstance(value, dict):
        return {str(key): _clean(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(item) for item in value]
    if isinstance(value, float) and (value != value or value in (float("inf"), float("-inf"))):
        return None
    if hasattr(value, "item") and not isinstance(value, (str, bytes)):
        return _clean(value.item())
    return value


def write_report(out_dir: str, name: str, payload: Dict[str, Any], config: Params) -> str:
    """Writes ``name`` as JSON into ``out_dir`` with config, seed and version embedded, and config.json beside it."""
    os.makedirs(out_dir, exist_ok=True)
    config_dict = config.as_dict(quiet=True)
    report = {"version": rieszkit.__version__, "seed": config_dict.get("random_seed"), "config": config_dict}
    report.update(payload)
    path = os.path.join(out_dir, name)
    with open(path, "w") as handle:
        json.dump(_clean(report), handle, indent=4, sort_keys=True, cls=ReportEncoder)
        handle.write("\n")
    config.to_file(os.path.join(out_dir, "config.json"))
    logger.info("Wrote %s", path)
    return path
