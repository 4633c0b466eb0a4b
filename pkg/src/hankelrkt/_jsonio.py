"""Strict JSON parsing and deterministic JSON/CSV emission.

Parsers reject unknown keys and report the path of the offending key so the
CLI can point at it.  The writer fixes float formatting (17 significant
digits, round-trip safe) and key order, making reports reproducible
byte-for-byte.
"""

from __future__ import annotations

import math

import numpy as np

JSON_FLOAT_DIGITS = 17
CSV_FLOAT_DIGITS = 12


class SchemaError(ValueError):
    """Malformed input document; ``path`` points at the offending key."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


def _expect_dict(obj, path: str, allowed: set[str], required: set[str]) -> dict:
    if not isinstance(obj, dict):
        raise SchemaError(path, f"expected an object, got {type(obj).__name__}")
    for key in obj:
        if key not in allowed:
            raise SchemaError(f"{path}.{key}", "unknown key")
    for key in required:
        if key not in obj:
            raise SchemaError(f"{path}.{key}", "missing required key")
    return obj


def _expect_int(obj, path: str, minimum: int | None = None) -> int:
    if isinstance(obj, bool) or not isinstance(obj, int):
        raise SchemaError(path, f"expected an integer, got {type(obj).__name__}")
    if minimum is not None and obj < minimum:
        raise SchemaError(path, f"must be >= {minimum}, got {obj}")
    return obj


def _expect_real(obj, path: str) -> float:
    if isinstance(obj, bool) or not isinstance(obj, (int, float)):
        raise SchemaError(path, f"expected a number, got {type(obj).__name__}")
    x = float(obj)
    if not math.isfinite(x):
        raise SchemaError(path, "must be finite")
    return x


def _expect_complex_pair(obj, path: str) -> complex:
    if not isinstance(obj, list) or len(obj) != 2:
        raise SchemaError(path, "expected a [re, im] pair")
    return complex(_expect_real(obj[0], f"{path}[0]"), _expect_real(obj[1], f"{path}[1]"))


def _expect_list(obj, path: str):
    if not isinstance(obj, list):
        raise SchemaError(path, f"expected an array, got {type(obj).__name__}")
    return obj


def parse_vector(obj, path: str, dim: int) -> np.ndarray:
    row = _expect_list(obj, path)
    if len(row) != dim:
        raise SchemaError(path, f"expected {dim} entries, got {len(row)}")
    return np.array([_expect_complex_pair(v, f"{path}[{i}]") for i, v in enumerate(row)])


def parse_trig_polynomial(obj, path: str = "$"):
    from .hardy import TrigPolynomial

    _expect_dict(obj, path, {"dim", "n_min", "coeffs"}, {"dim", "n_min", "coeffs"})
    dim = _expect_int(obj["dim"], f"{path}.dim", minimum=1)
    n_min = _expect_int(obj["n_min"], f"{path}.n_min")
    rows = _expect_list(obj["coeffs"], f"{path}.coeffs")
    arr = np.zeros((len(rows), dim), dtype=complex)
    for i, row in enumerate(rows):
        arr[i] = parse_vector(row, f"{path}.coeffs[{i}]", dim)
    return TrigPolynomial(arr, n_min, dim=dim)


def parse_symbol(obj, path: str = "$"):
    from .hankel import HankelSymbol

    _expect_dict(obj, path, {"dim", "gamma"}, {"dim", "gamma"})
    dim = _expect_int(obj["dim"], f"{path}.dim", minimum=1)
    rows = _expect_list(obj["gamma"], f"{path}.gamma")
    gamma = np.zeros((len(rows), dim), dtype=complex)
    for k, row in enumerate(rows):
        gamma[k] = parse_vector(row, f"{path}.gamma[{k}]", dim)
    return HankelSymbol(gamma, dim=dim)


def parse_embedding_problem(obj, path: str = "$"):
    from .embedding import BlaschkeProduct, DiscreteMeasure

    _expect_dict(obj, path, {"atoms"}, {"atoms"})
    atoms = _expect_list(obj["atoms"], f"{path}.atoms")
    points, weights, family = [], [], []
    for i, atom in enumerate(atoms):
        apath = f"{path}.atoms[{i}]"
        _expect_dict(atom, apath, {"lambda", "weight", "theta_zeros"}, {"lambda", "weight", "theta_zeros"})
        lam = _expect_complex_pair(atom["lambda"], f"{apath}.lambda")
        if abs(lam) >= 1.0:
            raise SchemaError(f"{apath}.lambda", "must lie inside the open unit disk")
        w = _expect_real(atom["weight"], f"{apath}.weight")
        if w < 0.0:
            raise SchemaError(f"{apath}.weight", "must be nonnegative")
        zeros = []
        for j, z in enumerate(_expect_list(atom["theta_zeros"], f"{apath}.theta_zeros")):
            zero = _expect_complex_pair(z, f"{apath}.theta_zeros[{j}]")
            if abs(zero) >= 1.0:
                raise SchemaError(f"{apath}.theta_zeros[{j}]", "must lie inside the open unit disk")
            zeros.append(zero)
        points.append(lam)
        weights.append(w)
        family.append(BlaschkeProduct(zeros))
    return DiscreteMeasure(points, weights), family


def parse_search_config(obj, path: str = "$"):
    from .rkt import LambdaGrid
    from .search import SearchConfig

    allowed = {"m", "d", "restarts", "steps", "init_scale", "shrink", "seed"}
    _expect_dict(obj, path, allowed, {"m", "d"})
    kwargs = {
        "m": _expect_int(obj["m"], f"{path}.m", minimum=1),
        "d": _expect_int(obj["d"], f"{path}.d", minimum=1),
    }
    if "restarts" in obj:
        kwargs["restarts"] = _expect_int(obj["restarts"], f"{path}.restarts", minimum=1)
    if "steps" in obj:
        kwargs["steps"] = _expect_int(obj["steps"], f"{path}.steps", minimum=0)
    if "seed" in obj:
        kwargs["seed"] = _expect_int(obj["seed"], f"{path}.seed", minimum=0)
    if "init_scale" in obj:
        kwargs["init_scale"] = _expect_real(obj["init_scale"], f"{path}.init_scale")
        if kwargs["init_scale"] <= 0:
            raise SchemaError(f"{path}.init_scale", "must be positive")
    if "shrink" in obj:
        kwargs["shrink"] = _expect_real(obj["shrink"], f"{path}.shrink")
        if not 0.0 < kwargs["shrink"] < 1.0:
            raise SchemaError(f"{path}.shrink", "must be in (0, 1)")
    kwargs["grid"] = LambdaGrid()
    return SearchConfig(**kwargs)


def format_float(x: float, digits: int = JSON_FLOAT_DIGITS) -> str:
    if not math.isfinite(x):
        raise ValueError("cannot serialize non-finite float")
    s = format(float(x), f".{digits}g")
    return s


def dumps(obj, indent: int = 0) -> str:
    """Deterministic JSON: sorted keys, fixed float precision."""
    pad = " " * indent
    inner = " " * (indent + 2)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if isinstance(obj, complex):
        return dumps([obj.real, obj.imag], indent)
    if isinstance(obj, str):
        out = ['"']
        for ch in obj:
            if ch in '"\\':
                out.append("\\" + ch)
            elif ord(ch) < 0x20:
                out.append(f"\\u{ord(ch):04x}")
            else:
                out.append(ch)
        out.append('"')
        return "".join(out)
    if isinstance(obj, (list, tuple, np.ndarray)):
        items = [dumps(v, indent + 2) for v in obj]
        if not items:
            return "[]"
        return "[\n" + ",\n".join(inner + it for it in items) + "\n" + pad + "]"
    if isinstance(obj, dict):
        items = []
        for key in sorted(obj):
            if not isinstance(key, str):
                raise TypeError("report keys must be strings")
            items.append(inner + dumps(key) + ": " + dumps(obj[key], indent + 2))
        if not items:
            return "{}"
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")
