"""File formats and canonical serialization.

Fan files are JSON objects ``{"rays": [[x, y], ...]}`` with integer
entries.  Abstract surface files are JSON objects with ``labels``,
``pairing`` (entries may be integers or exact "p/q" strings),
``canonical`` (integers) and ``effective_generators`` (indices into
labels).  Emitted JSON is byte-stable: keys sorted, rationals rendered
in lowest terms with positive denominators, never as decimals.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .divisors import AbstractSurface, Divisor
from .errors import InputError
from .fan import Fan


def parse_rational(value) -> Fraction:
    """Accept ints, integer strings and 'p/q' strings; never floats."""
    if isinstance(value, bool):
        raise InputError(f"not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational number: {value!r}") from exc
    raise InputError(
        f"not an exact rational: {value!r} (floats are rejected)"
    )


def format_rational(value) -> str:
    """Lowest terms, positive denominator; integers without the '/1'."""
    f = Fraction(value)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def divisor_to_jsonable(D: Divisor) -> list:
    """Integer coefficients as JSON ints, fractional ones as 'p/q'."""
    return [
        int(c) if c.denominator == 1 else format_rational(c)
        for c in D.coeffs
    ]


def divisor_from_jsonable(values) -> Divisor:
    return Divisor(parse_rational(v) for v in values)


def parse_divisor_arg(text: str) -> Divisor:
    """Comma-separated coefficients from the command line."""
    parts = [p.strip() for p in text.split(",")]
    if not parts or any(not p for p in parts):
        raise InputError(f"malformed divisor {text!r}")
    return Divisor(parse_rational(p) for p in parts)


def load_fan(path: str) -> Fan:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(data, dict) or "rays" not in data:
        raise InputError(f'{path}: expected an object with a "rays" key')
    rays = data["rays"]
    if not isinstance(rays, list):
        raise InputError(f'{path}: "rays" must be a list of [x, y] pairs')
    for r in rays:
        if (
            not isinstance(r, list)
            or len(r) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in r)
        ):
            raise InputError(
                f'{path}: every ray must be a pair of integers, got {r!r}'
            )
    return Fan(rays)


def load_abstract_surface(path: str) -> AbstractSurface:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON: {exc}") from exc
    required = ("labels", "pairing", "canonical", "effective_generators")
    if not isinstance(data, dict) or any(k not in data for k in required):
        raise InputError(
            f"{path}: expected an object with keys {', '.join(required)}"
        )
    pairing = [
        [parse_rational(x) for x in row] for row in data["pairing"]
    ]
    canonical = [parse_rational(x) for x in data["canonical"]]
    if any(c.denominator != 1 for c in canonical):
        raise InputError(f"{path}: canonical class must be integral")
    return AbstractSurface(
        data["labels"], pairing, canonical, data["effective_generators"]
    )


def dumps_canonical(obj) -> str:
    """Deterministic JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
