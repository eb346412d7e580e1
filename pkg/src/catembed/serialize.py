"""Canonical JSON forms for field elements, matrices, rings, and bundles.

All encodings are deterministic: coefficients are sorted by exponent,
rationals are rendered as "num/den" strings, and object keys are emitted in
a fixed order, so serialised artifacts are bit-exact across runs.
"""

from __future__ import annotations

import json
from fractions import Fraction
from .circuits import Circuit, GateSet, circuit_parse, circuit_print
from .cyclotomic import CycElement
from .matrix import ExactMatrix, Polynomial
from .rings import RingSpec, RingTower, make_tower


def frac_to_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def frac_from_str(s: str) -> Fraction:
    return Fraction(s)


def cyc_to_json(a: CycElement) -> dict:
    return {
        "conductor": a.conductor,
        "coeffs": [[e, frac_to_str(c)] for e, c in sorted(a.coeffs.items())],
    }


def cyc_from_json(data: dict) -> CycElement:
    return CycElement(
        int(data["conductor"]),
        {int(e): frac_from_str(c) for e, c in data["coeffs"]},
    )


def matrix_to_json(m: ExactMatrix) -> dict:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "conductor": m.conductor,
        "entries": [cyc_to_json(e) for e in m.entries],
    }


def matrix_from_json(data: dict) -> ExactMatrix:
    entries = [cyc_from_json(e) for e in data["entries"]]
    return ExactMatrix(int(data["rows"]), int(data["cols"]), entries)


def poly_to_json(p: Polynomial) -> list:
    return [cyc_to_json(c) for c in p.coeffs]


def poly_from_json(data: list) -> Polynomial:
    return Polynomial([cyc_from_json(c) for c in data])


def ring_to_json(r: RingSpec) -> dict:
    return {
        "name": r.name,
        "conductor": r.conductor,
        "generators": [cyc_to_json(g) for g in r.generators],
        "denominator_primes": (
            None if r.denominator_primes is None else sorted(r.denominator_primes)
        ),
    }


def ring_from_json(data: dict) -> RingSpec:
    primes = data["denominator_primes"]
    return RingSpec(
        int(data["conductor"]),
        [cyc_from_json(g) for g in data["generators"]],
        None if primes is None else frozenset(int(p) for p in primes),
        data.get("name", ""),
    )


def tower_to_json(t: RingTower) -> dict:
    return {
        "base": ring_to_json(t.base),
        "alpha": cyc_to_json(t.alpha),
        "min_poly": poly_to_json(t.minimal_polynomial),
    }


def tower_from_json(data: dict) -> RingTower:
    base = ring_from_json(data["base"])
    alpha = cyc_from_json(data["alpha"])
    tower = make_tower(base, alpha)
    if "min_poly" in data and tower.minimal_polynomial != poly_from_json(data["min_poly"]):
        raise ValueError("stored minimal polynomial disagrees with the derived one")
    return tower


def circuit_to_text(c: Circuit) -> str:
    return circuit_print(c)


def circuit_from_text(text: str, gs: GateSet) -> Circuit:
    return circuit_parse(text, gs)


def dumps_canonical(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)
