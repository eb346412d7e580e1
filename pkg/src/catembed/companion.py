"""Normal pseudo-companion matrices: constructors and the verified catalog.

The catalog ships the worked examples as JSON data; loading an entry
re-derives the tower's minimal polynomial, re-validates every pre-embedding
condition, and re-checks the catalyst eigenvector and its squared norm, so a
transcription error anywhere in the data cannot go unnoticed.

Printed-value notes (all re-derived here, see the tests):

* the minimal polynomial of omega8 over Z[1/2, i] is x^2 - i (the source
  example prints x^2 + i, which neither omega8 nor the printed matrix
  satisfies);
* the minimal polynomial of cos(2*pi/5) over the Clifford+T ring is
  x^2 + x/2 - 1/4, and the fifth-root tower polynomial is
  x^2 - 2*cos(2*pi/5)*x + 1 (the printed signs differ);
* the order-3 catalyst [-w3 - i*w3^2, 1] with w3 = e^(2*pi*i/3) has squared
  norm 3 - sqrt(3); the printed 3 + sqrt(3) corresponds to reading w3 as the
  conjugate root e^(-2*pi*i/3).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Optional

from .cyclotomic import CycElement, imag_unit, zeta
from .embedding import PreEmbedding, preembed_make
from .matrix import ExactMatrix, Polynomial
from .rings import RingSpec, RingTower, make_tower
from .serialize import (
    cyc_from_json,
    cyc_to_json,
    matrix_from_json,
    matrix_to_json,
    poly_from_json,
    poly_to_json,
    ring_from_json,
    ring_to_json,
)

CATALOG_ENV_VAR = "CATEMBED_CATALOG"
TOWER_PREFIX = "zeta2k/tower("
MAX_TOWER_LEVEL = 20


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    """A verified normal pseudo-companion matrix with catalyst data."""

    entry_id: str
    tower: RingTower
    lam: ExactMatrix
    catalyst: ExactMatrix  # unnormalised column
    norm_sq: CycElement
    provenance: str
    preembedding: PreEmbedding
    char_sign: int  # char(Lambda) = char_sign * p^c; +1 in the det(xI - A) convention
    char_power: int


def _verify_entry(
    entry_id: str,
    tower: RingTower,
    lam: ExactMatrix,
    catalyst: ExactMatrix,
    norm_sq: CycElement,
    provenance: str,
) -> CatalogEntry:
    pe = preembed_make(tower, lam)
    if lam @ catalyst != catalyst.scale(tower.alpha):
        raise CatalogError(f"{entry_id}: catalyst is not an alpha-eigenvector")
    actual_norm = (catalyst.dagger() @ catalyst).entry(0, 0)
    if actual_norm != norm_sq:
        raise CatalogError(f"{entry_id}: stored norm_sq {norm_sq} != derived {actual_norm}")
    if pe.projector @ catalyst != catalyst:
        raise CatalogError(f"{entry_id}: projector does not fix the catalyst")
    return CatalogEntry(
        entry_id=entry_id,
        tower=tower,
        lam=lam,
        catalyst=catalyst,
        norm_sq=norm_sq,
        provenance=provenance,
        preembedding=pe,
        char_sign=1,
        char_power=pe.char_power,
    )


def _entry_from_json(data: dict) -> CatalogEntry:
    base = ring_from_json(data["base"])
    alpha = cyc_from_json(data["alpha"])
    tower = make_tower(base, alpha)
    if tower.minimal_polynomial != poly_from_json(data["min_poly"]):
        raise CatalogError(f"{data['id']}: stored minimal polynomial disagrees with derivation")
    return _verify_entry(
        data["id"],
        tower,
        matrix_from_json(data["lambda"]),
        matrix_from_json(data["catalyst"]),
        cyc_from_json(data["norm_sq"]),
        data.get("provenance", ""),
    )


def entry_to_json(entry: CatalogEntry) -> dict:
    return {
        "id": entry.entry_id,
        "provenance": entry.provenance,
        "base": ring_to_json(entry.tower.base),
        "alpha": cyc_to_json(entry.tower.alpha),
        "min_poly": poly_to_json(entry.tower.minimal_polynomial),
        "lambda": matrix_to_json(entry.lam),
        "catalyst": matrix_to_json(entry.catalyst),
        "norm_sq": cyc_to_json(entry.norm_sq),
    }


def tower_entry(k: int) -> CatalogEntry:
    """Z[zeta_{2^(k-1)}] in Z[zeta_{2^k}]: Lambda_k = [[0,1],[zeta,0]], psi_k = [1, zeta_{2^k}]."""
    if not 2 <= k <= MAX_TOWER_LEVEL:
        raise CatalogError(f"tower level must be in 2..{MAX_TOWER_LEVEL}, got {k}")
    m = 2 ** (k - 1)
    base = RingSpec.cyclotomic(m, frozenset(), conductor=2**k, name=f"Z[zeta_{m}]")
    tower = make_tower(base, zeta(2**k))
    lam = ExactMatrix.from_rows([[0, 1], [zeta(m), 0]])
    catalyst = ExactMatrix.column([1, zeta(2**k)])
    return _verify_entry(
        f"zeta2k/tower({k})",
        tower,
        lam,
        catalyst,
        CycElement.rational(2),
        f"power-of-two root tower, level {k}",
    )


_cache: dict[str, dict] = {}


def _load_raw_catalog(path: Optional[str] = None) -> dict[str, dict]:
    key = path or os.environ.get(CATALOG_ENV_VAR) or "<default>"
    if key in _cache:
        return _cache[key]
    if key == "<default>":
        text = resources.files("catembed").joinpath("data/catalog.json").read_text()
    else:
        with open(key) as fh:
            text = fh.read()
    raw = json.loads(text)
    out = {item["id"]: item for item in raw}
    _cache[key] = out
    return out


def catalog_ids(path: Optional[str] = None) -> list[str]:
    return list(_load_raw_catalog(path))


def catalog_get(entry_id: str, path: Optional[str] = None) -> CatalogEntry:
    """Load and fully re-verify one catalog entry."""
    if entry_id.startswith(TOWER_PREFIX) and entry_id.endswith(")"):
        return tower_entry(int(entry_id[len(TOWER_PREFIX) : -1]))
    raw = _load_raw_catalog(path)
    if entry_id not in raw:
        raise CatalogError(f"unknown catalog id {entry_id!r}; known: {sorted(raw)}")
    return _entry_from_json(raw[entry_id])


def catalog_all(path: Optional[str] = None) -> list[CatalogEntry]:
    return [catalog_get(i, path) for i in catalog_ids(path)]


# -- constructors -------------------------------------------------------------------


def shift_companion(s: CycElement) -> ExactMatrix:
    """[[0, 1], [s, 0]]: a normal companion for x^2 - s; needs s unimodular."""
    if s * s.conj() != CycElement.one():
        raise ValueError(f"{s} is not unimodular; [[0,1],[s,0]] would not be normal")
    return ExactMatrix.from_rows([[0, 1], [s, 0]])


def sum_of_squares_companion(a: Fraction | int, b: Fraction | int) -> ExactMatrix:
    """[[a, b], [b, -a]]: Hermitian pseudo-companion for x^2 - (a^2 + b^2)."""
    return ExactMatrix.from_rows([[a, b], [b, -a]])


# -- example classification candidates ------------------------------------------


def order3_rotation_candidate(which: int) -> tuple[dict[str, ExactMatrix], ExactMatrix]:
    """Three candidate embeddings of {R, X} (R = diag(1, omega3)) over Q-matrices.

    Candidate 1 is catalytic but not strong, candidate 2 is strong but not
    linear, candidate 3 is linear.  Returns (gate -> embedded evaluation,
    shared projector).
    """
    from .cyclotomic import omega3

    a = omega3()
    third = Fraction(1, 3)

    def block_diag(lam: ExactMatrix) -> ExactMatrix:
        return ExactMatrix.identity(lam.rows).direct_sum(lam)

    def swap_halves(k: int) -> ExactMatrix:
        return ExactMatrix.permutation([(j + k) % (2 * k) for j in range(2 * k)])

    if which in (1, 2):
        pi = ExactMatrix.from_rows(
            [[1, a, a * a], [a * a, 1, a], [a, a * a, 1]]
        ).scale(third)
        if which == 1:
            lam = ExactMatrix.from_rows([[-2, -2, 1], [1, -2, -2], [-2, 1, -2]]).scale(third)
        else:
            lam = ExactMatrix.permutation([1, 2, 0])
        return {"R": block_diag(lam), "X": swap_halves(3)}, pi
    if which == 3:
        a2 = a * a
        pi = ExactMatrix.from_rows(
            [
                [3, 1 + 2 * a, 1 + 2 * a, 1 + 2 * a],
                [1 + 2 * a2, 3, 1 + 2 * a, 1 + 2 * a2],
                [1 + 2 * a2, 1 + 2 * a2, 3, 1 + 2 * a],
                [1 + 2 * a2, 1 + 2 * a, 1 + 2 * a2, 3],
            ]
        ).scale(Fraction(1, 6))
        lam = ExactMatrix.from_rows(
            [[-1, -1, -1, -1], [1, -1, -1, 1], [1, 1, -1, -1], [1, -1, 1, -1]]
        ).scale(Fraction(1, 2))
        return {"R": block_diag(lam), "X": swap_halves(4)}, pi
    raise ValueError("candidate index must be 1, 2, or 3")


def shifted_rotation_companion(c: CycElement) -> ExactMatrix:
    """i * (sin matrix) + c*I for a cosine value c: eigenvalues c +- i*sin.

    Requires the exact identity sin^2 = (1/2)^2 + (1/2 + c)^2 with
    sin^2 = 1 - c^2, i.e. 2c^2 + c - 1/2 = 0; rejects c with sin = 0.
    The characteristic polynomial is x^2 - 2c x + 1.
    """
    one = CycElement.one()
    sin_sq = one - c * c
    if sin_sq.is_zero():
        raise ValueError("degenerate cosine: the target root would be real")
    half = Fraction(1, 2)
    expect = CycElement.rational(Fraction(1, 4)) + (half + c) * (half + c)
    if sin_sq != expect:
        raise ValueError("sin^2 identity fails: c is not a valid cosine for this recipe")
    i = imag_unit()
    sin_mat = ExactMatrix.from_rows([[1, 1 + 2 * c], [1 + 2 * c, -1]]).scale(half)
    lam = sin_mat.scale(i) + ExactMatrix.identity(2).scale(c)
    assert lam.char_poly() == Polynomial([one, (-2) * c, one])
    return lam
