"""Exact state-vector simulation: the end-to-end oracle for compiled programs.

States are unnormalised amplitude vectors with the squared norm tracked
exactly; equality of states means amplitude-vector equality.  Circuits are
applied structurally (sequential and parallel nodes act on tensor factors
directly), which matches evaluate(c) @ amplitudes exactly while avoiding
materialising lifted gate matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .circuits import Circuit, GateRef, GateSet, Identity, Par, Seq, Swap
from .cyclotomic import CycElement
from .matrix import ExactMatrix

MAX_SIM_DIM = 2**12


class SimulationError(Exception):
    pass


@dataclass(frozen=True)
class ExactState:
    dimension: int
    amplitudes: tuple[CycElement, ...]
    norm_sq: CycElement

    def column(self) -> ExactMatrix:
        return ExactMatrix.column(list(self.amplitudes))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactState):
            return NotImplemented
        return self.dimension == other.dimension and all(
            a == b for a, b in zip(self.amplitudes, other.amplitudes)
        )

    def scaled(self, s) -> "ExactState":
        amps = tuple(a * s for a in self.amplitudes)
        return ExactState(self.dimension, amps, _norm_sq(amps))


def _norm_sq(amps: Sequence[CycElement]) -> CycElement:
    total = CycElement.zero()
    for a in amps:
        if not a.is_zero():
            total = total + a.conj() * a
    return total


def state_make(amplitudes: Sequence) -> ExactState:
    amps = tuple(a if isinstance(a, CycElement) else CycElement.rational(a) for a in amplitudes)
    if all(a.is_zero() for a in amps):
        raise ValueError("state must be a nonzero vector")
    if len(amps) > MAX_SIM_DIM:
        raise SimulationError(f"dimension {len(amps)} exceeds the simulation cap {MAX_SIM_DIM}")
    return ExactState(len(amps), amps, _norm_sq(amps))


def basis_state(dimension: int, index: int) -> ExactState:
    if not 0 <= index < dimension:
        raise ValueError("basis index out of range")
    return state_make([1 if i == index else 0 for i in range(dimension)])


def tensor_states(*states: ExactState) -> ExactState:
    amps: list[CycElement] = [CycElement.one()]
    for s in states:
        amps = [a * b for a in amps for b in s.amplitudes]
    return state_make(amps)


def _apply_tree(c: Circuit, gs: GateSet, amps: list[CycElement]) -> list[CycElement]:
    if isinstance(c, Identity):
        return amps
    if isinstance(c, Swap):
        out = [CycElement.zero()] * len(amps)
        for a in range(c.m):
            for b in range(c.n):
                out[b * c.m + a] = amps[a * c.n + b]
        return out
    if isinstance(c, GateRef):
        gate = gs.get(c.name)
        images = gate.permutation
        if images is not None:
            out = [CycElement.zero()] * len(amps)
            for j, i in enumerate(images):
                out[i] = amps[j]
            return out
        mat = gate.evaluation
        out = []
        for i in range(mat.rows):
            acc = CycElement.zero()
            for j in range(mat.cols):
                e = mat.entry(i, j)
                if not e.is_zero() and not amps[j].is_zero():
                    acc = acc + e * amps[j]
            out.append(acc)
        return out
    if isinstance(c, Seq):
        return _apply_tree(c.after, gs, _apply_tree(c.before, gs, amps))
    if isinstance(c, Par):
        p = c.top.dimension
        q = c.bottom.dimension
        # top acts along the leading index, bottom along the trailing one
        cols = []
        for j in range(q):
            col = _apply_tree(c.top, gs, [amps[i * q + j] for i in range(p)])
            cols.append(col)
        out = [CycElement.zero()] * (p * q)
        for i in range(p):
            row = _apply_tree(c.bottom, gs, [cols[j][i] for j in range(q)])
            for j in range(q):
                out[i * q + j] = row[j]
        return out
    raise TypeError(f"not a circuit: {c!r}")


def apply_circuit(c: Circuit, gs: GateSet, state: ExactState) -> ExactState:
    """evaluate(c) @ state, computed structurally; exact."""
    if c.dimension != state.dimension:
        raise ValueError(f"circuit dimension {c.dimension} != state dimension {state.dimension}")
    if state.dimension > MAX_SIM_DIM:
        raise SimulationError(f"dimension {state.dimension} exceeds the cap {MAX_SIM_DIM}")
    amps = _apply_tree(c, gs, list(state.amplitudes))
    return ExactState(state.dimension, tuple(amps), _norm_sq(amps))


def evaluate_by_columns(c: Circuit, gs: GateSet) -> ExactMatrix:
    """The evaluation matrix, assembled column-by-column via fast apply."""
    dim = c.dimension
    cols = []
    for j in range(dim):
        cols.append(_apply_tree(c, gs, [CycElement.one() if i == j else CycElement.zero() for i in range(dim)]))
    return ExactMatrix(dim, dim, [cols[j][i] for i in range(dim) for j in range(dim)])


# -- catalytic verification -----------------------------------------------------


@dataclass(frozen=True)
class ProbeResult:
    label: str
    passed: bool


@dataclass(frozen=True)
class SimReport:
    checks: tuple[ProbeResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checks": [{"probe": c.label, "pass": c.passed} for c in self.checks],
        }


def _program_catalyst_state(program) -> Optional[ExactState]:
    if not program.catalysts:
        return None
    return tensor_states(*(state_make(list(c.vector.entries)) for c in program.catalysts))


def _borrow_states(program) -> list[ExactState]:
    if not program.extra_wires:
        return [None]  # type: ignore[list-item]
    dim = 2**program.extra_wires
    return [basis_state(dim, i) for i in range(dim)]


def check_catalytic_action(program, source_eval: ExactMatrix, probes: Sequence[ExactState]) -> SimReport:
    """For each probe |psi>: circuit(|psi> (x) |chi>) == (U|psi>) (x) |chi>.

    Borrowed workspace wires (from decrementer expansion) must be returned
    unchanged for every workspace basis state; each is checked.
    """
    catalyst = _program_catalyst_state(program)
    checks = []
    for idx, psi in enumerate(probes):
        if psi.dimension != program.data_dimension:
            raise ValueError(f"probe {idx} has dimension {psi.dimension}, expected {program.data_dimension}")
        expected_data = state_make(list((source_eval @ psi.column()).entries))
        for borrow in _borrow_states(program):
            parts = [psi]
            if catalyst is not None:
                parts.append(catalyst)
            if borrow is not None:
                parts.append(borrow)
            full = tensor_states(*parts)
            result = apply_circuit(program.circuit, program.gate_set, full)
            expected_parts = [expected_data]
            if catalyst is not None:
                expected_parts.append(catalyst)
            if borrow is not None:
                expected_parts.append(borrow)
            expected = tensor_states(*expected_parts)
            label = f"probe {idx}" + (" (workspace)" if borrow is not None else "")
            checks.append(ProbeResult(label, result == expected))
    return SimReport(tuple(checks))


def check_galois_action(
    program,
    conj_catalysts: Sequence[ExactState],
    twisted_eval: ExactMatrix,
    probes: Sequence[ExactState],
) -> SimReport:
    """Same law on a Galois-conjugated catalyst family and twisted target."""
    catalyst = tensor_states(*conj_catalysts) if conj_catalysts else None
    checks = []
    for idx, psi in enumerate(probes):
        expected_data = state_make(list((twisted_eval @ psi.column()).entries))
        for borrow in _borrow_states(program):
            parts = [psi]
            if catalyst is not None:
                parts.append(catalyst)
            if borrow is not None:
                parts.append(borrow)
            full = tensor_states(*parts)
            result = apply_circuit(program.circuit, program.gate_set, full)
            expected_parts = [expected_data]
            if catalyst is not None:
                expected_parts.append(catalyst)
            if borrow is not None:
                expected_parts.append(borrow)
            expected = tensor_states(*expected_parts)
            label = f"twisted probe {idx}" + (" (workspace)" if borrow is not None else "")
            checks.append(ProbeResult(label, result == expected))
    return SimReport(tuple(checks))
