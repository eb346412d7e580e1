"""The two compiler targets: the order-3 phase gate over Clifford+T, and the
quantum Fourier transform over {H, X, CX, CCX} with decrementer blocks.

Wire conventions for compiled programs: data qubits first (x_1 on top),
then the catalyst block most-significant-first (psi_n, ..., psi_1), then an
optional borrowed workspace wire introduced by decrementer expansion.  The
workspace wire is dirty-borrowed: the compiled circuit restores it for every
basis state, so the catalytic law holds with the workspace traced along.

Cost model constants (artifact choices, kept explicit):

* rotation approximations cost 3*log2(1/delta) T gates each;
* a k-qubit controlled decrement is costed at 4*(k-1) T gates
  (a CDKM-style adder block);
* catalyst preparation for the QFT approximates the n states psi_k = R_k H|0>
  to precision epsilon/n each.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import mpmath

from .circuits import (
    Circuit,
    Gate,
    GateSet,
    Identity,
    Par,
    Seq,
    Swap,
    clifford_t_extended,
    controlled_rotation_gate,
    gate_ref,
    par,
    phase_gateset,
    qft_target_gates,
    rotation_gate,
    seq,
    T_COUNT_WEIGHTS,
)
from .companion import catalog_get
from .cyclotomic import CycElement, sqrt2, zeta
from .matrix import ExactMatrix


@dataclass(frozen=True)
class CatalystSpec:
    label: str
    wires: tuple[int, ...]
    vector: ExactMatrix  # unnormalised column
    norm_sq: CycElement


@dataclass(frozen=True)
class CompiledProgram:
    circuit: Circuit
    gate_set: GateSet
    catalysts: tuple[CatalystSpec, ...]
    source_description: str
    source_matrix: ExactMatrix
    register_layout: dict
    data_dimension: int
    extra_wires: int = 0
    t_count: Optional[int] = None
    notes: str = ""


# -- wire routing -------------------------------------------------------------------


def _adjacent_swap(pos: int, total: int) -> Circuit:
    """Swap qubit wires pos and pos+1 among ``total`` qubit wires."""
    parts: list[Circuit] = []
    if pos:
        parts.append(Identity(2**pos))
    parts.append(Swap(2, 2))
    rest = total - pos - 2
    if rest:
        parts.append(Identity(2**rest))
    return par(*parts)


def apply_on_wires(gate_circuit: Circuit, wires: Sequence[int], total: int) -> Circuit:
    """Act with a block on the given qubit wires (in order) of a register.

    Routes the chosen wires to the top with adjacent swaps, applies the
    block padded with identity, and un-routes.
    """
    gate_wires = len(wires)
    if gate_circuit.dimension != 2**gate_wires:
        raise ValueError("block dimension does not match wire count")
    if sorted(set(wires)) != sorted(wires):
        raise ValueError("duplicate wires")
    layout = list(range(total))
    swaps: list[int] = []  # positions of adjacent transpositions, in time order
    for target_pos, w in enumerate(wires):
        p = layout.index(w)
        while p > target_pos:
            layout[p - 1], layout[p] = layout[p], layout[p - 1]
            swaps.append(p - 1)
            p -= 1
    block: Circuit = gate_circuit
    if total > gate_wires:
        block = Par(gate_circuit, Identity(2 ** (total - gate_wires)))
    steps: list[Circuit] = [_adjacent_swap(p, total) for p in swaps]
    steps.append(block)
    steps.extend(_adjacent_swap(p, total) for p in reversed(swaps))
    return seq(*steps)


def reversal_circuit(n: int) -> Circuit:
    """Bit reversal of an n-qubit register, built from swap primitives."""
    if n <= 1:
        return Identity(2**max(n, 1)) if n == 1 else Identity(1)
    return Seq(Swap(2 ** (n - 1), 2), Par(reversal_circuit(n - 1), Identity(2)))


# -- decrementer gates ----------------------------------------------------------------


def _dec_images(k: int, controls: int) -> list[int]:
    """Permutation images of the cascaded controlled decrement.

    Wires: ``controls`` control qubits, then targets t_1..t_k top to bottom.
    When all controls are 1: flip t_1; flip t_j iff t_1..t_(j-1) all read 1
    after their own flips (i.e. the borrow propagates).
    """
    total_bits = controls + k
    images = []
    for idx in range(2**total_bits):
        bits = [(idx >> (total_bits - 1 - b)) & 1 for b in range(total_bits)]
        if all(bits[:controls]):
            bits[controls] ^= 1
            for j in range(1, k):
                if all(bits[controls : controls + j]):
                    bits[controls + j] ^= 1
        out = 0
        for b in bits:
            out = (out << 1) | b
        images.append(out)
    return images


def cdec_gate(k: int, controls: int = 1) -> Gate:
    """The k-qubit controlled decrementer ("CDECk"; "CCDECk" for 2 controls)."""
    if k < 1 or controls < 1:
        raise ValueError("need k >= 1 and controls >= 1")
    name = "C" * controls + f"DEC{k}"
    dim = 2 ** (controls + k)
    return Gate(name, dim, permutation_factory=lambda: _dec_images(k, controls))


def _mcx_gates(ctrls: list[int], target: int, pool: list[int]) -> list[tuple[str, list[int]]]:
    """A multi-controlled X as {X, CX, CCX} on explicit wires.

    ``pool`` supplies dirty-borrowable wires disjoint from ctrls+target; the
    standard 4-Toffoli recursion restores them for every initial value.
    """
    m = len(ctrls)
    if m == 0:
        return [("X", [target])]
    if m == 1:
        return [("CX", [ctrls[0], target])]
    if m == 2:
        return [("CCX", [ctrls[0], ctrls[1], target])]
    if not pool:
        raise ValueError(f"a {m}-controlled X needs a borrowable wire")
    a = pool[0]
    inner = _mcx_gates([a] + ctrls[2:], target, ctrls[:2])
    outer = [("CCX", [ctrls[0], ctrls[1], a])]
    return outer + inner + outer + inner


def expand_decrementer(k: int, controls: int = 1) -> tuple[Circuit, int, bool]:
    """Expand the cascaded controlled decrement over {X, CX, CCX}.

    Returns (circuit, wire_count, uses_workspace).  A multi-controlled X
    with three or more controls cannot be realised on its own wires over
    {X, CX, CCX} (it is an odd permutation there), so such cascades borrow
    one extra dirty wire, appended last; the expansion then equals
    decrement (x) identity on the workspace.  Supported for k <= 3.
    """
    if k > 3:
        raise ValueError("decrementer expansion is provided for k <= 3 only")
    gs = qft_target_gates()
    base_wires = controls + k
    needs_borrow = (controls + k - 1) >= 3
    total = base_wires + (1 if needs_borrow else 0)
    pool = [base_wires] if needs_borrow else []
    steps: list[Circuit] = []
    ctrl_wires = list(range(controls))
    for j in range(k):
        target = controls + j
        all_ctrls = ctrl_wires + list(range(controls, controls + j))
        for name, ws in _mcx_gates(all_ctrls, target, pool):
            steps.append(apply_on_wires(gate_ref(name, gs), ws, total))
    return seq(*steps), total, needs_borrow


# -- the order-3 phase gate compiler --------------------------------------------------


def embed_rotation_one_level(k: int) -> tuple[Circuit, GateSet]:
    """One tower level: R_k on a data wire becomes CX then CR_(k-1).

    Evaluates to diag(1, 1, [[0, 1], [e^(2 pi i/2^(k-1)), 0]]).
    """
    if k < 2:
        raise ValueError("one-level embedding needs k >= 2")
    gs = GateSet("rk_level", [controlled_rotation_gate(k - 1), rotation_gate(k - 1)])
    gs.register(Gate("CX", 4, ExactMatrix.permutation([0, 1, 3, 2])))
    circuit = seq(gate_ref("CX", gs), gate_ref(f"CR{k-1}", gs))
    return circuit, gs


def compile_E(optimized: bool = False) -> CompiledProgram:
    """The order-3 phase gate as controlled-(omega8^5 H S) with its catalyst.

    The template is controlled-S, controlled-H, then T and Z on the data
    wire; T-count metadata is 6 unoptimised (3 for CS, 2 for CH, 1 for T),
    recorded as 4 with the ``optimized`` flag (a known rewrite, not
    performed here).
    """
    entry = catalog_get("omega3/Domega8")
    gs = clifford_t_extended()
    circuit = seq(
        gate_ref("CS", gs),
        gate_ref("CH", gs),
        Par(gate_ref("T", gs), Identity(2)),
        Par(gate_ref("Z", gs), Identity(2)),
    )
    source = ExactMatrix.diagonal([1, entry.tower.alpha])
    return CompiledProgram(
        circuit=circuit,
        gate_set=gs,
        catalysts=(CatalystSpec("v", (1,), entry.catalyst, entry.norm_sq),),
        source_description="order-3 phase gate E = diag(1, omega3)",
        source_matrix=source,
        register_layout={"data": [0], "catalyst": [1]},
        data_dimension=2,
        t_count=4 if optimized else gate_count_T(circuit),
        notes="controlled omega8^5 H S; catalyst register holds the omega3 eigenvector",
    )


def gate_count_T(circuit: Circuit) -> int:
    from .circuits import gate_count

    return gate_count(circuit, T_COUNT_WEIGHTS)


# -- the QFT compiler -------------------------------------------------------------------


def dft_matrix(n: int) -> ExactMatrix:
    """(1/2^(n/2)) [omega^(jk)] with omega = e^(2 pi i / 2^n)."""
    dim = 2**n
    w = zeta(2**n)
    scale = (sqrt2() / 2) ** n
    return ExactMatrix(dim, dim, [w ** ((j * k) % dim) for j in range(dim) for k in range(dim)]).scale(scale)


def build_QFT(n: int) -> tuple[Circuit, GateSet]:
    """The textbook layered QFT over {H, CR_k}, with final bit reversal."""
    if not 1 <= n <= 20:
        raise ValueError("qubit count must be in 1..20")
    gs = phase_gateset(n)
    steps: list[Circuit] = []
    for j in range(n):
        steps.append(apply_on_wires(gate_ref("H", gs), [j], n))
        for k in range(2, n - j + 1):
            steps.append(apply_on_wires(gate_ref(f"CR{k}", gs), [j, j + k - 1], n))
    if n > 1:
        steps.append(reversal_circuit(n))
    return seq(*steps), gs


def _psi_vector(k: int) -> ExactMatrix:
    return ExactMatrix.column([1, zeta(2**k)])


def compile_QFT(n: int, expand_decrementers: bool = False) -> CompiledProgram:
    """The QFT over {H, X, CX, CCX} plus decrementer blocks, with catalysts.

    Every controlled rotation CR_k becomes a doubly controlled decrement of
    the catalyst sub-register psi_k..psi_1 (controls: the rotation's control
    and target qubits).  With ``expand_decrementers``, blocks with k <= 3
    are rewritten over {X, CX, CCX}, borrowing one shared workspace wire.
    """
    if not 1 <= n <= 20:
        raise ValueError("qubit count must be in 1..20")
    n_cat = n if n >= 2 else 0
    use_borrow = expand_decrementers and n >= 2
    if expand_decrementers and n > 4:
        raise ValueError("decrementer expansion is provided for n <= 4 (k <= 3) only")
    total = n + n_cat + (1 if use_borrow else 0)
    gs = qft_target_gates()
    needed = [k for k in range(2, n + 1)]
    for k in needed:
        if not (expand_decrementers and k <= 3):
            gs.register(cdec_gate(k, controls=2))

    def psi_wire(k: int) -> int:
        # catalyst block holds psi_n .. psi_1 top to bottom
        return n + (n - k)

    steps: list[Circuit] = []
    for j in range(n):
        steps.append(apply_on_wires(gate_ref("H", gs), [j], total))
        for k in range(2, n - j + 1):
            wires = [j, j + k - 1] + [psi_wire(t) for t in range(k, 0, -1)]
            if expand_decrementers and k <= 3:
                block, width, borrowed = expand_decrementer(k, controls=2)
                if borrowed:
                    wires = wires + [total - 1]
                steps.append(apply_on_wires(block, wires, total))
            else:
                steps.append(apply_on_wires(gate_ref("C" * 2 + f"DEC{k}", gs), wires, total))
    if n > 1:
        steps.append(apply_on_wires(reversal_circuit(n), list(range(n)), total))
    circuit = seq(*steps)

    catalysts = tuple(
        CatalystSpec(f"psi_{k}", (psi_wire(k),), _psi_vector(k), CycElement.rational(2))
        for k in range(n, 0, -1)
    ) if n_cat else ()
    layout = {
        "data": list(range(n)),
        "catalysts": {f"psi_{k}": psi_wire(k) for k in range(n, 0, -1)} if n_cat else {},
    }
    if use_borrow:
        layout["workspace"] = [total - 1]
    return CompiledProgram(
        circuit=circuit,
        gate_set=gs,
        catalysts=catalysts,
        source_description=f"quantum Fourier transform on {n} qubits",
        source_matrix=dft_matrix(n) if n <= 5 else ExactMatrix.identity(1),
        register_layout=layout,
        data_dimension=2**n,
        extra_wires=1 if use_borrow else 0,
        notes="catalyst block psi_n..psi_1; each CR_k compiled to a doubly controlled decrement",
    )


def compile_inverse_QFT(n: int, expand_decrementers: bool = False) -> CompiledProgram:
    """The same circuit as compile_QFT run on X-conjugated catalysts.

    X|psi_k> is the Galois-conjugate catalyst; on that family the identical
    circuit implements the inverse transform exactly.
    """
    base = compile_QFT(n, expand_decrementers)
    x = ExactMatrix.from_rows([[0, 1], [1, 0]])
    catalysts = tuple(
        CatalystSpec(c.label + "_conj", c.wires, x @ c.vector, c.norm_sq) for c in base.catalysts
    )
    return CompiledProgram(
        circuit=base.circuit,
        gate_set=base.gate_set,
        catalysts=catalysts,
        source_description=f"inverse quantum Fourier transform on {n} qubits",
        source_matrix=dft_matrix(n).dagger() if n <= 5 else ExactMatrix.identity(1),
        register_layout=base.register_layout,
        data_dimension=base.data_dimension,
        extra_wires=base.extra_wires,
        notes="same circuit as the forward transform; catalysts conjugated by X",
    )


# -- analytic cost model -------------------------------------------------------------------


@dataclass(frozen=True)
class CostReport:
    kind: str
    size: int
    epsilon: Fraction
    approx_tcount: str
    catalytic_tcount: str
    ratio: str
    reduction_percent: str
    asymptotic_ratio: Optional[str]
    notes: str

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "size": self.size,
            "epsilon": f"{self.epsilon.numerator}/{self.epsilon.denominator}",
            "approx_tcount": self.approx_tcount,
            "catalytic_tcount": self.catalytic_tcount,
            "ratio": self.ratio,
            "reduction_percent": self.reduction_percent,
            "asymptotic_ratio": self.asymptotic_ratio,
            "notes": self.notes,
        }

    def csv_row(self) -> str:
        return ",".join(
            [
                self.kind,
                str(self.size),
                f"{self.epsilon.numerator}/{self.epsilon.denominator}",
                self.approx_tcount,
                self.catalytic_tcount,
                self.ratio,
                self.reduction_percent,
            ]
        )

    @staticmethod
    def csv_header() -> str:
        return "kind,size,epsilon,approx_tcount,catalytic_tcount,ratio,reduction_percent"


_DIGITS = 30


def _fmt(x: "mpmath.mpf") -> str:
    return mpmath.nstr(x, _DIGITS, strip_zeros=False)


def _log2(x: Fraction) -> "mpmath.mpf":
    return (mpmath.log(x.numerator) - mpmath.log(x.denominator)) / mpmath.log(2)


def cost_model(kind: str, size: int, epsilon: Fraction) -> CostReport:
    """Analytic T-count comparison: repeated approximation vs catalytic.

    egate: approx = m * 3*log2(m/eps); catalytic = 6*log2(1/eps) + 4*m.
    qft:   approx = (n(n-1)/2) * 3*log2(n(n-1)/(2*eps));
           catalytic = sum_k (n-k+1) * 4*(k-1)  +  3*n*log2(n/eps).
    """
    if not isinstance(epsilon, Fraction):
        epsilon = Fraction(epsilon)
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must be in (0, 1)")
    if size < 1:
        raise ValueError("size must be >= 1")
    with mpmath.workdps(_DIGITS + 20):
        if kind == "egate":
            m = size
            approx = 3 * m * _log2(Fraction(m) / epsilon)
            catalytic = 6 * _log2(1 / epsilon) + 4 * m
            asym = 4 / (3 * (50 + _log2(Fraction(m))))
            notes = (
                "approx: each of the m rotations approximated to eps/m at 3*log2(1/delta) T "
                "gates; catalytic: one catalyst prepared to eps (6*log2(1/eps)) plus 4 T "
                "gates per use; asymptotic ratio evaluated at eps = 1e-15"
            )
        elif kind == "qft":
            n = size
            rot = n * (n - 1) // 2
            approx = 3 * rot * _log2(Fraction(max(rot, 1)) / epsilon) if rot else mpmath.mpf(0)
            dec = sum((n - k + 1) * 4 * (k - 1) for k in range(2, n + 1))
            prep = 3 * n * _log2(Fraction(n) / epsilon)
            catalytic = dec + prep
            asym = None
            notes = (
                "approx: each of the n(n-1)/2 rotations approximated to 2*eps/(n(n-1)); "
                "catalytic: 4*(k-1) T per k-qubit controlled decrement (CDKM-style adder) "
                "plus n catalyst preparations psi_k = R_k H|0> to eps/n each"
            )
        else:
            raise ValueError(f"unknown cost kind {kind!r}")
        ratio = catalytic / approx if approx else mpmath.mpf("inf")
        reduction = (1 - ratio) * 100
        return CostReport(
            kind=kind,
            size=size,
            epsilon=epsilon,
            approx_tcount=_fmt(approx),
            catalytic_tcount=_fmt(catalytic),
            ratio=_fmt(ratio),
            reduction_percent=_fmt(reduction),
            asymptotic_ratio=_fmt(asym) if asym is not None else None,
            notes=notes,
        )
