"""Word-level circuit IR, gate registries, and exact evaluation.

Circuits are plain syntax trees: identity, swap, gate leaf, sequential and
parallel composition.  Two distinct trees are distinct circuits even when
their evaluations coincide; no rewriting is ever performed.

Conventions:

* ``Seq(c, d)`` denotes the composite c . d, evaluated as the matrix product
  e(c) @ e(d) -- d is the operation applied first.
* ``Par(c, d)`` denotes c tensor d with c on the upper wires, in the
  |a> tensor |b> = |a*n + b> basis convention.
* The s-expression grammar is
  circuit := I<n> | (swap <m> <n>) | gate-name | (seq c c) | (par c c)

Gate evaluations are validated as unitary at registration.  Permutation
gates of very large dimension (the wide controlled decrementers used by the
QFT compiler) evaluate lazily and are only materialised below a size cap;
their unitarity holds by construction.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Optional, Union

from .cyclotomic import imag_unit, omega3, sqrt2, zeta
from .matrix import ExactMatrix, swap_matrix

# Gates above this dimension keep a lazy evaluation and cannot be
# materialised; matches the simulator's guardrail.
MAX_EVAL_DIM = 4096


class Gate:
    """A named symbol with a fixed dimension and unitary evaluation.

    Permutation gates (such as the wide controlled decrementers) may supply
    their basis-image map lazily instead of a dense matrix: they are unitary
    by construction, the simulator applies them in O(dimension), and a dense
    evaluation is only materialised on demand below the size cap.
    """

    __slots__ = ("name", "dimension", "_evaluation", "_perm_factory", "_perm")

    def __init__(
        self,
        name: str,
        dimension: int,
        evaluation: Optional[ExactMatrix] = None,
        permutation_factory: Optional[Callable[[], list[int]]] = None,
    ):
        if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_+\-]*", name):
            raise ValueError(f"bad gate name: {name!r}")
        if (evaluation is None) == (permutation_factory is None):
            raise ValueError("exactly one of evaluation/permutation_factory required")
        self.name = name
        self.dimension = dimension
        self._perm_factory = permutation_factory
        self._perm: Optional[list[int]] = None
        self._evaluation = evaluation
        if evaluation is not None:
            if evaluation.shape() != (dimension, dimension):
                raise ValueError(f"gate {name}: evaluation shape {evaluation.shape()} != dimension {dimension}")
            if not evaluation.is_unitary():
                raise ValueError(f"gate {name}: evaluation is not unitary")

    @property
    def permutation(self) -> Optional[list[int]]:
        """Basis-image map |j> -> |images[j]> for permutation gates, else None."""
        if self._perm_factory is None:
            return None
        if self._perm is None:
            images = self._perm_factory()
            if len(images) != self.dimension or sorted(images) != list(range(self.dimension)):
                raise ValueError(f"gate {self.name}: image map is not a permutation")
            self._perm = images
        return self._perm

    @property
    def evaluation(self) -> ExactMatrix:
        if self._evaluation is None:
            if self.dimension > MAX_EVAL_DIM:
                raise ValueError(
                    f"gate {self.name} has dimension {self.dimension} > {MAX_EVAL_DIM}; "
                    "evaluation cannot be materialised"
                )
            self._evaluation = ExactMatrix.permutation(self.permutation)
        return self._evaluation

    def __repr__(self) -> str:
        return f"Gate({self.name}, dim={self.dimension})"


class GateSet:
    """A named collection of gates with unique names."""

    def __init__(self, name: str, gates: Iterable[Gate] = ()):
        self.name = name
        self.gates: dict[str, Gate] = {}
        for g in gates:
            self.register(g)

    def register(self, gate: Gate) -> "GateSet":
        if gate.name in self.gates:
            raise ValueError(f"duplicate gate name {gate.name!r} in gate set {self.name!r}")
        self.gates[gate.name] = gate
        return self

    def get(self, name: str) -> Gate:
        if name not in self.gates:
            raise KeyError(f"gate {name!r} not in gate set {self.name!r}")
        return self.gates[name]

    def __contains__(self, name: str) -> bool:
        return name in self.gates

    def extended(self, name: str, gates: Iterable[Gate]) -> "GateSet":
        out = GateSet(name, self.gates.values())
        for g in gates:
            out.register(g)
        return out

    def __repr__(self) -> str:
        return f"GateSet({self.name}: {sorted(self.gates)})"


# -- circuit trees ------------------------------------------------------------


@dataclass(frozen=True)
class Identity:
    n: int

    @property
    def dimension(self) -> int:
        return self.n


@dataclass(frozen=True)
class Swap:
    m: int
    n: int

    @property
    def dimension(self) -> int:
        return self.m * self.n


@dataclass(frozen=True)
class GateRef:
    name: str
    dim: int

    @property
    def dimension(self) -> int:
        return self.dim


@dataclass(frozen=True)
class Seq:
    """after . before: ``before`` acts first."""

    after: "Circuit"
    before: "Circuit"

    def __post_init__(self):
        a, b = self.after.dimension, self.before.dimension
        if a != b:
            raise ValueError(f"Seq dimension mismatch: {a} vs {b}")
        object.__setattr__(self, "_dim", a)  # cached; children are O(1) too

    @property
    def dimension(self) -> int:
        return self._dim  # type: ignore[attr-defined]


@dataclass(frozen=True)
class Par:
    top: "Circuit"
    bottom: "Circuit"

    def __post_init__(self):
        object.__setattr__(self, "_dim", self.top.dimension * self.bottom.dimension)

    @property
    def dimension(self) -> int:
        return self._dim  # type: ignore[attr-defined]


Circuit = Union[Identity, Swap, GateRef, Seq, Par]


def gate_ref(name: str, gs: GateSet) -> GateRef:
    return GateRef(name, gs.get(name).dimension)


def seq(*circuits: Circuit) -> Circuit:
    """Left-to-right time order: seq(a, b, c) applies a, then b, then c."""
    if not circuits:
        raise ValueError("seq needs at least one circuit")
    out = circuits[0]
    for c in circuits[1:]:
        out = Seq(c, out)
    return out


def par(*circuits: Circuit) -> Circuit:
    if not circuits:
        raise ValueError("par needs at least one circuit")
    out = circuits[0]
    for c in circuits[1:]:
        out = Par(out, c)
    return out


def evaluate(c: Circuit, gs: GateSet) -> ExactMatrix:
    """Structural evaluation; a monoidal homomorphism into unitary matrices."""
    if isinstance(c, Identity):
        return ExactMatrix.identity(c.n)
    if isinstance(c, Swap):
        return swap_matrix(c.m, c.n)
    if isinstance(c, GateRef):
        g = gs.get(c.name)
        if g.dimension != c.dim:
            raise ValueError(f"gate {c.name} has dimension {g.dimension}, reference says {c.dim}")
        return g.evaluation
    if isinstance(c, Seq):
        return evaluate(c.after, gs) @ evaluate(c.before, gs)
    if isinstance(c, Par):
        return evaluate(c.top, gs).tensor(evaluate(c.bottom, gs))
    raise TypeError(f"not a circuit: {c!r}")


def gate_count(c: Circuit, weights: Mapping[str, int]) -> int:
    """Weighted count over gate leaves; identities and swaps cost 0."""
    if isinstance(c, (Identity, Swap)):
        return 0
    if isinstance(c, GateRef):
        return weights.get(c.name, 0)
    if isinstance(c, Seq):
        return gate_count(c.after, weights) + gate_count(c.before, weights)
    if isinstance(c, Par):
        return gate_count(c.top, weights) + gate_count(c.bottom, weights)
    raise TypeError(f"not a circuit: {c!r}")


def gate_leaves(c: Circuit) -> list[str]:
    if isinstance(c, (Identity, Swap)):
        return []
    if isinstance(c, GateRef):
        return [c.name]
    if isinstance(c, Seq):
        return gate_leaves(c.before) + gate_leaves(c.after)
    if isinstance(c, Par):
        return gate_leaves(c.top) + gate_leaves(c.bottom)
    raise TypeError(f"not a circuit: {c!r}")


# -- text form -----------------------------------------------------------------

_TOKEN = re.compile(r"\(|\)|[^\s()]+")


def circuit_print(c: Circuit) -> str:
    if isinstance(c, Identity):
        return f"I{c.n}"
    if isinstance(c, Swap):
        return f"(swap {c.m} {c.n})"
    if isinstance(c, GateRef):
        return c.name
    if isinstance(c, Seq):
        return f"(seq {circuit_print(c.after)} {circuit_print(c.before)})"
    if isinstance(c, Par):
        return f"(par {circuit_print(c.top)} {circuit_print(c.bottom)})"
    raise TypeError(f"not a circuit: {c!r}")


def circuit_parse(text: str, gs: GateSet) -> Circuit:
    tokens = _TOKEN.findall(text)
    pos = 0

    def parse() -> Circuit:
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("unexpected end of input")
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            head = tokens[pos]
            pos += 1
            if head == "swap":
                m, n = int(tokens[pos]), int(tokens[pos + 1])
                pos += 2
                node: Circuit = Swap(m, n)
            elif head == "seq":
                a = parse()
                b = parse()
                node = Seq(a, b)
            elif head == "par":
                a = parse()
                b = parse()
                node = Par(a, b)
            else:
                raise ValueError(f"unknown form {head!r}")
            if pos >= len(tokens) or tokens[pos] != ")":
                raise ValueError("expected ')'")
            pos += 1
            return node
        if tok == ")":
            raise ValueError("unexpected ')'")
        if re.fullmatch(r"I\d+", tok):
            return Identity(int(tok[1:]))
        return gate_ref(tok, gs)

    out = parse()
    if pos != len(tokens):
        raise ValueError(f"trailing input: {' '.join(tokens[pos:])}")
    return out


# -- JSON form -----------------------------------------------------------------


def circuit_to_json(c: Circuit) -> dict:
    if isinstance(c, Identity):
        return {"id": c.n}
    if isinstance(c, Swap):
        return {"swap": [c.m, c.n]}
    if isinstance(c, GateRef):
        return {"gate": c.name}
    if isinstance(c, Seq):
        return {"seq": [circuit_to_json(c.after), circuit_to_json(c.before)]}
    if isinstance(c, Par):
        return {"par": [circuit_to_json(c.top), circuit_to_json(c.bottom)]}
    raise TypeError(f"not a circuit: {c!r}")


def circuit_from_json(data: dict, gs: GateSet) -> Circuit:
    if "id" in data:
        return Identity(int(data["id"]))
    if "swap" in data:
        m, n = data["swap"]
        return Swap(int(m), int(n))
    if "gate" in data:
        return gate_ref(data["gate"], gs)
    if "seq" in data:
        a, b = data["seq"]
        return Seq(circuit_from_json(a, gs), circuit_from_json(b, gs))
    if "par" in data:
        a, b = data["par"]
        return Par(circuit_from_json(a, gs), circuit_from_json(b, gs))
    raise ValueError(f"bad circuit JSON node: {json.dumps(data)[:80]}")


# -- standard gates and gate sets -------------------------------------------------


def _h_matrix() -> ExactMatrix:
    return ExactMatrix.from_rows([[1, 1], [1, -1]]).scale(sqrt2() / 2)


def _x_matrix() -> ExactMatrix:
    return ExactMatrix.from_rows([[0, 1], [1, 0]])


def controlled(u: ExactMatrix) -> ExactMatrix:
    """diag(I, U): apply U when the top (control) qubit is 1."""
    return ExactMatrix.identity(u.rows).direct_sum(u)


def clifford_t() -> GateSet:
    """{H, T, CX} of the Clifford+T gate set."""
    h = _h_matrix()
    t = ExactMatrix.diagonal([1, zeta(8)])
    return GateSet(
        "clifford_t",
        [
            Gate("H", 2, h),
            Gate("T", 2, t),
            Gate("CX", 4, controlled(_x_matrix())),
        ],
    )


def clifford_t_extended() -> GateSet:
    """Clifford+T plus the derived one- and two-qubit gates used by templates.

    S, Z, X are Clifford+T words; CS and CH are the standard controlled-S and
    controlled-H constructions, carried here as primitives with their known
    T-costs (3 and 2) attached via cost weights rather than expansion.
    """
    i = imag_unit()
    s = ExactMatrix.diagonal([1, i])
    h = _h_matrix()
    return clifford_t().extended(
        "clifford_t_ext",
        [
            Gate("S", 2, s),
            Gate("Z", 2, ExactMatrix.diagonal([1, -1])),
            Gate("X", 2, _x_matrix()),
            Gate("CS", 4, controlled(s)),
            Gate("CH", 4, controlled(h)),
        ],
    )


# Clifford+T costs of the template primitives (controlled-S uses 3 T gates,
# controlled-H uses 2, T itself is 1; Cliffords are free).
T_COUNT_WEIGHTS = {"T": 1, "CS": 3, "CH": 2}


def clifford_t_plus_E() -> GateSet:
    """Clifford+T extended by the order-3 phase gate E = diag(1, omega3)."""
    e = ExactMatrix.diagonal([1, omega3()])
    return clifford_t_extended().extended("clifford_t_E", [Gate("E", 2, e)])


def toffoli_gates() -> GateSet:
    """{X, CX, CCX}."""
    x = _x_matrix()
    cx = controlled(x)
    return GateSet(
        "toffoli",
        [Gate("X", 2, x), Gate("CX", 4, cx), Gate("CCX", 8, controlled(cx))],
    )


def qft_target_gates() -> GateSet:
    """{H, X, CX, CCX}: the target set of the catalytic QFT."""
    return toffoli_gates().extended("qft_target", [Gate("H", 2, _h_matrix())])


def rotation_gate(k: int) -> Gate:
    """R_k = diag(1, e^(2 pi i / 2^k))."""
    return Gate(f"R{k}", 2, ExactMatrix.diagonal([1, zeta(2**k)]))


def controlled_rotation_gate(k: int) -> Gate:
    """Controlled R_k (symmetric: diag(1,1,1, e^(2 pi i / 2^k)))."""
    return Gate(f"CR{k}", 4, ExactMatrix.diagonal([1, 1, 1, zeta(2**k)]))


def phase_gateset(n: int) -> GateSet:
    """{H, CR_2..CR_n} plus R_k references: the textbook QFT building blocks."""
    gs = GateSet("qft_phase", [Gate("H", 2, _h_matrix())])
    for k in range(2, max(n, 1) + 1):
        gs.register(controlled_rotation_gate(k))
        gs.register(rotation_gate(k))
    return gs


def rx3_gateset() -> GateSet:
    """{R, X} with R = diag(1, omega3): the order-3 rotation example set."""
    return GateSet(
        "rx3",
        [Gate("R", 2, ExactMatrix.diagonal([1, omega3()])), Gate("X", 2, _x_matrix())],
    )
