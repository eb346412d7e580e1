"""Pre-embeddings, the catalytic condition, circuit lifting, concatenation,
and strong/linear classification of candidate embeddings.

A pre-embedding is induced by a tower R in R[alpha] together with a normal
pseudo-companion matrix Lambda over R for alpha's minimal polynomial:

    M = sum_j M_j alpha^j   |-->   Phi(M) = sum_j M_j tensor Lambda^j.

The catalytic projector Pi is the exact eigenprojector of Lambda for the
eigenvalue alpha; it may have entries outside R (it is a verification
artifact, never a circuit).  All validation is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product
from typing import Mapping, Optional, Sequence

from .circuits import (
    Circuit,
    GateRef,
    GateSet,
    Identity,
    Par,
    Seq,
    Swap,
    evaluate,
    seq,
)
from .cyclotomic import CycElement, GaloisAutomorphism
from .matrix import Eigenspace, ExactMatrix
from .rings import (
    RingMembershipError,
    RingTower,
    _coset_representatives,
    extension_members_decompose,
    make_tower,
)


class PreEmbeddingError(ValueError):
    """A named failure of one of the pre-embedding conditions."""


class NotNormal(PreEmbeddingError):
    pass


class NotAnnihilated(PreEmbeddingError):
    pass


class AlphaNotEigenvalue(PreEmbeddingError):
    pass


class RingViolation(PreEmbeddingError):
    pass


class TemplateMismatch(ValueError):
    pass


class UnsupportedCase(ValueError):
    """The Galois-case hypothesis of the projector-family corollary failed."""


class PreEmbedding:
    """A validated (tower, Lambda) pair with its catalytic projector.

    Instances are immutable after construction; use :func:`preembed_make`.
    """

    def __init__(self, tower: RingTower, lam: ExactMatrix, eigenspace: Eigenspace, char_power: int):
        self.tower = tower
        self.lam = lam
        self.eigenspace = eigenspace
        self.projector = eigenspace.projector
        self.dimension = lam.rows  # k
        self.char_power = char_power  # char(Lambda) = p^char_power
        self._lam_powers: list[ExactMatrix] = [ExactMatrix.identity(lam.rows), lam]
        self._reps: Optional[list[int]] = None
        self._id_tensor_pi: dict[int, ExactMatrix] = {}

    # -- cached helpers --------------------------------------------------------

    def lam_power(self, j: int) -> ExactMatrix:
        while len(self._lam_powers) <= j:
            self._lam_powers.append(self._lam_powers[-1] @ self.lam)
        return self._lam_powers[j]

    def conjugate_reps(self) -> list[int]:
        """Galois exponents giving the distinct conjugates of alpha (id first)."""
        if self._reps is None:
            self._reps = _coset_representatives(self.tower)
        return self._reps

    def id_tensor_pi(self, n: int, projector: Optional[ExactMatrix] = None) -> ExactMatrix:
        pi = self.projector if projector is None else projector
        if projector is None and n in self._id_tensor_pi:
            return self._id_tensor_pi[n]
        out = ExactMatrix.identity(n).tensor(pi)
        if projector is None:
            self._id_tensor_pi[n] = out
        return out

    def __repr__(self) -> str:
        return (
            f"PreEmbedding({self.tower.base.name}[{self.tower.alpha}], "
            f"k={self.dimension}, c={self.char_power})"
        )


def preembed_make(tower: RingTower, lam: ExactMatrix) -> PreEmbedding:
    """Validate the construction conditions and compute the projector.

    Checks, in order: Lambda is square over the base ring (RingViolation),
    normal (NotNormal), annihilated by the tower's minimal polynomial
    (NotAnnihilated), and has alpha among its eigenvalues
    (AlphaNotEigenvalue).  The generating-set condition is automatic because
    towers carry integral minimal polynomials and the basis {alpha^j}.
    """
    if not lam.is_square():
        raise PreEmbeddingError("Lambda must be square")
    for idx, entry in enumerate(lam.entries):
        if not tower.base.contains(entry):
            raise RingViolation(
                f"Lambda entry ({idx // lam.cols},{idx % lam.cols}) = {entry} "
                f"is not in {tower.base.name}"
            )
    if not lam.is_normal():
        raise NotNormal("Lambda is not normal")
    p = tower.minimal_polynomial
    if not p(lam).is_zero():
        raise NotAnnihilated("p(Lambda) != 0 for the tower's minimal polynomial")
    if lam.rows % tower.degree:
        raise NotAnnihilated(
            f"dimension {lam.rows} is not a multiple of the minimal polynomial degree {tower.degree}"
        )
    c = lam.rows // tower.degree
    if lam.char_poly() != p**c:
        # p irreducible and p(Lambda) = 0 force char = p^c; reaching this
        # indicates an inconsistent tower.
        raise NotAnnihilated("characteristic polynomial is not the expected power of p")
    try:
        eigenspace = lam.eigenspace_for(tower.alpha)
    except ValueError as exc:
        raise AlphaNotEigenvalue(str(exc)) from exc
    return PreEmbedding(tower, lam, eigenspace, c)


# -- the pre-embedding map ---------------------------------------------------------


def decompose_matrix(pe: PreEmbedding, m: ExactMatrix, *, ring_strict: bool = True) -> list[ExactMatrix]:
    """Write M = sum_j M_j alpha^j with M_j over the base (unique).

    With ring_strict, every coefficient must lie in the base *ring*; without
    it, the base field suffices (used for verification artifacts like
    projectors).
    """
    tower = pe.tower
    coeff_grids: list[list[CycElement]] = [[] for _ in range(tower.degree)]
    for idx, entry in enumerate(m.entries):
        try:
            cs = extension_members_decompose(tower, entry)
        except RingMembershipError as exc:
            raise RingViolation(
                f"entry ({idx // m.cols},{idx % m.cols}) = {entry}: {exc}"
            ) from exc
        if ring_strict:
            for c in cs:
                if not tower.base.contains(c):
                    raise RingViolation(
                        f"entry ({idx // m.cols},{idx % m.cols}) = {entry} decomposes "
                        f"with coefficient {c} outside {tower.base.name}"
                    )
        for j, c in enumerate(cs):
            coeff_grids[j].append(c)
    return [ExactMatrix(m.rows, m.cols, grid) for grid in coeff_grids]


def phi_apply(pe: PreEmbedding, m: ExactMatrix, *, ring_strict: bool = True) -> ExactMatrix:
    """Phi(M) = sum_j M_j tensor Lambda^j."""
    parts = decompose_matrix(pe, m, ring_strict=ring_strict)
    out = ExactMatrix.zeros(m.rows * pe.dimension, m.cols * pe.dimension)
    for j, mj in enumerate(parts):
        if not mj.is_zero():
            out = out + mj.tensor(pe.lam_power(j))
    return out


def catalytic_check(pe: PreEmbedding, m: ExactMatrix, *, ring_strict: bool = True) -> bool:
    """Phi(M)(I tensor Pi) == M tensor Pi, and the left-sided version."""
    if not m.is_square():
        raise ValueError("catalytic condition applies to square matrices")
    phi_m = phi_apply(pe, m, ring_strict=ring_strict)
    ip = pe.id_tensor_pi(m.rows)
    target = m.tensor(pe.projector)
    return phi_m @ ip == target and ip @ phi_m == target


# -- projector families (the Galois case) ----------------------------------------


def projector_family(
    pe: PreEmbedding, probes: Sequence[ExactMatrix] = ()
) -> list[tuple[GaloisAutomorphism, ExactMatrix]]:
    """The Galois orbit {tau(Pi)}: complete, mutually orthogonal projectors.

    Returns one representative automorphism per distinct projector.  Verifies
    completeness (sum = I), pairwise orthogonality, and for each supplied
    probe M the twisted catalytic law
    Phi(M)(I tensor tau(Pi)) = tau(M) tensor tau(Pi).
    Raises UnsupportedCase when the orbit does not behave as in the Galois
    case (the only case implemented).
    """
    base = pe.tower.base
    family: list[tuple[GaloisAutomorphism, ExactMatrix]] = []
    for k in base.fixing_exponents():
        g = GaloisAutomorphism(base.conductor, k)
        img = pe.projector.galois(g)
        if all(img != m for _, m in family):
            family.append((g, img))
    if len(family) != pe.tower.degree:
        raise UnsupportedCase(
            f"expected {pe.tower.degree} distinct projectors, found {len(family)}; "
            "the extension is outside the implemented Galois case"
        )
    total = ExactMatrix.zeros(pe.dimension, pe.dimension)
    for idx, (g, img) in enumerate(family):
        if not img.is_orthogonal_projector():
            raise UnsupportedCase(f"tau(Pi) for tau={g} is not an orthogonal projector")
        if pe.lam @ img != img.scale(g(pe.tower.alpha)):
            raise UnsupportedCase(f"tau(Pi) for tau={g} is not the tau(alpha) eigenprojector")
        for _, other in family[idx + 1 :]:
            if not (img @ other).is_zero():
                raise UnsupportedCase("projector family is not mutually orthogonal")
        total = total + img
    if not total.is_identity():
        raise UnsupportedCase("projector family does not sum to the identity")
    for m in probes:
        phi_m = phi_apply(pe, m, ring_strict=False)
        for g, img in family:
            lhs = phi_m @ pe.id_tensor_pi(m.rows, img)
            rhs = m.galois(g).tensor(img)
            if lhs != rhs:
                raise UnsupportedCase(f"twisted catalytic law failed for tau={g}")
    return family


def trace_reconstruct(pe: PreEmbedding, m: ExactMatrix) -> ExactMatrix:
    """sum_tau tau(M) tensor tau(Pi): the field-trace form of Phi(M)."""
    out = ExactMatrix.zeros(m.rows * pe.dimension, m.cols * pe.dimension)
    for g, img in projector_family(pe):
        out = out + m.galois(g).tensor(img)
    return out


# -- gate-set lifting ---------------------------------------------------------------


@dataclass(frozen=True)
class GateEmbedding:
    """A validated per-gate template: evaluate(circuit) == Phi(e(gate))."""

    source_gate: str
    embedded_circuit: Circuit
    projector: ExactMatrix


def lift_gateset(
    pe: PreEmbedding,
    source: GateSet,
    templates: Mapping[str, Circuit],
    target: GateSet,
) -> dict[str, GateEmbedding]:
    """Validate one circuit template per source gate against Phi(e(gate))."""
    out: dict[str, GateEmbedding] = {}
    for name, template in templates.items():
        expected = phi_apply(pe, source.get(name).evaluation)
        actual = evaluate(template, target)
        if actual != expected:
            raise TemplateMismatch(
                f"template for gate {name!r} evaluates incorrectly"
            )
        out[name] = GateEmbedding(name, template, pe.projector)
    return out


def lift_circuit(embeddings: Mapping[str, GateEmbedding], c: Circuit, k: int) -> Circuit:
    """The induced embedding of a circuit, by structural recursion.

    k is the catalyst dimension shared by all (homogeneous) gate embeddings.
    """
    if isinstance(c, Identity):
        return Par(Identity(c.n), Identity(k))
    if isinstance(c, Swap):
        return Par(Swap(c.m, c.n), Identity(k))
    if isinstance(c, GateRef):
        if c.name not in embeddings:
            raise KeyError(f"no embedding for gate {c.name!r}")
        return embeddings[c.name].embedded_circuit
    if isinstance(c, Seq):
        return Seq(
            lift_circuit(embeddings, c.after, k),
            lift_circuit(embeddings, c.before, k),
        )
    if isinstance(c, Par):
        m = c.top.dimension
        n = c.bottom.dimension
        return seq(
            Par(Identity(m), Swap(n, k)),
            Par(lift_circuit(embeddings, c.top, k), Identity(n)),
            Par(Identity(m), Swap(k, n)),
            Par(Identity(m), lift_circuit(embeddings, c.bottom, k)),
        )
    raise TypeError(f"not a circuit: {c!r}")


# -- concatenation ------------------------------------------------------------------


def concat(first: PreEmbedding, second: PreEmbedding) -> PreEmbedding:
    """Concatenate: apply ``first`` (upper tower), then ``second`` (lower).

    first embeds matrices over mid[beta] into mid; second embeds matrices
    over R[alpha] = mid into R.  The composite is the pre-embedding for
    R in R[beta] with Lambda' = Phi_second(Lambda_first) and projector
    Pi_first tensor Pi_second.
    """
    composite_tower = make_tower(second.tower.base, first.tower.alpha)
    lam = phi_apply(second, first.lam)
    pe = preembed_make(composite_tower, lam)
    expected_pi = first.projector.tensor(second.projector)
    if pe.projector != expected_pi:
        raise UnsupportedCase(
            "composite eigenprojector does not factor as Pi_1 tensor Pi_2; "
            "multiplicities outside the implemented case"
        )
    return pe


# -- classification of candidate embeddings ------------------------------------------


@dataclass(frozen=True)
class ClassificationReport:
    verdict: str  # not_strong | strong_not_linear | linear_consistent
    witness: tuple
    detail: str

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "witness": _witness_json(self.witness), "detail": self.detail}


def _witness_json(w):
    if isinstance(w, tuple):
        return [_witness_json(x) for x in w]
    if isinstance(w, Fraction):
        return str(w)
    return w


def _matrix_key(m: ExactMatrix, conductor: int):
    return tuple(
        tuple(sorted(e.lift(conductor).coeffs.items())) for e in m.entries
    )


def _word_str(word: tuple[str, ...]) -> str:
    return ".".join(word)


def classify(
    candidate: Mapping[str, ExactMatrix],
    projector: ExactMatrix,
    source: GateSet,
    max_word_len: int = 5,
) -> ClassificationReport:
    """Bounded-word-length strong/linear classification of a gate embedding.

    ``candidate`` maps each source gate name to the evaluation of its
    embedded circuit.  The catalytic condition is checked for every gate
    first.  Strength is tested by comparing evaluation-equality of all source
    words up to ``max_word_len`` with that of their images; linearity by
    checking that every rational linear relation among distinct source word
    evaluations is satisfied by the images.
    """
    names = sorted(candidate)
    k = projector.rows
    for name in names:
        g = source.get(name)
        img = candidate[name]
        if img.rows != g.dimension * k:
            raise ValueError(f"embedded matrix for {name} has wrong dimension")
        ip = ExactMatrix.identity(g.dimension).tensor(projector)
        if img @ ip != g.evaluation.tensor(projector):
            raise ValueError(f"candidate violates the catalytic condition on gate {name}")

    conductor = math.lcm(
        projector.conductor,
        *(candidate[n].conductor for n in names),
        *(source.get(n).evaluation.conductor for n in names),
    )

    # Enumerate words in length, then lexicographic, order.
    words: list[tuple[str, ...]] = []
    for length in range(1, max_word_len + 1):
        words.extend(iter_product(names, repeat=length))

    source_evals: dict[tuple[str, ...], ExactMatrix] = {}
    embed_evals: dict[tuple[str, ...], ExactMatrix] = {}
    for w in words:
        se = source.get(w[0]).evaluation
        ee = candidate[w[0]]
        for g in w[1:]:
            se = se @ source.get(g).evaluation
            ee = ee @ candidate[g]
        source_evals[w] = se
        embed_evals[w] = ee

    by_source: dict = {}
    by_embed: dict = {}
    for w in words:
        by_source.setdefault(_matrix_key(source_evals[w], conductor), []).append(w)
        by_embed.setdefault(_matrix_key(embed_evals[w], conductor), []).append(w)

    # e(C) = e(D) must imply equal images...
    for group in by_source.values():
        w0 = group[0]
        for w in group[1:]:
            if embed_evals[w] != embed_evals[w0]:
                return ClassificationReport(
                    "not_strong",
                    (_word_str(w0), _word_str(w)),
                    f"e({_word_str(w0)}) = e({_word_str(w)}) but the embedded evaluations differ",
                )
    # ... and equal images must come from equal evaluations.
    for group in by_embed.values():
        w0 = group[0]
        for w in group[1:]:
            if source_evals[w] != source_evals[w0]:
                return ClassificationReport(
                    "not_strong",
                    (_word_str(w0), _word_str(w)),
                    f"embedded evaluations of {_word_str(w0)} and {_word_str(w)} coincide "
                    "but the source evaluations differ",
                )

    # Linearity over rational coefficients: every vanishing rational
    # combination of distinct source evaluations must vanish on the images.
    reps = [group[0] for group in by_source.values()]
    mats = [source_evals[w] for w in reps]
    imgs = [embed_evals[w] for w in reps]
    relation_basis = _rational_kernel(mats, conductor)
    for rel in relation_basis:
        acc = ExactMatrix.zeros(imgs[0].rows, imgs[0].cols)
        for coeff, img in zip(rel, imgs):
            if coeff:
                acc = acc + img.scale(coeff)
        if not acc.is_zero():
            terms = tuple((str(coeff), _word_str(w)) for coeff, w in zip(rel, reps) if coeff)
            return ClassificationReport(
                "strong_not_linear",
                terms,
                "a rational relation among source evaluations fails on the images",
            )
    return ClassificationReport(
        "linear_consistent",
        (),
        f"strong, and all rational relations up to word length {max_word_len} are preserved",
    )


def _rational_kernel(mats: list[ExactMatrix], conductor: int) -> list[list[Fraction]]:
    """Kernel (over Q) of the matrix whose columns are vec(mats[i])."""
    from .cyclotomic import euler_phi

    deg = euler_phi(conductor)
    rows = []
    entry_count = mats[0].rows * mats[0].cols
    for e_idx in range(entry_count):
        for coord in range(deg):
            rows.append(
                [m.entries[e_idx].lift(conductor).coeffs.get(coord, Fraction(0)) for m in mats]
            )
    # Gaussian elimination; free columns give kernel vectors.
    ncols = len(mats)
    piv_of_col: dict[int, int] = {}
    r = 0
    work = [row[:] for row in rows]
    for c in range(ncols):
        piv = next((i for i in range(r, len(work)) if work[i][c]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        f = work[r][c]
        work[r] = [x / f for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c]:
                g = work[i][c]
                work[i] = [x - g * y for x, y in zip(work[i], work[r])]
        piv_of_col[c] = r
        r += 1
    out = []
    for fc in range(ncols):
        if fc in piv_of_col:
            continue
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for c, pr in piv_of_col.items():
            v[c] = -work[pr][fc]
        out.append(v)
    return out
