"""Certification that a noisy implementation stays close to its ideal map.

The central quantity is the implementation inaccuracy at a state rho:

    || lower(P(lift(rho))) - G(rho) ||_1

where G is the ideal channel on the logical space, P the implemented
channel on the (possibly larger) computational space, and lift/lower the
linking maps between the two.  Its maximum alpha over a computation's
input states combines with the intrinsic failure bound p into a per-input
failure bound p + alpha.  That combined bound is a theorem: if an instance
violates it the numerics are broken, so the check raises instead of
reporting a false flag.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .channels import Circuit, KrausChannel, NoiseModel, apply, compile_ideal, compile_noisy
from .densmat import DensityMatrix, pure_state, tensor, trace_norm, partial_trace
from .densmat import effect_probability
from .errors import (
    BadProbabilityError,
    DimensionMismatchError,
    DomainError,
    TheoremViolationError,
)
from .kitaev import OverallComputation, ideal_failure_bound

# Absolute slack on the favorable side of every bound check in this module.
BOUND_SLACK = 1e-9


@dataclass(frozen=True)
class LinkingMaps:
    """Logical-to-computational embedding: append a fixed ancilla, trace it out.

    ancilla_dim = 1 makes both directions the identity.
    """

    ancilla_dim: int = 1

    def __post_init__(self):
        if not isinstance(self.ancilla_dim, int) or self.ancilla_dim < 1:
            raise DimensionMismatchError(
                f"ancilla_dim must be a positive integer, got {self.ancilla_dim!r}"
            )


@dataclass(frozen=True)
class InputRecord:
    """Per-input certification data."""

    x: str
    ideal_success: float
    actual_success: float
    inaccuracy_x: float


@dataclass(frozen=True)
class QccReport:
    per_input: tuple[InputRecord, ...]
    alpha: float
    p: float
    bound_holds: bool
    worst_margin: float

    def __post_init__(self):
        object.__setattr__(self, "per_input", tuple(self.per_input))
        if not self.per_input:
            raise DimensionMismatchError("report needs at least one input record")
        worst = max(r.inaccuracy_x for r in self.per_input)
        if abs(worst - self.alpha) > 1e-12:
            raise DomainError(
                f"alpha {self.alpha} is not the max per-input inaccuracy {worst}"
            )
        holds = all(
            (1.0 - r.actual_success) <= self.p + self.alpha + BOUND_SLACK
            for r in self.per_input
        )
        if holds != self.bound_holds:
            raise DomainError("bound_holds flag contradicts the per-input records")

    def to_dict(self) -> dict:
        """JSON-ready form, fields in declaration order."""
        return {
            "per_input": [
                {
                    "x": r.x,
                    "ideal_success": r.ideal_success,
                    "actual_success": r.actual_success,
                    "inaccuracy_x": r.inaccuracy_x,
                }
                for r in self.per_input
            ],
            "alpha": self.alpha,
            "p": self.p,
            "bound_holds": self.bound_holds,
            "worst_margin": self.worst_margin,
        }


class MixingCheck(NamedTuple):
    measured: float
    bound: float
    holds: bool


_ANCILLA_GROUND: dict[int, DensityMatrix] = {}


def _ancilla_ground(dim: int) -> DensityMatrix:
    if dim not in _ANCILLA_GROUND:
        m = np.zeros((dim, dim), dtype=complex)
        m[0, 0] = 1.0
        _ANCILLA_GROUND[dim] = DensityMatrix(m)
    return _ANCILLA_GROUND[dim]


def lift(rho_logical: DensityMatrix, link: LinkingMaps) -> DensityMatrix:
    """Embed a logical state into the computational space: rho -> rho (x) |0><0|."""
    if link.ancilla_dim == 1:
        return rho_logical
    return tensor(rho_logical, _ancilla_ground(link.ancilla_dim))


def lower(rho_comp: DensityMatrix, link: LinkingMaps) -> DensityMatrix:
    """Project a computational state back down: trace out the ancilla factor."""
    if link.ancilla_dim == 1:
        return rho_comp
    if rho_comp.dim % link.ancilla_dim != 0:
        raise DimensionMismatchError(
            f"dim {rho_comp.dim} is not divisible by ancilla_dim {link.ancilla_dim}"
        )
    return partial_trace(rho_comp, rho_comp.dim // link.ancilla_dim, link.ancilla_dim)


def implementation_inaccuracy(
    P: KrausChannel, G: KrausChannel, link: LinkingMaps, rho: DensityMatrix
) -> float:
    """Trace-norm gap between the implemented and ideal outputs at one state."""
    if G.dim_in != rho.dim:
        raise DimensionMismatchError(
            f"ideal channel expects dim {G.dim_in}, state has dim {rho.dim}"
        )
    if P.dim_in != rho.dim * link.ancilla_dim:
        raise DimensionMismatchError(
            f"implemented channel expects dim {P.dim_in}, "
            f"lifted state has dim {rho.dim * link.ancilla_dim}"
        )
    actual = lower(apply(P, lift(rho, link)), link)
    ideal = apply(G, rho)
    return trace_norm(actual.entries - ideal.entries)


def alpha_over_inputs(
    P: KrausChannel, G: KrausChannel, link: LinkingMaps, comp: OverallComputation
) -> float:
    """Worst-case inaccuracy over the computation's own input states."""
    return max(
        implementation_inaccuracy(P, G, link, comp.init[x]) for x in comp.inputs
    )


def alpha_random_search(
    P: KrausChannel, G: KrausChannel, link: LinkingMaps, trials: int, seed: int
) -> float:
    """Estimate the all-states supremum by sampling Haar-random pure states.

    A lower bound on the true supremum; reported alongside the input-level
    alpha, never used in the certified bound.  Counter-based generator keyed
    by (seed, trial) so serial and parallel evaluation orders agree.
    """
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    dim = G.dim_in
    key_hi = int(seed) % (2 ** 64)
    worst = 0.0
    for t in range(trials):
        gen = np.random.Generator(
            np.random.Philox(key=np.array([key_hi, t], dtype=np.uint64))
        )
        v = gen.standard_normal(dim) + 1j * gen.standard_normal(dim)
        v = v / np.linalg.norm(v)
        worst = max(worst, implementation_inaccuracy(P, G, link, pure_state(v)))
    return worst


def implemented_channel(
    circ: Circuit, noise: NoiseModel, link: LinkingMaps = LinkingMaps()
) -> KrausChannel:
    """The noisy compiled map on the computational space.

    The compiled channel acts on the logical register; a nontrivial linking
    pair widens it to act as the identity on the appended ancilla.
    """
    P = compile_noisy(circ, noise)
    if link.ancilla_dim > 1:
        eye_anc = np.eye(link.ancilla_dim)
        P = KrausChannel(tuple(np.kron(k, eye_anc) for k in P.kraus_ops))
    return P


def certify_combined_bound(
    circ: Circuit,
    noise: NoiseModel,
    comp: OverallComputation,
    link: LinkingMaps = LinkingMaps(),
) -> QccReport:
    """Run the full certification for one computation under one noise model.

    p comes from the ideal circuit, alpha from comparing the noisy channel
    against the ideal one on every input state, and each input's actual
    failure probability is checked against p + alpha.  The inequality holds
    by theorem; a violation beyond the 1e-9 slack raises
    TheoremViolationError instead of returning a report.
    """
    G = compile_ideal(circ)
    if G.dim_in != comp.dim:
        raise DimensionMismatchError(
            f"circuit dim {G.dim_in} does not match computation dim {comp.dim}"
        )
    P = implemented_channel(circ, noise, link)
    p = ideal_failure_bound(circ, comp)
    records = []
    for x in comp.inputs:
        rho = comp.init[x]
        effect = comp.povm[comp.truth_table[x]]
        ideal_out = apply(G, rho)
        actual_out = lower(apply(P, lift(rho, link)), link)
        records.append(
            InputRecord(
                x=x,
                ideal_success=effect_probability(ideal_out, effect),
                actual_success=effect_probability(actual_out, effect),
                inaccuracy_x=trace_norm(actual_out.entries - ideal_out.entries),
            )
        )
    alpha = max(r.inaccuracy_x for r in records)
    for r in records:
        failure = 1.0 - r.actual_success
        if failure > p + alpha + BOUND_SLACK:
            raise TheoremViolationError(
                f"combined bound violated at input {r.x!r}: "
                f"failure {failure:.12g} > p + alpha = {p + alpha:.12g} + {BOUND_SLACK:.0e}; "
                "this indicates defective numerics, not a bad input"
            )
    worst_margin = min(p + alpha - (1.0 - r.actual_success) for r in records)
    return QccReport(
        per_input=tuple(records),
        alpha=alpha,
        p=p,
        bound_holds=True,
        worst_margin=worst_margin,
    )


def mix_error_state(
    ideal_out: DensityMatrix, rho_err: DensityMatrix, eps_qc: float
) -> DensityMatrix:
    """Convex mixture (1 - eps) ideal + eps err modeling residual circuit error."""
    e = float(eps_qc)
    if not (0.0 <= e <= 1.0):
        raise BadProbabilityError(f"eps_qc {e} outside [0, 1]")
    if ideal_out.dim != rho_err.dim:
        raise DimensionMismatchError(
            f"state dims differ: {ideal_out.dim} vs {rho_err.dim}"
        )
    return DensityMatrix((1.0 - e) * ideal_out.entries + e * rho_err.entries)


def mixing_inaccuracy_bound_check(
    ideal_out: DensityMatrix, rho_err: DensityMatrix, eps_qc: float
) -> MixingCheck:
    """Check the mixture's inaccuracy against its generic 2*eps ceiling.

    measured = ||mixture - ideal||_1, which equals eps * ||err - ideal||_1
    and therefore never exceeds 2*eps.  holds is always true for valid
    states; a false value would mean broken numerics.
    """
    mixture = mix_error_state(ideal_out, rho_err, eps_qc)
    measured = trace_norm(mixture.entries - ideal_out.entries)
    bound = 2.0 * float(eps_qc)
    return MixingCheck(measured=measured, bound=bound, holds=measured <= bound + BOUND_SLACK)
