"""Two-outcome local POVM simulation for the monotonicity checks.

A pair (A1, A2) with A1'A1 + A2'A2 = I is built from any contraction A1 by
taking A2 = W (I - A1'A1)^(1/2) with W a seeded Haar unitary. No relation
between the right singular factors of A1 and A2 is imposed, which makes the
monotone certification strictly more general than constructions that assume
one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .measures import _residual, _r_tangle, _tau_even, _tau_odd
from .state import StateVector, apply_single, random_operator

__all__ = ["PovmPair", "BranchOutcome", "make_povm", "branch", "monotone_average"]

_COMPLETENESS_TOL = 1e-10

# below this squared norm a branch is treated as impossible and carries a
# null state; it then contributes exactly 0 to any monotone average
_NULL_PROBABILITY = 1e-300


@dataclass(frozen=True)
class PovmPair:
    """Two POVM elements plus the singular values (a, b) of the first one."""

    a1: np.ndarray
    a2: np.ndarray
    a: float
    b: float

    def completeness_defect(self) -> float:
        g = self.a1.conj().T @ self.a1 + self.a2.conj().T @ self.a2 - np.eye(2)
        return float(np.abs(g).max())


@dataclass(frozen=True)
class BranchOutcome:
    """One measurement branch: normalized state (or None), probability, raw state."""

    state: StateVector | None
    probability: float
    raw: StateVector


def make_povm(a1, seed, tol: float = 1e-9) -> PovmPair:
    """Complete a contraction a1 into a two-outcome POVM with a seeded unitary."""
    a1 = np.asarray(a1, dtype=np.complex128)
    if a1.shape != (2, 2):
        raise DomainError(f"POVM element must be 2x2, got shape {a1.shape}")
    sv = np.linalg.svd(a1, compute_uv=False)
    if sv[0] > 1.0 + tol:
        raise DomainError(f"operator with top singular value {sv[0]:.6g} is not a contraction")
    defect = np.eye(2) - a1.conj().T @ a1
    w, v = np.linalg.eigh(defect)
    w = np.clip(w, 0.0, None)  # absorb roundoff below zero
    root = (v * np.sqrt(w)) @ v.conj().T
    a2 = random_operator("unitary", seed) @ root
    return PovmPair(a1=a1, a2=a2, a=float(min(sv[0], 1.0)), b=float(sv[1]))


def branch(psi: StateVector, k: int, povm: PovmPair) -> tuple[BranchOutcome, BranchOutcome]:
    """Apply the POVM to qubit k: raw branch states, probabilities, normalized states.

    Probabilities sum to 1 only when the input is normalized.
    """
    if not 1 <= k <= psi.n:
        raise DomainError(f"qubit label {k} out of range 1..{psi.n}")
    outcomes = []
    for element in (povm.a1, povm.a2):
        raw = apply_single(psi, k, element)
        p = float(np.vdot(raw.amps, raw.amps).real)
        if p < _NULL_PROBABILITY:
            outcomes.append(BranchOutcome(state=None, probability=0.0, raw=raw))
        else:
            outcomes.append(BranchOutcome(state=StateVector(psi.n, raw.amps / np.sqrt(p)),
                                          probability=p, raw=raw))
    return outcomes[0], outcomes[1]


def _measure_kernel(measure: str, n: int):
    if measure == "even":
        if n % 2 != 0:
            raise DomainError(f"measure 'even' needs an even qubit count, got n={n}")
        return lambda amps: _tau_even(amps, n)
    if measure == "odd":
        if n % 2 != 1 or n < 3:
            raise DomainError(f"measure 'odd' needs an odd qubit count >= 3, got n={n}")
        return lambda amps: _tau_odd(amps, n)
    if measure == "r":
        if n % 2 != 1 or n < 3:
            raise DomainError(f"measure 'r' needs an odd qubit count >= 3, got n={n}")
        return lambda amps: _r_tangle(amps, n)
    if measure.startswith("residual:"):
        if n % 2 != 1 or n < 3:
            raise DomainError(f"residual measures need an odd qubit count >= 3, got n={n}")
        try:
            i = int(measure.split(":", 1)[1])
        except ValueError:
            raise DomainError(f"bad residual qubit in measure {measure!r}") from None
        if not 1 <= i <= n:
            raise DomainError(f"residual qubit {i} out of range 1..{n}")
        return lambda amps: _residual(amps, n, i)
    raise DomainError(f"unknown measure {measure!r}; expected even, odd, residual:<i> or r")


def monotone_average(psi: StateVector, k: int, povm: PovmPair, eta: float,
                     measure: str = "even") -> float:
    """The eta-averaged measure p1 m(phi1)^eta + p2 m(phi2)^eta over the two branches.

    Zero-probability branches contribute 0. For an entanglement monotone this
    never exceeds m(psi)^eta for 0 < eta <= 1.
    """
    if not 0.0 < eta <= 1.0:
        raise DomainError(f"eta must lie in (0, 1], got {eta}")
    kernel = _measure_kernel(measure, psi.n)
    total = 0.0
    for out in branch(psi, k, povm):
        if out.state is None:
            continue
        total += out.probability * float(kernel(out.state.amps)) ** eta
    return total
