"""Scalar entanglement invariants and measures for pure n-qubit states.

The even-qubit measure is 2|E(a)| where E is a degree-2 quadratic form over
antipodal index pairs; the odd-qubit measure is 4|B(a)^2 - 4 L(a) H(a)| built
from the full-range pairing B and the two half-space forms L and H. All of
them are plain +,-,* arithmetic over the amplitude vector: the even measure
costs exactly 2**(n-1) complex multiplications.

Two external cross-checks live here as well: the quartic epsilon-contraction
tangle of Wong and Christensen (even n, exponentially expensive, capped), and
the Coffman-Kundu-Wootters residual entanglement for three qubits. The latter
is the only formula in the package sourced outside the quadratic-form family;
it exists purely to cross-check the odd measure at n == 3.

Kernel functions (underscore-prefixed) accept raw amplitude arrays with any
number of leading batch axes; the public operations take a StateVector and
return an InvariantValue or MeasureReport.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bitops import parity_signs, sgn_star_table, sgn_table
from .errors import DomainError
from .state import StateVector, QubitPermutation, _perm_index_map

__all__ = [
    "InvariantValue",
    "MeasureReport",
    "even_invariant",
    "even_invariant_pairs",
    "odd_invariant",
    "odd_invariant_pairs",
    "low_half_invariant",
    "high_half_invariant",
    "tau_even",
    "tau_odd",
    "tau",
    "tau_residual",
    "r_tangle",
    "concurrence",
    "wong_tangle",
    "three_tangle",
    "DEFAULT_WONG_CAP",
]

# The quartic contraction has 2**(4n) terms; n=4 is instant, n=6 is opt-in.
DEFAULT_WONG_CAP = 4


@dataclass(frozen=True)
class InvariantValue:
    """A complex polynomial invariant, degree 2 in the amplitudes."""

    value: complex
    kind: str  # even | odd | low | high
    degree: int = 2


@dataclass(frozen=True)
class MeasureReport:
    """A measure evaluation with enough provenance to reproduce it.

    ``value`` is the raw homogeneous value: it lies in [0, 1] for normalized
    input but is reported as-is together with the input norm otherwise.
    ``residuals`` is the per-qubit residual vector (odd-n measures only);
    ``seed`` is set when the measured state came from a seeded generator.
    """

    kind: str
    value: float
    n: int
    norm: float
    residuals: tuple | None = None
    state: str = ""
    seed: int | None = None
    tolerance: float = 1e-9


# ---------------------------------------------------------------------------
# kernels on raw amplitude arrays, batch axes allowed
# ---------------------------------------------------------------------------

def _even_invariant(amps: np.ndarray, n: int) -> np.ndarray:
    """Staggered quadratic form over i < 2**(n-2): exactly 2**(n-1) products."""
    half = 1 << (n - 1)
    quarter = 1 << (n - 2)
    signs = sgn_star_table(n)
    even_lead = amps[..., 0:half:2]
    even_part = amps[..., ::-1][..., 0:half:2]      # indices 2^n-1-2i
    odd_lead = amps[..., 1:half + 1:2]
    odd_part = amps[..., ::-1][..., 1:half + 1:2]   # indices 2^n-2-2i
    terms = even_lead[..., :quarter] * even_part[..., :quarter] \
        - odd_lead[..., :quarter] * odd_part[..., :quarter]
    return np.sum(signs * terms, axis=-1)


def _even_invariant_pairs(amps: np.ndarray, n: int) -> np.ndarray:
    """Antipodal-pair form: sum over k < 2**(n-1) of (-1)^N(k) a_k a_{2^n-1-k}."""
    half = 1 << (n - 1)
    signs = parity_signs(n - 1)  # k < 2**(n-1) so N(k) is the plain popcount
    return np.sum(signs * amps[..., :half] * amps[..., ::-1][..., :half], axis=-1)


def _odd_invariant(amps: np.ndarray, n: int) -> np.ndarray:
    half = 1 << (n - 1)
    eighth = 1 << (n - 3)
    signs = sgn_table(n)
    t1 = amps[..., 0:half:2][..., :eighth] * amps[..., ::-1][..., 0:half:2][..., :eighth]
    t2 = amps[..., 1:half + 1:2][..., :eighth] * amps[..., ::-1][..., 1:half + 1:2][..., :eighth]
    t3 = amps[..., half - 2::-2][..., :eighth] * amps[..., half + 1::2][..., :eighth]
    t4 = amps[..., half - 1::-2][..., :eighth] * amps[..., half::2][..., :eighth]
    return np.sum(signs * ((t1 - t2) - (t3 - t4)), axis=-1)


def _odd_invariant_pairs(amps: np.ndarray, n: int) -> np.ndarray:
    """Pair form with the top-bit-masked count: (-1)^{N*(k)} a_k a_{2^n-1-k}."""
    half = 1 << (n - 1)
    # k < 2**(n-1) has a clear top bit, so the masked count equals N(k)
    signs = parity_signs(n - 1)
    return np.sum(signs * amps[..., :half] * amps[..., ::-1][..., :half], axis=-1)


def _low_half_invariant(amps: np.ndarray, n: int) -> np.ndarray:
    half = 1 << (n - 1)
    eighth = 1 << (n - 3) if n >= 3 else 0
    if eighth == 0:
        raise DomainError(f"half-space invariants need n >= 3, got n={n}")
    signs = sgn_star_table(n - 1)
    low = amps[..., :half]
    t1 = low[..., 0::2][..., :eighth] * low[..., ::-1][..., 0::2][..., :eighth]
    t2 = low[..., 1::2][..., :eighth] * low[..., ::-1][..., 1::2][..., :eighth]
    return np.sum(signs * (t1 - t2), axis=-1)


def _high_half_invariant(amps: np.ndarray, n: int) -> np.ndarray:
    half = 1 << (n - 1)
    eighth = 1 << (n - 3) if n >= 3 else 0
    if eighth == 0:
        raise DomainError(f"half-space invariants need n >= 3, got n={n}")
    signs = sgn_star_table(n - 1)
    t1 = amps[..., half::2][..., :eighth] * amps[..., ::-1][..., 0::2][..., :eighth]
    t2 = amps[..., half + 1::2][..., :eighth] * amps[..., ::-1][..., 1::2][..., :eighth]
    return np.sum(signs * (t1 - t2), axis=-1)


def _tau_even(amps: np.ndarray, n: int) -> np.ndarray:
    return 2.0 * np.abs(_even_invariant(amps, n))


def _tau_odd(amps: np.ndarray, n: int) -> np.ndarray:
    combo = _odd_invariant(amps, n) ** 2 \
        - 4.0 * _low_half_invariant(amps, n) * _high_half_invariant(amps, n)
    return 4.0 * np.abs(combo)


def _tau_any(amps: np.ndarray, n: int) -> np.ndarray:
    return _tau_even(amps, n) if n % 2 == 0 else _tau_odd(amps, n)


def _residual(amps: np.ndarray, n: int, i: int) -> np.ndarray:
    if i == 1:
        return _tau_odd(amps, n)
    swap = QubitPermutation.transposition(n, 1, i)
    return _tau_odd(amps[..., _perm_index_map(n, swap.mapping)], n)


def _r_tangle(amps: np.ndarray, n: int) -> np.ndarray:
    return sum(_residual(amps, n, i) for i in range(1, n + 1)) / n


def _concurrence(amps: np.ndarray) -> np.ndarray:
    return 2.0 * np.abs(amps[..., 0] * amps[..., 3] - amps[..., 1] * amps[..., 2])


def _three_tangle(amps: np.ndarray) -> np.ndarray:
    """Coffman-Kundu-Wootters residual entanglement, 4|d1 - 2 d2 + 4 d3|.

    Index abc reads qubit 1 -> a (MSB), qubit 3 -> c (LSB), so a_{abc} is
    amps[4a + 2b + c]. Coded directly from the published construction; kept
    independent of the quadratic-form route it cross-checks.
    """
    a000 = amps[..., 0]
    a001 = amps[..., 1]
    a010 = amps[..., 2]
    a011 = amps[..., 3]
    a100 = amps[..., 4]
    a101 = amps[..., 5]
    a110 = amps[..., 6]
    a111 = amps[..., 7]
    d1 = (a000 * a111) ** 2 + (a001 * a110) ** 2 + (a010 * a101) ** 2 + (a100 * a011) ** 2
    d2 = (a000 * a111 * a011 * a100 + a000 * a111 * a101 * a010
          + a000 * a111 * a110 * a001 + a011 * a100 * a101 * a010
          + a011 * a100 * a110 * a001 + a101 * a010 * a110 * a001)
    d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100
    return 4.0 * np.abs(d1 - 2.0 * d2 + 4.0 * d3)


def _wong_tangle(amps: np.ndarray, n: int) -> float:
    """Quartic epsilon-contraction over four amplitude copies.

    Slots 1..n-1 pair the first/second and third/fourth copies, slot n pairs
    first/third and second/fourth. The inner pairing over slots 1..n-1 is
    nonzero only for index pairs differing in every one of those bits, which
    lets the 2**(4n)-term sum be evaluated as dense matrix contractions
    without changing a single term.
    """
    dim = 1 << n
    x = np.arange(dim)
    xor = x[:, None] ^ x[None, :]
    lead_signs = np.where(np.bitwise_count((x >> 1).astype(np.uint64)) & 1, -1, 1)
    pair_upper = np.where((xor | 1) == dim - 1, lead_signs[:, None], 0)
    eps = np.array([[0, 1], [-1, 0]])
    last = eps[x[:, None] & 1, x[None, :] & 1]
    t = (amps[:, None] * amps[None, :]) * pair_upper
    return 2.0 * float(np.abs(np.sum(t * (last @ t @ last.T))))


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def _require_parity(psi: StateVector, parity: str, what: str) -> None:
    if psi.n < 2:
        raise DomainError(f"{what} needs at least 2 qubits, got n={psi.n}")
    if parity == "even" and psi.n % 2 != 0:
        raise DomainError(f"{what} is defined for even n only, got n={psi.n}")
    if parity == "odd" and psi.n % 2 != 1:
        raise DomainError(f"{what} is defined for odd n only, got n={psi.n}")
    if parity == "odd" and psi.n < 3:
        raise DomainError(f"{what} needs n >= 3, got n={psi.n}")


def even_invariant(psi: StateVector) -> InvariantValue:
    """The degree-2 invariant of an even-n state (the staggered defining sum)."""
    _require_parity(psi, "even", "even_invariant")
    return InvariantValue(complex(_even_invariant(psi.amps, psi.n)), "even")


def even_invariant_pairs(psi: StateVector) -> InvariantValue:
    """Same invariant written as a sum over complementary index pairs."""
    _require_parity(psi, "even", "even_invariant_pairs")
    return InvariantValue(complex(_even_invariant_pairs(psi.amps, psi.n)), "even")


def odd_invariant(psi: StateVector) -> InvariantValue:
    """The degree-2 full-range invariant of an odd-n state (four-term defining sum)."""
    _require_parity(psi, "odd", "odd_invariant")
    return InvariantValue(complex(_odd_invariant(psi.amps, psi.n)), "odd")


def odd_invariant_pairs(psi: StateVector) -> InvariantValue:
    """Same invariant written as a sum over complementary index pairs."""
    _require_parity(psi, "odd", "odd_invariant_pairs")
    return InvariantValue(complex(_odd_invariant_pairs(psi.amps, psi.n)), "odd")


def low_half_invariant(psi: StateVector) -> InvariantValue:
    """Quadratic form pairing indices inside the top-bit-0 half (odd n)."""
    _require_parity(psi, "odd", "low_half_invariant")
    return InvariantValue(complex(_low_half_invariant(psi.amps, psi.n)), "low")


def high_half_invariant(psi: StateVector) -> InvariantValue:
    """Quadratic form pairing top-bit-1 indices across the halves (odd n)."""
    _require_parity(psi, "odd", "high_half_invariant")
    return InvariantValue(complex(_high_half_invariant(psi.amps, psi.n)), "high")


def _report(kind: str, value: float, psi: StateVector, residuals=None, state: str = "") -> MeasureReport:
    return MeasureReport(
        kind=kind,
        value=float(value),
        n=psi.n,
        norm=psi.norm(),
        residuals=residuals,
        state=state or f"n={psi.n}",
    )


def tau_even(psi: StateVector, state: str = "") -> MeasureReport:
    """Even-n measure 2|E|; degree 2: scaling amplitudes by c scales it by |c|^2."""
    _require_parity(psi, "even", "tau_even")
    return _report("tau_even", _tau_even(psi.amps, psi.n), psi, state=state)


def tau_odd(psi: StateVector, state: str = "") -> MeasureReport:
    """Odd-n measure 4|B^2 - 4 L H|; degree 4: scales by |c|^4."""
    _require_parity(psi, "odd", "tau_odd")
    return _report("tau_odd", _tau_odd(psi.amps, psi.n), psi, state=state)


def tau(psi: StateVector, state: str = "") -> MeasureReport:
    """Parity dispatch: the even measure for even n, the odd measure for odd n."""
    if psi.n < 2:
        raise DomainError(f"tau needs at least 2 qubits, got n={psi.n}")
    return tau_even(psi, state) if psi.n % 2 == 0 else tau_odd(psi, state)


def tau_residual(psi: StateVector, i: int, state: str = "") -> MeasureReport:
    """Residual measure with respect to qubit i: the odd measure after swapping 1 and i."""
    _require_parity(psi, "odd", "tau_residual")
    if not 1 <= i <= psi.n:
        raise DomainError(f"qubit label {i} out of range 1..{psi.n}")
    return _report("tau_residual", _residual(psi.amps, psi.n, i), psi, state=state)


def r_tangle(psi: StateVector, state: str = "") -> MeasureReport:
    """Arithmetic mean of the per-qubit residual measures (odd n)."""
    _require_parity(psi, "odd", "r_tangle")
    residuals = tuple(float(_residual(psi.amps, psi.n, i)) for i in range(1, psi.n + 1))
    return _report("r_tangle", sum(residuals) / psi.n, psi, residuals=residuals, state=state)


def concurrence(psi: StateVector, state: str = "") -> MeasureReport:
    """Two-qubit concurrence 2|a0 a3 - a1 a2| (identical to tau_even at n=2)."""
    if psi.n != 2:
        raise DomainError(f"concurrence is defined for n=2 only, got n={psi.n}")
    return _report("concurrence", _concurrence(psi.amps), psi, state=state)


def wong_tangle(psi: StateVector, cap: int = DEFAULT_WONG_CAP, state: str = "") -> MeasureReport:
    """Quartic even-n tangle of Wong and Christensen (expensive cross-reference)."""
    _require_parity(psi, "even", "wong_tangle")
    if psi.n > cap:
        raise DomainError(
            f"wong_tangle at n={psi.n} exceeds the cap of {cap}; "
            f"the contraction has 3*2^(4n) multiplications"
        )
    return _report("wong_tangle", _wong_tangle(psi.amps, psi.n), psi, state=state)


def three_tangle(psi: StateVector, state: str = "") -> MeasureReport:
    """Independent three-qubit residual-entanglement oracle (external construction)."""
    if psi.n != 3:
        raise DomainError(f"three_tangle is defined for n=3 only, got n={psi.n}")
    return _report("three_tangle", _three_tangle(psi.amps), psi, state=state)
