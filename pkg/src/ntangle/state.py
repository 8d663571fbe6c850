"""Pure n-qubit state vectors and the operations the measure suites need.

Index convention: basis index i is read as the bit string i_{n-1}...i_1 i_0
with qubit 1 stored in the MOST significant bit. ``tensor`` therefore places
its first factor in the high bits,

    amps[k * 2**m + i] = left[k] * right[i],

which makes qubit splits of the product theorems index-trivial.

States are immutable after construction; every operation returns a new value.
Random generation always takes an explicit seed (or Generator) and owns its
generator, so there is no hidden global RNG state.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CapacityError, DomainError, ParseError

__all__ = [
    "DEFAULT_MAX_QUBITS",
    "StateVector",
    "QubitPermutation",
    "ProductFactor",
    "ProductExpression",
    "tensor",
    "permute",
    "apply_local",
    "apply_single",
    "named_state",
    "build_product",
    "parse_product_expression",
    "random_state",
    "random_state_batch",
    "random_operator",
    "is_unitary",
    "is_special_linear",
    "is_diagonal_nonneg",
    "read_qsv",
    "write_qsv",
]

# 2**26 complex amplitudes keep the quadratic even-n measure interactive on
# desktop hardware; raise per call where a larger state is really wanted.
DEFAULT_MAX_QUBITS = 26

_NORM_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class StateVector:
    """An n-qubit pure state: 2**n complex amplitudes, qubit 1 = MSB.

    ``n == 1`` is allowed so that single-qubit tensor factors can be built
    and split off; the entanglement measures themselves require n >= 2.
    Amplitudes need not be normalized: measures document how they scale
    instead of force-normalizing.
    """

    n: int
    amps: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"state needs at least one qubit, got n={self.n}")
        amps = np.array(self.amps, dtype=np.complex128)
        if amps.shape != (1 << self.n,):
            raise DomainError(
                f"amplitude vector has shape {amps.shape}, expected ({1 << self.n},) for n={self.n}"
            )
        amps.flags.writeable = False
        object.__setattr__(self, "amps", amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def is_normalized(self, tol: float = _NORM_TOL) -> bool:
        return abs(self.norm() - 1.0) <= tol

    def normalized(self) -> "StateVector":
        nrm = self.norm()
        if nrm == 0.0:
            raise DomainError("cannot normalize the zero vector")
        return StateVector(self.n, self.amps / nrm)

    def allclose(self, other: "StateVector", tol: float = 1e-12) -> bool:
        return self.n == other.n and bool(np.allclose(self.amps, other.amps, rtol=tol, atol=tol))


class QubitPermutation:
    """A bijection on qubit labels 1..n.

    ``mapping[j-1]`` is the image of qubit j: the content held by qubit j
    ends up on qubit mapping[j-1] after ``permute``.
    """

    __slots__ = ("mapping",)

    def __init__(self, mapping):
        mapping = tuple(int(x) for x in mapping)
        n = len(mapping)
        if sorted(mapping) != list(range(1, n + 1)):
            raise DomainError(f"mapping {mapping} is not a bijection on 1..{n}")
        object.__setattr__(self, "mapping", mapping)

    def __setattr__(self, *_):
        raise AttributeError("QubitPermutation is immutable")

    def __eq__(self, other):
        return isinstance(other, QubitPermutation) and self.mapping == other.mapping

    def __hash__(self):
        return hash(self.mapping)

    def __repr__(self):
        return f"QubitPermutation({self.mapping})"

    @property
    def n(self) -> int:
        return len(self.mapping)

    def __call__(self, j: int) -> int:
        return self.mapping[j - 1]

    @classmethod
    def identity(cls, n: int) -> "QubitPermutation":
        return cls(range(1, n + 1))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "QubitPermutation":
        if not (1 <= i <= n and 1 <= j <= n):
            raise DomainError(f"transposition ({i},{j}) out of range for n={n}")
        mapping = list(range(1, n + 1))
        mapping[i - 1], mapping[j - 1] = mapping[j - 1], mapping[i - 1]
        return cls(mapping)

    def compose(self, other: "QubitPermutation") -> "QubitPermutation":
        """The permutation 'self after other': (self.compose(other))(j) == self(other(j))."""
        if self.n != other.n:
            raise DomainError("cannot compose permutations of different sizes")
        return QubitPermutation(self(other(j)) for j in range(1, self.n + 1))

    def inverse(self) -> "QubitPermutation":
        inv = [0] * self.n
        for j, img in enumerate(self.mapping, start=1):
            inv[img - 1] = j
        return QubitPermutation(inv)


@lru_cache(maxsize=8192)
def _perm_index_map(n: int, mapping: tuple) -> np.ndarray:
    """Gather map: permuted_amps = amps[map]. mapping[j-1] = image of qubit j."""
    t = np.arange(1 << n, dtype=np.int64)
    src = np.zeros_like(t)
    for j in range(1, n + 1):
        src |= ((t >> (n - mapping[j - 1])) & 1) << (n - j)
    src.flags.writeable = False
    return src


def tensor(phi: StateVector, omega: StateVector, max_qubits: int = DEFAULT_MAX_QUBITS) -> StateVector:
    """Tensor product with ``phi`` on the high bits of the index."""
    n = phi.n + omega.n
    if n > max_qubits:
        raise CapacityError(f"tensor product needs {n} qubits, capacity is {max_qubits}")
    return StateVector(n, np.outer(phi.amps, omega.amps).ravel())


def permute(psi: StateVector, pi: QubitPermutation) -> StateVector:
    """Rearrange qubits: the content of qubit j moves to qubit pi(j)."""
    if pi.n != psi.n:
        raise DomainError(f"permutation acts on {pi.n} qubits, state has {psi.n}")
    return StateVector(psi.n, psi.amps[_perm_index_map(psi.n, pi.mapping)])


def _as_operator(m) -> np.ndarray:
    m = np.asarray(m, dtype=np.complex128)
    if m.shape != (2, 2):
        raise DomainError(f"local operator must be a 2x2 matrix, got shape {m.shape}")
    return m


def apply_local(psi: StateVector, ops) -> StateVector:
    """Apply (op_1 x op_2 x ... x op_n) to the state; one 2x2 matrix per qubit."""
    ops = [_as_operator(m) for m in ops]
    if len(ops) != psi.n:
        raise DomainError(f"need exactly {psi.n} operators, got {len(ops)}")
    arr = psi.amps.reshape((2,) * psi.n)
    for axis, m in enumerate(ops):
        arr = np.moveaxis(np.tensordot(m, arr, axes=([1], [axis])), 0, axis)
    return StateVector(psi.n, arr.reshape(-1))


def apply_single(psi: StateVector, k: int, m) -> StateVector:
    """Apply a 2x2 matrix to qubit k only; identities elsewhere."""
    if not 1 <= k <= psi.n:
        raise DomainError(f"qubit label {k} out of range 1..{psi.n}")
    m = _as_operator(m)
    arr = psi.amps.reshape((2,) * psi.n)
    axis = k - 1
    arr = np.moveaxis(np.tensordot(m, arr, axes=([1], [axis])), 0, axis)
    return StateVector(psi.n, arr.reshape(-1))


def named_state(kind: str, n: int, extra: int | None = None,
                max_qubits: int = DEFAULT_MAX_QUBITS) -> StateVector:
    """Construct one of the named states: ghz, w, bell or a basis state."""
    if n < 1:
        raise DomainError(f"named state needs n >= 1, got n={n}")
    if n > max_qubits:
        raise CapacityError(f"named state needs {n} qubits, capacity is {max_qubits}")
    dim = 1 << n
    amps = np.zeros(dim, dtype=np.complex128)
    if kind == "ghz":
        if n < 2:
            raise DomainError("ghz needs at least 2 qubits")
        amps[0] = amps[dim - 1] = 1.0 / math.sqrt(2.0)
    elif kind == "bell":
        if n != 2:
            raise DomainError(f"bell is a 2-qubit state, got n={n}")
        amps[0] = amps[3] = 1.0 / math.sqrt(2.0)
    elif kind == "w":
        if n < 2:
            raise DomainError("w needs at least 2 qubits")
        weight_one = [1 << p for p in range(n)]
        amps[weight_one] = 1.0 / math.sqrt(n)
    elif kind == "basis":
        if extra is None or not 0 <= extra < dim:
            raise DomainError(f"basis state needs an index in 0..{dim - 1}, got {extra}")
        amps[extra] = 1.0
    else:
        raise DomainError(f"unknown named state kind {kind!r}")
    return StateVector(n, amps)


@dataclass(frozen=True)
class ProductFactor:
    state: StateVector
    labels: tuple


@dataclass(frozen=True)
class ProductExpression:
    """A tensor product of factors with explicit qubit-label assignments."""

    factors: tuple

    @property
    def n(self) -> int:
        return sum(f.state.n for f in self.factors)


def build_product(expr: ProductExpression, max_qubits: int = DEFAULT_MAX_QUBITS) -> StateVector:
    """Tensor the factors in listed order, then move them onto their labels."""
    if not expr.factors:
        raise DomainError("product expression has no factors")
    labels = []
    for f in expr.factors:
        if len(f.labels) != f.state.n:
            raise DomainError(
                f"factor of {f.state.n} qubits carries {len(f.labels)} labels {f.labels}"
            )
        labels.extend(f.labels)
    n = len(labels)
    if sorted(labels) != list(range(1, n + 1)):
        raise DomainError(f"factor labels {labels} do not partition 1..{n}")
    if n > max_qubits:
        raise CapacityError(f"product needs {n} qubits, capacity is {max_qubits}")
    psi = expr.factors[0].state
    for f in expr.factors[1:]:
        psi = tensor(psi, f.state, max_qubits=max_qubits)
    pi = QubitPermutation(labels)
    if pi.mapping == tuple(range(1, n + 1)):
        return psi
    return permute(psi, pi)


_FACTOR_RE = re.compile(r"^(?P<head>[^@]+)@(?P<labels>[\d,]+)$")


def parse_product_expression(text: str, max_qubits: int = DEFAULT_MAX_QUBITS) -> ProductExpression:
    """Parse 'ghz:3@1,2,3 x bell@4,5' style expressions.

    Factors are separated by a lone ``x`` token. Each factor is
    ``kind@labels`` where kind is ``ghz:<k>``, ``w:<k>``, ``bell``,
    ``basis:<k>:<index>`` or ``file:<path>`` and labels is a comma list of
    qubit numbers. Columns in errors are 1-based offsets into the text.
    """
    tokens = []  # (offset, token)
    for m in re.finditer(r"\S+", text):
        tokens.append((m.start(), m.group()))
    if not tokens:
        raise ParseError("empty product expression", line=1, column=1)
    factors = []
    expect_factor = True
    for off, tok in tokens:
        col = off + 1
        if expect_factor:
            if tok == "x":
                raise ParseError("expected a factor, found separator 'x'", line=1, column=col)
            factors.append(_parse_factor(tok, col, max_qubits))
            expect_factor = False
        else:
            if tok != "x":
                raise ParseError(f"expected separator 'x', found {tok!r}", line=1, column=col)
            expect_factor = True
    if expect_factor:
        off, tok = tokens[-1]
        raise ParseError("dangling separator 'x' at end of expression", line=1, column=off + 1)
    return ProductExpression(tuple(factors))


def _parse_factor(tok: str, col: int, max_qubits: int) -> ProductFactor:
    m = _FACTOR_RE.match(tok)
    if m is None:
        raise ParseError(f"malformed factor {tok!r}, expected kind@labels", line=1, column=col)
    head = m.group("head")
    try:
        labels = tuple(int(x) for x in m.group("labels").split(",") if x != "")
    except ValueError:
        raise ParseError(f"bad label list in {tok!r}", line=1, column=col) from None
    if not labels:
        raise ParseError(f"factor {tok!r} has no labels", line=1, column=col)
    parts = head.split(":")
    kind = parts[0]
    try:
        if kind == "bell" and len(parts) == 1:
            state = named_state("bell", 2)
        elif kind in ("ghz", "w") and len(parts) == 2:
            state = named_state(kind, int(parts[1]), max_qubits=max_qubits)
        elif kind == "basis" and len(parts) == 3:
            state = named_state("basis", int(parts[1]), extra=int(parts[2]), max_qubits=max_qubits)
        elif kind == "file" and len(parts) >= 2:
            state = read_qsv(":".join(parts[1:]))
        else:
            raise ParseError(f"unknown factor kind {head!r}", line=1, column=col)
    except ValueError:
        raise ParseError(f"bad integer in factor {tok!r}", line=1, column=col) from None
    except DomainError as exc:
        raise ParseError(f"invalid factor {tok!r}: {exc}", line=1, column=col) from None
    if state.n != len(labels):
        raise ParseError(
            f"factor {tok!r} has {state.n} qubits but {len(labels)} labels", line=1, column=col
        )
    return ProductFactor(state, labels)


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_state(n: int, seed, max_qubits: int = DEFAULT_MAX_QUBITS) -> StateVector:
    """Haar-uniform random pure state: complex Gaussian amplitudes, normalized."""
    return StateVector(n, random_state_batch(n, 1, seed, max_qubits=max_qubits)[0])


def random_state_batch(n: int, count: int, seed, max_qubits: int = DEFAULT_MAX_QUBITS) -> np.ndarray:
    """A (count, 2**n) array of independent Haar-uniform amplitude rows."""
    if n < 1:
        raise DomainError(f"random state needs n >= 1, got n={n}")
    if n > max_qubits:
        raise CapacityError(f"random state needs {n} qubits, capacity is {max_qubits}")
    rng = _rng(seed)
    dim = 1 << n
    z = rng.standard_normal((count, dim)) + 1j * rng.standard_normal((count, dim))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    return z


def random_operator(kind: str, seed) -> np.ndarray:
    """Seeded random 2x2 operator of the requested kind.

    general: standard complex Gaussian entries.
    special_linear: Gaussian conditioned on |det| > 1e-6, divided by a square
        root of its determinant (det becomes 1 up to roundoff).
    unitary: Haar-distributed, via phase-fixed QR of a Gaussian matrix.
    contraction: Gaussian rescaled so its top singular value lands in
        (0, 1]; usable directly as the first element of a two-outcome POVM.
    """
    rng = _rng(seed)
    if kind == "general":
        return _ginibre(rng)
    if kind == "special_linear":
        while True:
            m = _ginibre(rng)
            det = np.linalg.det(m)
            if abs(det) > 1e-6:
                return m / np.sqrt(det)
    if kind == "unitary":
        q, r = np.linalg.qr(_ginibre(rng))
        d = np.diagonal(r)
        return q * (d / np.abs(d))
    if kind == "contraction":
        m = _ginibre(rng)
        top = np.linalg.svd(m, compute_uv=False)[0]
        return m * (rng.uniform(0.25, 1.0) / top)
    raise DomainError(f"unknown operator kind {kind!r}")


def _ginibre(rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))


def is_unitary(m, tol: float = 1e-9) -> bool:
    m = _as_operator(m)
    return bool(np.allclose(m.conj().T @ m, np.eye(2), atol=tol))


def is_special_linear(m, tol: float = 1e-9) -> bool:
    return bool(abs(np.linalg.det(_as_operator(m)) - 1.0) <= tol)


def is_diagonal_nonneg(m, tol: float = 1e-12) -> bool:
    m = _as_operator(m)
    off = abs(m[0, 1]) + abs(m[1, 0])
    diag_ok = all(abs(m[i, i].imag) <= tol and m[i, i].real >= -tol for i in (0, 1))
    return off <= tol and diag_ok


# ---------------------------------------------------------------------------
# qsv state file format (text): line 1 "qsv 1", line 2 "n <int>", then
# exactly 2**n lines of "re im". Writers emit 17 significant digits so the
# round trip is bit-exact for doubles.
# ---------------------------------------------------------------------------

def write_qsv(psi: StateVector, target) -> None:
    """Write a state to a path or text file object in qsv format."""
    if hasattr(target, "write"):
        _write_qsv_stream(psi, target)
    else:
        with open(target, "w", encoding="ascii") as fh:
            _write_qsv_stream(psi, fh)


def _write_qsv_stream(psi: StateVector, fh) -> None:
    fh.write("qsv 1\n")
    fh.write(f"n {psi.n}\n")
    for a in psi.amps:
        fh.write(f"{a.real:.17g} {a.imag:.17g}\n")


def read_qsv(source) -> StateVector:
    """Read a state from a path or text file object in qsv format."""
    if hasattr(source, "read"):
        return _read_qsv_stream(source)
    with open(source, "r", encoding="ascii") as fh:
        return _read_qsv_stream(fh)


def _read_qsv_stream(fh) -> StateVector:
    lines = fh.read().split("\n")
    # allow trailing blank lines, nothing else
    while lines and lines[-1].strip() == "":
        lines.pop()
    if not lines:
        raise ParseError("empty qsv file", line=1, column=1)
    if lines[0].strip() != "qsv 1":
        raise ParseError(f"bad qsv header {lines[0]!r}, expected 'qsv 1'", line=1, column=1)
    if len(lines) < 2:
        raise ParseError("missing 'n <int>' line", line=2, column=1)
    m = re.match(r"^n\s+(\d+)\s*$", lines[1])
    if m is None:
        raise ParseError(f"bad qubit-count line {lines[1]!r}, expected 'n <int>'", line=2, column=1)
    n = int(m.group(1))
    if n < 1:
        raise ParseError(f"qubit count must be >= 1, got {n}", line=2, column=3)
    dim = 1 << n
    if len(lines) - 2 != dim:
        # point at the first missing or first surplus line
        where = min(len(lines), dim + 2) + 1
        raise ParseError(
            f"expected {dim} amplitude lines for n={n}, found {len(lines) - 2}",
            line=where, column=1,
        )
    amps = np.empty(dim, dtype=np.complex128)
    for i, line in enumerate(lines[2:]):
        tokens = line.split()
        lineno = i + 3
        if len(tokens) != 2:
            raise ParseError(
                f"amplitude line must be 're im', got {line!r}", line=lineno, column=1
            )
        try:
            re_part = float(tokens[0])
        except ValueError:
            raise ParseError(f"bad real part {tokens[0]!r}", line=lineno,
                             column=line.index(tokens[0]) + 1) from None
        try:
            im_part = float(tokens[1])
        except ValueError:
            raise ParseError(f"bad imaginary part {tokens[1]!r}", line=lineno,
                             column=line.rindex(tokens[1]) + 1) from None
        amps[i] = complex(re_part, im_part)
    return StateVector(n, amps)
