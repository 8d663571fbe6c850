import io
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ntangle.errors import CapacityError, DomainError, ParseError
from ntangle.state import (
    ProductExpression,
    ProductFactor,
    QubitPermutation,
    StateVector,
    apply_local,
    apply_single,
    build_product,
    is_diagonal_nonneg,
    is_special_linear,
    is_unitary,
    named_state,
    parse_product_expression,
    permute,
    random_operator,
    random_state,
    read_qsv,
    tensor,
    write_qsv,
)

RT2 = 1.0 / math.sqrt(2.0)


def bell():
    return named_state("bell", 2)


def ghz(n):
    return named_state("ghz", n)


# --- tensor -----------------------------------------------------------------

def test_tensor_bell_bell():
    psi = tensor(bell(), bell())
    # amplitude rule a[k*2^m + i] = b[k]*c[i] with k, i in {0, 3}
    expected = np.zeros(16, dtype=complex)
    expected[[0, 3, 12, 15]] = 0.5
    assert np.allclose(psi.amps, expected, atol=1e-15)


def test_tensor_basis_states():
    for n1, k in ((2, 1), (3, 5)):
        for n2, i in ((2, 2), (1, 1)):
            left = named_state("basis", n1, extra=k)
            right = named_state("basis", n2, extra=i)
            out = tensor(left, right)
            assert out.amps[k * 2 ** n2 + i] == 1.0
            assert np.count_nonzero(out.amps) == 1


def test_tensor_ghz3_ghz3():
    psi = tensor(ghz(3), ghz(3))
    expected = np.zeros(64, dtype=complex)
    expected[[0, 7, 56, 63]] = 0.5  # 7*8 = 56, 56 + 7 = 63
    assert np.allclose(psi.amps, expected, atol=1e-15)


def test_tensor_associative():
    # float products only regroup exactly when the operands make the two
    # rounding orders coincide, as for basis states; random amplitudes agree
    # to the last ulp
    left_basis = tensor(tensor(named_state("basis", 2, extra=1), bell()), ghz(2))
    right_basis = tensor(named_state("basis", 2, extra=1), tensor(bell(), ghz(2)))
    assert np.array_equal(left_basis.amps, right_basis.amps)

    rng = np.random.default_rng(3)
    a = StateVector(2, rng.standard_normal(4) + 1j * rng.standard_normal(4))
    b = StateVector(1, rng.standard_normal(2) + 1j * rng.standard_normal(2))
    c = StateVector(3, rng.standard_normal(8) + 1j * rng.standard_normal(8))
    left = tensor(tensor(a, b), c)
    right = tensor(a, tensor(b, c))
    assert np.allclose(left.amps, right.amps, rtol=1e-15, atol=0)


def test_tensor_capacity():
    with pytest.raises(CapacityError):
        tensor(ghz(3), ghz(3), max_qubits=5)


# --- permutation ------------------------------------------------------------

def test_permutation_validation():
    with pytest.raises(DomainError):
        QubitPermutation((1, 1, 3))
    ident = QubitPermutation.identity(4)
    assert ident.mapping == (1, 2, 3, 4)
    swap = QubitPermutation.transposition(5, 1, 5)
    assert swap.mapping == (5, 2, 3, 4, 1)
    assert swap.compose(swap) == QubitPermutation.identity(5)


def test_permute_identity_and_inverse():
    psi = random_state(4, 11)
    assert np.array_equal(permute(psi, QubitPermutation.identity(4)).amps, psi.amps)
    pi = QubitPermutation((3, 1, 4, 2))
    roundtrip = permute(permute(psi, pi), pi.inverse())
    assert np.array_equal(roundtrip.amps, psi.amps)


def test_permute_bell_ghz_under_swap_15():
    # Bell on qubits 1,2 times GHZ on 3,4,5; swapping qubits 1 and 5 leaves
    # the Bell pair on 2,5 and the GHZ triple on 1,3,4
    psi = tensor(bell(), ghz(3))
    assert sorted(np.flatnonzero(np.abs(psi.amps) > 1e-12)) == [0, 7, 24, 31]
    moved = permute(psi, QubitPermutation.transposition(5, 1, 5))
    assert sorted(np.flatnonzero(np.abs(moved.amps) > 1e-12)) == [0, 9, 22, 31]
    assert np.allclose(moved.amps[[0, 9, 22, 31]], 0.5, atol=1e-15)


def test_permute_ghz_symmetric():
    rng = np.random.default_rng(5)
    psi = ghz(5)
    for _ in range(10):
        pi = QubitPermutation(map(int, rng.permutation(np.arange(1, 6))))
        assert np.array_equal(permute(psi, pi).amps, psi.amps)


def test_permute_is_an_exact_relabeling():
    # a permutation only gathers: the amplitude multiset (hence the norm in
    # exact arithmetic) is untouched
    psi = random_state(5, 19)
    moved = permute(psi, QubitPermutation((4, 1, 5, 3, 2)))
    assert np.array_equal(np.sort_complex(moved.amps), np.sort_complex(psi.amps))


@given(st.integers(0, 2 ** 31), st.integers(2, 7))
@settings(max_examples=30, deadline=None)
def test_permute_composition(seed, n):
    rng = np.random.default_rng(seed)
    psi = StateVector(n, rng.standard_normal(2 ** n) + 1j * rng.standard_normal(2 ** n))
    pi = QubitPermutation(map(int, rng.permutation(np.arange(1, n + 1))))
    sigma = QubitPermutation(map(int, rng.permutation(np.arange(1, n + 1))))
    two_step = permute(permute(psi, pi), sigma)
    one_step = permute(psi, sigma.compose(pi))
    assert np.array_equal(two_step.amps, one_step.amps)


def test_permute_size_mismatch():
    with pytest.raises(DomainError):
        permute(ghz(3), QubitPermutation.identity(4))


# --- local operators --------------------------------------------------------

def test_apply_local_identity_and_scaling():
    psi = random_state(3, 17)
    eye = np.eye(2)
    assert np.allclose(apply_local(psi, [eye] * 3).amps, psi.amps, atol=1e-15)
    scaled = apply_local(psi, [2.5 * eye, eye, eye])
    assert np.allclose(scaled.amps, 2.5 * psi.amps, atol=1e-14)


def test_apply_local_bit_flip():
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    n = 4
    eye = np.eye(2)
    for k in range(1, n + 1):
        for idx in (0, 5, 9):
            basis = named_state("basis", n, extra=idx)
            ops = [eye] * n
            ops[k - 1] = x
            out = apply_local(basis, ops)
            assert out.amps[idx ^ (1 << (n - k))] == 1.0


def test_apply_single_matches_apply_local():
    rng = np.random.default_rng(23)
    eye = np.eye(2)
    for _ in range(100):
        n = int(rng.integers(2, 6))
        psi = StateVector(n, rng.standard_normal(2 ** n) + 1j * rng.standard_normal(2 ** n))
        k = int(rng.integers(1, n + 1))
        m = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        ops = [eye] * n
        ops[k - 1] = m
        assert np.allclose(apply_single(psi, k, m).amps, apply_local(psi, ops).amps, atol=1e-13)


def test_apply_single_ghz4_diagonal():
    out = apply_single(ghz(4), 1, np.diag([0.3, 0.7]))
    assert abs(out.amps[0] - 0.3 * RT2) < 1e-15
    assert abs(out.amps[15] - 0.7 * RT2) < 1e-15


def test_apply_local_permutation_equivariance():
    # moving the state then acting with correspondingly moved operators is
    # the same as acting first and moving afterwards
    rng = np.random.default_rng(29)
    for n in (3, 4, 6):
        psi = StateVector(n, rng.standard_normal(2 ** n) + 1j * rng.standard_normal(2 ** n))
        ops = [rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)) for _ in range(n)]
        pi = QubitPermutation(map(int, rng.permutation(np.arange(1, n + 1))))
        moved_ops = [None] * n
        for j in range(1, n + 1):
            moved_ops[pi(j) - 1] = ops[j - 1]
        lhs = apply_local(permute(psi, pi), moved_ops)
        rhs = permute(apply_local(psi, ops), pi)
        assert np.allclose(lhs.amps, rhs.amps, atol=1e-12)


def test_unitary_preserves_norm():
    psi = random_state(4, 31)
    ops = [random_operator("unitary", 100 + i) for i in range(4)]
    assert abs(apply_local(psi, ops).norm() - 1.0) < 1e-10


def test_apply_local_wrong_count():
    with pytest.raises(DomainError):
        apply_local(ghz(3), [np.eye(2)] * 2)


# --- named states and products ----------------------------------------------

def test_named_states():
    g2 = named_state("ghz", 2)
    assert np.allclose(g2.amps, [RT2, 0, 0, RT2], atol=1e-15)
    w3 = named_state("w", 3)
    expected = np.zeros(8)
    expected[[1, 2, 4]] = 1 / math.sqrt(3)
    assert np.allclose(w3.amps, expected, atol=1e-15)
    b5 = named_state("basis", 3, extra=5)
    assert b5.amps[5] == 1.0 and np.count_nonzero(b5.amps) == 1
    with pytest.raises(DomainError):
        named_state("bell", 3)
    with pytest.raises(DomainError):
        named_state("fancy", 3)


def test_build_product_single_factor_identity():
    psi = build_product(ProductExpression((ProductFactor(ghz(3), (1, 2, 3)),)))
    assert np.array_equal(psi.amps, ghz(3).amps)


def test_build_product_matches_tensor_plus_permutation():
    expr = ProductExpression((ProductFactor(ghz(4), (1, 4, 5, 6)),
                              ProductFactor(bell(), (2, 3))))
    psi = build_product(expr)
    manual = permute(tensor(ghz(4), bell()), QubitPermutation((1, 4, 5, 6, 2, 3)))
    assert np.array_equal(psi.amps, manual.amps)


def test_build_product_label_errors():
    with pytest.raises(DomainError):
        build_product(ProductExpression((ProductFactor(bell(), (1, 2)),
                                         ProductFactor(bell(), (2, 3)))))
    with pytest.raises(DomainError):
        build_product(ProductExpression((ProductFactor(bell(), (1, 4)),)))


def test_parse_product_expression():
    expr = parse_product_expression("ghz:3@1,2,3 x bell@4,5")
    assert len(expr.factors) == 2
    assert expr.factors[0].labels == (1, 2, 3)
    psi = build_product(expr)
    assert np.array_equal(psi.amps, tensor(ghz(3), bell()).amps)

    basis = parse_product_expression("basis:2:3@1,2")
    assert build_product(basis).amps[3] == 1.0


def test_parse_product_expression_errors():
    with pytest.raises(ParseError):
        parse_product_expression("")
    with pytest.raises(ParseError) as exc:
        parse_product_expression("ghz:3@1,2")
    assert exc.value.column == 1
    with pytest.raises(ParseError) as exc:
        parse_product_expression("bell@1,2 bell@3,4")
    assert exc.value.column == 10  # second factor where the separator belongs
    with pytest.raises(ParseError):
        parse_product_expression("bell@1,2 x")
    with pytest.raises(ParseError):
        parse_product_expression("blub:3@1,2,3")


# --- random generation ------------------------------------------------------

def test_random_state_normalized_and_deterministic():
    for n in (2, 5):
        psi = random_state(n, 42)
        assert abs(psi.norm() - 1.0) < 1e-12
        again = random_state(n, 42)
        assert np.array_equal(psi.amps, again.amps)


def test_random_operator_kinds():
    sl = random_operator("special_linear", 1)
    assert abs(np.linalg.det(sl) - 1.0) < 1e-9
    assert is_special_linear(sl)
    u = random_operator("unitary", 2)
    assert is_unitary(u, tol=1e-10)
    c = random_operator("contraction", 3)
    assert np.linalg.svd(c, compute_uv=False)[0] <= 1.0 + 1e-12
    g = random_operator("general", 4)
    assert np.array_equal(g, random_operator("general", 4))
    with pytest.raises(DomainError):
        random_operator("hermitian", 5)


def test_operator_predicates():
    assert is_diagonal_nonneg(np.diag([0.5, 0.0]))
    assert not is_diagonal_nonneg(np.diag([0.5, -0.1]))
    assert not is_diagonal_nonneg(np.array([[0.5, 0.2], [0.0, 0.5]]))
    assert not is_special_linear(2.0 * np.eye(2))
    assert not is_unitary(np.diag([1.0, 0.5]))


# --- qsv file format ---------------------------------------------------------

def test_qsv_roundtrip_exact(tmp_path):
    psi = random_state(4, 99)
    path = tmp_path / "state.qsv"
    write_qsv(psi, path)
    back = read_qsv(path)
    assert back.n == 4
    assert np.array_equal(back.amps, psi.amps)

    text = path.read_text()
    assert text.splitlines()[0] == "qsv 1"
    assert text.splitlines()[1] == "n 4"
    assert len(text.splitlines()) == 2 + 16


def test_qsv_stream_io():
    buf = io.StringIO()
    write_qsv(bell(), buf)
    back = read_qsv(io.StringIO(buf.getvalue()))
    assert np.array_equal(back.amps, bell().amps)


def test_qsv_parse_errors():
    with pytest.raises(ParseError) as exc:
        read_qsv(io.StringIO("qsv 2\nn 1\n0 0\n1 0\n"))
    assert exc.value.line == 1

    with pytest.raises(ParseError) as exc:
        read_qsv(io.StringIO("qsv 1\nqubits 1\n0 0\n1 0\n"))
    assert exc.value.line == 2

    with pytest.raises(ParseError) as exc:
        read_qsv(io.StringIO("qsv 1\nn 2\n0 0\n1 0\n"))
    assert "4 amplitude lines" in str(exc.value)
    assert exc.value.line == 5  # where the first missing line should be

    with pytest.raises(ParseError) as exc:
        read_qsv(io.StringIO("qsv 1\nn 1\n0 0\n1 0\n2 0\n"))
    assert exc.value.line == 5  # the first surplus line

    with pytest.raises(ParseError) as exc:
        read_qsv(io.StringIO("qsv 1\nn 1\n0 0\n1 oops\n"))
    assert exc.value.line == 4
    assert exc.value.column == 3


def test_state_vector_validation():
    with pytest.raises(DomainError):
        StateVector(2, np.zeros(3))
    with pytest.raises(DomainError):
        StateVector(0, np.zeros(1))
    psi = bell()
    with pytest.raises(ValueError):
        psi.amps[0] = 1.0  # amplitudes are read-only
