from __future__ import annotations

from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import given

from conftest import nonzero_ints, rational_matrices
from linrig.circuits import (
    LinearCircuit,
    circuit_from_json,
    circuit_sum,
    circuit_to_json,
    depth,
    dft_circuit,
    evaluate,
    evaluate_by_paths,
    factor_circuit,
    generic_size_lower,
    identity_circuit,
    naive_circuit,
    negate,
    rigidity_circuit,
    size,
    stack,
    to_dot,
)
from linrig.families import dft
from linrig.matrix import Matrix, rank


def complete(n_in, n_out, label=1):
    edges = {(i, n_in + j): Fraction(label) for i in range(n_in) for j in range(n_out)}
    return LinearCircuit(tuple(range(n_in)), tuple(range(n_in, n_in + n_out)), edges)


@st.composite
def random_circuits(draw, n_in=None, n_out=None):
    """Layered-order DAGs: edges only go from lower to higher node ids."""
    a = draw(st.integers(1, 4)) if n_in is None else n_in
    b = draw(st.integers(1, 4)) if n_out is None else n_out
    mid = draw(st.integers(0, 4))
    # node order: inputs, internal, outputs
    ins = list(range(a))
    internal = list(range(a, a + mid))
    outs = list(range(a + mid, a + mid + b))
    cand = [(u, v) for u in ins + internal for v in internal + outs if u < v]
    chosen = draw(st.lists(st.sampled_from(cand), max_size=20, unique=True)) if cand else []
    edges = {e: Fraction(draw(nonzero_ints), draw(st.integers(1, 3))) for e in chosen}
    return LinearCircuit(tuple(ins), tuple(outs), edges, frozenset(internal))


def test_fig1_naive_complete_bipartite():
    labels = [[1, 2, 3], [4, 5, 6]]
    C = naive_circuit(Matrix(labels))
    assert evaluate(C) == Matrix(labels)
    assert size(C) == 6 and depth(C) == 1


def test_fig2_zero_entry_dropped():
    C = naive_circuit(Matrix([[1, 2, 3], [0, 5, 6]]))
    assert size(C) == 5


def test_fig3_rank_one():
    C = stack(complete(2, 1), complete(1, 3))
    assert evaluate(C) == Matrix([[1, 1, 1], [1, 1, 1]])
    assert size(C) == 5 and depth(C) == 2
    assert evaluate_by_paths(C) == evaluate(C)


def test_fig4_sum():
    C3 = stack(complete(2, 1), complete(1, 3))
    wires = LinearCircuit((0, 1), (2, 3, 4), {(0, 2): Fraction(1), (1, 3): Fraction(1)})
    S = circuit_sum(C3, wires)
    assert evaluate(S) == evaluate(C3) + evaluate(wires)
    assert evaluate(S) == Matrix([[2, 1, 1], [1, 2, 1]])


def test_fig5_rank_two():
    C = stack(complete(4, 2), complete(2, 4))
    assert size(C) == 16
    assert rank(evaluate(C)) == 1  # all labels 1; shape is what matters


def test_empty_circuit():
    C = LinearCircuit((0, 1), (2, 3, 4), {})
    assert evaluate(C) == Matrix.zeros(2, 3)
    assert size(C) == 0 and depth(C) == 0


def test_invariants_enforced():
    with pytest.raises(ValueError):
        LinearCircuit((0,), (1,), {(0, 1): Fraction(0)})
    with pytest.raises(ValueError):
        LinearCircuit((0,), (3,), {(0, 1): 1, (1, 2): 1, (2, 1): 1, (2, 3): 1})
    with pytest.raises(ValueError):
        LinearCircuit((0,), (1,), {(1, 0): 1})


def test_arity_errors():
    with pytest.raises(ValueError):
        circuit_sum(complete(2, 3), complete(3, 2))
    with pytest.raises(ValueError):
        stack(complete(2, 3), complete(2, 3))


@given(random_circuits())
def test_forward_equals_path_enumeration(C):
    assert evaluate(C) == evaluate_by_paths(C)


@given(st.data())
def test_sum_is_matrix_sum(data):
    a, b = data.draw(st.integers(1, 4)), data.draw(st.integers(1, 4))
    C1 = data.draw(random_circuits(a, b))
    C2 = data.draw(random_circuits(a, b))
    assert evaluate(circuit_sum(C1, C2)) == evaluate(C1) + evaluate(C2)


@given(st.data())
def test_stack_is_matrix_product(data):
    a, b, c = (data.draw(st.integers(1, 4)) for _ in range(3))
    C1 = data.draw(random_circuits(a, b))
    C2 = data.draw(random_circuits(b, c))
    assert evaluate(stack(C1, C2)) == evaluate(C1) @ evaluate(C2)


@given(random_circuits())
def test_sum_with_negation_is_zero(C):
    Z = evaluate(circuit_sum(C, negate(C)))
    assert Z == Matrix.zeros(C.n_in, C.n_out)


@given(random_circuits())
def test_sum_with_empty_and_stack_with_identity(C):
    E = LinearCircuit(tuple(range(C.n_in)), tuple(range(C.n_in, C.n_in + C.n_out)), {})
    assert evaluate(circuit_sum(C, E)) == evaluate(C)
    assert evaluate(stack(C, identity_circuit(C.n_out))) == evaluate(C)


def test_parallel_edges_cancel():
    C1 = LinearCircuit((0,), (1,), {(0, 1): Fraction(2)})
    C2 = LinearCircuit((0,), (1,), {(0, 1): Fraction(-2)})
    assert size(circuit_sum(C1, C2)) == 0


@given(rational_matrices(max_n=5, square=False))
def test_naive_circuit(M):
    C = naive_circuit(M)
    assert evaluate(C) == M
    assert size(C) == M.nnz()


def test_naive_dense_and_zero():
    assert size(naive_circuit(Matrix.zeros(3))) == 0
    assert size(naive_circuit(Matrix([[1] * 4] * 4))) == 16


def test_factor_circuit_examples():
    A = Matrix([[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 0, 1], [1, 3, 3, 5]])
    assert rank(A) == 2
    C = factor_circuit(A, 2)
    assert evaluate(C) == A and size(C) <= 16 and depth(C) == 2
    ones = Matrix([[1, 1, 1], [1, 1, 1]])
    assert size(factor_circuit(ones, 1)) == 5
    Z = factor_circuit(Matrix.zeros(3), 0)
    assert size(Z) == 0 and evaluate(Z) == Matrix.zeros(3)
    with pytest.raises(ValueError):
        factor_circuit(Matrix.identity(3), 2)


@given(rational_matrices(max_n=5, square=False))
def test_factor_circuit_property(M):
    r = rank(M)
    C = factor_circuit(M, r)
    n, m = M.shape
    assert evaluate(C) == M
    assert size(C) <= r * (n + m)


def test_rigidity_circuit():
    A = Matrix([[1, 2, 3], [2, 4, 6], [3, 6, 9]])
    B = Matrix([[0, 0, 0], [0, 5, 0], [0, 0, 0]])
    C = rigidity_circuit(A, B, 1)
    assert evaluate(C) == A + B and size(C) <= 7
    assert evaluate(rigidity_circuit(A, Matrix.zeros(3), 1)) == evaluate(factor_circuit(A, 1))
    assert evaluate(rigidity_circuit(Matrix.zeros(3), B, 0)) == B


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_dft_circuit(k):
    C = dft_circuit(k)
    n = 2 ** k
    assert size(C) == 2 * n * k
    assert depth(C) == k
    assert evaluate(C) == dft(n)


def test_dft_circuit_k5_shape():
    C = dft_circuit(5)
    assert size(C) == 2 ** 6 * 5 and depth(C) == 5


def test_dft_circuit_small_values():
    assert evaluate(dft_circuit(1)) == Matrix([[1, 1], [1, -1]], 2)
    assert size(dft_circuit(3)) == 48


def test_generic_size_lower():
    assert generic_size_lower(8 * (3 + 1)) == 32
    assert generic_size_lower(0) == 0
    assert generic_size_lower(25) == 25


def test_json_and_dot():
    C = dft_circuit(2)
    assert circuit_from_json(circuit_to_json(C)) == C
    assert evaluate(circuit_from_json(circuit_to_json(C))) == dft(4)
    dot = to_dot(C)
    assert dot.startswith("digraph") and dot.count("->") == size(C)
