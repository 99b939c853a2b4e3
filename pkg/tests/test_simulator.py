import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from revalu.alu import build_alu
from revalu.arith import build_adder, build_subtractor
from revalu.errors import BudgetExceeded, StructuralError
from revalu.gates import BitState, cx, x
from revalu.netlist import Circuit, compose, empty_like, inverse
from revalu.simulator import (EXHAUSTIVE_LIMIT, Permutation, check_ancilla_clean,
                              check_bijective, check_equivalent, extract_permutation,
                              run, run_batch, sample_states)

BUILT = [build_adder(2), build_adder(3), build_subtractor(2), build_alu(1), build_alu(2)]


def test_run_empty():
    s = BitState(5, 3)
    assert run(Circuit(3), s) == s


def test_run_adder_carry_out():
    c = build_adder(2)
    s = c.register("B").write(c.register("A").write(0, 3), 1)
    out = run(c, s).value
    assert c.register("B").read(out) == 0
    assert (out >> c.register("CARRY").hi) & 1 == 1


def test_run_width_mismatch():
    with pytest.raises(StructuralError):
        run(Circuit(3), BitState(0, 2))


@given(st.integers(0, 2 ** 16 - 1))
def test_run_inverse_roundtrip(v):
    c = build_alu(3)
    assert run(c, run(inverse(c), v)).value == v


def test_permutation_examples():
    assert extract_permutation(Circuit(2)).table.tolist() == [0, 1, 2, 3]
    assert extract_permutation(Circuit(1, (x(0),))).table.tolist() == [1, 0]
    assert extract_permutation(Circuit(2, (cx(0, 1),))).table.tolist() == [0, 3, 2, 1]


def test_permutation_budget():
    with pytest.raises(BudgetExceeded, match=str(EXHAUSTIVE_LIMIT)):
        extract_permutation(Circuit(EXHAUSTIVE_LIMIT + 1))


def test_run_batch_matches_run():
    c = build_alu(2)
    states = np.arange(1 << c.line_count, dtype=np.uint64)
    batch = run_batch(c, states)
    for v in range(0, 1 << c.line_count, 37):
        assert int(batch[v]) == run(c, v).value


@pytest.mark.parametrize("c", BUILT, ids=lambda c: f"{c.line_count}l")
def test_built_bijective(c):
    v = check_bijective(c)
    assert v and v.method == "exhaustive" and v.checked == 2 ** c.line_count


def test_corrupted_table_fails():
    v = check_bijective(Permutation(np.array([0, 1, 1, 3], dtype=np.uint64)))
    assert not v and "1 collisions" in v.detail


def test_alu3_bijective_exhaustive():
    c = build_alu(3)
    v = check_bijective(c)
    assert v and v.checked == 2 ** 16


def test_sampled_bijective_needs_seed():
    c = build_adder(8)  # 25 lines
    with pytest.raises(ValueError, match="seed"):
        check_bijective(c)
    v = check_bijective(c, seed=3)
    assert v and v.method == "sampled" and v.checked >= 100_000


def test_sampling_deterministic():
    a = sample_states(30, {0: 1}, 1000, seed=7)
    b = sample_states(30, {0: 1}, 1000, seed=7)
    assert np.array_equal(a, b)
    assert len(np.unique(a)) == 1000
    assert np.all(a & np.uint64(1))


@pytest.mark.parametrize("c", BUILT, ids=lambda c: f"{c.line_count}l")
def test_inverse_permutation(c):
    p = extract_permutation(c)
    assert extract_permutation(inverse(c)) == p.inverse()


@pytest.mark.parametrize("c", BUILT, ids=lambda c: f"{c.line_count}l")
def test_compose_semantics(c):
    other = inverse(c).with_gates(inverse(c).gates[:3])
    both = compose(c, other)
    s = np.arange(1 << c.line_count, dtype=np.uint64)
    assert np.array_equal(run_batch(both, s), run_batch(other, run_batch(c, s)))


@pytest.mark.parametrize("c", BUILT, ids=lambda c: f"{c.line_count}l")
def test_control_lines_fixed(c):
    s = np.arange(1 << c.line_count, dtype=np.uint64)
    out = run_batch(c, s)
    for r in c.control_registers:
        assert np.array_equal(r.read(out), r.read(s))


def test_ancilla_clean_examples(dirty_ancilla):
    assert check_ancilla_clean(Circuit(1))
    assert check_ancilla_clean(build_alu(2))
    v = check_ancilla_clean(dirty_ancilla)
    assert not v


def test_equivalent_examples(reordered_adder2):
    c = build_alu(2)
    assert check_equivalent(c, c)
    assert check_equivalent(compose(c, inverse(c)), empty_like(c))
    v = check_equivalent(build_adder(2), reordered_adder2)
    assert not v and "disagreements" in v.detail


def test_equivalent_geometry_mismatch():
    with pytest.raises(StructuralError):
        check_equivalent(build_adder(2), build_adder(3))


@settings(max_examples=25)
@given(st.integers(0, 2 ** 16 - 1))
def test_compose_run_property(u):
    c = build_alu(3)
    half = c.with_gates(c.gates[:10])
    rest = c.with_gates(c.gates[10:])
    assert run(compose(half, rest), u) == run(rest, run(half, u))
