import numpy as np
import pytest

import helpers
from ftqc import (
    Circuit,
    Gate,
    NoiseModel,
    OverallComputation,
    actual_failure_probability,
    basis_encoding,
    basis_readout,
    compile_ideal,
    compile_noisy,
    computation_from_json,
    ideal_failure_bound,
    outcome_distribution,
)
from ftqc.errors import (
    BadBitstringError,
    ConfigError,
    DimensionMismatchError,
    NotAnEffectError,
    TooManyInputsError,
    UnknownInputError,
)


def parity_computation(num_qubits=1):
    """Identity truth table on all bitstrings of the register, full readout."""
    labels = [format(i, f"0{num_qubits}b") for i in range(2 ** num_qubits)]
    return OverallComputation(
        inputs=tuple(labels),
        outputs=tuple(labels),
        truth_table={x: x for x in labels},
        init=basis_encoding(num_qubits, labels),
        povm=basis_readout(num_qubits),
    )


class TestBasisEncoding:
    def test_single_qubit_states(self):
        enc = basis_encoding(1, ["0", "1"])
        np.testing.assert_allclose(enc["0"].entries, [[1, 0], [0, 0]], atol=1e-15)
        np.testing.assert_allclose(enc["1"].entries, [[0, 0], [0, 1]], atol=1e-15)

    def test_two_qubit_ordering(self):
        # "10" maps to index 2: leading character is the most significant bit
        enc = basis_encoding(2, ["10"])
        expected = np.zeros((4, 4))
        expected[2, 2] = 1.0
        np.testing.assert_allclose(enc["10"].entries, expected, atol=1e-15)

    def test_rejects_too_many_inputs(self):
        with pytest.raises(TooManyInputsError):
            basis_encoding(1, ["0", "1", "0"])

    def test_rejects_bad_bitstring(self):
        with pytest.raises(BadBitstringError):
            basis_encoding(2, ["02"])
        with pytest.raises(BadBitstringError):
            basis_encoding(2, ["0"])


class TestBasisReadout:
    def test_full_readout_is_projector_family(self):
        povm = basis_readout(2)
        assert set(povm) == {"00", "01", "10", "11"}
        np.testing.assert_allclose(povm["10"].entries, np.diag([0, 0, 1.0, 0]), atol=1e-15)

    def test_marginal_readout_of_first_qubit(self):
        # frozen: measuring qubit 0 of two, outcome "0" has effect diag(1,1,0,0)
        povm = basis_readout(2, measured=(0,))
        assert set(povm) == {"0", "1"}
        np.testing.assert_allclose(povm["0"].entries, np.diag([1.0, 1.0, 0, 0]), atol=1e-15)
        np.testing.assert_allclose(povm["1"].entries, np.diag([0, 0, 1.0, 1.0]), atol=1e-15)

    def test_effects_resolve_identity(self):
        povm = basis_readout(3, measured=(0, 2))
        total = sum(e.entries for e in povm.values())
        np.testing.assert_allclose(total, np.eye(8), atol=1e-15)


class TestOverallComputation:
    def test_rejects_partial_truth_table(self):
        with pytest.raises(UnknownInputError):
            OverallComputation(
                inputs=("0", "1"),
                outputs=("0", "1"),
                truth_table={"0": "0"},
                init=basis_encoding(1, ["0", "1"]),
                povm=basis_readout(1),
            )

    def test_rejects_out_of_range_truth_value(self):
        with pytest.raises(UnknownInputError):
            OverallComputation(
                inputs=("0",),
                outputs=("0",),
                truth_table={"0": "1"},
                init=basis_encoding(1, ["0"]),
                povm={"0": basis_readout(1)["0"], "1": basis_readout(1)["1"]},
            )

    def test_rejects_incomplete_povm(self):
        with pytest.raises(NotAnEffectError):
            OverallComputation(
                inputs=("0",),
                outputs=("0",),
                truth_table={"0": "0"},
                init=basis_encoding(1, ["0"]),
                povm={"0": basis_readout(1)["0"]},
            )

    def test_rejects_mismatched_dimensions(self):
        with pytest.raises(DimensionMismatchError):
            OverallComputation(
                inputs=("0",),
                outputs=("0", "1"),
                truth_table={"0": "0"},
                init=basis_encoding(1, ["0"]),
                povm=basis_readout(2, measured=(0,)),
            )


class TestOutcomeDistribution:
    def test_hadamard_is_balanced(self):
        circ = Circuit(num_qubits=1, gates=[Gate(name="H", targets=(0,))])
        dist = outcome_distribution(compile_ideal(circ), parity_computation(), "0")
        assert dist.probabilities["0"] == pytest.approx(0.5, abs=1e-12)
        assert dist.probabilities["1"] == pytest.approx(0.5, abs=1e-12)

    def test_unknown_input_rejected(self):
        circ = Circuit(num_qubits=1, gates=[])
        with pytest.raises(UnknownInputError):
            outcome_distribution(compile_ideal(circ), parity_computation(), "7")

    def test_probabilities_sum_to_one(self):
        rng = np.random.default_rng(40)
        for _ in range(10):
            circ, noise, comp = helpers.random_instance(rng)
            chan = compile_noisy(circ, noise)
            for x in comp.inputs:
                dist = outcome_distribution(chan, comp, x)
                assert sum(dist.probabilities.values()) == pytest.approx(1.0, abs=1e-9)


class TestFailureProbabilities:
    def test_ideal_identity_never_fails(self):
        circ = Circuit(num_qubits=1, gates=[])
        assert ideal_failure_bound(circ, parity_computation()) == pytest.approx(0.0, abs=1e-12)

    def test_ideal_hadamard_fails_half_the_time(self):
        circ = Circuit(num_qubits=1, gates=[Gate(name="H", targets=(0,))])
        assert ideal_failure_bound(circ, parity_computation()) == pytest.approx(0.5, abs=1e-12)

    def test_wrong_circuit_always_fails(self):
        # X flips every basis state, so the identity truth table never matches
        circ = Circuit(num_qubits=1, gates=[Gate(name="X", targets=(0,))])
        assert ideal_failure_bound(circ, parity_computation()) == pytest.approx(1.0, abs=1e-12)

    def test_depolarized_identity_failure(self):
        # frozen: lambda=0.3 identity circuit fails with probability 0.15 on each input
        circ = Circuit(num_qubits=1, gates=[Gate(name="I", targets=(0,))])
        chan = compile_noisy(circ, NoiseModel(kind="depolarizing", strength=0.3))
        comp = parity_computation()
        for x in ("0", "1"):
            assert actual_failure_probability(chan, comp, x) == pytest.approx(0.15, abs=1e-12)

    def test_failure_is_one_minus_success(self):
        rng = np.random.default_rng(41)
        circ, noise, comp = helpers.random_instance(rng)
        chan = compile_noisy(circ, noise)
        for x in comp.inputs:
            dist = outcome_distribution(chan, comp, x)
            fail = actual_failure_probability(chan, comp, x)
            assert fail == pytest.approx(1.0 - dist.probabilities[comp.truth_table[x]], abs=1e-12)


class TestComputationJson:
    def test_computational_basis_shortcut(self):
        comp = computation_from_json(
            {
                "inputs": ["0", "1"],
                "outputs": ["0", "1"],
                "truth_table": {"0": "0", "1": "1"},
                "povm": "computational_basis",
            }
        )
        assert comp.inputs == ("0", "1")
        np.testing.assert_allclose(comp.povm["1"].entries, np.diag([0, 1.0]), atol=1e-15)

    def test_explicit_effect_matrices(self):
        comp = computation_from_json(
            {
                "inputs": ["0"],
                "outputs": ["even", "odd"],
                "truth_table": {"0": "even"},
                "povm": {"even": [[1, 0], [0, 0]], "odd": [[0, 0], [0, 1]]},
            }
        )
        np.testing.assert_allclose(comp.povm["odd"].entries, np.diag([0, 1.0]), atol=1e-15)

    def test_missing_field_rejected(self):
        with pytest.raises(ConfigError):
            computation_from_json({"inputs": ["0"], "outputs": ["0"], "truth_table": {"0": "0"}})

    def test_non_string_inputs_rejected(self):
        with pytest.raises(ConfigError):
            computation_from_json(
                {"inputs": [0], "outputs": ["0"], "truth_table": {}, "povm": "computational_basis"}
            )
