"""Superdense-coding encoders, decoders, and capacity verification."""

import math

import numpy as np
import pytest

from wproto.qsim import apply_unitary
from wproto.sdc import (
    EncodingSet,
    capacity_check,
    decode,
    encode,
    general_encoding_set,
    pauli_product_set,
    pauli_set,
    w4_multiunary_set,
)
from wproto.teleport import UnsuitableResourceError
from wproto.wstates import (
    CoefficientVector,
    generalized_ghz,
    generalized_w,
    random_condition_coefficients,
    w_coefficients,
)

from oracle_utils import build_state, gram_of

SQ2 = 1 / math.sqrt(2)
MOD_W3 = CoefficientVector([0.5, 0.5, SQ2])


class TestPauliSet:
    def test_identity_first(self):
        np.testing.assert_array_equal(pauli_set()[0].matrix, np.eye(2))

    def test_bit_flip(self):
        np.testing.assert_array_equal(pauli_set()[1].matrix @ [1, 0], [0, 1])

    def test_four_transformed_resource_states(self):
        # applying the four operators to the last qubit of the resource
        # produces exactly the expected superpositions
        state = generalized_w(MOD_W3)
        sets = pauli_set()
        expected = [
            build_state(3, {"100": 0.5, "010": 0.5, "001": SQ2}),   # identity
            build_state(3, {"101": 0.5, "011": 0.5, "000": SQ2}),   # bit flip
            build_state(3, {"101": -0.5, "011": -0.5, "000": SQ2}), # bit+sign
            build_state(3, {"100": 0.5, "010": 0.5, "001": -SQ2}),  # sign flip
        ]
        for op, want in zip(sets, expected):
            got = apply_unitary(state, op, [3])
            np.testing.assert_allclose(got.amplitudes, want, atol=1e-14)

    def test_encoded_states_orthogonal(self):
        states = [
            encode(MOD_W3, 1, EncodingSet.from_operators(pauli_set()), msg)
            for msg in ((0, 0), (0, 1), (1, 0), (1, 1))
        ]
        np.testing.assert_allclose(
            gram_of([s.amplitudes for s in states]), np.eye(4), atol=1e-12
        )


class TestW4MultiunarySet:
    def test_first_is_identity(self):
        np.testing.assert_array_equal(w4_multiunary_set().operators[0].matrix, np.eye(4))

    def test_eight_encoded_states_orthogonal_on_front_qubits(self):
        w4 = generalized_w(w_coefficients(4))
        states = [
            apply_unitary(w4, op, [1, 2]) for op in w4_multiunary_set().operators
        ]
        np.testing.assert_allclose(
            gram_of([s.amplitudes for s in states]), np.eye(8), atol=1e-12
        )

    def test_capacity_three_bits(self):
        result = capacity_check(w_coefficients(4), 2, w4_multiunary_set())
        assert result.decodable
        assert result.bits == 3


class TestGeneralEncodingSet:
    def test_m1_reduces_to_pauli_set(self):
        ops = general_encoding_set(MOD_W3, 1).operators
        for got, want in zip(ops, pauli_set()):
            np.testing.assert_allclose(got.matrix, want.matrix, atol=1e-12)

    @pytest.mark.parametrize("n,m", [(2, 1), (4, 2), (6, 3), (8, 4)])
    def test_w2n_capacity_is_m_plus_one(self, n, m):
        c = w_coefficients(n)
        result = capacity_check(c, m, general_encoding_set(c, m))
        assert result.decodable
        assert result.bits == m + 1
        assert result.set_size == 2 ** (m + 1)

    def test_random_complex_resources(self):
        rng = np.random.default_rng(13)
        for n, m in [(4, 2), (5, 2), (6, 3), (7, 3), (8, 4), (4, 3)]:
            c = random_condition_coefficients(n, m, rng)
            result = capacity_check(c, m, general_encoding_set(c, m))
            assert result.decodable, (n, m)
            assert result.bits == m + 1

    def test_never_exceeds_m_plus_one(self):
        # even throwing more operators at the resource cannot push capacity
        # past one bit over the qubit count
        rng = np.random.default_rng(29)
        for n, m in [(4, 2), (6, 3)]:
            c = random_condition_coefficients(n, m, rng)
            result = capacity_check(c, m, pauli_product_set(m))
            assert result.bits <= m + 1

    def test_encodability_iff_condition(self):
        # full orthogonality of the generated set tracks the split condition
        # exactly, over resources that hold at some m and not others
        from wproto.wstates import teleport_condition

        rng = np.random.default_rng(37)
        pool = [w_coefficients(n) for n in range(3, 9)]
        pool += [
            random_condition_coefficients(int(rng.integers(3, 9)), 1, rng)
            for _ in range(4)
        ]
        for c in pool:
            for m in range(1, min(c.n, 5)):
                encoding = general_encoding_set(c, m)
                states = [
                    apply_unitary(
                        generalized_w(c), op, range(c.n - m + 1, c.n + 1)
                    )
                    for op in encoding.operators
                ]
                holds = teleport_condition(c, m).holds
                assert decode(states).decodable == holds, (c.n, m)


class TestEncode:
    def test_identity_message_returns_resource(self):
        got = encode(MOD_W3, 1, EncodingSet.from_operators(pauli_set()), (0, 0))
        np.testing.assert_allclose(
            got.amplitudes, generalized_w(MOD_W3).amplitudes, atol=1e-15
        )

    def test_encoded_states_stay_normalized(self):
        rng = np.random.default_rng(5)
        c = random_condition_coefficients(6, 3, rng)
        encoding = general_encoding_set(c, 3)
        for msg in encoding.labels:
            assert abs(encode(c, 3, encoding, msg).norm - 1.0) < 1e-12

    def test_unsuitable_resource_rejected(self):
        with pytest.raises(UnsuitableResourceError):
            encode(w_coefficients(3), 1, EncodingSet.from_operators(pauli_set()), (0, 0))

    def test_message_out_of_range(self):
        with pytest.raises(ValueError):
            encode(MOD_W3, 1, EncodingSet.from_operators(pauli_set()), (0, 1, 1))


class TestDecode:
    def test_orthogonal_set_decodable_with_induced_basis(self):
        states = [
            encode(MOD_W3, 1, EncodingSet.from_operators(pauli_set()), msg)
            for msg in ((0, 0), (0, 1), (1, 0), (1, 1))
        ]
        verdict = decode(states)
        assert verdict.decodable
        assert verdict.basis is not None
        assert len(verdict.basis.vectors) == 4
        assert verdict.worst_pair is None

    def test_skewed_ghz_not_decodable(self):
        # sign-flip vs identity on one qubit of a lopsided two-term state
        # leaves overlap |a1|^2 - |a2|^2
        state = generalized_ghz(1 / math.sqrt(3), math.sqrt(2 / 3), 3)
        states = [apply_unitary(state, op, [1]) for op in pauli_set()]
        verdict = decode(states)
        assert not verdict.decodable
        i, j, worst = verdict.worst_pair
        assert worst == pytest.approx(1 / 3, abs=1e-12)
        assert {i, j} == {0, 3}  # the identity / sign-flip pair

    def test_wrong_partition_fails(self):
        # encoding on a single qubit of the 4-qubit W-state (entropy < 1)
        w4 = generalized_w(w_coefficients(4))
        states = [apply_unitary(w4, op, [4]) for op in pauli_set()]
        verdict = decode(states)
        assert not verdict.decodable

    def test_gram_matches_oracle(self):
        rng = np.random.default_rng(11)
        c = random_condition_coefficients(5, 2, rng)
        encoding = general_encoding_set(c, 2)
        states = [encode(c, 2, encoding, msg) for msg in encoding.labels]
        verdict = decode(states)
        np.testing.assert_allclose(
            verdict.gram, gram_of([s.amplitudes for s in states]), atol=1e-13
        )


class TestCapacityCheck:
    def test_modified_w3_two_bits(self):
        result = capacity_check(MOD_W3, 1, EncodingSet.from_operators(pauli_set()))
        assert result.decodable and result.bits == 2

    def test_full_product_set_not_maximal_on_w4(self):
        result = capacity_check(w_coefficients(4), 2, pauli_product_set(2))
        assert not result.decodable
        assert result.set_size == 16
        assert result.bits < 4
        assert result.exhaustive  # exact search for sets this small
        assert result.subset_size == 8

    def test_greedy_flagged_non_optimal_for_large_sets(self):
        # 32 operators on a resource that cannot support them
        c = w_coefficients(6)
        result = capacity_check(c, 3, pauli_product_set(3))
        assert not result.decodable
        assert not result.exhaustive
        assert result.bits <= 4


class TestEncodingSetValidation:
    def test_size_must_be_power_of_two(self):
        ops = pauli_set()[:3]
        with pytest.raises(ValueError):
            EncodingSet.from_operators(ops)

    def test_labels_must_match(self):
        ops = pauli_set()
        with pytest.raises(ValueError):
            EncodingSet(tuple(ops), ((0, 0), (0, 1), (1, 0), (0, 0)))

    def test_operator_lookup(self):
        encoding = EncodingSet.from_operators(pauli_set())
        np.testing.assert_array_equal(encoding.operator_for((0, 0)).matrix, np.eye(2))
        assert encoding.message_bits == 2
