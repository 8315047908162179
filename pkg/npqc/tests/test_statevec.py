"""
狀態向量模擬器測試
"""

import numpy as np
import pytest

from npqc.exceptions import (
    NPQCArgumentError,
    NPQCCapacityError,
    NPQCQubitIndexError,
    NPQCShapeError,
)
from npqc.statevec import (
    Axis,
    GateKind,
    GateOp,
    StateVector,
    apply_gate,
    apply_gates,
    apply_pauli,
    basis_state,
    excited_index,
    fidelity,
    inner_product,
    make_rng,
    random_haar_state,
    sample_basis,
    zero_state,
)


def _random_gates(n_qubits: int, count: int, seed: int):
    rng = make_rng(seed, 99)
    gates = []
    for _ in range(count):
        kind = rng.integers(3)
        if kind == 0:
            gates.append(GateOp.ry(int(rng.integers(1, n_qubits + 1)), rng.uniform(-np.pi, np.pi)))
        elif kind == 1:
            gates.append(GateOp.rz(int(rng.integers(1, n_qubits + 1)), rng.uniform(-np.pi, np.pi)))
        else:
            a, b = rng.choice(np.arange(1, n_qubits + 1), size=2, replace=False)
            gates.append(GateOp.cphase(int(a), int(b)))
    return gates


class TestStateConstruction:
    """狀態建立測試"""

    def test_zero_state(self):
        """測試 |0> 的振幅"""
        np.testing.assert_array_equal(zero_state(1).amplitudes, [1, 0])
        np.testing.assert_array_equal(zero_state(2).amplitudes, [1, 0, 0, 0])

    def test_capacity_limit(self):
        """測試超出容量時拋出容量錯誤"""
        with pytest.raises(NPQCCapacityError) as exc_info:
            zero_state(30)

        assert exc_info.value.limit == 24

        with pytest.raises(NPQCCapacityError):
            zero_state(0)

    def test_amplitude_length_checked(self):
        """測試振幅長度必須為 2^N"""
        with pytest.raises(NPQCShapeError):
            StateVector(2, np.zeros(3))

    def test_basis_state(self):
        """測試計算基底態"""
        state = basis_state(3, 5)

        assert state.amplitudes[5] == 1
        assert state.norm() == pytest.approx(1.0)

        with pytest.raises(NPQCArgumentError):
            basis_state(2, 4)


class TestGates:
    """閘操作測試"""

    def test_ry_pi_flips_qubit(self):
        """測試 RY(pi) 將量子位元 q 激發到文件記載的索引"""
        for qubit in (1, 2, 3):
            state = apply_gate(zero_state(3), GateOp.ry(qubit, np.pi))
            probabilities = state.probabilities()

            assert probabilities[excited_index(qubit)] == pytest.approx(1.0)
            assert excited_index(qubit) == 1 << (qubit - 1)

    def test_rz_phase(self):
        """測試 RZ(phi)|0> = exp(-i phi/2)|0>"""
        phi = 0.7
        state = apply_gate(zero_state(1), GateOp.rz(1, phi))

        np.testing.assert_allclose(state.amplitudes, [np.exp(-0.5j * phi), 0], atol=1e-12)

    def test_ry_matrix(self):
        """測試 RY(theta)|0> = cos(theta/2)|0> + sin(theta/2)|1>"""
        theta = 1.1
        state = apply_gate(zero_state(1), GateOp.ry(1, theta))

        np.testing.assert_allclose(state.amplitudes, [np.cos(theta / 2), np.sin(theta / 2)], atol=1e-12)

    def test_cphase_on_11(self):
        """測試 CPHASE|11> = -|11>"""
        state = apply_gate(basis_state(2, 3), GateOp.cphase(1, 2))

        np.testing.assert_allclose(state.amplitudes, [0, 0, 0, -1], atol=1e-12)

    def test_cphase_leaves_other_states(self):
        """測試 CPHASE 對其他基底態不作用"""
        for index in (0, 1, 2):
            state = apply_gate(basis_state(2, index), GateOp.cphase(2, 1))
            assert state.amplitudes[index] == pytest.approx(1.0)

    def test_invalid_qubit(self):
        """測試無效的量子位元索引"""
        with pytest.raises(NPQCQubitIndexError):
            apply_gate(zero_state(2), GateOp.ry(3, 0.1))

        with pytest.raises(IndexError):
            apply_gate(zero_state(2), GateOp.cphase(0, 1))

    def test_gate_validation(self):
        """測試閘參數驗證"""
        with pytest.raises(NPQCArgumentError):
            GateOp.cphase(2, 2)

        with pytest.raises(NPQCArgumentError):
            GateOp(GateKind.RY, (1,))

        with pytest.raises(NPQCArgumentError):
            GateOp(GateKind.CPHASE, (1, 2), angle=0.3)

    def test_inverse_restores_state(self):
        """測試閘與逆閘相乘為單位操作"""
        state = random_haar_state(4, seed=3)
        for gate in _random_gates(4, 60, seed=1):
            restored = apply_gate(apply_gate(state, gate), gate.inverse())
            np.testing.assert_allclose(restored.amplitudes, state.amplitudes, atol=1e-10)

    def test_norm_preserved(self):
        """測試 1000 個隨機閘後範數不變"""
        state = apply_gates(random_haar_state(5, seed=4), _random_gates(5, 1000, seed=2))

        assert abs(1.0 - state.norm() ** 2) <= 1e-8

    def test_apply_gates_copy_semantics(self):
        """測試 inplace=False 不修改輸入"""
        state = zero_state(2)
        result = apply_gates(state, [GateOp.ry(1, np.pi)])

        assert state.amplitudes[0] == 1
        assert result is not state

        same = apply_gates(state, [GateOp.ry(1, np.pi)], inplace=True)
        assert same is state

    def test_pauli_y(self):
        """測試 sigma^y|0> = i|1>"""
        state = apply_pauli(zero_state(1), Axis.Y, 1)

        np.testing.assert_allclose(state.amplitudes, [0, 1j], atol=1e-12)

    def test_pauli_z(self):
        """測試 sigma^z|1> = -|1>"""
        state = apply_pauli(basis_state(1, 1), Axis.Z, 1)

        np.testing.assert_allclose(state.amplitudes, [0, -1], atol=1e-12)


class TestOverlaps:
    """內積與保真度測試"""

    def test_inner_product(self):
        """測試基底態內積"""
        assert inner_product(zero_state(1), zero_state(1)) == pytest.approx(1.0)
        assert inner_product(zero_state(1), basis_state(1, 1)) == pytest.approx(0.0)

    def test_inner_product_self(self):
        """測試閘建構態的自身內積為 1"""
        state = apply_gates(zero_state(3), _random_gates(3, 30, seed=5))

        assert inner_product(state, state) == pytest.approx(1.0, abs=1e-12)

    def test_dimension_mismatch(self):
        """測試維度不符時拋出形狀錯誤"""
        with pytest.raises(NPQCShapeError):
            inner_product(zero_state(1), zero_state(2))

        with pytest.raises(NPQCShapeError):
            fidelity(zero_state(2), zero_state(3))

    def test_fidelity_half(self):
        """測試 |0> 與等權疊加的保真度為 1/2"""
        plus = apply_gate(zero_state(1), GateOp.ry(1, np.pi / 2))

        assert fidelity(zero_state(1), plus) == pytest.approx(0.5)

    def test_fidelity_symmetric(self):
        """測試保真度對稱"""
        a = random_haar_state(4, seed=1)
        b = random_haar_state(4, seed=2)

        assert fidelity(a, b) == pytest.approx(fidelity(b, a), abs=1e-15)
        assert fidelity(a, a) == pytest.approx(1.0)


class TestSampling:
    """計算基底取樣測試"""

    def test_deterministic_state(self):
        """測試確定態只有一個結果"""
        assert sample_basis(zero_state(2), 100, seed=0) == {0: 100}

    def test_zero_shots(self):
        """測試 shots = 0 時拋出參數錯誤"""
        with pytest.raises(NPQCArgumentError):
            sample_basis(zero_state(1), 0, seed=0)

    def test_seeded(self):
        """測試相同種子得到相同結果"""
        state = random_haar_state(3, seed=8)

        assert sample_basis(state, 500, 1, 2) == sample_basis(state, 500, 1, 2)
        assert sample_basis(state, 500, 1, 2) != sample_basis(state, 500, 1, 3)

    def test_counts_sum(self):
        """測試計數總和等於取樣數"""
        counts = sample_basis(random_haar_state(4, seed=9), 1234, seed=0)

        assert sum(counts.values()) == 1234

    def test_bernoulli_half(self):
        """測試等權疊加的取樣頻率"""
        plus = apply_gate(zero_state(1), GateOp.ry(1, np.pi / 2))
        counts = sample_basis(plus, 10 ** 6, seed=11)

        assert counts[0] / 10 ** 6 == pytest.approx(0.5, abs=0.002)

    def test_frequencies_converge(self):
        """測試頻率與 |amplitude|^2 的差距在 4/sqrt(shots) 以內"""
        shots = 10 ** 5
        state = random_haar_state(3, seed=12)
        counts = sample_basis(state, shots, seed=13)
        probabilities = state.probabilities()

        for index in range(8):
            assert abs(counts.get(index, 0) / shots - probabilities[index]) <= 4 / np.sqrt(shots)


class TestHaarStates:
    """Haar 隨機態測試"""

    def test_normalized(self):
        """測試正規化"""
        assert random_haar_state(5, seed=0).norm() == pytest.approx(1.0, abs=1e-10)

    def test_seeded(self):
        """測試固定種子得到相同狀態"""
        a = random_haar_state(4, 17, 1)
        b = random_haar_state(4, 17, 1)

        np.testing.assert_array_equal(a.amplitudes, b.amplitudes)

    def test_mean_fidelity_to_zero(self):
        """測試 N=6 時與 |0> 的平均保真度接近 1/64"""
        draws = np.array([
            fidelity(zero_state(6), random_haar_state(6, 21, i)) for i in range(1000)
        ])
        standard_error = draws.std(ddof=1) / np.sqrt(len(draws))

        assert abs(draws.mean() - 1 / 64) <= 4 * standard_error

    def test_mean_pair_fidelity(self):
        """測試 N=8 兩個 Haar 隨機態的平均保真度接近 1/256"""
        draws = np.array([
            fidelity(random_haar_state(8, 22, i, 0), random_haar_state(8, 22, i, 1)) for i in range(400)
        ])
        standard_error = draws.std(ddof=1) / np.sqrt(len(draws))

        assert abs(draws.mean() - 1 / 256) <= 4 * standard_error


class TestRandomStreams:
    """亂數串流測試"""

    def test_same_stream_same_values(self):
        """測試相同 (seed, stream) 產生相同序列"""
        a = make_rng(5, 1, 2).standard_normal(10)
        b = make_rng(5, 1, 2).standard_normal(10)

        np.testing.assert_array_equal(a, b)

    def test_streams_independent(self):
        """測試不同串流產生不同序列"""
        a = make_rng(5, 1, 2).standard_normal(10)
        b = make_rng(5, 2, 1).standard_normal(10)

        assert not np.allclose(a, b)
