"""
VQA 訓練測試

自適應學習率、梯度上升、Adam 基準與單步掃描。
"""

import numpy as np
import pytest

from npqc.circuit import NpqcSpec, prepare_state, reference_params
from npqc.exceptions import (
    NPQCArgumentError,
    NPQCConfigurationError,
    NPQCConvergedError,
    NPQCDomainError,
    NPQCInfeasibleError,
    NPQCStationaryPointError,
)
from npqc.statevec import fidelity
from npqc.training import (
    AdamState,
    InitMode,
    OptimizerConfig,
    OptimizerMethod,
    StopReason,
    adaptive_rates,
    fit_scaling,
    initial_params,
    learning_rate_scan,
    probe_rate,
    single_adaptive_step,
    single_step_scan,
    step_sweep,
    target_from_distance,
    train,
)


RACE_BUDGET = 40


def _train_from(spec, init, target, method, instance):
    theta0 = initial_params(spec, init, seed=0, instance=instance)
    config = OptimizerConfig(method=method, max_iters=RACE_BUDGET, target_infidelity=0.01)
    return train(spec, theta0, target, config, seed=instance)


def _race_key(trace):
    """(達到 ΔK <= 0.01 的迭代數, 最終不保真度)；未達到時迭代數記為 RACE_BUDGET + 1"""
    iterations = trace.iterations_to(0.01)
    return (RACE_BUDGET + 1 if iterations is None else iterations, 1.0 - trace.final_fidelity)


@pytest.fixture()
def problem():
    """N=6、p=4，目標為距 θ_r 不保真度 0.5 的狀態"""
    spec = NpqcSpec(6, 4)
    _, target = target_from_distance(spec, seed=3, k_target=0.5)
    return spec, target


class TestAdaptiveRates:
    """自適應學習率測試"""

    def test_probe_rate_closed_form(self):
        """測試 K = e^-1、|∇K| = 1、F = I 時 α_1 = 2"""
        assert probe_rate(np.exp(-1), [1.0, 0.0, 0.0]) == pytest.approx(2.0)

    def test_probe_rate_with_metric(self):
        """測試 F = 4I 時 α_1 減半"""
        assert probe_rate(np.exp(-1), [1.0, 0.0], 4 * np.eye(2)) == pytest.approx(1.0)

    def test_probe_rate_with_k0(self):
        """測試 K_0 < 1 時以 K/K_0 計算"""
        assert probe_rate(0.5 * np.exp(-1), [1.0], k0=0.5) == pytest.approx(2.0)

    def test_symmetric_overshoot(self):
        """測試 K_1 = K 時 α_t = α_1/2"""
        alpha_1, alpha_t = adaptive_rates(0.4, 0.4, [0.3, 0.4])

        assert alpha_t == pytest.approx(alpha_1 / 2)

    def test_converged(self):
        """測試 K >= 1 時回報已收斂"""
        with pytest.raises(NPQCConvergedError):
            probe_rate(1.0, [0.1, 0.2])

    def test_stationary(self):
        """測試梯度為零時回報駐點"""
        with pytest.raises(NPQCStationaryPointError):
            probe_rate(0.5, [0.0, 1e-14])

    def test_invalid_k0(self):
        """測試 K_0 不在 (0, 1]"""
        with pytest.raises(NPQCDomainError):
            probe_rate(0.5, [1.0], k0=1.5)

    def test_invalid_probe_fidelity(self):
        """測試探測保真度必須為正"""
        with pytest.raises(NPQCDomainError):
            adaptive_rates(0.5, 0.0, [1.0])


class TestOptimizerConfig:
    """最佳化器配置測試"""

    def test_defaults(self):
        """測試預設值"""
        config = OptimizerConfig()

        assert config.method is OptimizerMethod.ADAPTIVE_GA
        assert config.adaptive_iters == 3
        assert config.adam_rate == 0.05

    def test_method_from_string(self):
        """測試以字串指定方法"""
        assert OptimizerConfig(method="adam").method is OptimizerMethod.ADAM

    def test_unknown_method(self):
        """測試未知方法"""
        with pytest.raises(NPQCConfigurationError):
            OptimizerConfig(method="lbfgs")

    def test_validation_collects_errors(self):
        """測試一次回報所有錯誤"""
        with pytest.raises(NPQCConfigurationError) as exc_info:
            OptimizerConfig(fixed_rate=0.0, k0=1.5)

        assert "fixed_rate must be positive" in str(exc_info.value)
        assert "k0 must be in (0, 1]" in str(exc_info.value)

    def test_rate_schedule(self):
        """測試自適應迭代後改用固定學習率"""
        config = OptimizerConfig(adaptive_iters=2, post_adaptive_rate=0.3)

        assert [config.rate_for(i) for i in range(4)] == [None, None, 0.3, 0.3]
        assert OptimizerConfig(method="standard", fixed_rate=0.7).rate_for(0) == 0.7

    def test_round_trip(self):
        """測試字典轉換"""
        config = OptimizerConfig(method="standard", max_iters=5)
        data = config.to_dict()

        assert data["method"] == "standard"
        assert OptimizerConfig.from_dict(data) == config

    def test_adam_first_step(self):
        """測試 Adam 第一步約為 rate·sign(g)"""
        state = AdamState.zeros(3)
        step = state.step(np.array([0.5, -2.0, 1e-3]), OptimizerConfig(method="adam"))

        np.testing.assert_allclose(step, [0.05, -0.05, 0.05], rtol=1e-4)
        assert state.timestep == 1


class TestTrain:
    """訓練迴圈測試"""

    def test_already_at_target(self, spec, theta):
        """測試起點即為目標時立即停止"""
        trace = train(spec, theta, prepare_state(spec, theta))

        assert trace.steps == 0
        assert trace.stop_reason is StopReason.CONVERGED
        assert trace.final_fidelity == pytest.approx(1.0)

    def test_target_infidelity_stop(self, spec, theta):
        """測試達到目標不保真度即停止"""
        trace = train(spec, theta, prepare_state(spec, theta), OptimizerConfig(target_infidelity=0.01))

        assert trace.stop_reason is StopReason.TARGET_REACHED
        assert trace.iterations_to(0.01) == 0

    def test_standard_rates(self, problem):
        """測試 STANDARD_GA 每步使用固定學習率"""
        spec, target = problem
        config = OptimizerConfig(method="standard", fixed_rate=0.8, max_iters=3)
        trace = train(spec, reference_params(spec), target, config)

        assert [r.rate for r in trace.records] == [0.8, 0.8, 0.8, None]
        assert trace.stop_reason is StopReason.MAX_ITERS
        assert trace.fidelity_evaluations == 4

    def test_adaptive_schedule(self, problem):
        """測試自適應迭代後切換至 post_adaptive_rate"""
        spec, target = problem
        config = OptimizerConfig(adaptive_iters=1, post_adaptive_rate=0.5, max_iters=3)
        trace = train(spec, reference_params(spec), target, config)

        assert trace.records[0].rate is not None and trace.records[0].rate > 0
        assert [r.rate for r in trace.records[1:]] == [0.5, 0.5, None]
        assert trace.fidelity_evaluations == 5

    def test_adaptive_improves(self, problem):
        """測試自適應梯度上升提高保真度"""
        spec, target = problem
        trace = train(spec, reference_params(spec), target, OptimizerConfig(max_iters=5))

        assert trace.final_fidelity > trace.records[0].fidelity
        assert trace.records[0].fidelity == pytest.approx(0.5, abs=1e-4)
        assert trace.steps == 5

    def test_adaptive_with_qfim(self, problem):
        """測試使用 QFIM 的自適應學習率"""
        spec, target = problem
        config = OptimizerConfig(max_iters=2, use_qfim=True, ridge=1e-6)
        trace = train(spec, reference_params(spec), target, config)

        assert trace.final_fidelity > trace.records[0].fidelity

    def test_adam(self, problem):
        """測試 Adam 紀錄學習率與步數"""
        spec, target = problem
        trace = train(spec, reference_params(spec), target, OptimizerConfig(method="adam", max_iters=4))

        assert trace.method is OptimizerMethod.ADAM
        assert trace.steps == 4
        assert all(r.rate == 0.05 for r in trace.records[:-1])

    def test_deterministic(self, problem):
        """測試相同輸入得到相同紀錄"""
        spec, target = problem
        config = OptimizerConfig(max_iters=3)

        first = train(spec, reference_params(spec), target, config, seed=4)
        second = train(spec, reference_params(spec), target, config, seed=4)

        assert first.rows() == second.rows()
        assert first.rows()[0][-1] == 4

    @pytest.mark.parametrize("error", [NPQCStationaryPointError, NPQCDomainError])
    def test_adaptive_failure_falls_back(self, problem, monkeypatch, error):
        """測試自適應步失敗時改用 post_adaptive_rate 並繼續訓練"""
        spec, target = problem

        def failing_step(*args, **kwargs):
            raise error("metric degenerate along the gradient")

        monkeypatch.setattr("npqc.training.trainer.adaptive_step", failing_step)
        config = OptimizerConfig(adaptive_iters=2, post_adaptive_rate=0.5, max_iters=3, use_qfim=True)
        trace = train(spec, reference_params(spec), target, config)

        assert [r.rate for r in trace.records] == [0.5, 0.5, 0.5, None]
        assert trace.stop_reason is StopReason.MAX_ITERS

    @pytest.mark.slow
    def test_adaptive_beats_standard(self):
        """測試 N=10、p=10、ΔK = 0.9：至少 80% 的實例中自適應方法較快達到 ΔK <= 0.01"""
        spec = NpqcSpec(10, 10)
        wins = 0
        for instance in range(50):
            _, target = target_from_distance(spec, seed=0, k_target=0.1, instance=instance)
            adaptive, standard = (
                _train_from(spec, InitMode.REFERENCE, target, method, instance) for method in ("adaptive", "standard")
            )
            wins += _race_key(adaptive) < _race_key(standard)

        assert wins >= 40

    @pytest.mark.slow
    @pytest.mark.parametrize("method", ["adaptive", "standard", "adam"])
    def test_reference_init_beats_random(self, method):
        """測試 N=10、p=10、ΔK = 0.9：至少 80% 的實例中由 θ_r 出發優於隨機初始"""
        spec = NpqcSpec(10, 10)
        wins = 0
        for instance in range(50):
            keys = []
            for init in (InitMode.REFERENCE, InitMode.RANDOM):
                origin = initial_params(spec, init, seed=0, instance=instance)
                _, target = target_from_distance(spec, seed=0, k_target=0.1, origin=origin, instance=instance)
                keys.append(_race_key(_train_from(spec, init, target, method, instance)))
            wins += keys[0] < keys[1]

        assert wins >= 40


class TestTargets:
    """目標態建構測試"""

    def test_fidelity_one(self, spec):
        """測試 K_target = 1 時 θ_t = θ_r"""
        theta_t, target = target_from_distance(spec, k_target=1.0)

        np.testing.assert_array_equal(theta_t.values, reference_params(spec).values)
        assert target.probabilities()[0] == pytest.approx(1.0)

    def test_below_haar_floor(self, spec):
        """測試低於 Haar 下限時不可行"""
        with pytest.raises(NPQCInfeasibleError):
            target_from_distance(spec, k_target=1 / 32)

    def test_distance(self, spec):
        """測試指定距離"""
        theta_t, _ = target_from_distance(spec, distance=1.5, seed=2)

        assert theta_t.distance(reference_params(spec)) == pytest.approx(1.5)

    def test_requires_distance_or_fidelity(self, spec):
        """測試兩者皆未指定"""
        with pytest.raises(NPQCArgumentError):
            target_from_distance(spec)

    def test_bisection(self):
        """測試 N=10、p=10 在 K = e^-1 時 |Δθ| 約為 2"""
        spec = NpqcSpec(10, 10)
        theta_r = reference_params(spec)
        theta_t, target = target_from_distance(spec, seed=1, k_target=np.exp(-1))

        assert fidelity(prepare_state(spec, theta_r), target) == pytest.approx(np.exp(-1), abs=1e-4)
        assert theta_t.distance(theta_r) == pytest.approx(2.0, rel=0.15)

    def test_instances_differ(self, spec):
        """測試不同實例使用不同方向"""
        a, _ = target_from_distance(spec, distance=1.0, seed=2, instance=0)
        b, _ = target_from_distance(spec, distance=1.0, seed=2, instance=1)

        assert not np.allclose(a.values, b.values)

    def test_initial_params(self, spec):
        """測試初始參數模式"""
        np.testing.assert_array_equal(
            initial_params(spec, "reference", 0).values, reference_params(spec).values
        )
        first = initial_params(spec, InitMode.RANDOM, 0, instance=0)
        second = initial_params(spec, InitMode.RANDOM, 0, instance=1)

        assert not np.allclose(first.values, second.values)


class TestScans:
    """單步掃描與擬合測試"""

    def test_fit_scaling_recovers_power_law(self):
        """測試擬合合成資料"""
        before = np.array([0.1, 0.3, 0.5, 0.7, 0.9])
        after = 0.3 * (-np.log(1 - before)) ** 2

        c, nu = fit_scaling(before, after)

        assert c == pytest.approx(0.3)
        assert nu == pytest.approx(2.0)

    def test_fit_scaling_drops_zero_points(self):
        """測試 ΔK_after 為零的點不納入擬合"""
        before = np.array([0.1, 0.3, 0.5])
        after = np.array([0.0, 0.2 * -np.log(0.7), 0.2 * -np.log(0.5)])

        c, nu = fit_scaling(before, after)

        assert nu == pytest.approx(1.0)
        assert c == pytest.approx(0.2)

    def test_fit_scaling_needs_two_points(self):
        """測試可用點不足"""
        with pytest.raises(NPQCArgumentError):
            fit_scaling([0.1, 0.2], [0.0, 0.01])

    def test_converged_step(self, spec, theta):
        """測試已收斂時不走步"""
        outcome = single_adaptive_step(spec, theta, prepare_state(spec, theta))

        assert outcome.rate is None
        assert outcome.infidelity_after == outcome.infidelity_before

    def test_step_never_decreases(self):
        """測試從 θ_r 的單步自適應上升不降低保真度"""
        spec = NpqcSpec(8, 8)
        result = single_step_scan(spec, [0.3, 0.6], instances=3, seed=1)

        assert len(result.points) == 2
        assert len(result.outcomes) == 6
        for outcome in result.outcomes:
            assert outcome.fidelity_after >= outcome.fidelity_before - 1e-6

    def test_scan_threads_invariant(self):
        """測試執行緒數不影響掃描結果"""
        spec = NpqcSpec(4, 3)

        single = single_step_scan(spec, [0.2, 0.5], instances=2, seed=3, threads=1)
        pooled = single_step_scan(spec, [0.2, 0.5], instances=2, seed=3, threads=3)

        assert single.points == pooled.points

    def test_step_sweep(self):
        """測試跨規格比較"""
        points = step_sweep([NpqcSpec(4, 2), NpqcSpec(4, 3)], 0.5, instances=2, seed=0)

        assert [(p.n_qubits, p.n_layers) for p in points] == [(4, 2), (4, 3)]
        assert all(p.instances == 2 for p in points)

    def test_learning_rate_scan(self):
        """測試學習率掃描的點數"""
        points = learning_rate_scan(NpqcSpec(4, 3), [0.3, 0.6], [0.5, 1.0, 1.5], instances=2, seed=0)

        assert len(points) == 6
        assert [p.scale for p in points[:3]] == [0.5, 1.0, 1.5]
        assert points[3].requested_infidelity == 0.6

    def test_learning_rate_scan_scales_checked(self, spec):
        """測試學習率倍數必須為正"""
        with pytest.raises(NPQCArgumentError):
            learning_rate_scan(spec, [0.3], [0.0, 1.0])

    @pytest.mark.slow
    def test_scaling_exponents(self):
        """測試 N=10、p=10 由 θ_r 出發 ν 接近 2，隨機初始 ν 接近 1"""
        spec = NpqcSpec(10, 10)
        infidelities = [0.1, 0.3, 0.5, 0.7, 0.9]

        reference = single_step_scan(spec, infidelities, InitMode.REFERENCE, instances=50, seed=0)
        random = single_step_scan(spec, infidelities, InitMode.RANDOM, instances=50, seed=0)

        assert 1.6 <= reference.nu <= 2.4
        assert 0.7 <= random.nu <= 1.3

    @pytest.mark.slow
    def test_qubit_scaling(self):
        """測試 ΔK = 0.9 由 θ_r 單步後的平均不保真度隨 N = 4..10 不增 (容許一次標準誤內的反轉)"""
        points = step_sweep([NpqcSpec(n, 4) for n in (4, 6, 8, 10)], 0.9, instances=50, seed=0)
        inversions = [
            (earlier, later) for earlier, later in zip(points, points[1:])
            if later.infidelity_after > earlier.infidelity_after
        ]

        assert len(inversions) <= 1
        for earlier, later in inversions:
            standard_error = max(p.infidelity_after_std / np.sqrt(p.instances) for p in (earlier, later))
            assert later.infidelity_after - earlier.infidelity_after <= standard_error

    @pytest.mark.slow
    @pytest.mark.parametrize("infidelity", [0.3, 0.7])
    def test_adaptive_rate_near_grid_optimum(self, infidelity):
        """測試 N=10、p=10 以 α_t 走一步的保真度在 10 點 λ 網格最佳值的 2% 以內"""
        scales = [0.2 * k for k in range(1, 11)]
        points = learning_rate_scan(NpqcSpec(10, 10), [infidelity], scales, instances=20, seed=0)
        fidelities = {round(p.scale, 6): 1.0 - p.infidelity_after for p in points}

        assert fidelities[1.0] >= 0.98 * max(fidelities.values())
