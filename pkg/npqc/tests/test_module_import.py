"""
NPQC 模組導入測試

測試 NPQC 模組的基本導入功能。
"""


class TestModuleImport:
    """模組導入測試"""

    def test_import_npqc_module(self):
        """測試 NPQC 模組基本導入"""
        import npqc

        assert hasattr(npqc, "__version__")
        assert hasattr(npqc, "__author__")
        assert npqc.__version__ == "0.1.0"

    def test_import_config(self):
        """測試配置模組導入"""
        from npqc import NPQCConfig

        config = NPQCConfig()
        assert config.max_qubits == 24

    def test_import_exceptions(self):
        """測試例外類別導入"""
        from npqc import NPQCCapacityError, NPQCConfigurationError, NPQCError
        from npqc.exceptions import NPQCDepthError, NPQCInfeasibleError

        # 測試例外類別可以正常實例化
        base_error = NPQCError("test error")
        assert str(base_error) == "test error"

        config_error = NPQCConfigurationError("bad config")
        assert "NPQC_CONFIG_ERROR" in str(config_error)

        capacity_error = NPQCCapacityError("too many qubits", n_qubits=40, limit=24)
        assert "NPQC_CAPACITY_ERROR" in str(capacity_error)
        assert capacity_error.limit == 24

        depth_error = NPQCDepthError("too deep", n_layers=9, max_layers=8)
        assert "NPQC_DEPTH_ERROR" in str(depth_error)

        infeasible = NPQCInfeasibleError("unreachable", details={"k_target": 1e-9})
        assert infeasible.details["k_target"] == 1e-9

    def test_builtin_exception_compatibility(self):
        """測試索引、形狀與參數錯誤可用內建例外捕捉"""
        from npqc.exceptions import NPQCArgumentError, NPQCQubitIndexError, NPQCShapeError

        assert isinstance(NPQCQubitIndexError("bad qubit"), IndexError)
        assert isinstance(NPQCShapeError("bad shape"), ValueError)
        assert isinstance(NPQCArgumentError("bad argument"), ValueError)

    def test_import_submodules(self):
        """測試子模組導入"""
        import npqc.circuit
        import npqc.cli
        import npqc.geometry
        import npqc.metrology
        import npqc.statevec
        import npqc.superposition
        import npqc.training

        assert hasattr(npqc.statevec, "zero_state")
        assert hasattr(npqc.circuit, "prepare_state")
        assert hasattr(npqc.geometry, "qfim")
        assert hasattr(npqc.training, "train")
        assert hasattr(npqc.metrology, "basis_index_map")
        assert hasattr(npqc.superposition, "solve_superposition")
        assert hasattr(npqc.cli, "main")

    def test_all_exports(self):
        """測試 __all__ 導出"""
        import npqc

        expected_exports = [
            "NPQCConfig",
            "NPQCError",
            "NPQCCapacityError",
            "NPQCConfigurationError",
            "NPQCSpecError",
        ]

        for export in expected_exports:
            assert export in npqc.__all__
            assert hasattr(npqc, export)

    def test_kernel_set(self):
        """測試 stride 核心只包含狀態向量實際使用的閘"""
        from npqc.statevec import kernels

        names = {name for name in dir(kernels) if name.startswith("apply_")}

        assert names == {"apply_ry", "apply_rz", "apply_cz", "apply_pauli_y", "apply_pauli_z"}
