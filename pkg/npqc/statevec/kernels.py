"""
原地 stride 核心

以 reshape 視圖存取振幅對，不建立 2^N x 2^N 矩陣。bit 為從 0 開始的位元位置。
"""

import numpy as np


def _pair_view(amps: np.ndarray, bit: int) -> np.ndarray:
    # index = high * 2^(bit+1) + b * 2^bit + low
    return amps.reshape(-1, 2, 1 << bit)


def apply_ry(amps: np.ndarray, bit: int, angle: float) -> None:
    c = np.cos(angle / 2)
    s = np.sin(angle / 2)
    view = _pair_view(amps, bit)
    a0 = view[:, 0, :].copy()
    a1 = view[:, 1, :]
    view[:, 0, :] = c * a0 - s * a1
    view[:, 1, :] = s * a0 + c * a1


def apply_rz(amps: np.ndarray, bit: int, angle: float) -> None:
    view = _pair_view(amps, bit)
    view[:, 0, :] *= np.exp(-0.5j * angle)
    view[:, 1, :] *= np.exp(0.5j * angle)


def apply_cz(amps: np.ndarray, bit_a: int, bit_b: int) -> None:
    """controlled-Z：兩個位元皆為 1 時振幅取負"""
    lo, hi = sorted((bit_a, bit_b))
    view = amps.reshape(-1, 2, 1 << (hi - lo - 1), 2, 1 << lo)
    view[:, 1, :, 1, :] *= -1


def apply_pauli_y(amps: np.ndarray, bit: int) -> None:
    view = _pair_view(amps, bit)
    a0 = view[:, 0, :].copy()
    view[:, 0, :] = -1j * view[:, 1, :]
    view[:, 1, :] = 1j * a0


def apply_pauli_z(amps: np.ndarray, bit: int) -> None:
    view = _pair_view(amps, bit)
    view[:, 1, :] *= -1
