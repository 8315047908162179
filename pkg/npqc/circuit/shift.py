"""
Shift factor 遞迴

A = {0, ..., N/2-1}, s = 1；每一輪從 A 取出一個元素 r，令 a_s = r，
並複製 a_{s+q} = a_q (q = 1..s-1)，然後 s = 2s。
"""

from typing import List

from ..exceptions import NPQCArgumentError, NPQCDepthError
from ..statevec import make_rng


def shift_sequence(
    n_qubits: int,
    p: int,
    order: str = "ascending",
    seed: int = 0,
) -> List[int]:
    """回傳 a_2..a_p (長度 p-1)

    Args:
        n_qubits: 偶數量子位元數 N
        p: 層數
        order: "ascending" 依序取最小元素；"random" 以 seed 決定取出順序
        seed: 隨機順序的種子
    """
    if n_qubits < 2 or n_qubits % 2:
        raise NPQCArgumentError(
            f"n_qubits must be an even integer >= 2, got {n_qubits}", argument="n_qubits"
        )
    max_layers = 1 << (n_qubits // 2)
    if p > max_layers:
        raise NPQCDepthError(
            f"p={p} exceeds p_max={max_layers}", n_layers=p, max_layers=max_layers
        )
    if order not in ("ascending", "random"):
        raise NPQCArgumentError(f"Unknown pick order {order!r}", argument="order")

    pool = list(range(n_qubits // 2))
    rng = make_rng(seed, n_qubits) if order == "random" else None
    sequence: List[int] = []
    s = 1
    while pool and len(sequence) < p - 1:
        pick = 0 if rng is None else int(rng.integers(len(pool)))
        sequence.append(pool.pop(pick))
        sequence.extend(sequence[: s - 1])
        s *= 2
    return sequence[: max(p - 1, 0)]
