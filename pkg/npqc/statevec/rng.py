"""
亂數串流

以 counter-based 的 Philox 產生器建立獨立串流，每個 (seed, 串流識別) 組合
對應一個確定的串流，與排程順序無關。
"""

import numpy as np


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """建立 (seed, *stream) 對應的亂數產生器"""
    entropy = [int(seed)] + [int(s) for s in stream]
    if any(e < 0 for e in entropy):
        entropy = [e & 0xFFFFFFFFFFFFFFFF for e in entropy]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))
