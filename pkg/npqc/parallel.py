"""
工作執行緒池

以固定順序收集結果，執行緒數不影響輸出。
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from .config import get_config


logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def map_ordered(
    func: Callable[[T], R],
    items: Iterable[T],
    threads: Optional[int] = None,
) -> List[R]:
    """對每個項目套用 func，結果依提交順序回傳"""
    items = list(items)
    threads = threads or get_config().threads
    if threads <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    logger.debug(f"Dispatching {len(items)} tasks to {threads} threads")
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(func, items))
