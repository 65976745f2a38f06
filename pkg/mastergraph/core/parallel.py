# mastergraph/core/parallel.py
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

from mastergraph.config import settings

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(func: Callable[[T], R], items: Iterable[T]) -> list[R]:
    """map с ограничением MASTERGRAPH_THREADS, порядок результатов совпадает с входом"""
    items = list(items)
    if settings.THREADS <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=settings.THREADS) as executor:
        return list(executor.map(func, items))
