from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, TypeVar

from steklov.utils.logging import get_logger

logger = get_logger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(func: Callable[[T], R], items: Iterable[T], workers: int = 1) -> List[R]:
    """Map func over items, in worker processes when workers > 1.

    Results always come back in input order. func must be picklable
    (a module-level function or a functools.partial of one).
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    logger.debug(f"Mapping {len(items)} items over {workers} processes")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
