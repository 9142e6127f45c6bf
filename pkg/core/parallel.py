import logging
from multiprocessing import Pool
from typing import Callable, Iterable, List, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(func: Callable[[T], R], items: Iterable[T], workers: int = 1) -> List[R]:
    """Map ``func`` over ``items`` and return results in input order.

    With ``workers > 1`` the calls run in a forked process pool, so ``func`` must
    be a module-level function. Workers inherit the already configured settings.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    processes = min(workers, len(items))
    logger.debug(f"Fanning out {len(items)} tasks over {processes} processes")
    with Pool(processes=processes) as pool:
        return pool.map(func, items)
