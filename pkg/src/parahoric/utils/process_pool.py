from concurrent.futures import Executor, ProcessPoolExecutor
from contextlib import contextmanager
from typing import Callable, Iterable, Iterator, TypeVar

from parahoric.utils.logging_config import get_logger

logger = get_logger(__name__)

T = TypeVar("T")
R = TypeVar("R")


@contextmanager
def sweep_pool(jobs: int) -> Iterator[Executor | None]:
    """Yield a process pool for jobs > 1, or None to run inline."""
    if jobs <= 1:
        yield None
        return
    pool = ProcessPoolExecutor(max_workers=jobs)
    logger.info("Sweep process pool initialized", max_workers=jobs)
    try:
        yield pool
    finally:
        pool.shutdown(wait=True)


def ordered_map(func: Callable[[T], R], items: Iterable[T], jobs: int = 1) -> list[R]:
    """Map func over items, in parallel when jobs > 1; results keep input order."""
    items = list(items)
    with sweep_pool(jobs) as pool:
        if pool is None:
            return [func(item) for item in items]
        return list(pool.map(func, items, chunksize=max(1, len(items) // (4 * jobs))))
