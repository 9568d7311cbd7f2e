# -*- coding:utf-8 -*-

"""
Tasks module.
1. Map a pure function over independent branches:
    a) with one worker the items are evaluated in the calling thread;
    b) with more workers a thread pool is used, capped by `config.threads`;
    c) results always come back in input order.

Date:   2026/10/17
"""

from concurrent.futures import ThreadPoolExecutor

from walkport.config import config
from walkport.utils import logger

__all__ = ("ParallelTask", )


class ParallelTask:
    """ Parallel map over immutable inputs.
    """

    @classmethod
    def map(cls, func, items, workers=None):
        """ Evaluate `func` on every item.

        Args:
            func: Pure function of one argument.
            items: Iterable of inputs.
            workers: Worker count, default is `config.threads`.

        Returns:
            results: List of results in input order.
        """
        items = list(items)
        workers = workers or config.threads
        workers = max(1, min(workers, len(items) or 1))
        if workers == 1:
            return [func(item) for item in items]
        logger.debug("map", len(items), "items on", workers, "workers", caller=cls)
        with ThreadPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(func, items))
