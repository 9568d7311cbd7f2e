# -*- coding:utf-8 -*-

"""
State-vector simulator for shared-secret teleportation driven by multi-walker, multi-coin quantum walks.

Date:   2026/10/17
"""

__version__ = (0, 3, 0)


def version_string():
    return ".".join(str(v) for v in __version__)
