# -*- coding:utf-8 -*-

"""
Tools.

Date:   2026/10/17
"""

import uuid
import datetime


def get_utc_datetime_str(fmt="%Y-%m-%dT%H:%M:%SZ"):
    """ Current UTC time as string.
    """
    return datetime.datetime.now(datetime.timezone.utc).strftime(fmt)


def get_uuid1():
    """ Make a UUID based on the host ID and current time.
    """
    s = uuid.uuid1()
    return str(s)


def complex_to_pair(z, digits=15):
    """ Serialize a complex number as [re, im] rounded to `digits` decimals.
    """
    z = complex(z)
    return [round(z.real, digits) + 0.0, round(z.imag, digits) + 0.0]


def clean_float(x, digits=15):
    """ Round a float for JSON output so reports are stable across platforms.
    """
    return round(float(x), digits) + 0.0
