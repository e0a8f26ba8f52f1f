"""Search kernel selection.

The compiled extension is used when it imported cleanly; setting
TROPCOUNT_PURE=1 in the environment forces the pure Python twin.  Both
implement the same interface: search_points and adjugate_det.
"""

import os

from . import pure

if os.environ.get("TROPCOUNT_PURE"):
    _impl = pure
else:
    try:
        from . import _speedups as _impl
    except ImportError:
        _impl = pure


def implementation():
    return "pure" if _impl is pure else "compiled"


def search_points(*args, **kwargs):
    result = _impl.search_points(*args, **kwargs)
    if result[0] == pure.OVERFLOW:
        return pure.search_points(*args, **kwargs)
    return result


adjugate_det = pure.adjugate_det
STATUS_OK = pure.OK
STATUS_NON_GENERAL = pure.NON_GENERAL
