"""Hot-kernel backend selection.

The Cython extension is preferred when built; the numpy fallback in
`pure.py` is used otherwise. Set LEARNING_MACHINE_PURE=1 to force the
fallback (the benchmark and the backend-agreement tests rely on this).
"""

import os

from . import pure

if os.environ.get("LEARNING_MACHINE_PURE") == "1":
    _impl = pure
else:
    try:
        from . import _compiled as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = pure

BACKEND = _impl.NAME

ks_statistic_sorted = _impl.ks_statistic_sorted
best_split_column = _impl.best_split_column
logistic_gd = _impl.logistic_gd
