"""Backend selection for the table kernels.

The compiled ``_ckernels`` extension is used when it imports; otherwise, or
when ``PREGROUPS_PURE_PYTHON=1`` is set, the numpy twin in ``_pykernels``.
"""

import os

if os.environ.get("PREGROUPS_PURE_PYTHON", "") not in ("", "0"):
    from ._pykernels import check_axioms, equal_reduced_matrix, intercalate, prepare, reduce_word
    BACKEND = "python"
else:
    try:
        from ._ckernels import check_axioms, equal_reduced_matrix, intercalate, prepare, reduce_word
        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        from ._pykernels import check_axioms, equal_reduced_matrix, intercalate, prepare, reduce_word
        BACKEND = "python"

__all__ = ["BACKEND", "prepare", "check_axioms", "reduce_word", "intercalate",
           "equal_reduced_matrix"]
