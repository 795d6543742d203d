"""Linear-algebra kernels: compiled extension when built, numpy fallback otherwise.

Set TWISTCHECK_KERNEL=python or =compiled to force a backend.  Results are
bit-identical across backends; only speed differs.
"""

from __future__ import annotations

import os

from . import pykernels

_choice = os.environ.get("TWISTCHECK_KERNEL", "auto")

if _choice not in ("auto", "python", "compiled"):
    raise ValueError(f"TWISTCHECK_KERNEL must be auto|python|compiled, got {_choice}")

_backend = pykernels
if _choice in ("auto", "compiled"):
    try:
        from .. import _speedups as _compiled  # type: ignore[attr-defined]

        _backend = _compiled
    except ImportError:
        if _choice == "compiled":
            raise ImportError(
                "compiled kernel requested but twistcheck._speedups is not built; "
                "run: python setup.py build_ext --inplace"
            )

BACKEND_NAME = _backend.BACKEND_NAME
rref_mod_p = _backend.rref_mod_p


def available_backends() -> list[str]:
    names = ["python"]
    try:
        from .. import _speedups  # noqa: F401

        names.append("compiled")
    except ImportError:
        pass
    return names
