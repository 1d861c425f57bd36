"""Numeric kernel backends.

The hot inner loops (edit-distance DP, windowed-sinc resampling, CTC prefix
beam search) exist twice: a compiled Cython extension (``_ckernels``) and a
pure-Python/numpy fallback (``_pykernels``) with identical signatures and
semantics.  The compiled module is preferred and selected once at import
time; ``BACKEND`` records which one is active.

Both backends are importable directly (the benchmark and the equivalence
tests do this); everything else should use the re-exports below.
"""

from . import _pykernels

try:  # pragma: no cover - exercised only when the extension is absent
    from . import _ckernels as _impl

    BACKEND = "c"
except ImportError:  # pragma: no cover
    _impl = _pykernels
    BACKEND = "python"

edit_ops = _impl.edit_ops
sinc_resample = _impl.sinc_resample
beam_search = _impl.beam_search

__all__ = ["BACKEND", "edit_ops", "sinc_resample", "beam_search"]
