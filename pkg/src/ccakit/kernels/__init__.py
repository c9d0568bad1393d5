"""Kernel selection: the compiled extension when built, pure Python otherwise.

Both expose ``search`` (colour-preserving automorphism backtracking) and
``check_assoc`` (exhaustive associativity scan) with identical behaviour; see
``benchmarks/bench_kernels.py`` for a side-by-side timing.
"""

from . import pure

try:
    from . import _fast

    _impl = _fast
    BACKEND = "compiled"
except ImportError:
    _fast = None
    _impl = pure
    BACKEND = "pure"

search = _impl.search
check_assoc = _impl.check_assoc


def backends() -> dict:
    """Every kernel importable in this environment, by name."""
    out = {"pure": pure}
    if _fast is not None:
        out["compiled"] = _fast
    return out
