"""Backend selection for the sieve hot loops.

The compiled extension is preferred when it imported cleanly; the pure-Python
fallback is contract-identical and is always available. Set GAPFORGE_PURE_PYTHON=1
to force the fallback (used by the benchmark and the equivalence tests).
"""

import os

from gapforge import _sievecore_py

if os.environ.get("GAPFORGE_PURE_PYTHON"):
    _impl = _sievecore_py
else:
    try:
        from gapforge import _sievecore as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _sievecore_py

BACKEND = _impl.BACKEND_NAME
sieve_block = _impl.sieve_block
extract_primes = _impl.extract_primes
count_primes = _impl.count_primes
