import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def warm_kernel():
    """Compile (or load from cache) the numba kernel once per session."""
    from binstretch import _kernel

    _kernel.warmup()
    return _kernel
