"""Python surface of the staged-review and perturbation-benchmark harness.

The heavy lifting lives in the compiled ``_core`` extension. Installed
wheels carry it inside this package; development trees load it from the
CMake build directory via PYTHONPATH.
"""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __version__  # noqa: F401
except ImportError:  # development layout: extension on PYTHONPATH
    from _core import *  # noqa: F401,F403
    from _core import __version__  # noqa: F401
