# SPDX-License-Identifier: Apache-2.0
"""Laser color-stripe attack simulation against rolling-shutter cameras.

The heavy lifting lives in the compiled extension; this package re-exports
its full surface. Images are numpy arrays: ``(rows, cols, 3)`` uint8 for RGB
images and ``(rows, cols)`` uint8 for raw Bayer frames.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

__version__ = "0.1.0"
