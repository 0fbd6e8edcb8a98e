from ._gcdc import *  # noqa: F401,F403
from ._gcdc import Coder, Graph, Mode

__all__ = [name for name in dir() if not name.startswith("_")]
