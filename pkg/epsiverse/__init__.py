from . import config
from . import errors
from . import kernel
from . import proofsys
from . import translate
from . import selection
from . import store
from . import eliminate
from . import lowerbound


__all__ = [
    "config",
    "errors",
    "kernel",
    "proofsys",
    "translate",
    "selection",
    "store",
    "eliminate",
    "lowerbound",
]
