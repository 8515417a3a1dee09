try:
    from ._nilfourier import *  # noqa: F401,F403  (installed layout)
except ImportError:
    from _nilfourier import *  # noqa: F401,F403  (in-tree cmake build)
