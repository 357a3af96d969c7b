try:
    from ._kpcohft import *  # noqa: F401,F403
except ImportError:  # in-tree test runs load the extension from the build dir
    from _kpcohft import *  # noqa: F401,F403
