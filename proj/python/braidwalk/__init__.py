from ._braidwalk import *  # noqa: F401,F403
from ._braidwalk import __doc__  # noqa: F401
