"""Monte Carlo tools for random Gaussian interference networks."""

from ._ianet import *  # noqa: F401,F403
from ._ianet import __doc__  # noqa: F401
