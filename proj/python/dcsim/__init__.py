from ._dcsim import *  # noqa: F401,F403
