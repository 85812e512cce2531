__version__ = "0.0.1"

from . import coord, data_sources, experiments, netsim, phy
