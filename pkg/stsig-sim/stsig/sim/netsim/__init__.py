from .channels import DropRealization, draw_realization
from .config import SCHEMES, SimConfig, check_scheme
from .delivery import Broadcast, DeliveryCounts, IcrmDelivery, Reception
from .drop import DropResult, drop_topology, run_drop
from .monte_carlo import PERCENTILES, MonteCarloResult, empirical_cdf, monte_carlo, percentiles
from .sinr import evaluate_downlink_sinr
from .topology import Topology, generate_topology, path_gains, pathloss_db
