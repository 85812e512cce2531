from .catalog import ExperimentCatalog
from .experiment import Experiment
from .result_set import ResultSet
