from pathlib import Path

from .curves import CURVE_COLUMNS, concat_curves, curve_table
from .link import StsLinkExperiment, UplinkImpactExperiment
from .network import NetworkExperiment
from .settings import NetworkSettings, StsLinkSettings, SuiteConfig, UplinkImpactSettings, parse_suite
from .validation import TABLE_SCHEMAS, ColumnSchema, RateBounds, cdf_is_monotone

RESOURCES = Path(__file__).parent / "resources"
DEFAULTS_PATH = RESOURCES / "defaults.yml"
CATALOG_PATH = RESOURCES / "experiments.yml"
