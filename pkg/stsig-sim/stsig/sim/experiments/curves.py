from typing import Sequence

import pandas as pd

CURVE_COLUMNS = ["x_value", "metric", "scheme", "n_antennas", "seed"]


def curve_table(x: Sequence[float], y: Sequence[float], scheme: str, n_antennas: int, seed: int) -> pd.DataFrame:
    """One plottable curve in the common (x_value, metric, scheme, n_antennas, seed) layout."""
    return pd.DataFrame(
        {
            "x_value": [float(v) for v in x],
            "metric": [float(v) for v in y],
            "scheme": scheme,
            "n_antennas": int(n_antennas),
            "seed": int(seed),
        },
        columns=CURVE_COLUMNS,
    )


def concat_curves(curves: Sequence[pd.DataFrame]) -> pd.DataFrame:
    if len(curves) == 0:
        return pd.DataFrame(columns=CURVE_COLUMNS)
    return pd.concat(curves, ignore_index=True)
