"""Regenerate the checked-in two-sided demo dataset (demos/data/fig2_sample.txt).

1000 observations: 850 nulls N(1, 4), 75 alternatives shifted by +5 and 75
shifted by -3.  Deterministic: the file only changes if the generator does.
"""

from pathlib import Path

import numpy as np

from fdrlab import replication_rng, std_normal

HERE = Path(__file__).parent


def make(path=None):
    rng = replication_rng(20200417, 0)
    theta, sigma = 1.0, 2.0
    n, n0 = 1000, 850
    y = np.empty(n)
    noise = std_normal(rng, n)
    y[:n0] = theta + sigma * noise[:n0]
    y[n0:n0 + 75] = theta + 5.0 + sigma * noise[n0:n0 + 75]
    y[n0 + 75:] = theta - 3.0 + sigma * noise[n0 + 75:]
    path = Path(path) if path else HERE / "data" / "fig2_sample.txt"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(repr(float(v)) for v in y) + "\n")
    return path


if __name__ == "__main__":
    print(f"wrote {make()}")
