"""The aim of this script is to tabulate the normalized Turan margin over a grid."""

# %% IMPORTS
from itertools import product

import numpy as np
import pandas as pd
from tqdm import tqdm

from kstruve.config import DATA_DIR
from kstruve.inequalities import turanian
from kstruve.struve import normalized_struve

# %% INPUTS
k_values = [0.5, 1.0, 2.0]
nu_over_k = [-0.4, 0.0, 0.5, 1.0, 2.0, 4.0]  # Orders as multiples of k
a_over_k = [0.1, 0.25, 0.5, 1.0]  # Shifts as multiples of k
x_values = np.geomspace(0.05, 20, 25)

# %% SWEEP
rows = []
grid = list(product(k_values, nu_over_k, a_over_k))
for k, nu_k, a_k in tqdm(grid, desc="Sweeping (k, nu, a)"):
    nu, a = nu_k * k, a_k * k

    # The shifted order nu - a must stay above -3k/2
    if not nu - a > -1.5 * k:
        continue

    for x in x_values:
        center = normalized_struve(nu, k, x).value
        delta = turanian(
            normalized_struve(nu - a, k, x).value,
            center,
            normalized_struve(nu + a, k, x).value,
        )
        rows.append(
            {"k": k, "nu": nu, "a": a, "x": x, "margin": delta / center**2}
        )

df = pd.DataFrame(rows)

# %% SUMMARISE
# The tightest (largest) margin per k and shift, with where it occurs
idx = df.groupby(["k", "a"])["margin"].idxmax()
df_tightest = df.loc[idx].sort_values(["k", "a"]).reset_index(drop=True)
print(df_tightest.to_markdown(index=False, floatfmt=".3e"))

# Any positive margin would be a counterexample
n_positive = int((df["margin"] > 0).sum())
print(f"\n{len(df)} points, {n_positive} with a positive margin")

# %% SAVE
DATA_DIR.mkdir(exist_ok=True)
df.to_csv(DATA_DIR / "turan_margins.csv", index=False, float_format="%.17g")
