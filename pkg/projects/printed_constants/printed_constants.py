"""The aim of this script is to show where the printed integral constants go wrong."""

# %% IMPORTS
from itertools import product

import pandas as pd
from tqdm import tqdm

from kstruve.config import DATA_DIR
from kstruve.identities import closed_form_half_order, integral_prefactor, integral_rep
from kstruve.struve import StruveParams

# %% INPUTS
k_values = [0.5, 1.0, 2.0, 4.0]
alphas = [0.5, 1.0, 2.0]
nu_over_k = 1.0  # Order of the integral representation as a multiple of k
x = 1.0  # Argument of the residual comparisons

# %% COMPARE
rows = []
for k, alpha, sign in tqdm(list(product(k_values, alphas, ["+", "-"]))):
    nu = nu_over_k * k
    c = alpha**2 if sign == "+" else -(alpha**2)

    derived = integral_prefactor(nu, k, alpha, sign)
    printed = integral_prefactor(nu, k, alpha, sign, paper_literal=True)
    residual = integral_rep(StruveParams(nu, k, c), alpha, x, paper_literal=True)
    closed = closed_form_half_order(k, alpha, x, sign, paper_literal=True)

    rows.append(
        {
            "k": k,
            "alpha": alpha,
            "branch": "sin" if sign == "+" else "sinh",
            "prefactor_ratio": printed / derived,
            "integral_residual": residual.relative_residual,
            "closed_form_ratio": (alpha / k) / alpha**2,
            "closed_form_residual": closed.relative_residual,
        }
    )

df = pd.DataFrame(rows)

# %% SHOW
print(df.to_markdown(index=False, floatfmt=".4g"))

# Rows where both printed constants happen to be right
df_consistent = df[(df["integral_residual"] < 1e-9) & (df["closed_form_residual"] < 1e-9)]
print("\nConsistent rows:")
print(df_consistent[["k", "alpha", "branch"]].to_markdown(index=False))

# %% SAVE
DATA_DIR.mkdir(exist_ok=True)
df.to_csv(DATA_DIR / "printed_constants.csv", index=False, float_format="%.17g")
