# %% [markdown]
# # Theta series and the Weil representation
#
# The vector of index-m theta constants transforms with weight 1/2 under
# the (non-dual) Weil representation. Here we build the matrices, check the
# defining relations and watch the transformation law hold numerically.

# %%
import numpy as np

from skewjacobi import S_TILDE, T_TILDE, WeilRepContext, vv_transform_residual
from skewjacobi.samples import theta_vector

# %%
ctx = WeilRepContext(1)
S, T = ctx.S_matrix, ctx.T_matrix
print(np.round(S, 12))
print("S^2 =", np.round(S @ S, 12).tolist())
print("(ST)^3 =", np.round(np.linalg.matrix_power(S @ T, 3), 12).tolist())

# %% [markdown]
# For m = 1 both sides are -i times the identity. The dual representation
# would give +i instead.

# %%
for m in (1, 2, 3):
    F = theta_vector(m, rmax=200)
    taus = [1j, 0.5 + 1j, 2j]
    print(m, vv_transform_residual(F, T_TILDE, taus), vv_transform_residual(F, S_TILDE, taus))

# %% [markdown]
# Against the dual type the same vector fails immediately:

# %%
F = theta_vector(2, rmax=200)
print(vv_transform_residual(F, T_TILDE, [1j], "1/2", WeilRepContext(2, dual=True)))
