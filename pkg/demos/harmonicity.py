# %% [markdown]
# # Harmonicity on both sides
#
# A random harmonic (cusp-type) skew Jacobi table is annihilated by the
# skew Casimir operator, and each conjugated theta component is annihilated
# by the weight k - 1/2 Laplacian. Both are checked with finite differences.

# %%
import numpy as np

from skewjacobi import Space, conjugate_components, laplacian_fd, skew_casimir_fd, theta_decompose
from skewjacobi.checks import casimir_scale, laplacian_scale
from skewjacobi.samples import random_skew_jacobi

# %%
rng = np.random.default_rng(1)
phi = random_skew_jacobi(rng, k=3, m=1, space=Space.HARMONIC, nkeys=8)
tau, z = 0.1 + 1.0j, 0.2 + 0.1j
print(abs(skew_casimir_fd(phi, 3, 1, tau, z)) / casimir_scale(phi, tau, z))

# %%
for comp in conjugate_components(theta_decompose(phi)).components:
    if comp.support():
        print(abs(laplacian_fd(comp, comp.weight, tau)) / laplacian_scale(comp, tau))

# %% [markdown]
# A lone q-term is not a theta orbit, and the Casimir sees it:

# %%
print(abs(skew_casimir_fd(lambda t, w: np.exp(2j * np.pi * t), 3, 1, tau, 0j)))
