# %% [markdown]
# # From a plus-space form to a skew Jacobi form and back
#
# Cohen's weight 5/2 Eisenstein series lives in the plus space of level 4.
# Mapping it across gives a skew-holomorphic Jacobi form of weight 3 and
# index 1, which we test against the skew slash action directly.

# %%
import numpy as np

from skewjacobi import full_iso_jacobi_to_plus, full_iso_plus_to_jacobi, plus_space_check
from skewjacobi.jacobi_skew import JacobiGroupElement, jacobi_slash
from skewjacobi.samples import cohen_eisenstein

# %%
H = cohen_eisenstein(nmax=200)
print(sorted(H.plus.items())[:8])
print(plus_space_check(H, 3, 1))

# %%
phi = full_iso_plus_to_jacobi(H, k=3, m=1)
print(len(phi.plus), "plus keys;", sorted(phi.plus)[:5])
assert full_iso_jacobi_to_plus(phi) == H

# %% [markdown]
# Invariance under the generators of the Jacobi group, at an arbitrary point.

# %%
tau, z = 0.13 + 0.9j, 0.21 - 0.07j
val = phi(tau, z)
for name, A in {
    "T": JacobiGroupElement((1, 1, 0, 1)),
    "S": JacobiGroupElement((0, -1, 1, 0)),
    "lambda": JacobiGroupElement((1, 0, 0, 1), 1, 0),
    "mu": JacobiGroupElement((1, 0, 0, 1), 0, 1),
}.items():
    print(name, abs(jacobi_slash(phi, 3, 1, A, tau, z) - val) / abs(val))
