"""
A sign-indefinite LCK potential
===============================

On the Hopf surface ``(C^2 \\ 0) / (z ~ 2z)`` the constant function 1 is an
LCK potential. Adding ``A Re(z1 z2) / |z|^2`` leaves the twisted complex
Hessian unchanged, because ``Re(z1 z2)`` is pluriharmonic, but for ``A``
large enough the potential takes negative values.
"""

import numpy as np
import matplotlib.pyplot as plt

from lckpot import HopfModel, find_sign_change, parse_holo, standard_potential, vuletescu_potential
from lckpot.twisted import twisted_hessian_batch

model = HopfModel(n=2, lam=2.0)
Z = model.annulus(10_000, seed=0).sample()

phi = vuletescu_potential(model, parse_holo("z1*z2", 2), A=3.0)
signs = find_sign_change(phi, Z)
print("most negative value:", signs.negative_value, "at", signs.negative_point)

# the twisted Hessians of phi and of the constant potential agree
H = twisted_hessian_batch(phi, model.lee, Z[:1000])
H0 = twisted_hessian_batch(standard_potential(model), model.lee, Z[:1000])
print("max form deviation:", np.max(np.abs(H - H0)))

# the minimum over the annulus is 1 - A/2, reached when z1 = -conj(z2)
A_values = np.linspace(0, 6, 25)
minima = [np.min(vuletescu_potential(model, parse_holo("z1*z2", 2), A)(Z)) for A in A_values]
plt.plot(A_values, minima, "o-", label="sampled minimum")
plt.plot(A_values, 1 - A_values / 2, "k--", label="1 - A/2")
plt.axhline(0, color="grey", lw=0.5)
plt.xlabel("A")
plt.ylabel("min of potential")
plt.legend()
plt.savefig("vuletescu_minimum.svg")
