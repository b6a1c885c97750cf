#!/usr/bin/env python3
"""Link fractions turning into probabilities.

At finite discreteness scale l the relative link weights w_a = L_a / L are
exact rationals that may fall outside [0, 1]; as l shrinks (with the
physical wave equation held fixed) they approach the squared-amplitude
probabilities p_a = |psi_a|^2 / |psi|^2 at second order in l.  Stationary
states agree at machine precision for every l, and an orthogonal
single-slot pair has L = 0: no fractions, no continuum comparison.
"""

import numpy as np

import hamca.continuum as ct
from hamca import build_hamiltonian, make_cyclic_model
from hamca.errors import OntologicalRegimeError

H2 = build_hamiltonian(make_cyclic_model(2))
ls = [0.2, 0.1, 0.05, 0.025]

print("generic state (0.8, 0.6):")
report = ct.born_convergence(H2, [0.8, 0.6], ls)
for e in report.entries:
    print(f"  l = {e.l:5.3f}: max |w - p| = {e.max_error:.3e}  (over {e.steps} steps)")
print("  successive ratios:", ", ".join(f"{r:.2f}" for r in report.ratios), "(~4 = order two)")

print("\nstationary state (lowest eigenvector):")
sf = ct.spectral_decompose(H2)
report = ct.born_convergence(H2, sf.eigenvectors[:, 0], ls[:3])
for e in report.entries:
    print(f"  l = {e.l:5.3f}: max |w - p| = {e.max_error:.3e}")

print("\northogonal single-slot pair:")
try:
    ct.born_convergence(H2, [1, 0], [0.2, 0.1], psi1=[0, 1])
except OntologicalRegimeError as exc:
    print(f"  rejected as expected: {exc}")

print("\nthree-state ring, a lopsided superposition:")
psi = np.array([0.5, 0.5j, np.sqrt(0.5)])
report = ct.born_convergence(build_hamiltonian(make_cyclic_model(3)), psi, ls[:3])
for e in report.entries:
    print(f"  l = {e.l:5.3f}: max |w - p| = {e.max_error:.3e}")
