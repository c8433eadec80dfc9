"""Searching for a learning flow behind an arbitrary geodesic.

The coincidence result runs one way: flow trajectories are geodesics.  The
probe asks the converse numerically: given a generic geodesic, find a
coupling spectrum, a special-unitary change of frame, and an affine time map
whose flow trajectory lands on it.  Residuals at machine precision mean the
witness is exact: conjugating by the eigenbasis of the initial SLD
diagonalizes the problem, and half its eigenvalues serve as the coupling.
"""

import numpy as np

import qssgeo as q

# Generic targets: random start, random admissible initial tangent, with an
# SLD that is not diagonal in any coordinate basis.
print("target    best residual    time scale a    offset b")
for k in range(5):
    spec = q.random_geodesic_spec(2, seed=300 + k)
    result = q.conjecture_probe(spec, n_restarts=2, seed=k)
    a, b = result.best_time_affine
    print(f"  {k}       {result.residual:.3e}       {a:8.5f}      {b:+.2e}")

# The recovered witness for one target, in full.
spec = q.random_geodesic_spec(2, seed=300)
result = q.conjecture_probe(spec, n_restarts=2, seed=0)
print("\ncoupling spectrum found:", result.best_coupling.values)
print("unitary frame (abs):\n", np.abs(result.best_unitary))
lam = np.linalg.eigvalsh(spec.cached_sld.entries)
print("half the SLD eigenvalues:", 0.5 * lam[::-1], " (matches up to a shift)")

# Budgeted searches fail loudly but keep their best attempt.
try:
    q.conjecture_probe(spec, n_restarts=8, seed=0, max_evals=30)
except q.SearchBudgetExhaustedError as exc:
    print("\nbudget of 30 evaluations exhausted; best residual so far:",
          f"{exc.best.residual:.3e}")
