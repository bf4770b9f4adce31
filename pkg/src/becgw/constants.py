"""Physical constants (SI, CODATA 2018) used throughout the package.

All values are given to 10 significant figures where defined to that
precision; exact defined constants are exact.
"""

HBAR = 1.054571817e-34     # reduced Planck constant, J s (exact h / 2pi rounded)
K_B = 1.380649e-23         # Boltzmann constant, J / K (exact)
C_LIGHT = 2.99792458e8     # speed of light, m / s (exact)

# Mass of a single 87Rb atom, kg.
M_RB87 = 1.4431609e-25
