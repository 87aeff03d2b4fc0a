"""
# Description

Default constants of the plate model and of the numerical setup.
The physical defaults reproduce the standard test case of a narrow plate
over $(0,\\pi)\\times(-0.2,0.2)$ with $\\sigma=0.2$ and $\\mu=-0.5$.

---
"""


SIGMA = 0.2
"""Poisson ratio $\\sigma \\in (0,1)$."""
MU = -0.5
"""Linearized prestress coefficient $\\mu$."""
ALPHA = 0.0
"""Flow parameter $\\alpha$."""
G_CONST = 1.0
"""Constant forcing amplitude $G$. Only scales the linear solution."""
P_PRESTRESS = 1.0
"""Prestress parameter $P$."""
S_STRETCH = 1.0
"""Stretching stiffness $S \\geq 0$."""
HALF_WIDTH = 0.2
"""Plate half-width $l$, the plate spans $y \\in [-l, l]$."""

N1 = 14
"""Number of x-nodes on $[0,\\pi]$, including both hinged ends."""
M2 = 4
"""Number of cubic macro-elements along y."""
QUAD_ORDER = 6
"""Gauss points per y macro-element in the assembly."""

ORACLE_POINTS = 10
"""Gauss points per x-panel in the brute-force oracle."""
ORACLE_PANELS_PER_MODE = 4
"""Minimum x-panels per sine mode in the brute-force oracle."""

N_SAMPLES = 256
"""Midline samples used to count zeros along x."""
REL_THRESHOLD = 1e-3
"""Relative zero band for the zero counting, as a fraction of the amplitude."""
AMPLITUDE_FLOOR = 1e-14
"""Below this midline amplitude a field is classified as trivial."""

ALPHA_START = 0.0
"""First flow parameter of a sweep."""
ALPHA_END = -8000.0
"""Last flow parameter of a sweep."""
ALPHA_STEP = 1.0
"""Sweep step, one iteration per unit of $\\alpha$."""
COARSE_STEP = 10.0
"""Sweep step of the coarse mode."""

PIVOT_TOLERANCE = 1e-13
"""Relative pivot size below which a system is flagged as near-singular."""
LAMBDA_TOLERANCE = 1e-10
"""Relative eigenvalue change that stops the inverse power iteration."""
LAMBDA_MAXITER = 10000
"""Maximum inverse power iterations."""

EXPORT_NX = 101
"""Export lattice points along x."""
EXPORT_NY = 41
"""Export lattice points along y."""

VERIFY_N1 = 6
"""x-nodes of the verification grid (4 interior modes)."""
VERIFY_M2 = 2
"""Macro-elements of the verification grid."""
