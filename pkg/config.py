"""
Configuration settings for rotsurf
"""
import os

# Tolerance Configuration
DEFAULT_TOL = float(os.getenv("ROTSURF_TOL", "1e-10"))
PSEUDO_ORTHOGONAL_TOL = float(os.getenv("ROTSURF_PSEUDO_ORTHOGONAL_TOL", "1e-12"))
CAUSAL_TOL = float(os.getenv("ROTSURF_CAUSAL_TOL", "1e-12"))
DEGENERATE_METRIC_TOL = float(os.getenv("ROTSURF_DEGENERATE_METRIC_TOL", "1e-12"))
DEGENERATE_FRAME_TOL = float(os.getenv("ROTSURF_DEGENERATE_FRAME_TOL", "1e-14"))
RESTRICTION_ZERO_TOL = float(os.getenv("ROTSURF_RESTRICTION_ZERO_TOL", "1e-12"))
CURVATURE_MATCH_TOL = float(os.getenv("ROTSURF_CURVATURE_MATCH_TOL", "1e-6"))

# Matrix Exponential Settings
EXPM_MAX_TERMS = int(os.getenv("ROTSURF_EXPM_MAX_TERMS", "200"))
EXPM_MIN_TERMS = 4

# Finite Difference Settings
FD_STEP = float(os.getenv("ROTSURF_FD_STEP", "1e-5"))
FD_SECOND_STEP_FLOOR = float(os.getenv("ROTSURF_FD_SECOND_STEP_FLOOR", "1e-3"))

# Profile Curve Settings
RESTRICTION_SAMPLES = 17
UNBOUNDED_SAMPLE_WINDOW = (-3.0, 3.0)
CURVE_VARIABLE = "s"
REPARAM_VARIABLE = "t"
CURVE_PARAMETERS = ("c",)

# Builtin Profile Curves
BUILTIN_CURVES = {
    'ex1': {
        'expression': 's+sinh(s),0,0,s+cosh(s)',
        'pair': '14',
        'description': 'Hyperbolic example on the (1,4) pair',
    },
    'ex2': {
        'expression': 's*cosh(s),s*sinh(s),0,0',
        'pair': '23',
        'description': 'Hyperbolic example on the (2,3) pair',
    },
    'ex3': {
        'expression': '0,c*sin(s),0,c*cos(s)',
        'pair': '56',
        'description': 'Elliptic example with one positive constant c',
    },
    'lin14': {
        'expression': 's,0,0,2*s',
        'pair': '14',
        'description': 'Straight line through the origin, flat cone',
    },
    'cosh14': {
        'expression': 's,0,0,cosh(s)',
        'pair': '14',
        'description': 'Test curve with a definite sign regime on the (1,4) pair',
    },
    'cosh56': {
        'expression': '0,s,0,cosh(s)',
        'pair': '56',
        'description': 'Test curve for the elliptic pair',
    },
}
DEFAULT_CURVE_PARAMS = {'c': 1.0}

# Verification Settings
VERIFY_SEED = int(os.getenv("ROTSURF_VERIFY_SEED", "20240601"))
VERIFY_RANDOM_COEFFICIENTS = 100
VERIFY_GROUP_PARAMS = 50
VERIFY_GROUP_RANGE = (-3.0, 3.0)
VERIFY_SURFACE_POINTS = int(os.getenv("ROTSURF_VERIFY_SURFACE_POINTS", "20"))
VERIFY_IDENTITY_POINTS = 100

# Surface cases swept by the verification suite; ranges keep every point non-degenerate.
# printed_K: whether the printed K formula matches the oracle ('match') or is a known defect
VERIFY_SURFACES = [
    {'curve': 'cosh14', 'pair': '14', 'reparam1': 't+0.1*t**2', 'reparam2': 't',
     'trange': (-1.0, 1.0), 'srange': (1.2, 2.0), 'printed_K': 'match'},
    {'curve': 'ex2', 'pair': '23', 'reparam1': 't', 'reparam2': 't+0.1*t**2',
     'trange': (-1.0, 1.0), 'srange': (0.5, 1.5), 'printed_K': 'defect'},
    {'curve': 'cosh56', 'pair': '56', 'reparam1': 't+0.1*t**2', 'reparam2': 't',
     'trange': (-1.0, 1.0), 'srange': (1.2, 2.0), 'printed_K': 'defect'},
    {'curve': 'lin14', 'pair': '14', 'reparam1': 't', 'reparam2': 't',
     'trange': (-1.0, 1.0), 'srange': (0.5, 2.0), 'printed_K': 'match'},
    {'curve': 'ex1', 'pair': '14', 'reparam1': 't', 'reparam2': 't',
     'trange': (-1.0, 1.0), 'srange': (0.5, 2.0), 'printed_K': 'defect'},
    {'curve': 'ex3', 'pair': '56', 'reparam1': 't', 'reparam2': 't',
     'trange': (-1.0, 1.0), 'srange': (0.1, 0.6), 'printed_K': 'match'},
]

# Grid Defaults
DEFAULT_GRID = os.getenv("ROTSURF_GRID", "10x10")
DEFAULT_TRANGE = os.getenv("ROTSURF_TRANGE", "-1:1")
DEFAULT_SRANGE = os.getenv("ROTSURF_SRANGE", "0.5:2")
DEFAULT_PROJECTION = (1, 3, 4)
GRID_WORKERS = int(os.getenv("ROTSURF_GRID_WORKERS", "1"))
SIGNIFICANT_DIGITS = 17

# Logging Configuration
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
