from fractions import Fraction

DOMAIN = "jordanian"

# Randomness
DEFAULT_SEED = 42
DEFAULT_MAX_N = 8

# Isomorphism search
ISO_TRIALS = 200
ISO_COEFF_RANGE = (-3, 3)

# Random representation sampling
SAMPLE_COEFFS = tuple(Fraction(v) for v in (-2, -1, 0, 1, 2)) + (Fraction(1, 2), Fraction(-3, 2))
SAMPLE_EIGENVALUES = tuple(Fraction(v) for v in (0, 1, -1, 2)) + (Fraction(1, 2),)

# Extension candidates are evaluated at these multiples of each solution basis vector
EXTENSION_SCALARS = tuple(Fraction(v) for v in (0, 1, -2, 5)) + (Fraction(1, 3),)

# CLI exit codes
EXIT_OK = 0
EXIT_PROPERTY_FAILURE = 1
EXIT_USAGE = 2
EXIT_DOMAIN_ERROR = 3

# Acceptance suites, in report order
SUITE_NORMAL_FORM = "normal-form"
SUITE_CONFLUENCE = "confluence"
SUITE_AUTOMORPHISMS = "automorphisms"
SUITE_EPSILON = "epsilon-closed-form"
SUITE_DIMENSION_SEQUENCE = "dimension-sequence"
SUITE_DIMENSION_BOUND = "dimension-bound"
SUITE_FAITHFULNESS = "faithfulness"
SUITE_STRUCTURE = "structure"
SUITE_QUIVERS = "quivers"
SUITE_DECOMPOSITION = "decomposition"
SUITE_CANONICAL = "canonical-pairs"
SUITE_JACOBIAN = "jacobian"
SUITE_RINGEL = "ringel"
SUITE_AUTO_EQUIVALENCE = "auto-equivalence"
SUITE_STRATUM = "stratum-indecomposable"

ALL_SUITES = (
    SUITE_NORMAL_FORM,
    SUITE_CONFLUENCE,
    SUITE_AUTOMORPHISMS,
    SUITE_EPSILON,
    SUITE_DIMENSION_SEQUENCE,
    SUITE_DIMENSION_BOUND,
    SUITE_FAITHFULNESS,
    SUITE_STRUCTURE,
    SUITE_QUIVERS,
    SUITE_DECOMPOSITION,
    SUITE_CANONICAL,
    SUITE_JACOBIAN,
    SUITE_RINGEL,
    SUITE_AUTO_EQUIVALENCE,
    SUITE_STRATUM,
)

# Known image-algebra dimensions of the epsilon sequence, n = 1..10
EPSILON_DIMENSIONS = (1, 2, 4, 6, 9, 12, 16, 20, 25, 30)

# Codimension of the ideal generated by {Y^2, X^2 Y, X^3} in A_n for n >= 5
RINGEL_WILD_CODIMENSION = 5
