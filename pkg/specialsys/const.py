"""Constants for specialsys."""

DOMAIN = "specialsys"

SCHEMA_VERSION = 1

ENV_SEED = "SPECIALSYS_SEED"
ENV_PRIME = "SPECIALSYS_PRIME"

CONF_SEED = "seed"
CONF_PRIME = "prime"
CONF_PRIMES = "primes"
CONF_TRIALS = "trials"
CONF_JOBS = "jobs"

DEFAULT_PRIME = 2**31 - 1
# Residues below 2^31 keep int64 products below 2^62
ORACLE_MAX_PRIME = 2**31
DEFAULT_PRIMES = (2**31 - 1, 2**31 - 19, 10**9 + 7)
DEFAULT_TRIALS = 3
DEFAULT_SEED = 0
DEFAULT_JOBS = 1

# Symbolic scope: nine free points plus any number of double points
MAX_FREE_SLOTS = 9
MAX_ENUM_SLOTS = 10
MIN_CREMONA_SLOTS = 3

# Documented desk-scale bounds for scan_defective
SCAN_MAX_DEGREE = 10
SCAN_MAX_K = 12

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_MISMATCH = 3

CERTAINTY_THEOREM = "theorem"
CERTAINTY_PREDICTED = "predicted, unverified"

MODE_SYMBOLIC = "symbolic"
MODE_ORACLE = "oracle"
