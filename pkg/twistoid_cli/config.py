import os

# Oracle complexity bound in flags; larger complexes are refused
MAX_FLAGS = int(os.environ.get("TWISTOID_MAX_FLAGS", "50000"))

# Flag bound used by the verify command
VERIFY_MAX_FLAGS = int(os.environ.get("TWISTOID_VERIFY_MAX_FLAGS", "2304"))

# Seed for randomized property checks
RANDOM_SEED = int(os.environ.get("TWISTOID_SEED", "20240101"))

LOG_LEVEL = os.environ.get("TWISTOID_LOG_LEVEL", "WARNING").upper()

# Word length of the bounded search in the fixed-point-freeness check
WORD_LENGTH_BOUND = 4
