"""
Runtime settings.

Values come from the environment (optionally a local .env file) and fall back
to defaults, so nothing has to be set to run the tools.
"""
import os

from dotenv import load_dotenv

load_dotenv()

# Logging
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
LOG_FORMAT = os.getenv("LOG_FORMAT", "%(asctime)s - %(name)s - %(levelname)s - %(message)s")

# Probe corpus
DEFAULT_SEED = int(os.getenv("DEFAULT_SEED", "0"))
RANDOM_PROBES = int(os.getenv("RANDOM_PROBES", "200"))
ENTRY_BOUND = int(os.getenv("ENTRY_BOUND", "2"))
MAX_RANDOM_DIM = int(os.getenv("MAX_RANDOM_DIM", "3"))

# Checkers
PAIR_FANOUT = int(os.getenv("PAIR_FANOUT", "8"))
PROJECTIVITY_OBJECTS = int(os.getenv("PROJECTIVITY_OBJECTS", "6"))

# Reports
SCHEMA_VERSION = os.getenv("SCHEMA_VERSION", "preab/1")
SEQ_TABLE_GRID = tuple(
    int(n) for n in os.getenv("SEQ_TABLE_GRID", "1,2,3,4,5,10,100,1000,10000").split(",")
)
