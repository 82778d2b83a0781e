"""
Configuration settings for the hadamard-flow toolkit.
"""
import os
from typing import List
from dotenv import load_dotenv

load_dotenv() # Load environment variables from .env file


class Settings:
    """
    Application settings loaded from environment variables.
    """
    def __init__(self):
        # App settings
        self.APP_NAME = "hadamard-flow"
        self.APP_VERSION = "1.0.0"

        # Server settings
        self.SERVER_HOST = os.getenv("SERVER_HOST", "127.0.0.1")
        self.SERVER_PORT = int(os.getenv("SERVER_PORT", 8000))

        # API settings
        self.API_V1_STR = "/api/v1"

        # Series settings
        self.DEFAULT_ORDER = int(os.getenv("HADAMARD_FLOW_ORDER", 256))
        self.MIN_RADIUS_ORDER = 16
        self.ZERO_RADIUS_THRESHOLD = 1e-12
        self.RADIUS_GROWTH_MARGIN = 1.0

        # Symbol settings
        self.EXPONENT_LIMIT = 700.0

        # Classification settings
        self.WITNESS_SEARCH_LIMIT = int(os.getenv("HADAMARD_FLOW_WITNESS_LIMIT", 10**6))
        self.NUMERATOR_TOLERANCE = 1e-6
        self.BLOWUP_TIME = 1.0
        self.HARDY_EXPONENT = 1.0

        # Pole settings
        self.REAL_AXIS_TOLERANCE = float(os.getenv("HADAMARD_FLOW_TOL", 1e-8))
        self.PERIOD_TOLERANCE = 1e-10
        self.FIT_RESIDUAL_LIMIT = 1e-6
        self.MAX_FIT_DEGREE = 16
        self.MAX_PERIOD = 64
        self.FIT_HOLDOUT_FRACTION = 0.2
        self.POLE_AGREEMENT = 0.02
        self.ENTIRE_DECAY_MARGIN = 1.0

        # Semigroup probe settings
        self.PROBE_LEVELS = 11
        self.PROBE_GRID = 64
        self.RELIABLE_FRACTION = 0.5

        # Verify settings
        self.VERIFY_ORDER = 32
        self.LAW_TOLERANCE = 1e-11
        self.GENERATOR_STEPS = [1e-2, 1e-3, 1e-4, 1e-5]
        self.GENERATOR_SLOPE = (0.9, 1.1)
        self.GENERATOR_STEP_SCALE = 0.1

        # Mellin settings
        self.GRID_POINTS = int(os.getenv("HADAMARD_FLOW_GRID_POINTS", 2048))
        self.GRID_RMAX = float(os.getenv("HADAMARD_FLOW_RMAX", 20.0))
        self.SECTOR_COUNT = int(os.getenv("HADAMARD_FLOW_SECTORS", 8))
        self.POLE_GUARD = 1e-9

        # Logging
        self.LOG_LEVEL = os.getenv("HADAMARD_FLOW_LOG_LEVEL", "INFO").upper()

        # CORS settings
        self.ALLOWED_ORIGINS: List[str] = [
            "http://localhost",
            "http://localhost:3000",
            "http://127.0.0.1:3000",
            "http://localhost:8000",
            "http://127.0.0.1:8000",
        ]

        # Debug mode
        self.DEBUG = os.getenv("DEBUG", "False").lower() == "true"


# Create a settings instance
settings = Settings()
