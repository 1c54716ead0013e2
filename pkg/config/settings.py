"""
settings.py - Configuration for hopfdesk
Defaults for task documents and logging, overridable from the environment or a .env file.

Usage:
- Put HOPFDESK_* variables in a .env file next to main.py, or export them.
"""

import os
from dotenv import load_dotenv

# Load settings from .env file
load_dotenv()

# Task defaults and limits
DESK = {
    "default_degree": int(os.getenv('HOPFDESK_DEFAULT_DEGREE', '3')),
    "max_degree": int(os.getenv('HOPFDESK_MAX_DEGREE', '5')),
    "output_format": os.getenv('HOPFDESK_OUTPUT_FORMAT', 'text'),
    # Largest total carrier dimension the brute-force Hom oracle will enumerate
    "oracle_max_dim": int(os.getenv('HOPFDESK_ORACLE_MAX_DIM', '6')),
}

LOGGING = {
    "level": os.getenv('HOPFDESK_LOG_LEVEL', 'INFO'),
    "file": os.getenv('HOPFDESK_LOG_FILE', ''),
    "format": '%(asctime)s - %(levelname)s - %(message)s',
}
