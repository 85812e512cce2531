from .config import Configuration
