from .load_yaml import load_yaml_with_jinja, render_template
from .logger import LOG_FORMAT, build_logger
from .seeding import as_generator, spawn_generator
