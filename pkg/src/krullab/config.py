"""
Settings for krullab.

Settings are layered the same way an application factory configures an app:
built-in defaults, then an optional settings file named by ``KRULLAB_SETTINGS``,
then ``KRULLAB_*`` environment variables (a ``.env`` file is honoured), then an
explicit mapping passed by the caller (used by the tests).

Keys:
    - BOUND: default degree bound for the property deciders
    - BUDGET: node budget for every enumeration
    - SATURATION_BOX_FACTOR: box size multiplier for the saturation check
    - FIELD: default coefficient field for polynomial commands
    - JSON_INDENT: indentation of JSON reports
    - LOG_LEVEL: logging level name

Dependencies:
    - Flask (``flask.Config``)
    - python-dotenv
"""

import os

from dotenv import load_dotenv
from flask import Config

DEFAULTS = {
    "BOUND": 8,
    "BUDGET": 1_000_000,
    "SATURATION_BOX_FACTOR": 2,
    "FIELD": "q",
    "JSON_INDENT": 2,
    "LOG_LEVEL": "WARNING",
}


def create_config(test_config=None):
    """Factory: build the settings mapping for one run."""
    load_dotenv()
    config = Config(os.getcwd())

    config.from_mapping(DEFAULTS)

    # Override with a settings file, the environment, then the caller
    config.from_envvar("KRULLAB_SETTINGS", silent=True)
    config.from_prefixed_env(prefix="KRULLAB")
    if test_config:
        config.from_mapping(test_config)

    return config
