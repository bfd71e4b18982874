"""
RenewKit tests
"""

from renewkit.core import logging
import os

LOGGER = logging.getLogger(__name__)
LOGGER.setLevel(logging.DEBUG)
TESTS_DIR = os.path.abspath(os.path.dirname(__file__))
#: master seed shared by the Monte Carlo tests
SEED = 20240229
