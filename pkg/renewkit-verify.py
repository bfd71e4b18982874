#! /usr/bin/env python
# -*- coding: utf-8 -*-

"""
renewkit-verify.py command-line script, see ``renewkit --help``.
"""

from renewkit.cli import main
import sys

if __name__ == '__main__':
    sys.exit(main())
