"""
dipole_controllability package.
Controllability criteria for N-level quantum systems driven through a
nearest-neighbour dipole coupling: a rule engine with witnesses, a numerical
Lie closure oracle, the four-level classification and a model catalogue.
"""
# This file is part of dipole_controllability
#
# Redistribution and use in source and binary forms, with or without modification, are permitted
# under the terms of the BSD 2-Clause license (see README.md).
import os

with open(os.path.join(os.path.dirname(__file__), 'VERSION'), 'r') as _vf:
    __version__ = _vf.read().strip()
