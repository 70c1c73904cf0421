"""Orbitspace - weighted orbit spaces of circle actions on 3- and 4-manifolds."""

__version__ = "0.1.0"
