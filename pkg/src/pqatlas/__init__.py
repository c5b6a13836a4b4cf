"""Verification and exploration toolkit for positive solutions of
du + |grad u|^q u^p = 0: exact coefficient algebra, (p,q)-plane region
classification, closed-form radial solution oracles and a shooting
integrator for the radial existence threshold."""

__version__ = "0.1.0"
