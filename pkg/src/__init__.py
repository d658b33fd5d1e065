"""
Riccati invariant disks

Rigorous enclosures for solutions of y' = V - y^2 with complex V:
families of disks in the complex plane that no solution starting inside
can leave, built from WKB and Airy approximants and checked against a
reference integrator.
"""

__version__ = "0.1.0"
__description__ = "Invariant-disk enclosures for the Riccati equation"

__all__ = ["__version__"]
