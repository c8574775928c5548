"""Exact symbolic computation for quantum symmetric pairs of type AIII/AIV.

The package constructs the intertwiner and quasi-R-matrices of the coideal
subalgebras attached to the involution of a type-A Dynkin diagram, computes
canonical bases and Kazhdan-Lusztig-type polynomials on tensor and Fock-type
modules, and verifies the structural identities relating them to the
Iwahori-Hecke algebra of type B.  All arithmetic is exact: scalars are
Laurent polynomials in q over arbitrary-precision rationals, or quotients
thereof.
"""

__version__ = "0.1.0"
