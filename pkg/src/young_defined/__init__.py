"""A verifiable model of Young's lattice.

Exact partition arithmetic, a catalog of first-order definable
predicates (each packaged as an oracle plus a characterization), a
prime-exponent encoding of partitions into the natural numbers, a
bounded first-order formula engine, and a harness that certifies each
characterization against its independent oracle.
"""

__version__ = '0.1.0'
