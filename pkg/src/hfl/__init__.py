"""Exact link Floer homology calculators.

Subpackages cover: planar diagram handling (linkdiag), Laurent polynomial
arithmetic (laurent), Alexander polynomials and signatures (alexander),
filtered GF(2) chain complexes and their model summands (filtered,
summands), the alternating-link homology calculators (homology), and a
genus-zero Heegaard diagram oracle for two-bridge links (heegaard).
"""

__version__ = "0.1.0"
