"""Graph energy of unicyclic graphs: exact characteristic polynomials,
Coulson-integral comparisons and a mechanised check of the inequality
E(P_n^6) > E(C_n)."""

__version__ = "0.1.0"
