"""
divfield - factorization types in elliptic-curve division fields

Computes how rational primes factor in the non-Galois fields
K = Q(E[N])^Gamma cut out of the N-division field of an elliptic curve,
through double coset types of subgroups of GL2(Z/N).

Modules:
- padic.py: residues mod p^n, valuations, Hensel lifting, Teichmuller lifts
- mat2.py: 2x2 matrices over Z/m, Smith forms, scalar depth, CRT, orders
- conjugacy.py: conjugacy classes of GL2(Z/p^n), labels, sizes, enumeration
- dct.py: double coset types, standard types, tensor products, ramified types
- oracle.py: brute-force orbit enumeration used to verify the closed forms
- finite_field.py: arithmetic in F_q[x] and F_{q^d}
- elliptic.py: curves over Q, point counts, reduction types, unit roots
- torsion.py: division polynomials, Frobenius scalar depth, Frobenius classes
- tate.py: j-expansion, Tate periods, multiplicative parameters
- zeta.py: per-prime factorization types, Euler factors, zeta coefficients,
  type distributions
- cache.py: SQL store of Frobenius data
- cli.py: command-line entry point
"""

__version__ = "1.0.0"
__author__ = "Division Field Analytics Team"
