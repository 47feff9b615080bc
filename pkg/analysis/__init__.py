"""
Division Field Analytics - Analysis Module

Reports built on the tables that scripts/run_tables.py loads into the DB.

Available analyses:
- top_types.py: Most common factorization types and their densities for a modulus N
- chebotarev_check.py: Sampled Frobenius type frequencies against expected densities
"""

__version__ = "1.0.0"
__author__ = "Division Field Analytics Team"
