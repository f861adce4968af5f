"""
Open Geometry Prover: conjecture frontends, FOF filters, a native
deductive-database prover, a prover portfolio, a problem repository and a
competition harness.
"""
__version__ = '1.0.0'
