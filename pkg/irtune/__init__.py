# irtune/__init__.py
"""Bayesian-optimization workbench for tuning a lexical search engine."""
__version__ = "0.1.0"
