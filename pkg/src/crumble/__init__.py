"""Crumbled evaluation of call-by-value λ-terms on pointed environment machines."""
