"""Mobius symmetry groups of finite point sets on the Riemann sphere."""
