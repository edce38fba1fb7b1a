"""Exact tensor calculus on frame-homogeneous almost contact metric manifolds."""
