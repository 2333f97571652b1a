"""Exact invariants of Kollar surfaces and cyclic root covers of the plane."""
