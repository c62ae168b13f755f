"""Finite permutation groups whose 2-maximal subgroups are Hall subgroups."""
