"""Exact computations on planar webs presented by first-order ODEs."""
