"""Numerical workbench for zeta sums, GL(2) lattice sums and Maass-form transforms."""
