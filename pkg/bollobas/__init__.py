"""Exact construction, verification and certification of Bollobás-type systems."""
