"""Bivariate expressions: parsing, evaluation and the symbolic mixed partial."""
