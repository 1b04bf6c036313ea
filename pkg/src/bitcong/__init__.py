"""Bitangent congruences of quartic surfaces over finite fields of characteristic 2."""

__version__ = "0.1.0"
