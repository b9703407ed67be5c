"""Finite quotients of fundamental groups of fibered surfaces: words, coset
enumeration, exponent-3 and nilpotent models, monodromy orbits and witnesses."""
