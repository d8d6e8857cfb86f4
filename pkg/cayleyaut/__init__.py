"""
cayleyaut - automorphism groups of Cayley graphs over finite abelian groups
"""
__version__ = '1.0.0'
