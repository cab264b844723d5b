"""Lifting right-angled Artin group automorphisms along graph covers.

Decides, constructs and verifies lifts of automorphisms of the group of a
base graph to the group of a regular cover, with the word problem, automorphism
decompositions and homology matrices needed on the way.
"""

__version__ = "0.1.0"
