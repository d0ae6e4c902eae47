"""profam: families of semidirect products N x| F_2 sharing all finite
quotients, built from torus link groups and explicit integer-matrix and
free-group-automorphism embeddings, with machine-checkable certificates.
"""

__version__ = "0.1.0"
