"""Linear solutions of generalized combination networks over finite fields.

Submodules:

``gf``           finite fields, matrices, canonical subspaces
``qcomb``        Gaussian binomials and rank counts
``network``      network model, solution verification and simulation
``constructor``  MRD / covering-code constructions, randomized search
``oracle``       exact maximum covering codes for small parameters
``bounds``       bounds on the middle-layer size and on the field-size gap
``codec``        JSON file formats
``cli``          command-line front end
"""
from ._backend import BACKEND
from .gf import FieldSpec, MatrixGF, Subspace, field_new
from .network import NetworkParams, NetworkSolution, SolvabilityClass

__all__ = [
    "BACKEND",
    "FieldSpec",
    "MatrixGF",
    "NetworkParams",
    "NetworkSolution",
    "SolvabilityClass",
    "Subspace",
    "field_new",
]
__version__ = "0.1.0"
