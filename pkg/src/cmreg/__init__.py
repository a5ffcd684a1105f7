"""Tangent cones, Castelnuovo-Mumford regularity and Hilbert-Samuel bounds for local rings k[x]_(x)/I."""
from .arith import QQ, PrimeField, binomial, field_from_descriptor
from .basis import Ideal, buchberger, colon_saturate_maximal, ideal_dimension, standard_basis, tangent_cone
from .bounds import coeff_upper_bound, finiteness_envelope, hs_upper_bound, reg_upper_bound
from .degree import hdeg, hdeg_gcm, multiplicity
from .invariants import g_regularity, hilbert_samuel, regularity
from .pipeline import analyze, example_family, parse_instance
from .poly import GLEX, GREVLEX, LEX, LOCAL, PolynomialRing
from .resolution import GradedModulePresentation, betti_table, ext_module, free_resolution

__version__ = "0.1.0"
