"""
evopiezo: evolutionary equations of coupled thermo-piezo-electro-magnetic media
==============================================================================

evopiezo discretizes the first order system

    (d/dt M0 + M1 + A) U = F,   U = (v, T, E, H, theta_rel, q),

on a box grid, with a skew-symmetric difference operator A and material
operators M0, M1 built from the constitutive coefficients of elasticity,
piezo-electricity, pyro-electricity, heat conduction of Maxwell-Cattaneo
type and, optionally, piezo-magnetism. It provides

* structural well-posedness checks of the material law, with a certified
  lower bound c0 and an eigenvalue oracle on the assembled matrices
* the quasi-static reduction E = -grad phi with its own check
* energy-accounting theta-method time stepping with direct and Krylov solvers
* a command line interface driven by TOML configurations

Checks disclaimer
-----------------

A check certifies positivity on the tested weights nu <= nu_cap only. An
inconclusive verdict means that no weight up to nu_cap decided the
condition; increasing nu_cap or the strictness tolerance may change it.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from .fields import Grid
from .fields import make_grid
from .fields import Field
from .fields import StateVector
from .fields import voigt_encode
from .fields import voigt_decode
from .coefblock import CoefficientBlock
from .material import MaterialConfig
from .material import invert_constitutive
from .material import assemble_operators
from .operators import assemble_A
from .operators import assemble_A_reduced
from .wellposed import check_abstract
from .wellposed import check_theorem1
from .wellposed import gauss_reduce
from .wellposed import verdict_crosscheck
from .quasistatic import build_projector
from .quasistatic import assemble_reduced
from .quasistatic import check_theorem2
from .evolution import DiscreteSystem
from .evolution import Schedule
from .evolution import simulate
from .builder.builder import Builder
from .builder.builder_base import BuilderBase
from .builder.builder_base import ModelParameters
from .builder.funcprop import SolverProperties

__version__ = '1.0'
