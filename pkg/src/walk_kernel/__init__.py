"""Exact tools for weighted small-step walks in the three-quarter plane:
walk enumeration, functional-equation checks, the kernel curve and its
QRT dynamics, and a D-algebraicity classifier built on pole orbits."""

from .arith import LaurentPoly, ProjPoint, QuadExt, QuadField, Rat, TruncSeries, format_rat, rat
from .classify import ClassificationReport, classify, reproduce_theorem_415
from .curve import (
    CurvePoint,
    fiber_points,
    group_order_probe,
    iota1,
    iota2,
    orbit_relation,
    poles_of_y,
    sigma,
    sigma_inv,
)
from .kernel import Kernel, build_kernel, eval_bihom
from .model import ModelError, StepWeights, builtin_model, check_a1, check_a2, load_model, phi_transform
from .series import WalkTable, enumerate_walks, section
from .verify import check_octant_equation, check_plane_equation, check_sym_equation

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
