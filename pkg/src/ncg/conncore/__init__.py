"""Connections, curvature and traces over a pluggable differential calculus."""

from .calculus import Calculus, Form, wedge
from .connections import (
    LeftConnection,
    Metric,
    NotBimodule,
    SigmaMap,
    algebra_connection,
    bianchi_residuals,
    boxtimes,
    cotorsion,
    derive_sigma,
    extendability_residuals,
    metric_compat_residual,
    metric_trace,
    morphism_derivative,
    riemann_antisymmetry_residual,
    tensor_connection,
    torsion,
)
from .equations import EquationSet
from .modules import AlgebraModule, FormModule, ProjectorModule, TensorForm, TensorModule
from .morphisms import GradedMorphism
from .traces import DualBasis, TraceError, chern_invariant, cycle_trace, grassmann_connection

__all__ = [
    "AlgebraModule", "Calculus", "DualBasis", "EquationSet", "Form", "FormModule", "GradedMorphism",
    "LeftConnection", "Metric", "NotBimodule", "ProjectorModule", "SigmaMap", "TensorForm", "TensorModule",
    "TraceError", "algebra_connection", "bianchi_residuals", "boxtimes", "chern_invariant", "cotorsion",
    "cycle_trace", "derive_sigma", "extendability_residuals", "grassmann_connection", "metric_compat_residual",
    "metric_trace", "morphism_derivative", "riemann_antisymmetry_residual", "tensor_connection", "torsion", "wedge",
]
