"""Stationary helicoidal screws and ribbons under the Moebius-Plateau energy."""

from helixpair._kernels import BACKEND as KERNEL_BACKEND
from helixpair.geometry import (
    AxisDegenerate,
    HelicoidParams,
    HelixError,
    Kind,
    MeshSpec,
    WrongKind,
)
from helixpair.quadrature import BudgetExceeded, IntegralResult, QuadratureConfig, TailClass
from helixpair.variational import EnergyWeights

__all__ = [
    "KERNEL_BACKEND",
    "AxisDegenerate",
    "BudgetExceeded",
    "EnergyWeights",
    "HelicoidParams",
    "HelixError",
    "IntegralResult",
    "Kind",
    "MeshSpec",
    "QuadratureConfig",
    "TailClass",
    "WrongKind",
]

__version__ = "0.1.0"
