"""Blue-detuned intracavity dipole trap simulator and analysis toolkit."""

__version__ = "0.1.0"

from .modes import CavityGeometry, ModeSpec, Position, paper_geometry
from .potential import TrapConfig, TrapMetrics, canonical_trap
from .qed import QedParams, QedResponse

__all__ = [
    "__version__",
    "CavityGeometry",
    "ModeSpec",
    "Position",
    "paper_geometry",
    "TrapConfig",
    "TrapMetrics",
    "canonical_trap",
    "QedParams",
    "QedResponse",
]
