"""Exact, truncated checks of the equivariant Kodaira-Spencer correspondence
between the pair of pants and the orbifold Landau-Ginzburg model (xyz, G^)."""
from __future__ import annotations

__version__ = "0.1.0"
