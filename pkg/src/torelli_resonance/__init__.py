"""Exact computations around the resonance of Torelli groups.

Modules:
    exact_linalg             sparse rational linear algebra and exterior powers
    symplectic_rep           sp_2g(Q) generators, unipotents and weights
    torelli_module           V = wedge^3 H / H and the submodule W of wedge^2 V
    resonance_engine         degree-one resonance varieties and the Torelli verdict
    alexander_infinitesimal  graded dimensions of the infinitesimal Alexander invariant
    torus_dynamics           unipotent action on torsion points of the character torus
    reports, cli             JSON reports and the ``torelli-res`` command
"""

from __future__ import annotations

__version__ = "0.1.0"

from .alexander_infinitesimal import (  # noqa: E402
    HilbertProfile,
    finiteness_detect,
    graded_dims,
    infares_crosscheck,
    wk_membership,
)
from .exact_linalg import ExactMatrix, Multivector, Subspace, annihilator, rank, spin, wedge  # noqa: E402
from .resonance_engine import (  # noqa: E402
    GroupAlgebraData,
    resonance_membership,
    verify_torelli_resonance,
)
from .symplectic_rep import SymplecticSpace, sp_generators, unipotents  # noqa: E402
from .torelli_module import TorelliRep, build_rep, build_W  # noqa: E402
from .torus_dynamics import (  # noqa: E402
    TorsionPoint,
    induced_action,
    invariant_set_check,
    irreducibility_witness,
    orbit,
)

__all__ = [
    "ExactMatrix", "GroupAlgebraData", "HilbertProfile", "Multivector", "Subspace", "SymplecticSpace",
    "TorelliRep", "TorsionPoint", "annihilator", "build_W", "build_rep", "finiteness_detect",
    "graded_dims", "induced_action", "infares_crosscheck", "invariant_set_check",
    "irreducibility_witness", "orbit", "rank", "resonance_membership", "sp_generators", "spin",
    "unipotents", "verify_torelli_resonance", "wedge", "wk_membership",
]
