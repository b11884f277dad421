"""Resolutions of R/aI for a complete intersection a contained in I."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from src.services.complexes.chain_complex import ChainComplex
from src.services.complexes.operations import mapping_cone, minimalize
from src.services.dg.comparison import ComparisonMaps, comparison_maps, verify_phi_chain_map
from src.services.dg.products import DGProduct, resolution_with_product
from src.services.errors import EngineInvariantError, PreconditionError
from src.services.groebner.ideal import Ideal
from src.services.groebner.operations import is_regular_sequence
from src.services.logging import get_logger, log_event
from src.services.resolutions.free_resolution import require_resolution

logger = get_logger(__name__)


@dataclass
class ProductResolution:
    maps: ComparisonMaps
    cone: ChainComplex
    resolution: ChainComplex
    product_ideal: Ideal
    # a is inside mI, so the cone is already minimal
    minimal_cone: bool


def build_product_resolution(
    a_ideal: Ideal, ideal: Ideal, product: Optional[DGProduct] = None, bound: Optional[int] = None
) -> ProductResolution:
    """Cone of the comparison map, minimalized when a is not inside mI.

    Positive strand homology is checked through ``bound`` (one past the top
    generator degree by default).
    """
    ring = ideal.ring
    if not is_regular_sequence(ring, a_ideal.minimal_generators()):
        raise PreconditionError(f"{a_ideal!r} is not generated by a regular sequence")
    if not ideal.contains_ideal(a_ideal):
        raise PreconditionError(f"{a_ideal!r} is not contained in {ideal!r}")
    product = product or resolution_with_product(ideal)
    maps = comparison_maps(a_ideal, ideal, product)
    if not verify_phi_chain_map(maps):
        raise EngineInvariantError("the comparison maps do not commute with the differentials")
    cone = mapping_cone(maps.psi(), name="T")
    product_ideal = a_ideal * ideal
    minimal_cone = (Ideal.maximal(ring) * ideal).contains_ideal(a_ideal)
    if minimal_cone:
        if not cone.is_minimal():
            raise EngineInvariantError("the cone has unit entries although a lies in mI")
        resolution = cone
    else:
        resolution = minimalize(cone, name="T")
    require_resolution(resolution, product_ideal, bound, label="cone over R/aI")
    log_event(logger, "product_resolution", cone=cone.ranks(), ranks=resolution.ranks(), minimal_cone=minimal_cone)
    return ProductResolution(maps, cone, resolution, product_ideal, minimal_cone)


def product_ci_resolution(a_ideal: Ideal, ideal: Ideal, bound: Optional[int] = None) -> ChainComplex:
    """Free resolution of R/aI as the cone of K_{>=2}(a) -> F (x) K_1(a)."""
    return build_product_resolution(a_ideal, ideal, bound=bound).resolution
