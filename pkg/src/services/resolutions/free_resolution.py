"""Minimal free resolutions of cyclic quotients R/I."""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from src.services.complexes.chain_complex import ChainComplex, GradedFreeModule
from src.services.complexes.matrix import PolyMatrix
from src.services.complexes.strands import StrandComplex
from src.services.errors import EngineInvariantError, PreconditionError
from src.services.groebner.ideal import Ideal
from src.services.groebner.module import ModulePresentation, syzygies
from src.services.logging import get_logger, log_event

logger = get_logger(__name__)


def minimal_free_resolution(ideal: Ideal, name: Optional[str] = None) -> ChainComplex:
    """F_0 = R, d_1 = the minimal generators as a row, then iterated minimal syzygies."""
    ring = ideal.ring
    if not ideal.is_proper():
        raise PreconditionError("cannot resolve R/I for the unit ideal")
    gens = ideal.minimal_generators()
    modules = [GradedFreeModule((0,))]
    differentials: Dict[int, PolyMatrix] = {}
    if gens:
        modules.append(GradedFreeModule(tuple(g.degree for g in gens)))
        differentials[1] = PolyMatrix.from_rows(ring, [list(gens)], len(gens))
        presentation = ModulePresentation.from_row(ring, gens)
        i = 1
        while i < ring.nvars:
            kernel = syzygies(presentation)
            if kernel.ncols == 0:
                break
            modules.append(GradedFreeModule(tuple(kernel.column_degrees)))
            differentials[i + 1] = PolyMatrix.from_columns(ring, presentation.ncols, kernel.columns)
            presentation = kernel
            i += 1
    resolution = ChainComplex(ring, modules, differentials, name=name or f"F({ideal.name or 'I'})")
    log_event(logger, "minimal_free_resolution", ranks=resolution.ranks())
    return resolution


def resolves_quotient(complex_: ChainComplex, ideal: Ideal) -> bool:
    """H_0 = R/I: the image of d_1 is the ideal."""
    if complex_.rank(0) != 1:
        return False
    image = Ideal(ideal.ring, [value for _, value in complex_.differential(1).items()])
    return image == ideal


def homology_defects(complex_: ChainComplex, max_degree: int, quotient: Optional[Ideal] = None) -> List[Tuple[int, int, int]]:
    """Nonzero strands (i, degree, dimension) of positive homology up to ``max_degree``."""
    strands = StrandComplex(complex_, quotient, bound=max_degree)
    defects = []
    for i in range(1, complex_.length + 1):
        low = min(complex_.module(i).degrees, default=0)
        for degree in range(low, max_degree + 1):
            strand = strands.homology(i, degree)
            if strand.dimension:
                defects.append((i, degree, strand.dimension))
    return defects


def verify_resolution(complex_: ChainComplex, ideal: Ideal, max_degree: Optional[int] = None) -> bool:
    """d*d = 0, H_0 = R/I, and positive strand homology vanishes up to ``max_degree``."""
    if not complex_.compose_check() or not resolves_quotient(complex_, ideal):
        return False
    bound = max_degree if max_degree is not None else complex_.max_generator_degree() + 1
    return not homology_defects(complex_, bound)


def require_resolution(
    complex_: ChainComplex, ideal: Ideal, bound: Optional[int] = None, label: str = "complex"
) -> None:
    """Raise unless ``complex_`` resolves R/I, with positive strand homology checked through ``bound``."""
    if not complex_.compose_check():
        raise EngineInvariantError(f"the {label} is not a complex")
    if not resolves_quotient(complex_, ideal):
        raise EngineInvariantError(f"the {label} does not have H_0 = R/{ideal.name or 'I'}")
    limit = bound if bound is not None else complex_.max_generator_degree() + 1
    defects = homology_defects(complex_, limit)
    if defects:
        raise EngineInvariantError(f"the {label} has positive homology (i, degree, dim) {defects}")
    log_event(logger, "resolution_checked", label=label, bound=limit)
