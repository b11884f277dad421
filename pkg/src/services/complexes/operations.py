"""Mapping cones, minimalization and tensor products of complexes."""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence

from src.services.errors import PreconditionError
from src.services.logging import get_logger, log_event
from src.services.ring.polynomial import Polynomial

from .chain_complex import ChainComplex, ComplexMorphism, GradedFreeModule
from .koszul import koszul_complex
from .matrix import PolyMatrix

logger = get_logger(__name__)


def mapping_cone(morphism: ComplexMorphism, name: Optional[str] = None) -> ChainComplex:
    """cone_n = S_{n-1} + T_n with (a, b) -> (-d a, -phi(a) + d b)."""
    if morphism.shift != 0:
        raise PreconditionError("mapping cones need a degree-preserving morphism")
    if not morphism.is_chain_map():
        raise PreconditionError("the morphism does not commute with the differentials")
    source, target = morphism.source, morphism.target
    ring = source.ring
    length = max(source.length + 1, target.length)
    modules = [source.module(n - 1) + target.module(n) for n in range(length + 1)]
    differentials: Dict[int, PolyMatrix] = {}
    for n in range(1, length + 1):
        row_sizes = [source.rank(n - 2), target.rank(n - 1)]
        col_sizes = [source.rank(n - 1), target.rank(n)]
        blocks = [
            [-source.differential(n - 1) if n >= 2 else None, None],
            [-morphism.map(n - 1), target.differential(n)],
        ]
        differentials[n] = PolyMatrix.block(ring, blocks, row_sizes, col_sizes)
    cone = ChainComplex(ring, modules, differentials, name=name or "cone")
    log_event(logger, "mapping_cone", ranks=cone.ranks())
    return cone


def minimalize(complex_: ChainComplex, name: Optional[str] = None) -> ChainComplex:
    """Split off trivial summands R -u-> R until no differential has a unit entry.

    Degrees are scanned upwards; inside a differential the first unit entry in
    column-major order is eliminated, then the scan restarts.
    """
    ring = complex_.ring
    modules: List[GradedFreeModule] = list(complex_.modules)
    differentials: Dict[int, PolyMatrix] = {
        i: complex_.differential(i) for i in range(1, complex_.length + 1)
    }
    eliminated = 0
    i = 1
    while i < len(modules):
        units = differentials[i].unit_positions()
        if not units:
            i += 1
            continue
        row, col = units[0]
        differentials[i] = differentials[i].eliminate_unit(row, col)
        if i + 1 in differentials:
            differentials[i + 1] = differentials[i + 1].delete_row(col)
        if i - 1 in differentials:
            differentials[i - 1] = differentials[i - 1].delete_column(row)
        modules[i] = modules[i].without(col)
        modules[i - 1] = modules[i - 1].without(row)
        eliminated += 1
    result = ChainComplex(ring, modules, differentials, name=name or complex_.name)
    log_event(logger, "minimalize", eliminated=eliminated, ranks=result.ranks())
    return result


def tensor_product(left: ChainComplex, right: ChainComplex, name: Optional[str] = None) -> ChainComplex:
    """Total complex with d(a (x) b) = da (x) b + (-1)^|a| a (x) db.

    Basis of degree n: blocks C_i (x) D_{n-i} for i ascending, C-index major.
    """
    ring = left.ring
    length = left.length + right.length
    offsets: List[Dict[int, int]] = []
    modules: List[GradedFreeModule] = []
    for n in range(length + 1):
        offset = 0
        block_offsets: Dict[int, int] = {}
        degrees: List[int] = []
        for i in range(n + 1):
            j = n - i
            block_offsets[i] = offset
            for a in left.module(i).degrees:
                for b in right.module(j).degrees:
                    degrees.append(a + b)
            offset += left.rank(i) * right.rank(j)
        offsets.append(block_offsets)
        modules.append(GradedFreeModule(tuple(degrees)))

    differentials: Dict[int, PolyMatrix] = {}
    for n in range(1, length + 1):
        entries: Dict = {}
        for i in range(n + 1):
            j = n - i
            rank_j = right.rank(j)
            source_offset = offsets[n][i]
            if i >= 1:
                d_left = left.differential(i)
                target_offset = offsets[n - 1][i - 1]
                for (r, c), value in d_left.items():
                    for b in range(rank_j):
                        entries[(target_offset + r * rank_j + b, source_offset + c * rank_j + b)] = value
            if j >= 1:
                d_right = right.differential(j)
                target_offset = offsets[n - 1][i]
                target_rank = right.rank(j - 1)
                for a in range(left.rank(i)):
                    for (r, c), value in d_right.items():
                        signed = -value if i % 2 else value
                        entries[(target_offset + a * target_rank + r, source_offset + a * rank_j + c)] = signed
        differentials[n] = PolyMatrix(ring, modules[n - 1].rank, modules[n].rank, entries)
    return ChainComplex(ring, modules, differentials, name=name)


def tensor_with_koszul(complex_: ChainComplex, sequence: Optional[Sequence[Polynomial]] = None) -> ChainComplex:
    """C (x) K, the Koszul complex on ``sequence`` (the variables by default)."""
    koszul = koszul_complex(complex_.ring, sequence)
    return tensor_product(complex_, koszul, name=f"{complex_.name or 'C'}(x)K")
