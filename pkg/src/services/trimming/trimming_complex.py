"""Iterated trimming complexes.

Given a minimal resolution F of R/I and positions sigma of generators of I,
F_1 splits as F_1' plus the summands R e_0^i. Each trimmed generator phi_i is
replaced by phi_i * a_i, and the resolution of R/J with

    J = K' + a_1 phi_1 + ... + a_t phi_t

is the mapping cone of X -> Y where X_0 = F_1', X_k = F_{k+1} and
Y_0 = R, Y_k = sum of the resolutions G^i_k of R/a_i shifted by deg phi_i.
Positions in sigma are 1-based, matching the listed minimal generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.services.complexes.chain_complex import ChainComplex, ComplexMorphism, Element, GradedFreeModule
from src.services.complexes.koszul import koszul_complex
from src.services.complexes.matrix import PolyMatrix
from src.services.complexes.operations import mapping_cone, minimalize
from src.services.complexes.strands import StrandComplex
from src.services.dg.lifting import lift_through
from src.services.errors import EngineInvariantError, LiftError, PreconditionError
from src.services.groebner.ideal import Ideal
from src.services.logging import get_logger, log_event
from src.services.resolutions.betti import betti_table
from src.services.resolutions.free_resolution import minimal_free_resolution, require_resolution
from src.services.ring.linalg import matmul_mod, rank_mod

logger = get_logger(__name__)


@dataclass
class TrimmingData:
    resolution: ChainComplex
    sigma: List[int]
    F1_prime: GradedFreeModule
    d2_prime: PolyMatrix
    d0: Dict[int, PolyMatrix] = field(default_factory=dict)
    a_ideals: Dict[int, Ideal] = field(default_factory=dict)
    G: Dict[int, ChainComplex] = field(default_factory=dict)
    # q_maps[i][k] : F_{k+1} -> G^i_k
    q_maps: Dict[int, Dict[int, PolyMatrix]] = field(default_factory=dict)
    trimmed_ideal: Optional[Ideal] = None
    morphism: Optional[ComplexMorphism] = None
    cone: Optional[ChainComplex] = None

    @property
    def generators(self):
        return [self.resolution.differential(1)[0, col] for col in range(self.resolution.rank(1))]

    def stacked_q(self, k: int) -> PolyMatrix:
        """Q_k : F_{k+1} -> sum_i G^i_k."""
        ring = self.resolution.ring
        blocks = [[self.q_maps[i][k]] for i in self.sigma]
        row_sizes = [self.G[i].rank(k) for i in self.sigma]
        return PolyMatrix.block(ring, blocks, row_sizes, [self.resolution.rank(k + 1)])


def entry_ideal(matrix: PolyMatrix, row: int) -> Ideal:
    return Ideal(matrix.ring, list(matrix.row_entries(row).values()))


def _normalize_sigma(sigma: Sequence[int], mu: int) -> List[int]:
    positions = sorted(set(sigma))
    if not positions:
        raise PreconditionError("trimming needs a nonempty index set")
    bad = [i for i in positions if i < 1 or i > mu]
    if bad:
        raise PreconditionError(f"indices {bad} are outside 1..{mu}")
    return positions


def _first_q(data: TrimmingData, i: int) -> PolyMatrix:
    """Columns are cofactors of row i of d_2 against the generators of a_i."""
    ring = data.resolution.ring
    a_ideal = data.a_ideals[i]
    row = data.d0[i]
    columns: List[Element] = []
    for col in range(row.ncols):
        entry = row[0, col]
        if entry.is_zero():
            columns.append([ring.zero() for _ in range(a_ideal.mu)])
            continue
        if not a_ideal.contains(entry):
            raise PreconditionError(f"entry {entry} of row {i} of d_2 is not in {a_ideal!r}")
        columns.append(a_ideal.cofactors(entry))
    return PolyMatrix.from_columns(ring, a_ideal.mu, columns)


def _higher_q(data: TrimmingData, i: int, k: int) -> PolyMatrix:
    """q_k^i with m_k q_k = q_{k-1} d_{k+1}, column by column."""
    F = data.resolution
    G = data.G[i]
    previous = data.q_maps[i][k - 1]
    columns: List[Element] = []
    for b in range(F.rank(k + 1)):
        target = previous.apply(F.apply(k + 1, F.basis_element(k + 1, b)))
        try:
            columns.append(lift_through(G, target, k))
        except LiftError as exc:
            raise EngineInvariantError(f"q_{k} for summand {i} does not lift through {G!r}") from exc
    return PolyMatrix.from_columns(F.ring, G.rank(k), columns)


def _target_complex(data: TrimmingData, length: int) -> ChainComplex:
    ring = data.resolution.ring
    generators = data.generators
    shifts = {i: generators[i - 1].degree for i in data.sigma}
    modules = [GradedFreeModule((0,))]
    for k in range(1, length + 1):
        module = GradedFreeModule()
        for i in data.sigma:
            module = module + data.G[i].module(k).shifted(shifts[i])
        modules.append(module)
    first_entries = []
    for i in data.sigma:
        d1 = data.G[i].differential(1)
        first_entries.extend(-(generators[i - 1] * d1[0, col]) for col in range(d1.ncols))
    differentials = {1: PolyMatrix.from_rows(ring, [first_entries], len(first_entries))}
    for k in range(2, length + 1):
        sizes_out = [data.G[i].rank(k - 1) for i in data.sigma]
        sizes_in = [data.G[i].rank(k) for i in data.sigma]
        blocks = [[data.G[i].differential(k) if i == j else None for j in data.sigma] for i in data.sigma]
        differentials[k] = PolyMatrix.block(ring, blocks, sizes_out, sizes_in)
    return ChainComplex(ring, modules, differentials, name="Y")


def _source_complex(data: TrimmingData) -> ChainComplex:
    F = data.resolution
    modules = [data.F1_prime] + [F.module(k + 1) for k in range(1, F.length)]
    differentials = {1: data.d2_prime}
    for k in range(2, F.length):
        differentials[k] = F.differential(k + 1)
    return ChainComplex(F.ring, modules, differentials, name="X")


def build_trimming_complex(
    ideal: Ideal,
    sigma: Sequence[int],
    a_ideals: Optional[Sequence[Ideal]] = None,
    resolution: Optional[ChainComplex] = None,
    minimal: bool = True,
    bound: Optional[int] = None,
) -> Tuple[TrimmingData, ChainComplex]:
    """Trim the generators at ``sigma``; returns (TrimmingData, resolution of R/J).

    ``a_ideals`` aligns with the sorted positions of ``sigma``; the default for each
    position is the ideal of entries of its row of d_2.
    The result is checked to resolve R/J, with positive strand homology
    vanishing through ``bound``.
    """
    ring = ideal.ring
    F = resolution if resolution is not None else minimal_free_resolution(ideal)
    positions = _normalize_sigma(sigma, F.rank(1))
    if a_ideals is not None and len(a_ideals) != len(positions):
        raise PreconditionError(f"{len(a_ideals)} ideals given for {len(positions)} trimmed generators")
    d2 = F.differential(2)
    kept = [j for j in range(F.rank(1)) if j + 1 not in positions]
    data = TrimmingData(
        resolution=F,
        sigma=positions,
        F1_prime=GradedFreeModule(tuple(F.module(1).degrees[j] for j in kept)),
        d2_prime=d2.submatrix(kept, list(range(d2.ncols))),
    )
    for slot, i in enumerate(positions):
        data.d0[i] = d2.submatrix([i - 1], list(range(d2.ncols)))
        data.a_ideals[i] = a_ideals[slot] if a_ideals is not None else entry_ideal(d2, i - 1)
        if not data.a_ideals[i].is_proper():
            raise PreconditionError(f"trimming ideal for generator {i} is the unit ideal")
        data.G[i] = minimal_free_resolution(data.a_ideals[i], name=f"G{i}")
        data.q_maps[i] = {1: _first_q(data, i)}

    length = max(F.length - 1, 0)
    for i in positions:
        for k in range(2, length + 1):
            data.q_maps[i][k] = _higher_q(data, i, k)

    generators = data.generators
    trimmed = [generators[j] for j in kept]
    for i in positions:
        trimmed.extend(generators[i - 1] * a for a in data.a_ideals[i].minimal_generators())
    data.trimmed_ideal = Ideal(ring, trimmed, name="J")

    source = _source_complex(data)
    target = _target_complex(data, max(length, max(data.G[i].length for i in positions)))
    maps: Dict[int, PolyMatrix] = {0: PolyMatrix.from_rows(ring, [[generators[j] for j in kept]], len(kept))}
    for k in range(1, length + 1):
        maps[k] = data.stacked_q(k)
    data.morphism = ComplexMorphism(source, target, maps)
    data.cone = mapping_cone(data.morphism, name="T")
    result = minimalize(data.cone, name="T") if minimal else data.cone
    require_resolution(result, data.trimmed_ideal, bound, label="trimming cone over R/J")
    log_event(logger, "trimming_complex", sigma=positions, cone=data.cone.ranks(), ranks=result.ranks())
    return data, result


def tm_sigma(ideal: Ideal, sigma: Sequence[int]) -> Ideal:
    """(phi_i | i not in sigma) + m (phi_j | j in sigma)."""
    generators = ideal.minimal_generators()
    positions = _normalize_sigma(sigma, len(generators))
    ring = ideal.ring
    result = [g for index, g in enumerate(generators, start=1) if index not in positions]
    for index in positions:
        result.extend(generators[index - 1] * x for x in ring.gens())
    return Ideal(ring, result, name="tm")


def build_tm_complex(
    ideal: Ideal, sigma: Sequence[int], bound: Optional[int] = None
) -> Tuple[TrimmingData, ChainComplex]:
    """Trimming with a_i = m for every position in sigma."""
    m = Ideal.maximal(ideal.ring)
    positions = sorted(set(sigma))
    return build_trimming_complex(ideal, positions, [m] * len(positions), bound=bound)


def trimming_summand_classes(data: TrimmingData) -> Dict[int, int]:
    """Rank, per homological degree, of the classes [phi_i z] for z running over
    Koszul homology bases of R/a_i, inside the Koszul homology of R/J."""
    ring = data.resolution.ring
    K = koszul_complex(ring)
    target = StrandComplex(K, data.trimmed_ideal)
    generators = data.generators
    collected: Dict[tuple, List[np.ndarray]] = {}
    for i in data.sigma:
        phi = generators[i - 1]
        source = StrandComplex(K, data.a_ideals[i])
        table = betti_table(data.G[i])
        for (j, degree), rank in sorted(table.entries.items()):
            if j < 1 or not rank:
                continue
            strand = source.homology(j, degree)
            for cycle in strand.cycle_basis:
                image = [phi * value for value in cycle]
                shifted = degree + phi.degree
                basis = target.basis(j, shifted)
                vector = basis.vectorize(image)
                if np.any(matmul_mod(target.matrix(j, shifted), vector, ring.p)):
                    raise EngineInvariantError(f"phi_{i} * z is not a cycle in degree ({j}, {shifted})")
                coords = target.homology(j, shifted).coordinates(vector)
                if coords is None:
                    raise EngineInvariantError(f"phi_{i} * z has no homology coordinates in degree ({j}, {shifted})")
                collected.setdefault((j, shifted), []).append(coords)
    ranks: Dict[int, int] = {}
    for (j, _), rows in collected.items():
        ranks[j] = ranks.get(j, 0) + rank_mod(np.array(rows, dtype=np.int64), ring.p)
    log_event(logger, "trimming_summand_classes", ranks=ranks)
    return ranks
