"""Exact rational probability measures on partition atoms.

All measure arithmetic uses :class:`fractions.Fraction`; floats are rejected
on input because degeneracy, invariance and extension checks are equality
tests.  Permutations and their generated groups live here too, together with
automorphism groups of partitions, pushforwards, group averaging and the
orbit description of the invariant-measure polytope.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import (
    InvalidGroup,
    NegativeWeightError,
    NotARefinementError,
    OracleBoundExceeded,
    ShapeError,
    WeightSumError,
)
from .partitions import (
    DEFAULT_ORACLE_BOUND,
    GroundSet,
    Partition,
    canonicalize,
    refinement_witness,
)

Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and 'num/den' strings; reject floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"exact rational required, got {type(value).__name__}: {value!r}")


def format_rational(value: Fraction) -> str:
    return str(value)


@dataclass(frozen=True)
class ProbMeasure:
    """A probability vector over the atoms of a base partition."""

    base: Partition
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.weights) != len(self.base.atoms):
            raise ShapeError(
                f"{len(self.weights)} weights for {len(self.base.atoms)} atoms"
            )
        for w in self.weights:
            if not isinstance(w, Fraction):
                raise TypeError("weights must be Fractions; use measure() to coerce")
            if w < 0:
                raise NegativeWeightError(f"negative weight {w}")
        if sum(self.weights) != 1:
            raise WeightSumError(f"weights sum to {sum(self.weights)}, not 1")

    def weight_of_atom(self, index: int) -> Fraction:
        return self.weights[index]

    def __str__(self):
        return "(" + ", ".join(format_rational(w) for w in self.weights) + ")"


def measure(base: Partition, weights: Iterable) -> ProbMeasure:
    return ProbMeasure(base, tuple(as_rational(w) for w in weights))


def uniform_measure(base: Partition) -> ProbMeasure:
    k = len(base.atoms)
    return ProbMeasure(base, (Fraction(1, k),) * k)


def restrict(mu: ProbMeasure, coarse: Partition) -> ProbMeasure:
    """Push a measure down to a coarsening by summing atom weights."""
    wit = refinement_witness(coarse, mu.base)
    if wit is None:
        raise NotARefinementError(f"{mu.base} does not refine {coarse}")
    out = [Fraction(0)] * len(coarse.atoms)
    for fine_idx, coarse_idx in enumerate(wit.block_map):
        out[coarse_idx] += mu.weights[fine_idx]
    return ProbMeasure(coarse, tuple(out))


def extend_with_weights(
    mu: ProbMeasure, fine: Partition, split_weights: Mapping[int, Sequence]
) -> ProbMeasure:
    """Extend a measure along a refinement using conditional weights.

    ``split_weights`` maps each subdivided coarse atom index to a vector of
    conditional weights, one per sub-block in canonical order; each vector
    must be nonnegative and sum to one.  The result restricts back to ``mu``
    exactly.
    """
    wit = refinement_witness(mu.base, fine)
    if wit is None:
        raise NotARefinementError(f"{fine} does not refine {mu.base}")
    parts_of: dict[int, list[int]] = {}
    for fidx, cidx in enumerate(wit.block_map):
        parts_of.setdefault(cidx, []).append(fidx)
    unknown = set(split_weights) - set(parts_of)
    if unknown:
        raise ShapeError(f"weights given for non-atoms {sorted(unknown)}")
    out: list[Fraction] = [Fraction(0)] * len(fine.atoms)
    for cidx, fidxs in parts_of.items():
        k = len(fidxs)
        given = split_weights.get(cidx)
        if k == 1:
            if given is not None:
                vec = [as_rational(v) for v in given]
                if vec != [Fraction(1)]:
                    raise ShapeError(f"atom {cidx} is not subdivided")
            out[fidxs[0]] = mu.weights[cidx]
            continue
        if given is None:
            raise ShapeError(f"atom {cidx} splits into {k} parts but has no weights")
        vec = [as_rational(v) for v in given]
        if len(vec) != k:
            raise ShapeError(f"atom {cidx} needs {k} weights, got {len(vec)}")
        if any(v < 0 for v in vec):
            raise NegativeWeightError(f"negative conditional weight for atom {cidx}")
        if sum(vec) != 1:
            raise WeightSumError(f"conditional weights for atom {cidx} sum to {sum(vec)}")
        for fidx, v in zip(fidxs, vec):
            out[fidx] = mu.weights[cidx] * v
    return ProbMeasure(fine, tuple(out))


def is_degenerate(mu: ProbMeasure) -> bool:
    """True iff some atom carries weight exactly one."""
    return any(w == 1 for w in mu.weights)


def is_nondegenerate(mu: ProbMeasure) -> bool:
    """True iff every atom weight lies strictly between zero and one.

    Not the complement of :func:`is_degenerate`: a measure with a zero-weight
    atom but no unit-weight atom is neither.
    """
    return all(0 < w < 1 for w in mu.weights)


# ---------------------------------------------------------------------------
# permutations and groups


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of the ground set, stored in one-line notation."""

    ground: GroundSet
    map: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.map) != list(range(self.ground.n)):
            raise ValueError(f"{self.map} is not a bijection of 0..{self.ground.n - 1}")

    def __call__(self, x: int) -> int:
        return self.map[x]

    def is_identity(self) -> bool:
        return all(self.map[x] == x for x in range(self.ground.n))

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self.compose(other))(x) = self(other(x))."""
        return Permutation(self.ground, tuple(self.map[other.map[x]] for x in range(self.ground.n)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.ground.n
        for x, y in enumerate(self.map):
            inv[y] = x
        return Permutation(self.ground, tuple(inv))

    def apply_to_partition(self, p: Partition) -> Partition:
        return canonicalize([[self.map[x] for x in atom] for atom in p.atoms], p.ground)

    @classmethod
    def identity(cls, ground: GroundSet) -> "Permutation":
        return cls(ground, tuple(range(ground.n)))

    def __str__(self):
        return "[" + " ".join(str(y + 1) for y in self.map) + "]"


@dataclass(frozen=True)
class PermGroup:
    """A permutation group with its elements materialized."""

    ground: GroundSet
    generators: tuple[Permutation, ...]
    elements: tuple[Permutation, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g: Permutation) -> bool:
        return g in set(self.elements)

    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    @classmethod
    def from_generators(cls, ground: GroundSet, generators: Iterable[Permutation]) -> "PermGroup":
        gens = tuple(generators)
        for g in gens:
            if g.ground != ground:
                raise ValueError("generator on a different ground set")
        elements = _closure(ground, gens)
        return cls(ground, gens, elements)

    @classmethod
    def trivial(cls, ground: GroundSet) -> "PermGroup":
        return cls(ground, (), (Permutation.identity(ground),))


def _closure(ground: GroundSet, gens: tuple[Permutation, ...]) -> tuple[Permutation, ...]:
    # finite ambient group, so closing under products also captures inverses
    ident = Permutation.identity(ground)
    seen = {ident.map: ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = g.compose(a)
                if c.map not in seen:
                    seen[c.map] = c
                    nxt.append(c)
        frontier = nxt
    return tuple(sorted(seen.values()))


def cyclic_group(g: Permutation) -> PermGroup:
    return PermGroup.from_generators(g.ground, (g,))


@lru_cache(maxsize=None)
def _automorphisms(p: Partition, bound: int) -> tuple[Permutation, ...]:
    n = p.n
    if n > bound:
        raise OracleBoundExceeded(f"automorphism search over n={n} exceeds bound {bound}")
    atom_index = {frozenset(atom): i for i, atom in enumerate(p.atoms)}
    out = []
    for perm in itertools.permutations(range(n)):
        ok = True
        for atom in p.atoms:
            if frozenset(perm[x] for x in atom) not in atom_index:
                ok = False
                break
        if ok:
            out.append(Permutation(p.ground, perm))
    return tuple(out)


def automorphism_group(p: Partition, bound: int = DEFAULT_ORACLE_BOUND) -> PermGroup:
    """All permutations mapping atoms of ``p`` onto atoms, by exhaustive search
    over the symmetric group, with a deterministic small generating set."""
    elements = _automorphisms(p, bound)
    gens: list[Permutation] = []
    covered = {Permutation.identity(p.ground).map}
    for e in elements:
        if e.map in covered:
            continue
        gens.append(e)
        covered = {g.map for g in _closure(p.ground, tuple(gens))}
        if len(covered) == len(elements):
            break
    return PermGroup(p.ground, tuple(gens), elements)


@lru_cache(maxsize=None)
def _atom_action_cached(perm_map: tuple[int, ...], p: Partition) -> tuple[int, ...] | None:
    atom_index = {frozenset(atom): i for i, atom in enumerate(p.atoms)}
    out = []
    for atom in p.atoms:
        img = frozenset(perm_map[x] for x in atom)
        idx = atom_index.get(img)
        if idx is None:
            return None
        out.append(idx)
    return tuple(out)


def atom_action(g: Permutation, p: Partition) -> tuple[int, ...] | None:
    """The induced permutation of atom indices, or None if ``g`` does not
    preserve the partition."""
    return _atom_action_cached(g.map, p)


def preserves_partition(g: Permutation, p: Partition) -> bool:
    return atom_action(g, p) is not None


def _require_preserving(group: PermGroup, p: Partition) -> None:
    for g in group.generators:
        if atom_action(g, p) is None:
            raise InvalidGroup(f"generator {g} does not preserve {p}")


def pushforward(g: Permutation, mu: ProbMeasure) -> ProbMeasure:
    """The image measure on the image partition: mass travels with the atoms."""
    target = g.apply_to_partition(mu.base)
    atom_index = {frozenset(atom): i for i, atom in enumerate(target.atoms)}
    out: list[Fraction] = [Fraction(0)] * len(target.atoms)
    for i, atom in enumerate(mu.base.atoms):
        out[atom_index[frozenset(g.map[x] for x in atom)]] = mu.weights[i]
    return ProbMeasure(target, tuple(out))


def is_invariant(mu: ProbMeasure, group: PermGroup) -> bool:
    """Whether the measure is unchanged by every group element.

    Checking the generators suffices: invariance is closed under composition
    and, in a finite group, under inversion.
    """
    _require_preserving(group, mu.base)
    for g in group.generators:
        act = atom_action(g, mu.base)
        for i, j in enumerate(act):
            if mu.weights[i] != mu.weights[j]:
                return False
    return True


def atom_orbits(p: Partition, group: PermGroup) -> tuple[tuple[int, ...], ...]:
    """Orbits of atom indices under the group, sorted by smallest member."""
    _require_preserving(group, p)
    k = len(p.atoms)
    parent = list(range(k))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in group.generators:
        act = atom_action(g, p)
        for i, j in enumerate(act):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[rj] = ri
    orbits: dict[int, list[int]] = {}
    for i in range(k):
        orbits.setdefault(find(i), []).append(i)
    return tuple(tuple(sorted(v)) for _, v in sorted((min(v), v) for v in orbits.values()))


def group_average(mu: ProbMeasure, group: PermGroup) -> ProbMeasure:
    """Average of the pushforwards over all group elements; always invariant."""
    p = mu.base
    _require_preserving(group, p)
    k = len(p.atoms)
    acc = [Fraction(0)] * k
    for g in group.elements:
        act = atom_action(g, p)
        for i in range(k):
            acc[act[i]] += mu.weights[i]
    size = len(group.elements)
    return ProbMeasure(p, tuple(a / size for a in acc))


@dataclass(frozen=True)
class InvariantPolytope:
    """The invariant measures on a partition under a group action.

    Invariant measures are exactly the weight vectors constant on atom
    orbits, so the set is a simplex with one vertex per orbit; the canonical
    representative is the group average of the uniform atom measure (which is
    the uniform atom measure itself).
    """

    base: Partition
    orbits: tuple[tuple[int, ...], ...]
    dimension: int
    representative: ProbMeasure
    vertices: tuple[ProbMeasure, ...]


def invariant_measures(p: Partition, group: PermGroup) -> InvariantPolytope:
    orbits = atom_orbits(p, group)
    k = len(p.atoms)
    vertices = []
    for orbit in orbits:
        w = [Fraction(0)] * k
        share = Fraction(1, len(orbit))
        for i in orbit:
            w[i] = share
        vertices.append(ProbMeasure(p, tuple(w)))
    representative = group_average(uniform_measure(p), group)
    return InvariantPolytope(p, orbits, len(orbits) - 1, representative, tuple(vertices))


def unique_invariant_if_transitive(p: Partition, group: PermGroup) -> ProbMeasure | None:
    """The uniform atom measure when the group is transitive on atoms (then it
    is the only invariant measure); None when the action is not transitive."""
    orbits = atom_orbits(p, group)
    if len(orbits) != 1:
        return None
    return uniform_measure(p)
