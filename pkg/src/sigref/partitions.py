"""Canonical partitions of a finite ground set and their refinement lattice.

A finite sigma-algebra is determined by its atoms, so the whole toolkit works
with partitions: ``atoms`` is the tuple of blocks, ordered by their minimum
element, and ``atom_of`` maps each element to the index of its block.  With
that ordering ``atom_of`` coincides with the restricted growth string of the
partition, which makes enumeration and canonical comparison cheap.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (
    CoverageError,
    GroundMismatchError,
    OracleBoundExceeded,
    OverlapError,
)

#: Largest ground set for which exhaustive enumeration is allowed by default.
DEFAULT_ORACLE_BOUND = 8


@dataclass(frozen=True)
class GroundSet:
    """The base set, fixed to {0, .., n-1}."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"ground set needs a positive element count, got {self.n!r}")

    def elements(self) -> range:
        return range(self.n)


@dataclass(frozen=True)
class Partition:
    """A canonical partition: blocks sorted by minimum element.

    Construct through :func:`canonicalize` (or the helpers below); the
    constructor only re-checks canonical form.
    """

    ground: GroundSet
    atoms: tuple[tuple[int, ...], ...]
    atom_of: tuple[int, ...]

    def __post_init__(self):
        n = self.ground.n
        if len(self.atom_of) != n:
            raise ValueError("atom_of must assign every element")
        mins = [atom[0] for atom in self.atoms]
        if mins != sorted(mins):
            raise ValueError("atoms must be ordered by minimum element")
        for idx, atom in enumerate(self.atoms):
            if not atom or list(atom) != sorted(atom):
                raise ValueError("each atom must be nonempty and sorted")
            for x in atom:
                if self.atom_of[x] != idx:
                    raise ValueError("atom_of inconsistent with atoms")

    @property
    def n(self) -> int:
        return self.ground.n

    @property
    def num_atoms(self) -> int:
        return len(self.atoms)

    def is_trivial(self) -> bool:
        return len(self.atoms) == 1

    def is_discrete(self) -> bool:
        return len(self.atoms) == self.n

    def atom_containing(self, x: int) -> tuple[int, ...]:
        return self.atoms[self.atom_of[x]]

    def __str__(self):
        # 1-based display, matching the fixture convention
        return "|".join("{" + ",".join(str(x + 1) for x in atom) + "}" for atom in self.atoms)

    def sort_key(self) -> tuple:
        return self.atoms


def canonicalize(blocks: Iterable[Iterable[int]], ground: GroundSet) -> Partition:
    """Build the canonical partition from arbitrary blocks.

    Rejects overlapping blocks (:class:`OverlapError`) and incomplete covers
    (:class:`CoverageError`).  Idempotent and insensitive to the order of
    blocks or of elements inside a block.
    """
    n = ground.n
    owner = [-1] * n
    cleaned: list[tuple[int, ...]] = []
    for block in blocks:
        atom = tuple(sorted(block))
        if not atom:
            raise ValueError("blocks must be nonempty")
        for x in atom:
            if not isinstance(x, int) or not 0 <= x < n:
                raise ValueError(f"element {x!r} outside ground set of size {n}")
            if owner[x] != -1:
                raise OverlapError(x)
            owner[x] = len(cleaned)
        cleaned.append(atom)
    for x in range(n):
        if owner[x] == -1:
            raise CoverageError(x)
    cleaned.sort(key=lambda atom: atom[0])
    atom_of = [0] * n
    for idx, atom in enumerate(cleaned):
        for x in atom:
            atom_of[x] = idx
    return Partition(ground, tuple(cleaned), tuple(atom_of))


def trivial_partition(ground: GroundSet) -> Partition:
    return canonicalize([range(ground.n)], ground)


def discrete_partition(ground: GroundSet) -> Partition:
    return canonicalize([[x] for x in range(ground.n)], ground)


def _check_same_ground(a: Partition, b: Partition) -> None:
    if a.ground != b.ground:
        raise GroundMismatchError(f"ground sets differ: {a.ground} vs {b.ground}")


@dataclass(frozen=True)
class RefinementWitness:
    """Evidence that ``fine`` refines ``coarse``: the containing-block map."""

    coarse: Partition
    fine: Partition
    block_map: tuple[int, ...]


def refinement_witness(coarse: Partition, fine: Partition) -> RefinementWitness | None:
    """Return the block map if every atom of ``fine`` sits inside an atom of
    ``coarse``, else None.  Reflexive: a partition refines itself."""
    _check_same_ground(coarse, fine)
    block_map = []
    for atom in fine.atoms:
        target = coarse.atom_of[atom[0]]
        if any(coarse.atom_of[x] != target for x in atom[1:]):
            return None
        block_map.append(target)
    return RefinementWitness(coarse, fine, tuple(block_map))


def is_refinement(coarse: Partition, fine: Partition) -> bool:
    return refinement_witness(coarse, fine) is not None


def join(a: Partition, b: Partition) -> Partition:
    """Coarsest common refinement; atoms are the nonempty pairwise
    intersections of atoms of ``a`` and ``b``."""
    _check_same_ground(a, b)
    blocks: dict[tuple[int, int], list[int]] = defaultdict(list)
    for x in range(a.n):
        blocks[(a.atom_of[x], b.atom_of[x])].append(x)
    return canonicalize(blocks.values(), a.ground)


def meet(a: Partition, b: Partition) -> Partition:
    """Finest common coarsening, via union-find closure of both relations."""
    _check_same_ground(a, b)
    parent = list(range(a.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in (a, b):
        for atom in p.atoms:
            root = find(atom[0])
            for x in atom[1:]:
                parent[find(x)] = root
    blocks: dict[int, list[int]] = defaultdict(list)
    for x in range(a.n):
        blocks[find(x)].append(x)
    return canonicalize(blocks.values(), a.ground)


def atom_intersections(
    a: Partition, b: Partition
) -> list[tuple[int, int, tuple[int, ...]]]:
    """All pairwise atom intersections, empty ones included, in a-major order.

    This is the union-free direct-product construction used to cross-check
    :func:`join`: the nonempty entries are exactly the join's atoms.
    """
    _check_same_ground(a, b)
    out = []
    for i, ai in enumerate(a.atoms):
        sa = set(ai)
        for j, bj in enumerate(b.atoms):
            out.append((i, j, tuple(sorted(sa.intersection(bj)))))
    return out


def _rgs_strings(n: int) -> Iterator[tuple[int, ...]]:
    """All restricted growth strings of length n, lexicographically."""
    if n == 0:
        yield ()
        return
    a = [0] * n

    def rec(i: int, m: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(a)
            return
        for v in range(m + 2):
            a[i] = v
            yield from rec(i + 1, max(m, v))

    yield from rec(1, 0)


def _partition_from_labels(
    keys: Iterable[int], labels: tuple[int, ...], ground: GroundSet
) -> Partition:
    blocks: dict[int, list[int]] = defaultdict(list)
    for x, lab in zip(keys, labels):
        blocks[lab].append(x)
    return canonicalize(blocks.values(), ground)


def enumerate_partitions(
    ground: GroundSet, bound: int = DEFAULT_ORACLE_BOUND
) -> Iterator[Partition]:
    """Every partition of the ground set exactly once, in restricted growth
    string order.  The count equals the Bell number of n."""
    if ground.n > bound:
        raise OracleBoundExceeded(
            f"enumeration over n={ground.n} exceeds the bound {bound}"
        )
    for rgs in _rgs_strings(ground.n):
        yield Partition(ground, _group_by_rgs(rgs), rgs)


def _group_by_rgs(rgs: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    # labels appear in first-touch order, so blocks come out sorted by minimum
    blocks: dict[int, list[int]] = defaultdict(list)
    for x, lab in enumerate(rgs):
        blocks[lab].append(x)
    return tuple(tuple(blocks[lab]) for lab in sorted(blocks))


def coarsenings(p: Partition) -> Iterator[Partition]:
    """All partitions coarser than or equal to ``p``: every merge pattern of
    its atoms, including ``p`` itself and the trivial partition."""
    k = len(p.atoms)
    for rgs in _rgs_strings(k):
        blocks: dict[int, list[int]] = defaultdict(list)
        for atom_idx, lab in enumerate(rgs):
            blocks[lab].extend(p.atoms[atom_idx])
        yield canonicalize(blocks.values(), p.ground)


def subdivisions(atom: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Proper subdivisions of one atom: every set partition of its elements
    into at least two blocks, in restricted growth string order."""
    for rgs in _rgs_strings(len(atom)):
        if not rgs or max(rgs) == 0:
            continue
        blocks: dict[int, list[int]] = defaultdict(list)
        for pos, lab in enumerate(rgs):
            blocks[lab].append(atom[pos])
        yield tuple(tuple(blocks[lab]) for lab in sorted(blocks))


def refinements_of(p: Partition, strict: bool = False) -> Iterator[Partition]:
    """All partitions refining ``p`` (products of per-atom set partitions)."""
    per_atom: list[list[tuple[tuple[int, ...], ...]]] = []
    for atom in p.atoms:
        choices = [(atom,)]
        choices.extend(subdivisions(atom))
        per_atom.append(choices)
    for combo in itertools.product(*per_atom):
        q = canonicalize([blk for sub in combo for blk in sub], p.ground)
        if strict and q == p:
            continue
        yield q
