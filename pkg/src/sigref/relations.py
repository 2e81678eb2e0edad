"""Equivalence relations as boolean matrices; composition and commutativity.

Composition follows the convention ``(x, z) in compose(r, s)`` iff there is a
``y`` with ``(x, y) in s`` and ``(y, z) in r`` -- apply ``s`` first, then
``r``.  Getting this order wrong flips the witness of the bundled
non-commuting example, so it is pinned by tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GroundMismatchError
from .partitions import GroundSet, Partition, canonicalize

__all__ = [
    "BinaryRelation",
    "EquivRelation",
    "CommuteVerdict",
    "from_partition",
    "compose",
    "is_equivalence",
    "commute",
    "composition_is_equivalence",
    "induced_partition",
]


def _frozen(mat: np.ndarray) -> np.ndarray:
    mat.setflags(write=False)
    return mat


@dataclass(frozen=True, eq=False)
class BinaryRelation:
    """An arbitrary relation on the ground set as an n-by-n boolean matrix."""

    ground: GroundSet
    rel: np.ndarray

    def __post_init__(self):
        n = self.ground.n
        if self.rel.shape != (n, n) or self.rel.dtype != bool:
            raise ValueError("relation matrix must be an n-by-n boolean array")

    def __eq__(self, other):
        return (
            isinstance(other, BinaryRelation)
            and self.ground == other.ground
            and np.array_equal(self.rel, other.rel)
        )

    def pairs(self) -> list[tuple[int, int]]:
        xs, zs = np.nonzero(self.rel)
        return [(int(x), int(z)) for x, z in zip(xs, zs)]


@dataclass(frozen=True, eq=False)
class EquivRelation(BinaryRelation):
    """A relation checked to be reflexive, symmetric and transitive."""

    def __post_init__(self):
        super().__post_init__()
        if not _is_equivalence_matrix(self.rel):
            raise ValueError("matrix is not an equivalence relation")


def _is_equivalence_matrix(rel: np.ndarray) -> bool:
    if not rel.diagonal().all():
        return False
    if not np.array_equal(rel, rel.T):
        return False
    return not ((rel @ rel) & ~rel).any()


def from_partition(p: Partition) -> EquivRelation:
    """The relation 'same atom of p'.  Round-trips via induced_partition."""
    ao = np.array(p.atom_of)
    return EquivRelation(p.ground, _frozen(ao[:, None] == ao[None, :]))


def _check_same_ground(r: BinaryRelation, s: BinaryRelation) -> None:
    if r.ground != s.ground:
        raise GroundMismatchError("relations live on different ground sets")


def compose(r: BinaryRelation, s: BinaryRelation) -> BinaryRelation:
    """Relational composition: apply ``s`` first, then ``r``.

    The result need not be an equivalence relation, so it comes back as a
    plain :class:`BinaryRelation`.
    """
    _check_same_ground(r, s)
    return BinaryRelation(r.ground, _frozen(s.rel @ r.rel))


def is_equivalence(r: BinaryRelation) -> bool:
    return _is_equivalence_matrix(r.rel)


def induced_partition(r: BinaryRelation) -> Partition:
    """The partition whose atoms are the classes of an equivalence relation."""
    if not _is_equivalence_matrix(r.rel):
        raise ValueError("relation is not an equivalence; no induced partition")
    n = r.ground.n
    seen = [False] * n
    blocks = []
    for x in range(n):
        if seen[x]:
            continue
        cls = [z for z in range(n) if r.rel[x][z]]
        for z in cls:
            seen[z] = True
        blocks.append(cls)
    return canonicalize(blocks, r.ground)


@dataclass(frozen=True)
class CommuteVerdict:
    """Outcome of the commutativity test.

    For a non-commuting pair, ``witness`` is the lexicographically smallest
    (x, z) contained in exactly one of the two compositions (0-based).
    """

    commuting: bool
    witness: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.commuting


def commute(a: Partition, b: Partition) -> CommuteVerdict:
    """Whether the atom relations of ``a`` and ``b`` commute under composition."""
    ra, rb = from_partition(a), from_partition(b)
    ab = compose(ra, rb).rel
    ba = compose(rb, ra).rel
    diff = ab ^ ba
    if not diff.any():
        return CommuteVerdict(True)
    xs, zs = np.nonzero(diff)  # row-major, so the first hit is lex-smallest
    return CommuteVerdict(False, (int(xs[0]), int(zs[0])))


def composition_is_equivalence(a: Partition, b: Partition) -> bool:
    """Whether composing the two atom relations yields an equivalence again."""
    return is_equivalence(compose(from_partition(a), from_partition(b)))
