"""Set partitions in canonical form (blocks sorted by their least element)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import InvalidPartition
from .poset import bits, mask_of


@dataclass(frozen=True)
class Partition:
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for b in self.blocks:
            if not b:
                raise InvalidPartition("empty block")
            if seen.intersection(b):
                raise InvalidPartition("blocks overlap")
            seen.update(b)
        if seen != set(range(len(seen))):
            raise InvalidPartition("blocks do not cover 0..n-1")
        canon = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        if canon != self.blocks:
            object.__setattr__(self, "blocks", canon)

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> Partition:
        bl = tuple(tuple(b) for b in blocks)
        got = sum(len(b) for b in bl)
        if got != n or set().union(*map(set, bl)) != set(range(n)):
            raise InvalidPartition(f"blocks do not partition 0..{n - 1}")
        return cls(bl)

    @classmethod
    def from_labels(cls, labels: Sequence[object]) -> Partition:
        """Kernel of the map ``i -> labels[i]``."""
        groups: dict[object, list[int]] = {}
        for i, lab in enumerate(labels):
            groups.setdefault(lab, []).append(i)
        return cls(tuple(tuple(g) for g in groups.values()))

    @classmethod
    def identity(cls, n: int) -> Partition:
        return cls(tuple((i,) for i in range(n)))

    @classmethod
    def total(cls, n: int) -> Partition:
        return cls((tuple(range(n)),) if n else ())

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    @cached_property
    def class_of(self) -> tuple[int, ...]:
        out = [0] * self.n
        for k, b in enumerate(self.blocks):
            for x in b:
                out[x] = k
        return tuple(out)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(mask_of(b) for b in self.blocks)

    def block_mask_of(self, x: int) -> int:
        return self.masks[self.class_of[x]]

    def same(self, x: int, y: int) -> bool:
        return self.class_of[x] == self.class_of[y]

    def blocks_hit(self, mask: int) -> int:
        """Mask over block indices of the blocks meeting ``mask``."""
        out = 0
        cls = self.class_of
        for x in bits(mask):
            out |= 1 << cls[x]
        return out

    def union_of_blocks(self, block_mask: int) -> int:
        out = 0
        for b in bits(block_mask):
            out |= self.masks[b]
        return out

    def is_identity(self) -> bool:
        return len(self.blocks) == self.n

    def meet(self, other: Partition) -> Partition:
        return Partition.from_labels(list(zip(self.class_of, other.class_of)))

    def refines(self, other: Partition) -> bool:
        oc = other.class_of
        return all(len({oc[x] for x in b}) == 1 for b in self.blocks)

    def pairs(self) -> list[tuple[int, int]]:
        """Generating pairs: each element with the least element of its block."""
        return [(b[0], x) for b in self.blocks for x in b[1:]]

    def restrict(self, elements: Sequence[int]) -> Partition:
        cls = self.class_of
        return Partition.from_labels([cls[e] for e in elements])

    def __str__(self) -> str:
        return "|".join(",".join(map(str, b)) for b in self.blocks)


def enumerate_partitions(n: int) -> Iterator[Partition]:
    """All set partitions of ``{0..n-1}`` via restricted growth strings."""
    if n == 0:
        yield Partition(())
        return
    rgs = [0] * n
    maxes = [0] * n

    def rec(i: int) -> Iterator[Partition]:
        if i == n:
            yield Partition.from_labels(rgs)
            return
        for v in range(maxes[i - 1] + 2):
            rgs[i] = v
            maxes[i] = max(maxes[i - 1], v)
            yield from rec(i + 1)

    yield from rec(1)
