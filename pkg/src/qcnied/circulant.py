"""Circulant blocks, block-circulant matrices, and two-sided permutation actions.

A circulant block of size p over GF(2^eta) is determined by its first row
(c_0, ..., c_{p-1}); row i is that row cyclically shifted i places right,
so entry (i, j) is c_{(j-i) mod p}. A block-circulant matrix is an
m1 x (m2-m1) grid of such blocks sharing p and the field, and a parity
check is the k x n matrix [I | C] with k = m1*p, n = m2*p.

Permutations act on dense matrices two-sidedly: act(P, M, Q) has entry
(i, j) equal to M[P(i)][Q^-1(j)], which in matrix terms is P^-1 M Q^-1
(so the stabilizer condition act(P, M, Q) = M reads P M Q = M).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatch, OutOfRange, SizeMismatch
from .field import FieldCtx


class Perm:
    """Permutation of {0..n-1} stored as its image tuple.

    Composition follows function application: (a * b)(i) = a(b(i)), which
    matches the product of the corresponding permutation matrices.
    """

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if not images or sorted(images) != list(range(len(images))):
            raise OutOfRange(f"not a permutation: {images}")
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(range(n))

    @classmethod
    def shift(cls, n: int, k: int) -> "Perm":
        """Cyclic shift i -> i + k mod n."""
        return cls((i + k) % n for i in range(n))

    @classmethod
    def affine(cls, p: int, u: int, v: int) -> "Perm":
        """Affine map i -> u*i + v mod p (u must be invertible mod p)."""
        if u % p == 0:
            raise OutOfRange("affine scale must be nonzero mod p")
        return cls((u * i + v) % p for i in range(p))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Perm") -> "Perm":
        if self.n != other.n:
            raise SizeMismatch("composing permutations of different sizes")
        return Perm(self.images[other.images[i]] for i in range(self.n))

    def inv(self) -> "Perm":
        out = [0] * self.n
        for i, img in enumerate(self.images):
            out[img] = i
        return Perm(out)

    def is_identity(self) -> bool:
        return all(i == img for i, img in enumerate(self.images))

    def support(self) -> int:
        """Number of moved points."""
        return sum(1 for i, img in enumerate(self.images) if i != img)

    def cycle_type(self) -> tuple[int, ...]:
        """Cycle lengths, longest first, fixed points included."""
        seen = [False] * self.n
        lengths = []
        for i in range(self.n):
            if seen[i]:
                continue
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = self.images[j]
                length += 1
            lengths.append(length)
        return tuple(sorted(lengths, reverse=True))

    def dsum(self, other: "Perm") -> "Perm":
        """Block-diagonal direct sum acting on the first n then the rest."""
        return Perm(self.images + tuple(self.n + i for i in other.images))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __lt__(self, other: "Perm") -> bool:
        return self.images < other.images

    def __repr__(self) -> str:
        return f"Perm{self.images}"


@dataclass(frozen=True)
class CirculantBlock:
    """One p x p circulant block over GF(2^eta), held as its first row.

    p is not forced prime here; primality is a compliance condition and
    is reported by the condition checkers rather than enforced on the
    container.
    """

    ctx: FieldCtx
    first_row: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "first_row", tuple(self.first_row))
        for a in self.first_row:
            self.ctx.check(a)
        if not self.first_row:
            raise SizeMismatch("empty block")

    @property
    def p(self) -> int:
        return len(self.first_row)

    def expand(self) -> np.ndarray:
        """Dense p x p matrix with entry (i, j) = first_row[(j - i) mod p]."""
        p = self.p
        row = np.asarray(self.first_row, dtype=np.int64)
        idx = (np.arange(p)[None, :] - np.arange(p)[:, None]) % p
        return row[idx]

    def rotate(self, k: int) -> "CirculantBlock":
        """Multiply the defining polynomial by x^k (cyclic coefficient shift)."""
        p = self.p
        return CirculantBlock(self.ctx, tuple(self.first_row[(j - k) % p] for j in range(p)))

    def multiplicity(self, a: int) -> int:
        """How many first-row coefficients equal a."""
        self.ctx.check(a)
        return self.first_row.count(a)

    def multiset(self) -> tuple[int, ...]:
        return tuple(sorted(self.first_row))

    def multiplicity_classes(self) -> tuple[int, ...]:
        """Sorted multiplicities of the distinct coefficient values."""
        return tuple(sorted(self.first_row.count(v) for v in set(self.first_row)))


@dataclass(frozen=True)
class BlockCirculant:
    """m1 x (m2 - m1) grid of circulant blocks sharing p and the field."""

    ctx: FieldCtx
    p: int
    m1: int
    m2: int
    blocks: tuple[tuple[CirculantBlock, ...], ...]

    def __post_init__(self):
        if not (1 <= self.m1 < self.m2):
            raise SizeMismatch(f"need 1 <= m1 < m2, got m1={self.m1} m2={self.m2}")
        rows = tuple(tuple(r) for r in self.blocks)
        object.__setattr__(self, "blocks", rows)
        if len(rows) != self.m1 or any(len(r) != self.m2 - self.m1 for r in rows):
            raise SizeMismatch("block grid shape does not match m1, m2")
        for r in rows:
            for b in r:
                if b.p != self.p or b.ctx != self.ctx:
                    raise SizeMismatch("blocks disagree on p or field")

    @classmethod
    def from_rows(cls, ctx: FieldCtx, p: int, m1: int, m2: int, rows) -> "BlockCirculant":
        """Build from an iterable of first rows in row-major grid order."""
        rows = [tuple(r) for r in rows]
        mc = m2 - m1
        if len(rows) != m1 * mc:
            raise SizeMismatch(f"expected {m1 * mc} block rows, got {len(rows)}")
        grid = tuple(
            tuple(CirculantBlock(ctx, rows[i * mc + j]) for j in range(mc))
            for i in range(m1)
        )
        return cls(ctx, p, m1, m2, grid)

    def block(self, i: int, j: int) -> CirculantBlock:
        return self.blocks[i][j]

    @property
    def n_block_cols(self) -> int:
        return self.m2 - self.m1

    def expand(self) -> np.ndarray:
        """Dense (m1*p) x ((m2-m1)*p) matrix."""
        return np.vstack([np.hstack([b.expand() for b in row]) for row in self.blocks])

    def block_first_rows(self):
        """First rows in row-major grid order (serialization order)."""
        for row in self.blocks:
            for b in row:
                yield b.first_row


@dataclass(frozen=True)
class ParityCheck:
    """Parity check [I | C] for a block-circulant C; k = m1*p, n = m2*p."""

    c: BlockCirculant

    @property
    def ctx(self) -> FieldCtx:
        return self.c.ctx

    @property
    def k(self) -> int:
        return self.c.m1 * self.c.p

    @property
    def n(self) -> int:
        return self.c.m2 * self.c.p

    def expand(self) -> np.ndarray:
        return np.hstack([np.eye(self.k, dtype=np.int64), self.c.expand()])


def expand_pc(h: ParityCheck) -> np.ndarray:
    return h.expand()


def perm_equivalent(v, w) -> bool:
    """Whether some reordering of v equals w (multiset equality)."""
    v = list(v)
    w = list(w)
    if len(v) != len(w):
        raise LengthMismatch(f"lengths {len(v)} and {len(w)} differ")
    return sorted(v) == sorted(w)


def act(p_row: Perm, m: np.ndarray, q_col: Perm) -> np.ndarray:
    """Two-sided action: result[i][j] = m[p_row(i)][q_col^-1(j)].

    act(P, M, Q) = M exactly when P M Q = M as matrix products. The group
    law is act(p2, act(p1, m, q1), q2) = act(p1*p2, m, q2*q1); note the
    column side composes in reverse, as it must for a two-sided action.
    """
    m = np.asarray(m)
    if m.shape != (p_row.n, q_col.n):
        raise SizeMismatch(f"matrix {m.shape} vs perms ({p_row.n}, {q_col.n})")
    rows = np.asarray(p_row.images, dtype=np.intp)
    cols = np.asarray(q_col.inv().images, dtype=np.intp)
    return m[rows][:, cols]
