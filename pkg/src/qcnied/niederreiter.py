"""Syndrome-based public-key encryption over block-circulant parity checks.

The private key is (A0, H, B0): an invertible binary scrambler, a
structured parity check H = [I | C], and a column permutation. The public
key is the dense H' = A0 H B0. A plaintext is a binary vector of weight
at most e; its ciphertext is the syndrome H' x^T.

Decryption strips the scrambler (y -> A0^-1 y = H B0 x^T), looks the
syndrome up in a table built from H, and undoes the permutation. The
error capacity e is the largest t for which the syndrome map is injective
on all binary vectors of weight <= t, found by direct enumeration.

Because plaintexts are binary, every syndrome is just an XOR of parity
check columns; no field multiplications are needed anywhere in the
encrypt/decrypt path.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .circulant import ParityCheck, Perm
from .errors import DecodeFailure, SizeMismatch, TooLarge, WeightTooHigh

ENUM_BUDGET = 1 << 24


def gf2_rank(m: np.ndarray) -> int:
    """Rank over F2, by elimination on a copy."""
    a = (np.array(m, dtype=np.uint8) & 1).copy()
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i, c]), None)
        if pivot is None:
            continue
        a[[r, pivot]] = a[[pivot, r]]
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        r += 1
        if r == rows:
            break
    return r


def gf2_inv(m: np.ndarray) -> np.ndarray:
    """Inverse of a square binary matrix over F2."""
    a = (np.array(m, dtype=np.uint8) & 1).copy()
    k = a.shape[0]
    if a.shape != (k, k):
        raise SizeMismatch("not square")
    aug = np.hstack([a, np.eye(k, dtype=np.uint8)])
    r = 0
    for c in range(k):
        pivot = next((i for i in range(r, k) if aug[i, c]), None)
        if pivot is None:
            raise SizeMismatch("matrix is singular over F2")
        aug[[r, pivot]] = aug[[pivot, r]]
        for i in range(k):
            if i != r and aug[i, c]:
                aug[i] ^= aug[r]
        r += 1
    return aug[:, k:]


def _pack_syndrome(v: np.ndarray, eta: int) -> int:
    out = 0
    for i, a in enumerate(v.tolist()):
        out |= a << (i * eta)
    return out


def _packed_columns(dense: np.ndarray, eta: int) -> list[int]:
    return [_pack_syndrome(dense[:, j], eta) for j in range(dense.shape[1])]


@dataclass(frozen=True)
class ErrorCapacity:
    """Largest injective weight e plus the syndrome lookup table.

    table maps a packed syndrome (eta-bit lanes, low row first) to the
    support tuple of its unique preimage of weight <= e.
    """

    e: int
    table: dict[int, tuple[int, ...]]
    n: int
    k: int
    eta: int


def error_capacity(h: ParityCheck, budget: int = ENUM_BUDGET) -> ErrorCapacity:
    """Find e and the decoding table by weight-by-weight enumeration.

    Each weight level is committed only if it collides with nothing seen
    so far; the first collision fixes e at the previous level. Raises
    TooLarge once the cumulative number of enumerated vectors would pass
    the budget.
    """
    dense = h.expand()
    eta = h.ctx.eta
    n = h.n
    cols = _packed_columns(dense, eta)
    table: dict[int, tuple[int, ...]] = {0: ()}
    enumerated = 1
    e = 0
    for t in range(1, n + 1):
        enumerated += comb(n, t)
        if enumerated > budget:
            raise TooLarge(
                f"syndrome enumeration through weight {t} needs {enumerated} vectors"
            )
        level: dict[int, tuple[int, ...]] = {}
        collision = False
        for support in combinations(range(n), t):
            s = 0
            for j in support:
                s ^= cols[j]
            if s in table or s in level:
                collision = True
                break
            level[s] = support
        if collision:
            break
        table.update(level)
        e = t
    return ErrorCapacity(e=e, table=table, n=n, k=h.k, eta=eta)


@dataclass(frozen=True)
class PrivateKey:
    a0: np.ndarray
    h: ParityCheck
    b0: Perm

    @property
    def params(self) -> tuple[int, int, int, int]:
        c = self.h.c
        return (c.p, c.m1, c.m2, c.ctx.eta)


@dataclass(frozen=True)
class PublicKey:
    hprime: np.ndarray
    p: int
    m1: int
    m2: int
    eta: int
    e: int
    # None means the default modulus for eta; carried so key files
    # round-trip even when the source matrix used another modulus
    modulus: int | None = None

    @property
    def k(self) -> int:
        return self.m1 * self.p

    @property
    def n(self) -> int:
        return self.m2 * self.p


def _xor_rows_select(rows: np.ndarray, mask: np.ndarray) -> np.ndarray:
    picked = rows[mask.astype(bool)]
    if picked.shape[0] == 0:
        return np.zeros(rows.shape[1], dtype=rows.dtype)
    return np.bitwise_xor.reduce(picked, axis=0)


def keygen(
    h: ParityCheck,
    seed: int,
    cap: ErrorCapacity | None = None,
    debug_identity: bool = False,
) -> tuple[PrivateKey, PublicKey]:
    """Draw (A0, B0) from a seeded stream and publish H' = A0 H B0.

    A0 is rejection-sampled until invertible over F2; B0 is a
    Fisher-Yates shuffle from the same stream. debug_identity forces
    A0 = I, B0 = id so that H' equals the expanded H (test hook).
    """
    rng = random.Random(seed)
    k, n = h.k, h.n
    if debug_identity:
        a0 = np.eye(k, dtype=np.uint8)
        b0 = Perm.identity(n)
    else:
        while True:
            a0 = np.array(
                [[(bits >> j) & 1 for j in range(k)] for bits in (rng.getrandbits(k) for _ in range(k))],
                dtype=np.uint8,
            )
            if gf2_rank(a0) == k:
                break
        images = list(range(n))
        rng.shuffle(images)
        b0 = Perm(images)
    if cap is None:
        cap = error_capacity(h)
    dense = h.expand()
    scrambled = np.vstack([_xor_rows_select(dense, a0[i]) for i in range(k)])
    hprime = scrambled[:, [b0(j) for j in range(n)]]
    c = h.c
    priv = PrivateKey(a0=a0, h=h, b0=b0)
    pub = PublicKey(
        hprime=hprime, p=c.p, m1=c.m1, m2=c.m2, eta=c.ctx.eta, e=cap.e,
        modulus=c.ctx.modulus,
    )
    # key relation sanity: undoing A0 and B0 must restore the structured matrix
    a0inv = gf2_inv(a0)
    unscrambled = np.vstack([_xor_rows_select(hprime, a0inv[i]) for i in range(k)])
    if not np.array_equal(unscrambled[:, b0.inv().images], dense):
        raise AssertionError("key relation A0^-1 H' B0^-1 == H failed")
    return priv, pub


def encrypt(pub: PublicKey, x) -> tuple[int, ...]:
    """Ciphertext y = H' x^T for a binary plaintext of weight <= e."""
    x = np.asarray(list(x), dtype=np.int64)
    if x.shape != (pub.n,):
        raise SizeMismatch(f"plaintext length {x.shape} != n = {pub.n}")
    if any(b not in (0, 1) for b in x.tolist()):
        raise SizeMismatch("plaintext must be binary")
    weight = int(x.sum())
    if weight > pub.e:
        raise WeightTooHigh(f"weight {weight} exceeds capacity e = {pub.e}")
    support = np.flatnonzero(x)
    if support.size == 0:
        return (0,) * pub.k
    y = np.bitwise_xor.reduce(pub.hprime[:, support], axis=1)
    return tuple(int(a) for a in y)


def decrypt(priv: PrivateKey, cap: ErrorCapacity, y) -> tuple[int, ...]:
    """Invert the scrambler, decode the syndrome, undo the permutation."""
    k, n = priv.h.k, priv.h.n
    y = np.asarray(list(y), dtype=np.int64)
    if y.shape != (k,):
        raise SizeMismatch(f"ciphertext length {y.shape} != k = {k}")
    a0inv = gf2_inv(priv.a0)
    s = np.array([int(np.bitwise_xor.reduce(y[a0inv[i].astype(bool)])) if a0inv[i].any() else 0 for i in range(k)])
    packed = _pack_syndrome(s, priv.h.ctx.eta)
    support_z = cap.table.get(packed)
    if support_z is None:
        raise DecodeFailure("syndrome not in the weight <= e table")
    z = set(support_z)
    return tuple(1 if priv.b0(j) in z else 0 for j in range(n))
