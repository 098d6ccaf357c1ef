"""Distinguishability bounds for the hidden-subgroup view of key recovery.

The ambient group is G = GL_k(F2) x S_n. A symmetry group H inside it
bounds how distinguishable the induced hidden-subgroup states are:

  s0 = |H| * sum over non-identity (s1, s2) in H of
       1 / sqrt(|class of s1 in S_k| * |class of s2 in S_n|)
  s1 = |H|^2 * sqrt(|H|^2 + |H|) / sqrt(|G|)
  dk = s0 + s1

dk is compared against (ln |G^2 x| F2|)^(-c) and the largest admissible
c is reported (capped at 64). Class sizes and group orders are exact
integers; logs are taken only at the final reduction, and sums in the
linear domain go through log-sum-exp, so nothing underflows for n into
the hundreds.

The worst-case envelope replaces an explicit H by the most pessimistic
statistics compatible with the structural guarantees: order p^2 and every
non-identity component sitting in the smallest conjugacy class that
still moves at least p - 1 points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial

from .errors import ConstantsRequired, InfeasibleSupport, StructureViolation


def cycle_types(n: int):
    """All partitions of n, parts descending."""

    def rec(rem, mx):
        if rem == 0:
            yield ()
            return
        for part in range(min(rem, mx), 0, -1):
            for rest in rec(rem - part, part):
                yield (part,) + rest

    yield from rec(n, n)


def class_size_sn(t) -> int:
    """Conjugacy class size in S_n of the cycle type t (n = sum of parts)."""
    t = tuple(t)
    n = sum(t)
    centralizer = 1
    for length in set(t):
        c = t.count(length)
        centralizer *= length**c * factorial(c)
    return factorial(n) // centralizer


def type_support(t) -> int:
    """Points moved by a permutation of this cycle type."""
    return sum(part for part in t if part > 1)


def log_factorial(n: int) -> float:
    return math.log(factorial(n)) if n >= 2 else 0.0


def gl2_order(k: int) -> int:
    """Order of GL_k(F2), exact."""
    out = 1
    for i in range(k):
        out *= (1 << k) - (1 << i)
    return out


def log_gl_order(k: int) -> float:
    """ln |GL_k(F2)|; exact product for k <= 64, summed logs beyond."""
    if k <= 0:
        return 0.0
    if k <= 64:
        return math.log(gl2_order(k))
    return sum(math.log((1 << k) - (1 << i)) for i in range(k))


def logsumexp(values) -> float:
    values = [v for v in values if v != -math.inf]
    if not values:
        return -math.inf
    m = max(values)
    return m + math.log(sum(math.exp(v - m) for v in values))


def _merged_type(p1, p2) -> tuple[int, ...]:
    return tuple(sorted(p1.cycle_type() + p2.cycle_type(), reverse=True))


def s0_exact(g) -> float:
    """ln s0 for an explicit group; -inf for the trivial group.

    Each element contributes through the conjugacy classes of its row
    part (in S_k) and of its full column permutation (in S_n, cycle type
    merged from both parts). Any non-identity element with an identity
    component breaks the structural uniqueness this sum relies on and is
    rejected.
    """
    term_logs = []
    for p1, p2 in g.elements:
        id1, id2 = p1.is_identity(), p2.is_identity()
        if id1 and id2:
            continue
        if id1 or id2:
            raise StructureViolation(
                "non-identity element with an identity component"
            )
        c_row = class_size_sn(p1.cycle_type())
        c_col = class_size_sn(_merged_type(p1, p2))
        term_logs.append(-0.5 * (math.log(c_row) + math.log(c_col)))
    if not term_logs:
        return -math.inf
    return math.log(g.order) + logsumexp(term_logs)


def s1_term(h_order: int, k: int, n: int) -> float:
    """ln s1 = ln(|H|^2 sqrt(|H|^2 + |H|) / sqrt(|GL_k(F2)| n!))."""
    if h_order < 1:
        raise StructureViolation("group order must be positive")
    return (
        2.0 * math.log(h_order)
        + 0.5 * math.log(h_order * h_order + h_order)
        - 0.5 * (log_gl_order(k) + log_factorial(n))
    )


@dataclass(frozen=True)
class BoundReport:
    mode: str
    k: int
    n: int
    h_order: int
    log_g: float
    s0_log: float
    s1_log: float
    dk_log: float
    log_group2: float
    max_c: int
    p: int | None = None
    m1: int | None = None
    m2: int | None = None


def _max_c(dk_log: float, log_group2: float, cap: int = 64) -> int:
    """Largest integer c >= 0 with dk <= (ln |G^2 x| F2|)^(-c); -1 if none."""
    if dk_log == -math.inf:
        return cap
    if dk_log > 0.0:
        return -1
    return min(cap, int(math.floor(-dk_log / math.log(log_group2))))


def _report(mode, k, n, h_order, s0_log, p=None, m1=None, m2=None) -> BoundReport:
    log_g = log_gl_order(k) + log_factorial(n)
    s1_log = s1_term(h_order, k, n)
    dk_log = logsumexp([s0_log, s1_log])
    log_group2 = math.log(2.0) + 2.0 * log_g
    return BoundReport(
        mode=mode, k=k, n=n, h_order=h_order, log_g=log_g,
        s0_log=s0_log, s1_log=s1_log, dk_log=dk_log,
        log_group2=log_group2, max_c=_max_c(dk_log, log_group2),
        p=p, m1=m1, m2=m2,
    )


def dk_bound(g) -> BoundReport:
    """Exact bound from an explicit assembled group."""
    return dk_bound_from_elements(g, g.k, g.n, p=g.p, m1=g.m1, m2=g.m2)


def dk_bound_from_elements(g, k: int, n: int, p=None, m1=None, m2=None) -> BoundReport:
    return _report("exact", k, n, g.order, s0_exact(g), p=p, m1=m1, m2=m2)


@lru_cache(maxsize=None)
def _max_one_free_weight(rem: int, min_part: int) -> int:
    """Largest centralizer factor prod(j^c_j c_j!) over partitions of rem
    into parts >= max(2, min_part); 0 when no such partition exists."""
    if rem == 0:
        return 1
    best = 0
    for part in range(max(2, min_part), rem + 1):
        mult = 1
        total = part
        while total <= rem:
            tail = _max_one_free_weight(rem - total, part + 1)
            if tail:
                best = max(best, part**mult * factorial(mult) * tail)
            mult += 1
            total += part
    return best


def min_class_size(n: int, delta: int) -> int:
    """Smallest S_n conjugacy class among elements moving >= delta points.

    Exact search over all cycle types with support >= delta: the class
    size is n! over the centralizer order, so the search maximizes the
    centralizer (n - s)! * prod(j^c_j c_j!) over the moved-point count s
    and the one-free partitions of s.
    """
    if delta > n:
        raise InfeasibleSupport(f"no element of S_{n} moves {delta} points")
    if delta <= 0:
        return 1
    best = 0
    for s in range(max(2, delta), n + 1):
        w = _max_one_free_weight(s, 2)
        if w:
            best = max(best, factorial(n - s) * w)
    if best == 0:
        raise InfeasibleSupport(f"no element of S_{n} moves >= {delta} points")
    return factorial(n) // best


@dataclass(frozen=True)
class EnvelopeStats:
    """Worst-case group statistics implied by the structural guarantees."""

    order: int
    delta: int
    min_class_k: int
    min_class_n: int


def worst_case_h(p: int, k: int, n: int) -> EnvelopeStats:
    """Pessimistic envelope: order p^2, minimum displacement p - 1."""
    delta = p - 1
    if delta > k:
        raise InfeasibleSupport(f"support floor {delta} exceeds k = {k}")
    return EnvelopeStats(
        order=p * p,
        delta=delta,
        min_class_k=min_class_size(k, delta),
        min_class_n=min_class_size(n, delta),
    )


def dk_bound_envelope(p: int, k: int, n: int, m1=None, m2=None) -> BoundReport:
    """Bound from the envelope alone, no explicit group required."""
    stats = worst_case_h(p, k, n)
    s0_log = (
        math.log(stats.order)
        + math.log(stats.order - 1)
        - 0.5 * (math.log(stats.min_class_k) + math.log(stats.min_class_n))
    )
    return _report("envelope", k, n, stats.order, s0_log, p=p, m1=m1, m2=m2)


def gamma_t_bound(k: int, t: int, delta: int, eps=None, b=None) -> float:
    """ln of k^(-eps*delta/2) * sqrt(C(k, t)) * (t!)^(1/4).

    The constants eps and b are model parameters with no canonical
    values; both must be supplied, and delta must be at least b.
    """
    if eps is None or b is None:
        raise ConstantsRequired("gamma_t needs explicit eps and b")
    if eps <= 0 or b <= 0:
        raise ConstantsRequired("eps and b must be positive")
    if delta < b:
        raise ConstantsRequired(f"delta = {delta} below the validity floor b = {b}")
    if not 0 <= t <= k:
        raise InfeasibleSupport(f"need 0 <= t <= k, got t={t}, k={k}")
    return (
        -0.5 * eps * delta * math.log(k)
        + 0.5 * math.log(comb(k, t))
        + 0.25 * log_factorial(t)
    )
