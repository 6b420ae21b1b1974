"""Redundant constraints, cores, and prime subnetworks.

A constraint is redundant when the rest of the network entails it; the
core is the set of non-redundant constraints.  Over a distributive
subalgebra an all-different network has a unique prime subnetwork, equal
to its core, and it is computed in cubic time by :func:`core_algorithm1`:
take the a-closure once, then an entry (i, j) is redundant exactly when
the intersection of S_ik . S_kj over all other k reproduces S_ij.

:func:`prime_iterative` is the general fold that removes redundant
constraints one at a time in a caller-chosen order; on distributive
all-different inputs it is order-independent and agrees with the cubic
algorithm.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .algebra import Subalgebra, builtin_subalgebras
from .errors import (
    InconsistentNetworkError,
    MembershipError,
    NetworkShapeError,
    NotAllDifferentError,
)
from .network import Network, remove_constraint
from .reasoning import DEFAULT_GUARD, a_closure, entails

__all__ = [
    "RedundancyReport",
    "is_redundant",
    "core",
    "prime_iterative",
    "core_algorithm1",
    "equivalent",
    "detect_distributive",
    "weaken_scenario",
]


@dataclass
class RedundancyReport:
    """Which constraints of a network are redundant.

    Pairs are 0-based with i < j.  ``trivially_redundant`` holds the
    universal-constraint pairs and is always a subset of ``redundant``.
    ``network`` is the input with every redundant constraint removed.
    """

    redundant: set = field(default_factory=set)
    trivially_redundant: set = field(default_factory=set)
    method: str = "general"
    checks: int = 0
    network: Optional[Network] = None

    @property
    def nontrivial(self) -> set:
        return self.redundant - self.trivially_redundant


def is_redundant(net: Network, i: int, j: int,
                 guard: int = DEFAULT_GUARD) -> bool:
    """Is the (i, j) constraint entailed by the rest of the network?

    Universal constraints are trivially redundant.  The consistency
    checks go through the a-closure when the network is over a tractable
    subclass and through the backtracking oracle otherwise.
    """
    if i == j:
        raise NetworkShapeError("redundancy is about off-diagonal constraints")
    rel = net.entry(i, j)
    if rel.is_universal:
        return True
    return entails(remove_constraint(net, i, j), i, j, rel, guard=guard)


def core(net: Network, guard: int = DEFAULT_GUARD) -> RedundancyReport:
    """Per-constraint redundancy sweep against the full network.

    The resulting core network need not be equivalent to the input when
    the input is not all-different over a distributive subalgebra.
    """
    report = RedundancyReport(method="sweep")
    star = net.calculus.universal
    out = net.copy()
    for i in range(net.n):
        for j in range(i + 1, net.n):
            if net.mask(i, j) == star:
                report.trivially_redundant.add((i, j))
                report.redundant.add((i, j))
                continue
            report.checks += 1
            if is_redundant(net, i, j, guard=guard):
                report.redundant.add((i, j))
                out.set_mask(i, j, star)
    report.network = out
    return report


def _normalized_order(net: Network, order) -> list[tuple[int, int]]:
    pairs = [(min(i, j), max(i, j)) for i, j in order]
    expected = list(net.constraint_pairs())
    if sorted(pairs) != sorted(expected) or len(set(pairs)) != len(pairs):
        raise NetworkShapeError(
            "order must enumerate every non-trivial constraint exactly once")
    return pairs


def prime_iterative(net: Network, order: Sequence[tuple[int, int]] = None,
                    guard: int = DEFAULT_GUARD) -> Network:
    """Remove redundant constraints one at a time, in the given order.

    The fold visits each non-trivial constraint once and drops it when it
    is redundant in the current network, which yields a prime subnetwork.
    Different orders may yield different (equally prime) results unless
    the network is all-different over a distributive subalgebra.
    """
    if order is None:
        pairs = list(net.constraint_pairs())
    else:
        pairs = _normalized_order(net, order)
    current = net.copy()
    star = net.calculus.universal
    for i, j in pairs:
        if is_redundant(current, i, j, guard=guard):
            current.set_mask(i, j, star)
    return current


def detect_distributive(net: Network) -> Optional[Subalgebra]:
    """First maximal distributive subalgebra containing every entry.

    Detection order is fixed (the smaller subalgebra first) so results
    are deterministic; both give identical answers where both apply.
    """
    from .algebra import d5_14, d5_20, d8_41, d8_64
    from .calculus import RCC5

    masks = set(np.unique(net.matrix).tolist())
    pair = (d5_14(), d5_20()) if net.calculus is RCC5 else (d8_41(), d8_64())
    for sub in pair:
        if masks <= sub.members:
            return sub
    return None


def core_algorithm1(net: Network,
                    subalgebra: Subalgebra = None) -> RedundancyReport:
    """All redundant constraints of a distributive-subalgebra network, in
    cubic time, together with its unique prime subnetwork.

    Requires a consistent, all-different network whose entries lie in a
    distributive subalgebra (auto-detected among the built-ins when not
    given).  An explicitly passed tractable subalgebra is accepted as an
    override; uniqueness of the result is guaranteed only for
    distributive ones.
    """
    if subalgebra is None:
        subalgebra = detect_distributive(net)
        if subalgebra is None:
            raise MembershipError(
                "entries do not fit a built-in distributive subalgebra; "
                "pass one explicitly to override")
    else:
        masks = set(np.unique(net.matrix).tolist())
        extra = masks - subalgebra.members
        if extra:
            bad = ", ".join(net.calculus.format(m) for m in sorted(extra))
            raise MembershipError(
                f"entries outside {subalgebra.name or 'the subalgebra'}: {bad}")
    res = a_closure(net)
    if not res.consistent:
        raise InconsistentNetworkError(
            "the cubic redundancy algorithm needs a consistent network")
    eq = net.calculus.identity
    n = net.n
    iu, ju = np.nonzero(np.triu(res.network.matrix == eq, k=1))
    if iu.size:
        offenders = list(zip(iu.tolist(), ju.tolist()))
        raise NotAllDifferentError(
            f"entailed equalities at {offenders}; amalgamate them first")

    star = net.calculus.universal
    report = RedundancyReport(method="algorithm1")
    if n <= 48:
        redundant, checks = _q_scan_lists(net.calculus,
                                          res.network.matrix, n)
    else:
        redundant, checks = _q_scan_vector(net.calculus,
                                           res.network.matrix, n)
    report.checks = checks
    out = net.copy()
    for i, j in redundant:
        report.redundant.add((i, j))
        out.set_mask(i, j, star)
    for i in range(n):
        for j in range(i + 1, n):
            if net.mask(i, j) == star:
                report.trivially_redundant.add((i, j))
                report.redundant.add((i, j))
    report.network = out
    return report


def _q_scan_lists(calc, closed_matrix, n):
    """Per-pair Q accumulation, ascending k, early exit on Q == S_ij."""
    closed = closed_matrix.astype(int).tolist()
    comp = calc._comp_list
    star = calc.universal
    redundant = []
    checks = 0
    for i in range(n):
        row_i = closed[i]
        for j in range(i + 1, n):
            target = row_i[j]
            q = star
            for k in range(n):
                if k == i or k == j:
                    continue
                checks += 1
                q &= comp[row_i[k]][closed[k][j]]
                if q == target:
                    redundant.append((i, j))
                    break
    return redundant, checks


def _q_scan_vector(calc, closed_matrix, n):
    """Row-vectorized variant of :func:`_q_scan_lists`.

    For a fixed i all pairs (i, j) consume intermediates k in the same
    ascending order, so their Q sequences are independent and can be
    advanced together; per-pair early exit becomes a done mask.  Results
    and check counts match the scalar scan exactly.
    """
    comp = calc.comp_table
    star = calc.universal
    s = closed_matrix
    redundant = []
    checks = 0
    for i in range(n):
        undone = np.zeros(n, dtype=bool)
        undone[i + 1:] = True
        q = np.full(n, star, dtype=np.uint16)
        target = s[i]
        for k in range(n):
            if k == i:
                continue
            active = undone.copy()
            active[k] = False
            if not active.any():
                if not undone.any():
                    break
                continue
            checks += int(active.sum())
            q[active] &= comp[int(s[i, k]), s[k, active]]
            hit = active & (q == target)
            if hit.any():
                undone[hit] = False
                for j in np.flatnonzero(hit).tolist():
                    redundant.append((i, j))
    return redundant, checks


def equivalent(a: Network, b: Network, guard: int = DEFAULT_GUARD) -> bool:
    """Do two networks over the same variables have the same solutions?

    When each network is over a distributive subalgebra, its a-closure is
    its minimal network, so equivalence is a-closure equality.  Otherwise
    the consistent scenario sets are compared, subject to the guard; when
    one network refines the other, only the weaker side is enumerated.
    """
    from .network import refines
    from .reasoning import _scenario_mats

    if a.calculus is not b.calculus or a.n != b.n:
        raise NetworkShapeError("networks differ in calculus or size")
    if detect_distributive(a) is not None and detect_distributive(b) is not None:
        ra, rb = a_closure(a), a_closure(b)
        if not ra.consistent or not rb.consistent:
            return ra.consistent == rb.consistent
        return bool(np.array_equal(ra.network.matrix, rb.network.matrix))
    if refines(a, b) or refines(b, a):
        strong, weak = (a, b) if refines(a, b) else (b, a)
        # every consistent scenario of the weaker side must fit the stronger
        sm = strong.matrix.astype(int).tolist()
        n = a.n
        for mat in _scenario_mats(weak, guard=guard):
            for i in range(n):
                row, srow = mat[i], sm[i]
                for j in range(i + 1, n):
                    if row[j] & ~srow[j]:
                        return False
        return True
    sa = {bytes(x for row in mat for x in row)
          for mat in _scenario_mats(a, guard=guard)}
    sb = {bytes(x for row in mat for x in row)
          for mat in _scenario_mats(b, guard=guard)}
    return sa == sb


def weaken_scenario(scenario: Network, sub: Subalgebra, rng: random.Random,
                    max_extra: int = 2) -> Network:
    """Random consistent test instance over a subalgebra.

    Each edge of a (consistent) scenario is replaced by the smallest
    subalgebra member containing its basic relation plus up to
    ``max_extra`` random extra basics.  The scenario remains a solution
    witness, so the result is consistent by construction.
    """
    calc = scenario.calculus
    if sub.calculus is not calc:
        raise NetworkShapeError("subalgebra from a different calculus")
    out = scenario.copy()
    for i in range(scenario.n):
        for j in range(i + 1, scenario.n):
            mask = scenario.mask(i, j)
            for _ in range(rng.randint(0, max_extra)):
                mask |= 1 << rng.randrange(calc.size)
            member = sub.smallest_member(mask)
            if member is None:
                member = calc.universal
            out.set_mask(i, j, member)
    return out
