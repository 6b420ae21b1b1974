"""Path consistency, consistency decisions, and the backtracking oracle.

The a-closure (algebraic closure) is the fixed point of the refinement
rule R_ij <- (R_ik . R_kj) & R_ij.  It is enforced by a FIFO queue over
variable pairs; popping a pair propagates through it in both directions.
The fixed point is unique, so the queue order does not affect the result.
Two interchangeable engines are used: a plain-Python one for small
networks and a numpy row-vectorized one for large networks.

For networks over a tractable subclass (and for basic networks) the
a-closure alone decides consistency.  Everything else goes through
:func:`solve`, a backtracking search over basic refinements that serves
as the independent oracle for the redundancy machinery; it is guarded by
a size limit because scenario enumeration is exponential.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .algebra import Subalgebra, builtin_subalgebras
from .calculus import Relation
from .errors import (
    GuardExceededError,
    InconsistentNetworkError,
    MembershipError,
    NetworkShapeError,
)
from .network import Network, restrict

__all__ = [
    "AClosureResult",
    "AllDifferentResult",
    "a_closure",
    "is_consistent",
    "solve",
    "enumerate_scenarios",
    "entails",
    "all_different",
    "check_minimal",
    "check_weak_global",
    "detect_tractable",
    "DEFAULT_GUARD",
]

DEFAULT_GUARD = 12

# networks at or below this size use the plain-Python propagation engine
_VECTOR_THRESHOLD = 40


@dataclass
class AClosureResult:
    """Outcome of enforcing path consistency.

    ``network`` is the path-consistent refinement when consistent;
    ``witness`` is the triple (i, k, j) whose rule application emptied
    entry (i, j) otherwise.  ``updates`` counts entry refinements.
    """

    consistent: bool
    network: Optional[Network]
    witness: Optional[tuple[int, int, int]]
    updates: int = 0


def _lists_from(net: Network) -> list[list[int]]:
    return net.matrix.astype(int).tolist()


def _pca_lists(calc, m: list[list[int]], n: int,
               queue=None) -> tuple[Optional[tuple[int, int, int]], int]:
    """Enforce path consistency on a mask matrix in place.

    ``queue`` seeds the pair queue; by default every non-universal pair.
    Returns (witness, updates); witness is None on success.
    """
    comp = calc._comp_list
    conv = calc._conv_list
    star = calc.universal
    if queue is None:
        queue = [(i, j) for i in range(n) for j in range(i + 1, n)
                 if m[i][j] != star]
    q = deque(queue)
    inq = [[False] * n for _ in range(n)]
    for i, j in q:
        inq[i][j] = True
    updates = 0
    while q:
        i, j = q.popleft()
        inq[i][j] = False
        rij = m[i][j]
        row_i = m[i]
        row_j = m[j]
        crow = comp[rij]
        for k in range(n):
            if k == i or k == j:
                continue
            row_k = m[k]
            old = row_i[k]
            new = old & crow[row_j[k]]
            if new != old:
                if new == 0:
                    return (i, j, k), updates
                updates += 1
                row_i[k] = new
                row_k[i] = conv[new]
                a, b = (i, k) if i < k else (k, i)
                if not inq[a][b]:
                    inq[a][b] = True
                    q.append((a, b))
            old = row_k[j]
            new = old & comp[row_k[i]][rij]
            if new != old:
                if new == 0:
                    return (k, i, j), updates
                updates += 1
                row_k[j] = new
                row_j[k] = conv[new]
                a, b = (k, j) if k < j else (j, k)
                if not inq[a][b]:
                    inq[a][b] = True
                    q.append((a, b))
    return None, updates


def _pca_numpy(calc, m: np.ndarray, n: int,
               queue=None) -> tuple[Optional[tuple[int, int, int]], int]:
    """Row-vectorized variant of :func:`_pca_lists`; same fixed point."""
    comp = calc.comp_table
    conv = calc.conv_table
    star = calc.universal
    if queue is None:
        iu, ju = np.nonzero(np.triu(m != star, k=1))
        queue = list(zip(iu.tolist(), ju.tolist()))
    q = deque(queue)
    inq = np.zeros((n, n), dtype=bool)
    for i, j in q:
        inq[i, j] = True
    updates = 0
    while q:
        i, j = q.popleft()
        inq[i, j] = False
        rij = int(m[i, j])
        cand = m[i] & comp[rij, m[j]]
        cand[i] = m[i, i]
        cand[j] = m[i, j]
        changed = np.flatnonzero(cand != m[i])
        if changed.size:
            if not cand[changed].all():
                k = int(changed[np.flatnonzero(cand[changed] == 0)[0]])
                return (i, j, k), updates
            updates += int(changed.size)
            m[i] = cand
            m[:, i] = conv[cand]
            for k in changed.tolist():
                a, b = (i, k) if i < k else (k, i)
                if not inq[a, b]:
                    inq[a, b] = True
                    q.append((a, b))
        cand = m[:, j] & comp[m[:, i], rij]
        cand[i] = m[i, j]
        cand[j] = m[j, j]
        changed = np.flatnonzero(cand != m[:, j])
        if changed.size:
            if not cand[changed].all():
                k = int(changed[np.flatnonzero(cand[changed] == 0)[0]])
                return (k, i, j), updates
            updates += int(changed.size)
            m[:, j] = cand
            m[j] = conv[cand]
            for k in changed.tolist():
                a, b = (k, j) if k < j else (j, k)
                if not inq[a, b]:
                    inq[a, b] = True
                    q.append((a, b))
    return None, updates


def a_closure(net: Network) -> AClosureResult:
    """Enforce path consistency; never raises on inconsistency.

    The result network refines the input, has the same solution set, and
    is independent of the processing order.
    """
    calc = net.calculus
    n = net.n
    if n <= _VECTOR_THRESHOLD:
        m = _lists_from(net)
        witness, updates = _pca_lists(calc, m, n)
        if witness is not None:
            return AClosureResult(False, None, witness, updates)
        out = Network(calc, n, net.labels)
        out.matrix = np.array(m, dtype=np.uint16)
        return AClosureResult(True, out, None, updates)
    m = net.matrix.copy()
    witness, updates = _pca_numpy(calc, m, n)
    if witness is not None:
        return AClosureResult(False, None, witness, updates)
    out = Network(calc, n, net.labels)
    out.matrix = m
    return AClosureResult(True, out, None, updates)


def detect_tractable(net: Network) -> Optional[Subalgebra]:
    """Smallest built-in tractable subalgebra containing every entry."""
    masks = set(np.unique(net.matrix).tolist())
    for sub in builtin_subalgebras(net.calculus):
        if sub.tractable and masks <= sub.members:
            return sub
    return None


def _check_membership(net: Network, sub: Subalgebra) -> None:
    if not sub.tractable:
        raise MembershipError(
            f"subalgebra {sub.name or '?'} is not flagged tractable")
    masks = set(np.unique(net.matrix).tolist())
    extra = masks - sub.members
    if extra:
        bad = ", ".join(net.calculus.format(m) for m in sorted(extra))
        raise MembershipError(
            f"entries outside {sub.name or 'the subalgebra'}: {bad}")


def is_consistent(net: Network, subclass: Subalgebra = None,
                  guard: int = DEFAULT_GUARD) -> bool:
    """Decide consistency.

    Networks over a tractable subclass (given or auto-detected) and basic
    networks are decided by the a-closure; anything else falls back to
    the backtracking oracle, subject to the size guard.
    """
    if subclass is not None:
        _check_membership(net, subclass)
        return a_closure(net).consistent
    if net.is_basic or detect_tractable(net) is not None:
        return a_closure(net).consistent
    return solve(net, guard=guard) is not None


def _branch_entry(m: list[list[int]], n: int) -> Optional[tuple[int, int]]:
    best = None
    best_count = 1 << 20
    for i in range(n):
        row = m[i]
        for j in range(i + 1, n):
            c = row[j].bit_count()
            if 1 < c < best_count:
                best = (i, j)
                best_count = c
                if c == 2:
                    return best
    return best


def _scenarios(calc, m: list[list[int]], n: int) -> Iterator[list[list[int]]]:
    """Backtracking enumeration over basic refinements of a path-consistent
    matrix.  Yields path-consistent complete basic matrices."""
    spot = _branch_entry(m, n)
    if spot is None:
        yield m
        return
    i, j = spot
    mask = m[i][j]
    for b in range(calc.size):
        basic = 1 << b
        if not mask & basic:
            continue
        child = [row[:] for row in m]
        child[i][j] = basic
        child[j][i] = calc._conv_list[basic]
        witness, _ = _pca_lists(calc, child, n, queue=[(i, j)])
        if witness is None:
            yield from _scenarios(calc, child, n)


def solve(net: Network, guard: int = DEFAULT_GUARD) -> Optional[Network]:
    """First consistent scenario refining the network, or None.

    A returned scenario is path-consistent and hence consistent.  The
    search branches on the entry with fewest members and tries basics in
    serialization order, so the scenario found is deterministic.
    """
    for sc in enumerate_scenarios(net, guard=guard):
        return sc
    return None


def _scenario_mats(net: Network,
                   guard: int = DEFAULT_GUARD) -> Iterator[list[list[int]]]:
    """Raw enumeration; yielded matrices are reused between iterations."""
    if net.n > guard:
        raise GuardExceededError(
            f"n={net.n} exceeds the oracle guard {guard}; raise it or use "
            "a tractable subclass")
    calc = net.calculus
    m = _lists_from(net)
    witness, _ = _pca_lists(calc, m, net.n)
    if witness is not None:
        return
    yield from _scenarios(calc, m, net.n)


def enumerate_scenarios(net: Network,
                        guard: int = DEFAULT_GUARD) -> Iterator[Network]:
    """All consistent scenarios of the network, deterministically ordered."""
    for sol in _scenario_mats(net, guard=guard):
        out = Network(net.calculus, net.n, net.labels)
        out.matrix = np.array(sol, dtype=np.uint16)
        yield out


def entails(net: Network, i: int, j: int, r: Relation,
            guard: int = DEFAULT_GUARD) -> bool:
    """Does every solution place (v_i, v_j) inside r?

    Decided basic-by-basic: the network entails r iff adding any basic
    outside r to the (i, j) entry is inconsistent.
    """
    if i == j:
        raise NetworkShapeError("entailment is defined for distinct variables")
    calc = net.calculus
    if r.calculus is not calc:
        raise NetworkShapeError("relation from a different calculus")
    rest = calc.universal & ~r.mask
    if rest == 0:
        return True
    current = net.mask(i, j)
    for b in range(calc.size):
        basic = 1 << b
        if not rest & basic or not current & basic:
            continue
        probe = net.copy()
        probe.set_mask(i, j, basic)
        if is_consistent(probe, guard=guard):
            return False
    return True


@dataclass
class AllDifferentResult:
    all_different: bool
    eq_pairs: list[tuple[int, int]]

    def __bool__(self) -> bool:
        return self.all_different


def all_different(net: Network, subclass: Subalgebra = None) -> AllDifferentResult:
    """Detect entailed equalities between distinct variables.

    Valid over a tractable subclass, where an equality is entailed iff
    the a-closure entry is exactly EQ.  Inconsistent networks are
    rejected: they entail everything.
    """
    if subclass is not None:
        _check_membership(net, subclass)
    elif not net.is_basic and detect_tractable(net) is None:
        raise MembershipError(
            "network is not over a built-in tractable subalgebra; "
            "pass an asserted subclass")
    res = a_closure(net)
    if not res.consistent:
        raise InconsistentNetworkError(
            "inconsistent network: it entails everything")
    eq = net.calculus.identity
    pairs = [(i, j) for i in range(net.n) for j in range(i + 1, net.n)
             if res.network.mask(i, j) == eq]
    return AllDifferentResult(not pairs, pairs)


def check_minimal(net: Network, guard: int = DEFAULT_GUARD) -> bool:
    """Oracle check that every basic in every entry is feasible."""
    res = a_closure(net)
    if not res.consistent:
        raise InconsistentNetworkError("minimality is about consistent networks")
    calc = net.calculus
    for i in range(net.n):
        for j in range(i + 1, net.n):
            mask = net.mask(i, j)
            for b in range(calc.size):
                basic = 1 << b
                if not mask & basic:
                    continue
                pinned = net.copy()
                pinned.set_mask(i, j, basic)
                if solve(pinned, guard=guard) is None:
                    return False
    return True


def check_weak_global(net: Network, guard: int = DEFAULT_GUARD) -> bool:
    """Oracle check of weak global consistency.

    Every consistent scenario of every restriction (sizes 2..n-1, in
    increasing order, short-circuiting on the first failure) must extend
    to a consistent scenario of the whole network.  Restrictions to one
    variable and to all variables extend trivially and are skipped.
    """
    from itertools import combinations

    if net.n > guard:
        raise GuardExceededError(
            f"n={net.n} exceeds the oracle guard {guard}")
    for size in range(2, net.n):
        for subset in combinations(range(net.n), size):
            sub = restrict(net, subset)
            for scenario in enumerate_scenarios(sub, guard=guard):
                extended = net.copy()
                for a, i in enumerate(subset):
                    for b, j in enumerate(subset):
                        if a < b:
                            extended.set_mask(i, j, scenario.mask(a, b))
                if solve(extended, guard=guard) is None:
                    return False
    return True
