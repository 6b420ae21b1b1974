"""Constraint networks: the n-by-n relation matrix and its serialization.

Invariants maintained throughout: the diagonal is EQ, entry (j,i) is the
converse of entry (i,j), and absent constraints are the universal relation.
Variable indices are 0-based in the Python API; the file format and the
command line use 1-based indices to match the usual v1..vn naming.

File format (line oriented, ``#`` starts a comment)::

    calculus RCC8
    vars 5
    labels A B C D E      # optional
    # i j relation   (1-based, i<j)
    1 2 DC|EC
    2 3 *

Only pairs with i<j are written by :func:`save`; the loader mirrors
converses and fills gaps with the universal relation.
"""

from __future__ import annotations

import hashlib
import json
from typing import Iterable, Iterator, Sequence

import numpy as np

from .calculus import Calculus, Relation, get_calculus
from .errors import (
    ConverseConflictError,
    InconsistentNetworkError,
    NetworkFormatError,
    NetworkShapeError,
)

__all__ = [
    "Network",
    "load",
    "loads",
    "save",
    "dump",
    "to_json",
    "from_json",
    "refines",
    "restrict",
    "remove_constraint",
    "amalgamate",
    "to_rcc5",
]


class Network:
    """n variables plus an n-by-n relation matrix over one calculus."""

    def __init__(self, calculus: Calculus, n: int,
                 labels: Sequence[str] = None):
        if n < 1:
            raise NetworkShapeError("a network needs at least one variable")
        if labels is None:
            labels = tuple(f"v{i + 1}" for i in range(n))
        else:
            labels = tuple(labels)
            if len(labels) != n:
                raise NetworkShapeError(
                    f"{len(labels)} labels for {n} variables")
            if len(set(labels)) != n:
                raise NetworkShapeError("duplicate variable labels")
        self.calculus = calculus
        self.n = n
        self.labels = labels
        self.matrix = np.full((n, n), calculus.universal, dtype=np.uint16)
        np.fill_diagonal(self.matrix, calculus.identity)

    # -- entry access ----------------------------------------------------

    def mask(self, i: int, j: int) -> int:
        return int(self.matrix[i, j])

    def entry(self, i: int, j: int) -> Relation:
        return Relation(self.calculus, self.mask(i, j))

    def set_mask(self, i: int, j: int, mask: int) -> None:
        if i == j:
            if mask != self.calculus.identity:
                raise NetworkShapeError("diagonal entries must be EQ")
            return
        self.matrix[i, j] = mask
        self.matrix[j, i] = self.calculus.converse_mask(mask)

    def __getitem__(self, ij) -> Relation:
        return self.entry(*ij)

    def __setitem__(self, ij, rel) -> None:
        i, j = ij
        self.set_mask(i, j, self.calculus.relation(rel).mask)

    def index_of(self, var) -> int:
        if isinstance(var, str):
            try:
                return self.labels.index(var)
            except ValueError:
                raise NetworkShapeError(f"unknown variable {var!r}")
        i = int(var)
        if not 0 <= i < self.n:
            raise NetworkShapeError(f"variable index {i} out of range")
        return i

    # -- structure -------------------------------------------------------

    def copy(self) -> "Network":
        out = Network(self.calculus, self.n, self.labels)
        out.matrix = self.matrix.copy()
        return out

    def constraint_pairs(self) -> Iterator[tuple[int, int]]:
        """Non-universal pairs (i, j) with i < j."""
        star = self.calculus.universal
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self.matrix[i, j] != star:
                    yield (i, j)

    def constraint_count(self) -> int:
        return sum(1 for _ in self.constraint_pairs())

    @property
    def is_basic(self) -> bool:
        """Every off-diagonal entry is a single basic relation or universal."""
        m = self.matrix.astype(np.int64)
        off = ~np.eye(self.n, dtype=bool)
        single = (m & (m - 1)) == 0
        return bool(((m == self.calculus.universal) | single)[off].all()
                    and (m[off] != 0).all())

    @property
    def is_scenario(self) -> bool:
        """Complete and basic: every off-diagonal entry is one basic."""
        m = self.matrix.astype(np.int64)
        off = ~np.eye(self.n, dtype=bool)
        return bool(((m[off] != 0) & ((m[off] & (m[off] - 1)) == 0)).all())

    def validate(self) -> None:
        """Raise NetworkShapeError if an invariant is broken."""
        m = self.matrix
        if m.shape != (self.n, self.n):
            raise NetworkShapeError("matrix shape mismatch")
        if (m > self.calculus.universal).any():
            raise NetworkShapeError("entry outside the calculus")
        if (np.diag(m) != self.calculus.identity).any():
            raise NetworkShapeError("diagonal entries must be EQ")
        if not np.array_equal(self.calculus.conv_table[m], m.T):
            raise NetworkShapeError("matrix is not converse-symmetric")

    def digest(self) -> str:
        """Stable content hash of the canonical serialization."""
        return hashlib.sha256(save(self).encode()).hexdigest()[:16]

    def __eq__(self, other) -> bool:
        return (isinstance(other, Network)
                and self.calculus is other.calculus
                and self.labels == other.labels
                and np.array_equal(self.matrix, other.matrix))

    def __hash__(self):
        return hash((self.calculus.name, self.labels,
                     self.matrix.tobytes()))

    def __repr__(self) -> str:
        return (f"Network({self.calculus.name}, n={self.n}, "
                f"{self.constraint_count()} constraints)")


def loads(text: str) -> Network:
    """Parse the network file format; see the module docstring."""
    calc = None
    n = None
    labels = None
    given: dict[tuple[int, int], tuple[int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "calculus":
            if len(parts) != 2:
                raise NetworkFormatError("expected 'calculus NAME'", lineno)
            try:
                calc = get_calculus(parts[1])
            except ValueError as e:
                raise NetworkFormatError(str(e), lineno)
            continue
        if parts[0] == "vars":
            if len(parts) != 2 or not parts[1].isdigit():
                raise NetworkFormatError("expected 'vars N'", lineno)
            n = int(parts[1])
            continue
        if parts[0] == "labels":
            labels = parts[1:]
            continue
        if calc is None or n is None:
            raise NetworkFormatError(
                "constraint before 'calculus'/'vars' header", lineno)
        if len(parts) != 3:
            raise NetworkFormatError(
                f"expected 'i j RELATION', got {line!r}", lineno)
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise NetworkFormatError(
                f"bad variable indices in {line!r}", lineno)
        if not (1 <= i <= n and 1 <= j <= n):
            raise NetworkFormatError(
                f"variable index out of range 1..{n}", lineno)
        try:
            mask = calc.parse(parts[2])
        except ValueError as e:
            raise NetworkFormatError(str(e), lineno)
        if i == j:
            if mask != calc.identity:
                raise NetworkFormatError("diagonal must be EQ", lineno)
            continue
        key = (i - 1, j - 1)
        if key in given:
            prev_mask, prev_line = given[key]
            if prev_mask != mask:
                raise ConverseConflictError(
                    f"pair ({i},{j}) already given on line {prev_line} "
                    f"with a different relation", lineno)
            continue
        rev = (j - 1, i - 1)
        if rev in given:
            prev_mask, prev_line = given[rev]
            if prev_mask != calc.converse_mask(mask):
                raise ConverseConflictError(
                    f"({j},{i}) on line {prev_line} conflicts with "
                    f"({i},{j}) here", lineno)
            continue
        given[key] = (mask, lineno)
    if calc is None:
        raise NetworkFormatError("missing 'calculus' line")
    if n is None:
        raise NetworkFormatError("missing 'vars' line")
    net = Network(calc, n, labels)
    for (i, j), (mask, _) in given.items():
        net.set_mask(i, j, mask)
    net.validate()
    return net


def load(path) -> Network:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def save(net: Network) -> str:
    """Canonical text form: sorted i<j pairs, non-universal entries only."""
    lines = [f"calculus {net.calculus.name}", f"vars {net.n}"]
    default = tuple(f"v{i + 1}" for i in range(net.n))
    if net.labels != default:
        lines.append("labels " + " ".join(net.labels))
    for i, j in net.constraint_pairs():
        lines.append(f"{i + 1} {j + 1} {net.calculus.format(net.mask(i, j))}")
    return "\n".join(lines) + "\n"


def dump(net: Network, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(save(net))


def to_json(net: Network) -> dict:
    return {
        "schema": 1,
        "calculus": net.calculus.name,
        "vars": net.n,
        "labels": list(net.labels),
        "constraints": [
            [i + 1, j + 1, net.calculus.format(net.mask(i, j))]
            for i, j in net.constraint_pairs()
        ],
    }


def from_json(doc: dict) -> Network:
    calc = get_calculus(doc["calculus"])
    net = Network(calc, int(doc["vars"]), doc.get("labels"))
    for i, j, rel in doc.get("constraints", []):
        net.set_mask(int(i) - 1, int(j) - 1, calc.parse(rel))
    net.validate()
    return net


def to_rcc5(net: Network) -> Network:
    """Coarsen an RCC8 network to RCC5.

    DC and EC collapse to DR, TPP and NTPP to PP (converses likewise).
    Any regions witnessing the RCC8 network witness the result, so a
    consistent input yields a consistent output.
    """
    from .calculus import RCC5, RCC8

    if net.calculus is not RCC8:
        raise NetworkShapeError("to_rcc5 expects an RCC8 network")
    to5 = [RCC5.parse(n) for n in
           ("DR", "DR", "PO", "PP", "PP", "PPi", "PPi", "EQ")]
    table = np.zeros(1 << 8, dtype=np.uint16)
    for mask in range(1 << 8):
        out = 0
        for b in range(8):
            if mask >> b & 1:
                out |= to5[b]
        table[mask] = out
    result = Network(RCC5, net.n, net.labels)
    result.matrix = table[net.matrix]
    np.fill_diagonal(result.matrix, RCC5.identity)
    return result


def refines(a: Network, b: Network) -> bool:
    """Entrywise subset test; networks must share shape and calculus."""
    if a.calculus is not b.calculus or a.n != b.n:
        raise NetworkShapeError("networks differ in calculus or size")
    return bool((a.matrix & ~b.matrix & a.calculus.universal).max() == 0)


def restrict(net: Network, variables: Iterable) -> Network:
    """Induced subnetwork on the given variables (indices or labels)."""
    idx = [net.index_of(v) for v in variables]
    if not idx:
        raise NetworkShapeError("restriction needs at least one variable")
    if len(set(idx)) != len(idx):
        raise NetworkShapeError("duplicate variables in restriction")
    out = Network(net.calculus, len(idx), [net.labels[i] for i in idx])
    out.matrix = net.matrix[np.ix_(idx, idx)].copy()
    return out


def remove_constraint(net: Network, i: int, j: int) -> Network:
    """Replace the (i, j) constraint with the universal relation."""
    if i == j:
        raise NetworkShapeError("cannot remove a diagonal entry")
    out = net.copy()
    out.set_mask(i, j, net.calculus.universal)
    return out


def amalgamate(net: Network, eq_classes: Iterable[Iterable]) -> Network:
    """Merge variables that the network forces to be identical.

    ``eq_classes`` must partition the variables, and within each class
    every pairwise a-closure entry must be exactly EQ.  The first member
    of each class becomes its representative; entries between classes are
    the intersections of the a-closure entries, so the result is an
    equivalent all-different network.
    """
    from .reasoning import a_closure  # local import: reasoning builds on network

    classes = [[net.index_of(v) for v in group] for group in eq_classes]
    flat = [i for group in classes for i in group]
    if sorted(flat) != list(range(net.n)):
        raise NetworkShapeError("eq_classes must partition the variables")
    res = a_closure(net)
    if not res.consistent:
        raise InconsistentNetworkError(
            "cannot amalgamate an inconsistent network")
    closed = res.network
    eq = net.calculus.identity
    for group in classes:
        for a in group:
            for b in group:
                if a == b:
                    continue
                m = closed.mask(a, b)
                if m & eq == 0:
                    raise InconsistentNetworkError(
                        f"variables {net.labels[a]} and {net.labels[b]} "
                        "cannot be equal")
                if m != eq:
                    raise NetworkShapeError(
                        f"variables {net.labels[a]} and {net.labels[b]} are "
                        "not entailed equal; not a valid equivalence class")
    reps = [group[0] for group in classes]
    out = Network(net.calculus, len(reps), [net.labels[r] for r in reps])
    for a, ga in enumerate(classes):
        for b, gb in enumerate(classes):
            if a >= b:
                continue
            mask = net.calculus.universal
            for x in ga:
                for y in gb:
                    mask &= net.mask(x, y)
            if mask == 0:
                raise InconsistentNetworkError(
                    "amalgamation produced an empty relation")
            out.set_mask(a, b, mask)
    check = a_closure(out)
    if check.consistent:
        star = out.calculus.universal
        for i in range(out.n):
            for j in range(i + 1, out.n):
                if check.network.mask(i, j) == eq:
                    raise NetworkShapeError(
                        "classes do not cover all entailed equalities")
    return out
