"""Strongly explicit regular multigraphs and the expander-walk object ``E(l, lam, P)``.

Every graph here is given by a pure neighbor function ``neighbor(v, slot)``;
nothing is materialized unless a caller asks for :meth:`ExplicitGraph.adjacency_counts`.
A self-loop occupies one slot and adds 1 to the diagonal adjacency count.

The universal family is built in three steps: Margulis-Gabber-Galil graphs on
``s*s`` vertices (degree 8), contraction down to an arbitrary vertex count
(degree 16), and powering to push the spectral bound below any target.
"""

from __future__ import annotations

import math
from math import isqrt

import numpy as np

from .pro import Pro

#: spectral bound of the MGG family
MGG_LAMBDA = 5 * math.sqrt(2) / 8
#: spectral bound of the contracted MGG graphs returned by :func:`see_std`
SEE_LAMBDA = (5 * math.sqrt(2) + 8) / 16


class ExplicitGraph:
    """A ``degree``-regular undirected multigraph on ``range(vertex_count)``.

    ``claimed_lambda`` is bookkeeping only; certification is the job of
    :mod:`prokit.spectral`.
    """

    vertex_count: int
    degree: int
    claimed_lambda: float

    def neighbor(self, v: int, slot: int) -> int:
        raise NotImplementedError

    def neighbors(self, v: int) -> list[int]:
        return [self.neighbor(v, i) for i in range(self.degree)]

    def adjacency_counts(self) -> np.ndarray:
        """Dense matrix of edge-slot counts ``a[v, w] = #{i : neighbor(v, i) == w}``."""
        n = self.vertex_count
        a = np.zeros((n, n), dtype=np.int64)
        for v in range(n):
            for w in self.neighbors(v):
                a[v, w] += 1
        return a

    def dump(self) -> str:
        """Plain-text dump: header ``n d`` then one line of slot targets per vertex."""
        lines = [f"{self.vertex_count} {self.degree}"]
        lines += [" ".join(map(str, self.neighbors(v))) for v in range(self.vertex_count)]
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"{type(self).__name__}(n={self.vertex_count}, d={self.degree})"


class TableGraph(ExplicitGraph):
    """Graph given by explicit neighbor lists; used for small reference graphs."""

    def __init__(self, lists, claimed_lambda: float = 1.0):
        lists = [tuple(row) for row in lists]
        if not lists:
            raise ValueError("graph needs at least one vertex")
        d = len(lists[0])
        if d < 1 or any(len(row) != d for row in lists):
            raise ValueError("neighbor lists must all have the same positive length")
        if any(not 0 <= w < len(lists) for row in lists for w in row):
            raise ValueError("neighbor out of range")
        self.lists = lists
        self.vertex_count = len(lists)
        self.degree = d
        self.claimed_lambda = claimed_lambda

    def neighbor(self, v, slot):
        return self.lists[v][slot]

    def neighbors(self, v):
        return list(self.lists[v])


def cycle_graph(n: int) -> TableGraph:
    """``C_n`` as a 2-regular graph with slots ``v+1, v-1``."""
    return TableGraph([((v + 1) % n, (v - 1) % n) for v in range(n)])


def complete_graph(n: int) -> TableGraph:
    """``K_n`` as an ``(n-1)``-regular graph without loops."""
    return TableGraph([tuple(w for w in range(n) if w != v) for v in range(n)])


class MGGGraph(ExplicitGraph):
    """Margulis-Gabber-Galil graph on ``Z_s x Z_s``; vertex ``(x, y)`` has index ``x*s + y``.

    The default ``"hlw"`` slots are, in order,
    ``(x+2y, y), (x-2y, y), (x+2y+1, y), (x-2y-1, y), (x, y+2x), (x, y-2x), (x, y+2x+1), (x, y-2x-1)``;
    this is the family for which ``lambda_a <= 5*sqrt(2)/8`` is proved.

    ``variant="margulis"`` gives the shift/shear slots
    ``(x+1, y), (x-1, y), (x, y+1), (x, y-1), (x, y+x), (x, y-x), (x+y, y), (x-y, y)``.
    That graph is an expander too, but its ``lambda_a`` exceeds ``5*sqrt(2)/8``
    from ``s = 12`` on, so it carries no claimed bound (``claimed_lambda = 1``).
    """

    VARIANTS = ("hlw", "margulis")

    def __init__(self, s: int, variant: str = "hlw"):
        if s < 1:
            raise ValueError("mgg needs s >= 1")
        if variant not in self.VARIANTS:
            raise ValueError(f"unknown MGG variant {variant!r}")
        self.s = s
        self.variant = variant
        self.vertex_count = s * s
        self.degree = 8
        self.claimed_lambda = MGG_LAMBDA if variant == "hlw" else 1.0
        self._step = self._hlw if variant == "hlw" else self._margulis

    def neighbor(self, v, slot):
        s = self.s
        x, y = divmod(v, s)
        x, y = self._step(x, y, slot)
        return (x % s) * s + y % s

    @staticmethod
    def _hlw(x, y, slot):
        if slot < 4:
            shift = 2 * y + (slot >> 1)
            return (x + shift if slot % 2 == 0 else x - shift), y
        if slot < 8:
            shift = 2 * x + ((slot - 4) >> 1)
            return x, (y + shift if slot % 2 == 0 else y - shift)
        raise IndexError(slot)

    @staticmethod
    def _margulis(x, y, slot):
        if slot == 0:
            return x + 1, y
        if slot == 1:
            return x - 1, y
        if slot == 2:
            return x, y + 1
        if slot == 3:
            return x, y - 1
        if slot == 4:
            return x, y + x
        if slot == 5:
            return x, y - x
        if slot == 6:
            return x + y, y
        if slot == 7:
            return x - y, y
        raise IndexError(slot)


class ContractedGraph(ExplicitGraph):
    """Identify vertex ``j`` with ``j mod m``; unpaired vertices get ``d`` self-loops."""

    def __init__(self, base: ExplicitGraph, m: int):
        n = base.vertex_count
        if not (n + 1) // 2 <= m <= n:
            raise ValueError(f"contraction target {m} outside [{(n + 1) // 2}, {n}]")
        self.base = base
        self.m = m
        self.paired = n - m
        self.vertex_count = m
        self.degree = 2 * base.degree
        self.claimed_lambda = (base.claimed_lambda + 1) / 2

    def neighbor(self, v, slot):
        d = self.base.degree
        if slot < d:
            return self.base.neighbor(v, slot) % self.m
        if v < self.paired:
            return self.base.neighbor(v + self.m, slot - d) % self.m
        return v


class PowerGraph(ExplicitGraph):
    """``G^k``: slot ``i`` spells a ``k``-step path in base ``d``, first step least significant."""

    def __init__(self, base: ExplicitGraph, k: int):
        if k < 1:
            raise ValueError("power needs k >= 1")
        self.base = base
        self.k = k
        self.vertex_count = base.vertex_count
        self.degree = base.degree ** k
        self.claimed_lambda = base.claimed_lambda ** k

    def neighbor(self, v, slot):
        d = self.base.degree
        step = self.base.neighbor
        for _ in range(self.k):
            slot, digit = divmod(slot, d)
            v = step(v, digit)
        return v

    def adjacency_counts(self):
        # path counts of G^k are the k-th power of G's counts; slot enumeration would be d**k
        base = self.base.adjacency_counts()
        exact = self.degree < 2**62
        acc = base if exact else base.astype(object)
        result = acc.copy()
        for _ in range(self.k - 1):
            result = result @ acc
        return result


def mgg(s: int, variant: str = "hlw") -> MGGGraph:
    return MGGGraph(s, variant)


def contract(G: ExplicitGraph, m: int) -> ContractedGraph:
    return ContractedGraph(G, m)


def power(G: ExplicitGraph, k: int) -> ExplicitGraph:
    return PowerGraph(G, k)


def see_std(n: int) -> ContractedGraph:
    """Degree-16 expander on exactly ``n`` vertices with spectral bound (5*sqrt(2)+8)/16."""
    if n < 1:
        raise ValueError("vertex count must be at least 1")
    s = isqrt(n - 1) + 1
    return contract(mgg(s), n)


def see_power(lam: float) -> int:
    """Smallest ``k >= 1`` with ``SEE_LAMBDA**k <= lam``."""
    if not 0 < lam < 1:
        raise ValueError(f"spectral bound must lie in (0, 1), got {lam}")
    k = max(1, math.ceil(math.log(lam) / math.log(SEE_LAMBDA)))
    return k


def see_bound(n: int, lam: float) -> tuple[ExplicitGraph, int]:
    k = see_power(lam)
    return power(see_std(n), k), k


class WalkPlan:
    """Index layout for walks of length ``l``: start vertex in the low digit (mod ``n``),
    then ``l-1`` edge slots in base ``d``, first step least significant."""

    def __init__(self, graph: ExplicitGraph, l: int, inner: Pro):
        if l < 1:
            raise ValueError("walk length must be at least 1")
        self.graph = graph
        self.l = l
        self.inner = inner
        self.size = graph.vertex_count * graph.degree ** (l - 1)

    def vertices(self, i: int) -> tuple[int, ...]:
        n, d = self.graph.vertex_count, self.graph.degree
        rest, v = divmod(i, n)
        step = self.graph.neighbor
        walk = [v]
        for _ in range(self.l - 1):
            rest, slot = divmod(rest, d)
            v = step(v, slot)
            walk.append(v)
        return tuple(walk)

    def select(self, i: int) -> tuple:
        sel = self.inner.selector
        return tuple(sel(v) for v in self.vertices(i))


def walk_pro(l: int, lam: float, inner: Pro) -> Pro:
    """``E(l, lam, inner)``: uniform length-``l`` walks on an expander over ``inner``'s seeds."""
    graph, _ = see_bound(inner.size, lam)
    plan = WalkPlan(graph, l, inner)
    return Pro(plan.size, plan.select, "tuple", f"E({l},{lam},{inner.label})", meta=plan)


def is_regular_symmetric(G: ExplicitGraph) -> bool:
    """Exhaustive check of slot range and multiset symmetry ``a[v, w] == a[w, v]``."""
    n = G.vertex_count
    counts = {}
    for v in range(n):
        row = G.neighbors(v)
        if len(row) != G.degree:
            return False
        for w in row:
            if not 0 <= w < n:
                return False
            counts[v, w] = counts.get((v, w), 0) + 1
    return all(counts.get((w, v), 0) == c for (v, w), c in counts.items())
