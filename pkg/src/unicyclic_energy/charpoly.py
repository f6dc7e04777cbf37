"""Characteristic polynomials by three independent routes, plus matchings.

* recurrences for the path, cycle and P_n^6 families (the production path);
* ``charpoly_general``: Faddeev-LeVerrier over Python integers, exploiting the
  sparsity of the adjacency matrix (oracle duty, small n);
* ``charpoly_deletion``: the edge-deletion recursion with the cycle correction
  term, memoised on vertex subsets.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import zip_longest

from .exact import Poly, bipartite_b_coeffs
from .graphs import Graph, GraphError, bfs_order, family_of

X = Poly.x()

P7_SEED = Poly((0, -7, 0, 13, 0, -7, 0, 1))
P8_SEED = Poly((4, 0, -16, 0, 19, 0, -8, 0, 1))


def charpoly_path(n: int) -> Poly:
    if n < 1:
        raise ValueError(f"path needs n >= 1, got {n}")
    prev, cur = Poly((1,)), X
    for _ in range(n - 1):
        prev, cur = cur, X * cur - prev
    return cur


def charpoly_cycle(n: int) -> Poly:
    if n < 3:
        raise ValueError(f"cycle needs n >= 3, got {n}")
    return charpoly_path(n) - charpoly_path(n - 2) - 2


def charpoly_p6(n: int) -> Poly:
    if n < 7:
        raise ValueError(f"P_n^6 needs n >= 7, got {n}")
    if n == 7:
        return P7_SEED
    prev, cur = P7_SEED, P8_SEED
    for _ in range(n - 8):
        prev, cur = cur, X * cur - prev
    return cur


def charpoly_general(g: Graph) -> Poly:
    """det(xI - A) by Faddeev-LeVerrier in exact integer arithmetic.

    M_1 = I, c_{n-1} = -tr(A);  M_k = A M_{k-1} + c_{n-k+1} I,
    c_{n-k} = -tr(A M_k) / k.  Products with A are neighbour-row sums,
    so each step is O(n^2 * max degree).
    """
    n = g.n
    adj = g.adjacency
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        AM = [[0] * n for _ in range(n)]
        for i in range(n):
            row = AM[i]
            for j in adj[i]:
                mj = M[j]
                for c in range(n):
                    row[c] += mj[c]
        tr = sum(AM[i][i] for i in range(n))
        q, r = divmod(-tr, k)
        if r:
            raise ArithmeticError("Faddeev-LeVerrier trace not divisible; corrupted input")
        coeffs[n - k] = q
        if k < n:
            for i in range(n):
                AM[i][i] += q
            M = AM
    return Poly(coeffs)


def charpoly(g: Graph) -> Poly:
    """Production charpoly: family recurrence when ``g`` is a known family."""
    fam = family_of(g)
    if fam is not None:
        kind, n = fam
        return {"cycle": charpoly_cycle, "p6": charpoly_p6, "path": charpoly_path}[kind](n)
    return charpoly_general(g)


# -- edge deletion -------------------------------------------------------------

class CyclomaticError(GraphError):
    pass


def _find_path(adj, removed, allowed, src, dst):
    """Vertex path src..dst inside ``allowed`` avoiding ``removed`` edges, or None."""
    parent = {src: None}
    frontier = [src]
    while frontier:
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if w in allowed and w not in parent and frozenset((u, w)) not in removed:
                    parent[w] = u
                    nxt.append(w)
        frontier = nxt
    if dst not in parent:
        return None
    out = [dst]
    while out[-1] != src:
        out.append(parent[out[-1]])
    return out[::-1]


def charpoly_deletion(g: Graph, edge: tuple[int, int]) -> Poly:
    """phi(G) = phi(G - uv) - phi(G - u - v) - 2 sum_{C containing uv} phi(G - C).

    Sub-problems are resolved by the pendant-edge rule
    phi(H) = x phi(H - v) - phi(H - u - v), taking the pendant vertex of
    highest index; a bare cycle left without pendant edges is split on its
    lowest edge with the general rule again.  Only graphs with at most one
    independent cycle are accepted.
    """
    u, v = edge
    if (min(u, v), max(u, v)) not in set(g.edges):
        raise GraphError(f"{edge} is not an edge")
    from .graphs import count_components

    if g.m - g.n + count_components(g.adjacency) > 1:
        raise CyclomaticError("charpoly_deletion handles trees and unicyclic graphs only")
    adj = g.adjacency
    memo: dict = {}

    def induced_edges(S, removed):
        return [
            (a, b) for a in S for b in adj[a] if a < b and b in S and frozenset((a, b)) not in removed
        ]

    def rule(S: frozenset, removed: frozenset, a: int, b: int) -> Poly:
        # general deletion on edge ab within the subgraph on S
        uv = frozenset((a, b))
        result = phi(S, removed | {uv}) - phi(S - uv, removed)
        cyc = _find_path(adj, removed | {uv}, S, a, b)
        if cyc is not None:
            result = result - 2 * phi(S - frozenset(cyc), removed)
        return result

    def phi(S: frozenset, removed: frozenset) -> Poly:
        key = (S, removed)
        if key in memo:
            return memo[key]
        edges = induced_edges(S, removed)
        if not edges:
            res = Poly.monomial(len(S))
        else:
            deg = {w: 0 for w in S}
            for a, b in edges:
                deg[a] += 1
                deg[b] += 1
            leaves = [w for w in S if deg[w] == 1]
            if leaves:
                leaf = max(leaves)
                hub = next(w for w in adj[leaf] if w in S and frozenset((leaf, w)) not in removed)
                res = X * phi(S - {leaf}, removed) - phi(S - {leaf, hub}, removed)
            else:
                a, b = min(edges)
                res = rule(S, removed, a, b)
        memo[key] = res
        return res

    return rule(frozenset(range(g.n)), frozenset(), u, v)


# -- matchings -----------------------------------------------------------------

def matching_numbers(t: Graph) -> list[int]:
    """m(T, k) for k = 0..n//2 by tree DP (state: vertex, matched-below flag).

    Each component is rooted at its smallest vertex.
    """
    if not t.is_forest:
        raise GraphError("matching_numbers needs an acyclic graph")
    adj = t.adjacency
    seen: set[int] = set()
    total = [1]
    for root in range(t.n):
        if root in seen:
            continue
        order = bfs_order(adj, root)
        seen.update(order)
        parent = {root: None}
        for w in order:
            for c in adj[w]:
                if c not in parent:
                    parent[c] = w
        free: dict[int, list[int]] = {}
        used: dict[int, list[int]] = {}
        for w in reversed(order):
            f, m = [1], [0]
            for c in adj[w]:
                if parent.get(c) != w:
                    continue
                tc = _padd(free[c], used[c])
                # w matched to c: shift by one edge
                m = _padd(_pmul(m, tc), [0] + _pmul(f, free[c]))
                f = _pmul(f, tc)
            free[w], used[w] = f, m
        total = _pmul(total, _padd(free[root], used[root]))
    out = total + [0] * (t.n // 2 + 1 - len(total))
    return out[: t.n // 2 + 1]


def _padd(a, b):
    return [x + y for x, y in zip_longest(a, b, fillvalue=0)]


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def matching_charpoly(n: int, m: list[int]) -> Poly:
    """sum_k (-1)^k m(T,k) x^(n-2k)."""
    return Poly.from_dict({n - 2 * k: (-1) ** k * c for k, c in enumerate(m)})


# -- quasi-order ---------------------------------------------------------------

class Verdict(str, enum.Enum):
    LESS = "Less"
    GREATER = "Greater"
    EQUAL = "Equal"
    INCOMPARABLE = "Incomparable"


@dataclass(frozen=True)
class QuasiOrderResult:
    verdict: Verdict
    witness_less: int | None = None
    witness_greater: int | None = None


def quasi_order_compare(b1, b2) -> QuasiOrderResult:
    """Componentwise comparison of coefficient lists (shorter one zero-padded).

    Witnesses are the first index with b1[k] < b2[k] and the first with
    b1[k] > b2[k].
    """
    less = greater = None
    for k, (x, y) in enumerate(zip_longest(b1, b2, fillvalue=0)):
        if x < y and less is None:
            less = k
        elif x > y and greater is None:
            greater = k
    if less is not None and greater is not None:
        verdict = Verdict.INCOMPARABLE
    elif less is not None:
        verdict = Verdict.LESS
    elif greater is not None:
        verdict = Verdict.GREATER
    else:
        verdict = Verdict.EQUAL
    return QuasiOrderResult(verdict, less, greater)


def b_vector(g: Graph) -> list[int]:
    return bipartite_b_coeffs(charpoly(g))
