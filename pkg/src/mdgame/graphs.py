"""Simple undirected graphs sized for exact game analysis.

Graphs are immutable, with adjacency stored as one bitmask row per vertex.
The module provides the operations the deletion games need (vertex/edge
deletion with compaction, connected components, disjoint union) plus a
canonical form for isomorphism keys: iterated color refinement with
individualization backtracking, returning the lexicographically least
upper-triangle encoding.  Canonicalization cost is exponential in the
worst case, so it is guarded by an explicit vertex limit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .cgt import EngineError

DEFAULT_COMPONENT_LIMIT = 12


class TooLarge(EngineError):
    """A graph exceeded the configured canonicalization limit."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1 with bitmask adjacency rows."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or len(self.adj) != self.n:
            raise ValueError("adjacency size mismatch")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError("edge endpoint out of range")
            if row >> v & 1:
                raise ValueError("loops are not allowed")
        for v, row in enumerate(self.adj):
            for u in _bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError("adjacency is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for {n} vertices")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    # ------------------------------------------------------------------
    # inspection
    # ------------------------------------------------------------------

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> Iterator[int]:
        return _bits(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for v in range(self.n):
            row = self.adj[v] >> (v + 1)
            for u in _bits(row):
                out.append((v, v + 1 + u))
        return out

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        return self._component_mask(0) == (1 << self.n) - 1

    def _component_mask(self, seed: int) -> int:
        seen = 1 << seed
        frontier = seen
        adj = self.adj
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= adj[v]
            frontier = nxt & ~seen
            seen |= nxt
        return seen

    # ------------------------------------------------------------------
    # mutation (returns new graphs)
    # ------------------------------------------------------------------

    def delete_vertex(self, v: int) -> "Graph":
        """Remove v and its incident edges; remaining vertices are compacted."""
        keep = [u for u in range(self.n) if u != v]
        return self.induced(keep)

    def delete_edge(self, u: int, v: int) -> "Graph":
        if not self.adj[u] >> v & 1:
            raise ValueError(f"edge ({u},{v}) not present")
        rows = list(self.adj)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return _unchecked(self.n, tuple(rows))

    def induced(self, vertices: list[int]) -> "Graph":
        """Induced subgraph, relabeled to 0..k-1 in the order given."""
        pos = {u: i for i, u in enumerate(vertices)}
        rows = []
        for u in vertices:
            row = 0
            for w in _bits(self.adj[u]):
                i = pos.get(w)
                if i is not None:
                    row |= 1 << i
            rows.append(row)
        return _unchecked(len(vertices), tuple(rows))

    def components(self) -> list["Graph"]:
        """Connected components as separate graphs, vertices in original order.

        The returned list is cached and shared; treat it as read-only.
        """
        key = (self.n, self.adj)
        hit = _component_cache.get(key)
        if hit is not None:
            return hit
        out = []
        rem = (1 << self.n) - 1
        while rem:
            seed = (rem & -rem).bit_length() - 1
            mask = self._component_mask(seed) & rem
            out.append(self.induced(list(_bits(mask))))
            rem &= ~mask
        _component_cache[key] = out
        return out

    def disjoint_union(self, other: "Graph") -> "Graph":
        rows = list(self.adj) + [row << self.n for row in other.adj]
        return Graph(self.n + other.n, tuple(rows))

    def add_vertex(self, neighbor_mask: int) -> "Graph":
        """New graph with vertex n adjacent to the vertices in neighbor_mask."""
        rows = [
            row | (1 << self.n) if neighbor_mask >> v & 1 else row
            for v, row in enumerate(self.adj)
        ]
        rows.append(neighbor_mask)
        return Graph(self.n + 1, tuple(rows))


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _unchecked(n: int, rows: tuple[int, ...]) -> Graph:
    """Build a Graph from rows already known to be valid, skipping the checks."""
    g = object.__new__(Graph)
    object.__setattr__(g, "n", n)
    object.__setattr__(g, "adj", rows)
    return g


_component_cache: dict[tuple[int, tuple[int, ...]], list[Graph]] = {}


# ----------------------------------------------------------------------
# canonical form
# ----------------------------------------------------------------------

_canon_cache: dict[tuple[int, tuple[int, ...]], bytes] = {}


def canonical_form(g: Graph, max_vertices: int = DEFAULT_COMPONENT_LIMIT) -> bytes:
    """Isomorphism-invariant encoding of g.

    Two graphs yield equal bytes exactly when they are isomorphic.  Raises
    TooLarge when g has more than max_vertices vertices.
    """
    if g.n > max_vertices:
        raise TooLarge(
            f"graph has {g.n} vertices, above the canonicalization limit {max_vertices}"
        )
    key = (g.n, g.adj)
    hit = _canon_cache.get(key)
    if hit is None:
        hit = _canon_cache[key] = _canonical_bytes(g.n, g.adj)
    return hit


def _refine(n: int, nbrs: list[tuple[int, ...]], colors: list[int]) -> list[int]:
    while True:
        sigs = []
        for v in range(n):
            around = [colors[u] for u in nbrs[v]]
            around.sort()
            sigs.append((colors[v], tuple(around)))
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        if len(ranks) == n:
            # discrete colorings stay discrete; no further rounds needed
            return [ranks[s] for s in sigs]
        new = [ranks[s] for s in sigs]
        if new == colors:
            return colors
        colors = new


def _canonical_bytes(n: int, adj: tuple[int, ...]) -> bytes:
    if n == 0:
        return b"\x00"
    nbrs = [tuple(_bits(row)) for row in adj]
    best: Optional[int] = None
    best_order: list[int] = []
    autos: list[list[int]] = []

    def encode(order: list[int]) -> int:
        code = 0
        for j in range(1, n):
            row = adj[order[j]]
            for i in range(j):
                code = (code << 1) | (row >> order[i] & 1)
        return code

    def orbit_of(seeds: list[int], fixing: list[list[int]]) -> set[int]:
        reach = set(seeds)
        frontier = list(seeds)
        while frontier:
            u = frontier.pop()
            for a in fixing:
                w = a[u]
                if w not in reach:
                    reach.add(w)
                    frontier.append(w)
        return reach

    def search(colors: list[int], path: tuple[int, ...]) -> None:
        nonlocal best, best_order
        cells: dict[int, list[int]] = {}
        for v in range(n):
            cells.setdefault(colors[v], []).append(v)
        ordered = [cells[c] for c in sorted(cells)]
        target = None
        for cell in ordered:
            if len(cell) > 1 and (target is None or len(cell) < len(target)):
                target = cell
        if target is None:
            order = [cell[0] for cell in ordered]
            code = encode(order)
            if best is None or code < best:
                best = code
                best_order = order
            elif code == best:
                # two orderings with the same matrix encoding: the position-wise
                # vertex map between them is an automorphism worth remembering
                sigma = [0] * n
                for pos in range(n):
                    sigma[best_order[pos]] = order[pos]
                autos.append(sigma)
            return
        explored: list[int] = []
        for v in target:
            if explored:
                fixing = [a for a in autos if all(a[u] == u for u in path)]
                if fixing and v in orbit_of(explored, fixing):
                    # an automorphism fixing the path maps an explored branch
                    # onto this one, so it yields the same leaf codes
                    explored.append(v)
                    continue
            branched = [colors[u] * 2 + (0 if u == v else 1) for u in range(n)]
            search(_refine(n, nbrs, branched), path + (v,))
            explored.append(v)

    search(_refine(n, nbrs, [0] * n), ())
    assert best is not None
    nbits = n * (n - 1) // 2
    return bytes([n]) + best.to_bytes((nbits + 7) // 8, "big")


# ----------------------------------------------------------------------
# enumeration
# ----------------------------------------------------------------------

def connected_graphs(max_vertices: int) -> dict[int, list[Graph]]:
    """One representative per isomorphism class of connected graphs, by order.

    Built by attaching a new vertex to every nonempty subset of each smaller
    representative (every connected graph has a removable non-cut vertex, so
    this reaches every class), deduplicated by canonical form.
    """
    if max_vertices < 1:
        return {}
    reps: dict[int, list[Graph]] = {1: [Graph.empty(1)]}
    for k in range(2, max_vertices + 1):
        seen: dict[bytes, Graph] = {}
        for g in reps[k - 1]:
            for mask in range(1, 1 << (k - 1)):
                h = g.add_vertex(mask)
                seen.setdefault(canonical_form(h, max_vertices), h)
        reps[k] = list(seen.values())
    return reps
