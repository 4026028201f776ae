"""Move rules and game-value evaluation for the graph deletion games.

The game: Left deletes a vertex together with its incident edges, Right
deletes a single edge.  A deletion that leaves some vertex isolated is
illegal, and a player with no legal deletion loses (normal play).  Three
rule sets are supported:

* classic  -- the rules as stated above;
* fl       -- forbidden leaf: Left may additionally not delete a leaf;
* mf       -- mutual failures: within each connected component, if either
              player has no classic deletion there, then neither player may
              move in that component at all.

Values are computed per connected component, keyed by an
isomorphism-invariant ComponentKey (variant tag + canonical form), and
combined by disjunctive sum.  A separate brute-force referee (Oracle)
replays whole labeled graphs by alternating minimax without touching game
values or canonical forms; it exists to cross-check the engine.
"""

from __future__ import annotations

import os
import struct
import zlib
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional

from .cgt import GameId, GameStore, Outcome
from .atomic import AtomicCalculator
from .graphs import (
    DEFAULT_COMPONENT_LIMIT,
    Graph,
    canonical_form,
)


class Player(Enum):
    LEFT = "left"
    RIGHT = "right"


class Variant(Enum):
    CLASSIC = "classic"
    FORBIDDEN_LEAF = "fl"
    MUTUAL_FAILURES = "mf"

    @property
    def tag(self) -> bytes:
        return _VARIANT_TAGS[self]


_VARIANT_TAGS = {
    Variant.CLASSIC: b"C",
    Variant.FORBIDDEN_LEAF: b"F",
    Variant.MUTUAL_FAILURES: b"M",
}


@dataclass(frozen=True)
class MoveList:
    """Deduplicated legal results for one player from one position."""

    mover: Player
    results: tuple[Graph, ...]


def canonical_key(component: Graph, variant: Variant,
                  max_vertices: int = DEFAULT_COMPONENT_LIMIT) -> bytes:
    """Isomorphism- and variant-aware memo key for a connected component."""
    return variant.tag + canonical_form(component, max_vertices)


# ----------------------------------------------------------------------
# move generation
# ----------------------------------------------------------------------

def _left_results(c: Graph, forbid_leaf: bool) -> list[Graph]:
    out = []
    for v in range(c.n):
        dv = c.degree(v)
        if dv == 0:
            continue  # isolated vertices are dead stones
        if forbid_leaf and dv == 1:
            continue
        if any(c.degree(u) == 1 for u in c.neighbors(v)):
            continue  # deleting v would isolate a leaf neighbor
        out.append(c.delete_vertex(v))
    return out


def _right_results(c: Graph) -> list[Graph]:
    out = []
    for u, v in c.edges():
        if c.degree(u) >= 2 and c.degree(v) >= 2:
            out.append(c.delete_edge(u, v))
    return out


def _has_left_base(c: Graph) -> bool:
    for v in range(c.n):
        if c.degree(v) == 0:
            continue
        if any(c.degree(u) == 1 for u in c.neighbors(v)):
            continue
        return True
    return False


def _has_right_base(c: Graph) -> bool:
    return any(
        c.degree(u) >= 2 and c.degree(v) >= 2 for u, v in c.edges()
    )


def _dedup(results: list[Graph], max_vertices: int) -> tuple[Graph, ...]:
    # two results are interchangeable when their component multisets match
    seen: dict[tuple[bytes, ...], Graph] = {}
    for g in results:
        key = tuple(sorted(canonical_form(comp, max_vertices) for comp in g.components()))
        seen.setdefault(key, g)
    return tuple(seen.values())


def base_moves(c: Graph, mover: Player,
               max_vertices: int = DEFAULT_COMPONENT_LIMIT) -> MoveList:
    """Classic legal results on a connected component, deduplicated."""
    if mover is Player.LEFT:
        results = _left_results(c, forbid_leaf=False)
    else:
        results = _right_results(c)
    return MoveList(mover, _dedup(results, max_vertices))


def variant_moves(c: Graph, mover: Player, variant: Variant,
                  max_vertices: int = DEFAULT_COMPONENT_LIMIT) -> MoveList:
    """Legal results for the given rule set, deduplicated."""
    if variant is Variant.CLASSIC:
        return base_moves(c, mover, max_vertices)
    if variant is Variant.FORBIDDEN_LEAF:
        if mover is Player.LEFT:
            return MoveList(mover, _dedup(_left_results(c, forbid_leaf=True), max_vertices))
        return base_moves(c, mover, max_vertices)
    # mutual failures: one emptiness test on the classic base sets
    if not _has_left_base(c) or not _has_right_base(c):
        return MoveList(mover, ())
    return base_moves(c, mover, max_vertices)


# ----------------------------------------------------------------------
# engine
# ----------------------------------------------------------------------

_CACHE_MAGIC = b"MDGC"
_CACHE_VERSION = 2


class GraphGameEngine:
    """Computes canonical game values of graph positions for each variant."""

    def __init__(self, store: GameStore, max_component: int = DEFAULT_COMPONENT_LIMIT):
        self.store = store
        self.max_component = max_component
        self._values: dict[bytes, GameId] = {}

    def game_of(self, g: Graph, variant: Variant) -> GameId:
        """Canonical value of a position: sum of its component values."""
        total = self.store.zero
        for comp in g.components():
            total = self.store.add(total, self.component_value(comp, variant))
        return total

    def component_value(self, comp: Graph, variant: Variant) -> GameId:
        if comp.n == 1:
            return self.store.zero
        key = canonical_key(comp, variant, self.max_component)
        hit = self._values.get(key)
        if hit is not None:
            return hit
        lefts = [
            self.game_of(r, variant)
            for r in variant_moves(comp, Player.LEFT, variant, self.max_component).results
        ]
        rights = [
            self.game_of(r, variant)
            for r in variant_moves(comp, Player.RIGHT, variant, self.max_component).results
        ]
        value = self.store.make_game(lefts, rights)
        self._values[key] = value
        return value

    def outcome_of(self, g: Graph, variant: Variant) -> Outcome:
        return self.store.outcome(self.game_of(g, variant))

    # ------------------------------------------------------------------
    # value cache persistence
    # ------------------------------------------------------------------

    def save_cache(self, path: str) -> None:
        """Serialize the ComponentKey -> value memo plus the games it needs."""
        store = self.store
        needed: set[GameId] = set()

        def walk(g: GameId) -> None:
            if g in needed:
                return
            needed.add(g)
            for o in store.left_options(g) + store.right_options(g):
                walk(o)

        for v in self._values.values():
            walk(v)
        order = sorted(needed)  # options precede their parents
        index = {g: i for i, g in enumerate(order)}

        payload = bytearray()
        payload += struct.pack("<I", len(order))
        for g in order:
            lo = store.left_options(g)
            ro = store.right_options(g)
            payload += struct.pack("<HH", len(lo), len(ro))
            for o in lo + ro:
                payload += struct.pack("<I", index[o])
        payload += struct.pack("<I", len(self._values))
        for key, v in sorted(self._values.items()):
            payload += struct.pack("<H", len(key)) + key + struct.pack("<I", index[v])

        blob = _CACHE_MAGIC + struct.pack("<I", _CACHE_VERSION) + bytes(payload)
        blob += struct.pack("<I", zlib.crc32(bytes(payload)))
        tmp = path + ".tmp"
        with open(tmp, "wb") as fh:
            fh.write(blob)
        os.replace(tmp, path)

    def load_cache(self, path: str) -> bool:
        """Merge a cache file; returns False (leaving state intact) on any
        version or structural mismatch."""
        try:
            with open(path, "rb") as fh:
                blob = fh.read()
        except OSError:
            return False
        try:
            if blob[:4] != _CACHE_MAGIC:
                return False
            (version,) = struct.unpack_from("<I", blob, 4)
            if version != _CACHE_VERSION:
                return False
            payload = blob[8:-4]
            (crc,) = struct.unpack_from("<I", blob, len(blob) - 4)
            if zlib.crc32(payload) != crc:
                return False
            pos = 0
            (ngames,) = struct.unpack_from("<I", payload, pos)
            pos += 4
            games: list[tuple[list[int], list[int]]] = []
            for _ in range(ngames):
                nl, nr = struct.unpack_from("<HH", payload, pos)
                pos += 4
                opts = list(struct.unpack_from(f"<{nl + nr}I", payload, pos))
                pos += 4 * (nl + nr)
                if any(i >= len(games) for i in opts):
                    return False  # options must precede parents
                games.append((opts[:nl], opts[nl:]))
            (nentries,) = struct.unpack_from("<I", payload, pos)
            pos += 4
            entries: list[tuple[bytes, int]] = []
            for _ in range(nentries):
                (klen,) = struct.unpack_from("<H", payload, pos)
                pos += 2
                key = payload[pos:pos + klen]
                pos += klen
                (idx,) = struct.unpack_from("<I", payload, pos)
                pos += 4
                if len(key) != klen or idx >= ngames:
                    return False
                entries.append((key, idx))
            if pos != len(payload):
                return False
        except (struct.error, IndexError):
            return False
        # re-canonicalize on load: idempotent for well-formed files
        ids: list[GameId] = []
        for lo, ro in games:
            ids.append(self.store.make_game([ids[i] for i in lo], [ids[i] for i in ro]))
        for key, idx in entries:
            self._values.setdefault(key, ids[idx])
        return True


# ----------------------------------------------------------------------
# brute-force referee
# ----------------------------------------------------------------------

class Oracle:
    """Alternating-minimax referee, independent of the value engine.

    Positions are raw labeled adjacency rows plus an alive mask; no game
    values, canonical forms, or option-set reasoning are involved.  Intended
    for cross-checking on small instances.
    """

    def __init__(self):
        self._memo: dict[tuple, bool] = {}

    def outcome(self, g: Graph, variant: Variant) -> Outcome:
        alive = (1 << g.n) - 1
        left_first = self._wins(g.adj, alive, Player.LEFT, variant)
        right_first = self._wins(g.adj, alive, Player.RIGHT, variant)
        if left_first and right_first:
            return Outcome.FIRST_WINS
        if left_first:
            return Outcome.LEFT_WINS
        if right_first:
            return Outcome.RIGHT_WINS
        return Outcome.SECOND_WINS

    def _wins(self, rows: tuple[int, ...], alive: int, mover: Player,
              variant: Variant) -> bool:
        key = (rows, alive, mover, variant)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        other = Player.RIGHT if mover is Player.LEFT else Player.LEFT
        result = False
        for nrows, nalive in self._moves(rows, alive, mover, variant):
            if not self._wins(nrows, nalive, other, variant):
                result = True
                break
        self._memo[key] = result
        return result

    def _moves(self, rows: tuple[int, ...], alive: int, mover: Player,
               variant: Variant) -> Iterator[tuple[tuple[int, ...], int]]:
        n = len(rows)
        deg = [rows[v].bit_count() for v in range(n)]
        if mover is Player.LEFT:
            for v in range(n):
                if not alive >> v & 1 or deg[v] == 0:
                    continue
                if variant is Variant.FORBIDDEN_LEAF and deg[v] == 1:
                    continue
                if any(deg[u] == 1 for u in _mask_bits(rows[v])):
                    continue
                if variant is Variant.MUTUAL_FAILURES and not self._mf_open(rows, deg, v):
                    continue
                new_rows = list(rows)
                for u in _mask_bits(rows[v]):
                    new_rows[u] &= ~(1 << v)
                new_rows[v] = 0
                yield tuple(new_rows), alive & ~(1 << v)
        else:
            for v in range(n):
                if not alive >> v & 1:
                    continue
                for u in _mask_bits(rows[v] >> (v + 1)):
                    u += v + 1
                    if deg[v] < 2 or deg[u] < 2:
                        continue
                    if variant is Variant.MUTUAL_FAILURES and not self._mf_open(rows, deg, v):
                        continue
                    new_rows = list(rows)
                    new_rows[v] &= ~(1 << u)
                    new_rows[u] &= ~(1 << v)
                    yield tuple(new_rows), alive

    def _mf_open(self, rows: tuple[int, ...], deg: list[int], seed: int) -> bool:
        # both classic base sets must be nonempty within seed's component
        comp = 1 << seed
        frontier = comp
        while frontier:
            nxt = 0
            for v in _mask_bits(frontier):
                nxt |= rows[v]
            frontier = nxt & ~comp
            comp |= nxt
        has_left = False
        has_right = False
        for v in _mask_bits(comp):
            if deg[v] == 0:
                continue
            if not has_left and not any(deg[u] == 1 for u in _mask_bits(rows[v])):
                has_left = True
            if not has_right and deg[v] >= 2 and any(
                deg[u] >= 2 for u in _mask_bits(rows[v])
            ):
                has_right = True
            if has_left and has_right:
                return True
        return False


def _mask_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ----------------------------------------------------------------------
# shared context
# ----------------------------------------------------------------------

@dataclass
class EngineContext:
    """One store plus the calculators that share it."""

    store: GameStore
    engine: GraphGameEngine
    atomic: AtomicCalculator
    oracle: Oracle


def make_context(max_component: int = DEFAULT_COMPONENT_LIMIT,
                 memo_cap: Optional[int] = None,
                 star_floor: int = 2) -> EngineContext:
    store = GameStore(memo_cap=memo_cap)
    return EngineContext(
        store=store,
        engine=GraphGameEngine(store, max_component=max_component),
        atomic=AtomicCalculator(store, star_floor=star_floor),
        oracle=Oracle(),
    )
