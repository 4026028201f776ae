"""Atomic weight calculus for all-small games.

All-small games are infinitesimal but still carry a coarse integer scale:
the atomic weight, the number of "ups" a game is worth at the limit.  It
is computed by the standard recursion

    AW(g) = { AW(gL) - 2 | AW(gR) + 2 }

with the integer exception: when the bracket simplifies to an integer, the
result is instead picked from the integers adjacent to the option weights
according to how g compares with a remote star (a nim-heap *N larger than
every nimber inside g).  Comparisons against the remote star use a finite
surrogate order N, validated by recomputing at N+1; disagreement raises
RemoteStarUnstable rather than returning a guess.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .cgt import EngineError, GameId, GameStore, Comparison, Outcome

_SCAN_LIMIT = 10_000


class NotAllSmall(EngineError):
    """Atomic weight machinery was applied to a game that is not all-small."""


class NotInteger(EngineError):
    """An integer atomic weight was required but not available."""


class RemoteStarUnstable(EngineError):
    """Remote-star surrogate comparisons disagreed between orders N and N+1."""


class StarOrder(Enum):
    GREATER = "Greater"
    LESS = "Less"
    CONFUSED = "Confused"


@dataclass(frozen=True)
class AtomicWeight:
    """Atomic weight of a game: its value handle plus integer classification."""

    value: GameId
    is_integer: bool
    integer: Optional[int] = None


def two_ahead_bound(aw: AtomicWeight) -> Optional[Outcome]:
    """Forced outcome implied by the two-ahead rule, or None when |AW| < 2."""
    if not aw.is_integer or aw.integer is None:
        raise NotInteger("two-ahead rule needs an integer atomic weight")
    if aw.integer >= 2:
        return Outcome.LEFT_WINS
    if aw.integer <= -2:
        return Outcome.RIGHT_WINS
    return None


class AtomicCalculator:
    """Atomic-weight and far-star computations over one GameStore."""

    def __init__(self, store: GameStore, star_floor: int = 2):
        if star_floor < 2:
            raise ValueError("remote star order must be at least 2")
        self.store = store
        self.star_floor = star_floor
        self._aw: dict[GameId, AtomicWeight] = {}
        self._order: dict[GameId, StarOrder] = {}
        self._max_nimber: dict[GameId, int] = {}

    # ------------------------------------------------------------------
    # remote star
    # ------------------------------------------------------------------

    def surrogate_order(self, g: GameId) -> int:
        """Order of the *N surrogate used for far-star comparisons against g."""
        return max(self.star_floor, 2 + self._max_nimber_in(g))

    def _max_nimber_in(self, g: GameId) -> int:
        hit = self._max_nimber.get(g)
        if hit is not None:
            return hit
        st = self.store
        best = st.nimber_order(g) or 0
        for o in st.left_options(g) + st.right_options(g):
            sub = self._max_nimber_in(o)
            if sub > best:
                best = sub
        self._max_nimber[g] = best
        return best

    def remote_star_order(self, g: GameId) -> StarOrder:
        """How g compares with a remote star: Greater, Less, or Confused."""
        st = self.store
        if not st.is_all_small(g):
            raise NotAllSmall("remote-star comparison requires an all-small game")
        hit = self._order.get(g)
        if hit is not None:
            return hit
        n = self.surrogate_order(g)
        first = self._order_versus_star(g, n)
        second = self._order_versus_star(g, n + 1)
        if first != second:
            raise RemoteStarUnstable(
                f"comparison with *{n} and *{n + 1} disagreed ({first} vs {second})"
            )
        self._order[g] = first
        return first

    def _order_versus_star(self, g: GameId, order: int) -> StarOrder:
        cmp = self.store.compare(g, self.store.nimber_game(order))
        if cmp is Comparison.GREATER:
            return StarOrder.GREATER
        if cmp is Comparison.LESS:
            return StarOrder.LESS
        return StarOrder.CONFUSED

    def far_star_equivalent(self, g: GameId, h: GameId) -> bool:
        """Far-star equivalence: down-star < g - h < up-star with remote stars."""
        st = self.store
        if not st.is_all_small(g) or not st.is_all_small(h):
            raise NotAllSmall("far-star equivalence requires all-small games")
        diff = st.sub(g, h)
        n = self.surrogate_order(diff)
        first = self._within_far_star(diff, n)
        second = self._within_far_star(diff, n + 1)
        if first != second:
            raise RemoteStarUnstable(
                f"far-star bounds at *{n} and *{n + 1} disagreed"
            )
        return first

    def _within_far_star(self, diff: GameId, order: int) -> bool:
        st = self.store
        star_n = st.nimber_game(order)
        lo = st.add(st.down, star_n)
        hi = st.add(st.up, star_n)
        return (
            st.compare(lo, diff) is Comparison.LESS
            and st.compare(diff, hi) is Comparison.LESS
        )

    # ------------------------------------------------------------------
    # atomic weight
    # ------------------------------------------------------------------

    def atomic_weight(self, g: GameId) -> AtomicWeight:
        st = self.store
        if not st.is_all_small(g):
            raise NotAllSmall("atomic weight is defined for all-small games only")
        return self._weight(g)

    def _weight(self, g: GameId) -> AtomicWeight:
        hit = self._aw.get(g)
        if hit is not None:
            return hit
        st = self.store
        if g == st.zero:
            result = AtomicWeight(st.zero, True, 0)
            self._aw[g] = result
            return result
        two = st.number_game(2)
        lefts = [st.sub(self._weight(o).value, two) for o in st.left_options(g)]
        rights = [st.add(self._weight(o).value, two) for o in st.right_options(g)]
        naive = st.make_game(lefts, rights)
        n = st.integer_value(naive)
        if n is None:
            result = AtomicWeight(naive, False, None)
        else:
            x, y = self._integer_exception_bounds(lefts, rights, n)
            order = self.remote_star_order(g)
            if order is StarOrder.CONFUSED:
                chosen = 0
            elif order is StarOrder.GREATER:
                chosen = y
            else:
                chosen = x
            result = AtomicWeight(st.number_game(chosen), True, chosen)
        self._aw[g] = result
        return result

    def _integer_exception_bounds(
        self, lefts: list[GameId], rights: list[GameId], base: int
    ) -> tuple[int, int]:
        """(x, y): least x exceeding-or-confused-with every left weight, and
        greatest y undercutting-or-confused-with every right weight."""
        st = self.store

        def x_ok(x: int) -> bool:
            xg = st.number_game(x)
            return all(not st.leq(xg, v) for v in lefts)

        def y_ok(y: int) -> bool:
            yg = st.number_game(y)
            return all(not st.leq(w, yg) for w in rights)

        x = base
        steps = 0
        if x_ok(x):
            while x_ok(x - 1):
                x -= 1
                steps += 1
                if steps > _SCAN_LIMIT:
                    raise EngineError("integer exception scan did not terminate")
        else:
            while not x_ok(x):
                x += 1
                steps += 1
                if steps > _SCAN_LIMIT:
                    raise EngineError("integer exception scan did not terminate")
        y = base
        steps = 0
        if y_ok(y):
            while y_ok(y + 1):
                y += 1
                steps += 1
                if steps > _SCAN_LIMIT:
                    raise EngineError("integer exception scan did not terminate")
        else:
            while not y_ok(y):
                y -= 1
                steps += 1
                if steps > _SCAN_LIMIT:
                    raise EngineError("integer exception scan did not terminate")
        return x, y
