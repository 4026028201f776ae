"""Exact arithmetic for short partisan games.

Games live in a GameStore: a hash-consing table mapping canonical option
sets to integer handles (GameId).  make_game() reduces arbitrary option
sets to canonical form (dominated options removed, reversible options
bypassed), so handle equality coincides with game-value equality, and all
downstream work (ordering, disjunctive sums, negation, outcome
classification, value naming) runs on interned handles backed by global
memo tables.

Concurrency contract: reads of interned games are lock-free; handle
allocation goes through a single lock, and memo inserts are idempotent
single dict writes (atomic under CPython), so concurrent evaluation is
safe.  Memo tables are unbounded unless ``memo_cap`` is set; an overfull
table raises MemoCapExceeded rather than evicting entries.
"""

from __future__ import annotations

import math
import sys
import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional

GameId = int

# Canonicalization, ordering and sums recurse to the birthday of the games
# involved; the default CPython limit is too tight for deep option DAGs.
sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

_CANON_ITER_LIMIT = 100_000


class EngineError(Exception):
    """Base class for engine failures."""


class MemoCapExceeded(EngineError):
    """A memo table reached its configured entry cap."""


class Outcome(Enum):
    LEFT_WINS = "LeftWins"
    RIGHT_WINS = "RightWins"
    FIRST_WINS = "FirstPlayerWins"
    SECOND_WINS = "SecondPlayerWins"


class Comparison(Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"
    CONFUSED = "Confused"


@dataclass(frozen=True)
class DyadicRational:
    """A dyadic rational num / 2**exp in lowest terms (exp == 0 for integers)."""

    num: int
    exp: int

    def __post_init__(self):
        if self.exp < 0:
            raise ValueError("exponent must be nonnegative")
        if self.exp > 0 and self.num % 2 == 0:
            raise ValueError("dyadic rational not in lowest terms")

    @classmethod
    def from_fraction(cls, value: Fraction) -> "DyadicRational":
        den = value.denominator
        exp = den.bit_length() - 1
        if den != 1 << exp:
            raise ValueError(f"{value} is not dyadic")
        return cls(value.numerator, exp)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.exp)

    def __str__(self) -> str:
        if self.exp == 0:
            return str(self.num)
        return f"{self.num}/{1 << self.exp}"


@dataclass(frozen=True)
class ValueName:
    """Classification of a canonical game: number, nimber, up multiple, or other.

    ``text`` always holds the display form; for kind 'other' that is the
    nested-brace rendering of the canonical tree.
    """

    kind: str  # 'number' | 'nimber' | 'ups' | 'other'
    text: str
    number: Optional[DyadicRational] = None
    nimber_order: Optional[int] = None
    up_count: int = 0
    plus_star: bool = False


def _ups_text(count: int, plus_star: bool) -> str:
    arrow = "↑" if count > 0 else "↓"
    mag = abs(count)
    base = arrow if mag == 1 else f"{mag}·{arrow}"
    return base + ("*" if plus_star else "")


def _simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """The simplest number strictly between lo and hi (requires lo < hi)."""
    if lo < 0 < hi:
        return Fraction(0)
    n = math.floor(lo) + 1  # least integer > lo
    if n < hi:
        if n > 0:
            return Fraction(n)
        return Fraction(math.ceil(hi) - 1)  # greatest integer < hi
    j = 1
    while True:
        k = math.floor(lo * (1 << j)) + 1
        if Fraction(k, 1 << j) < hi:
            return Fraction(k, 1 << j)
        j += 1


class GameStore:
    """Interning store for canonical short games.

    Handles are dense ints; a game's options always have smaller handles
    than the game itself (children are interned first), which the cache
    serializer in the graph engine relies on.
    """

    def __init__(self, memo_cap: Optional[int] = None):
        self.memo_cap = memo_cap
        self._gate = threading.Lock()
        self._left: list[tuple[GameId, ...]] = []
        self._right: list[tuple[GameId, ...]] = []
        self._index: dict[tuple, GameId] = {}
        self._leq: dict[tuple[GameId, GameId], bool] = {}
        self._add: dict[tuple[GameId, GameId], GameId] = {}
        self._neg: dict[GameId, GameId] = {}
        self._canon: dict[tuple, GameId] = {}
        self._number: dict[GameId, Optional[Fraction]] = {}
        self._number_games: dict[Fraction, GameId] = {}
        self._nimber: dict[GameId, Optional[int]] = {}
        self._nimber_games: dict[int, GameId] = {}
        self._ups_games: dict[tuple[int, bool], GameId] = {}
        self._all_small: dict[GameId, bool] = {}
        self._birthday: dict[GameId, int] = {}
        self._names: dict[GameId, ValueName] = {}

        self.zero = self._intern((), ())
        self.star = self._intern((self.zero,), (self.zero,))
        self.up = self._intern((self.zero,), (self.star,))
        self.down = self._intern((self.star,), (self.zero,))
        lz = tuple(sorted((self.zero, self.star)))
        self.up_star = self._intern(lz, (self.zero,))
        self.down_star = self._intern((self.zero,), lz)

    # ------------------------------------------------------------------
    # interning and memo plumbing
    # ------------------------------------------------------------------

    def _intern(self, left: tuple, right: tuple) -> GameId:
        key = (left, right)
        gid = self._index.get(key)
        if gid is not None:
            return gid
        with self._gate:
            gid = self._index.get(key)
            if gid is None:
                gid = len(self._left)
                self._left.append(left)
                self._right.append(right)
                self._index[key] = gid
            return gid

    def _memo_put(self, table: dict, key, value):
        cap = self.memo_cap
        if cap is not None and len(table) >= cap and key not in table:
            raise MemoCapExceeded(f"memo table cap of {cap} entries exceeded")
        table[key] = value
        return value

    def __len__(self) -> int:
        return len(self._left)

    def left_options(self, g: GameId) -> tuple[GameId, ...]:
        return self._left[g]

    def right_options(self, g: GameId) -> tuple[GameId, ...]:
        return self._right[g]

    # ------------------------------------------------------------------
    # ordering
    # ------------------------------------------------------------------

    def leq(self, a: GameId, b: GameId) -> bool:
        """Partial-order test a <= b."""
        if a == b:
            return True
        key = (a, b)
        memo = self._leq
        hit = memo.get(key)
        if hit is not None:
            return hit
        result = True
        for al in self._left[a]:
            if self.leq(b, al):
                result = False
                break
        if result:
            for br in self._right[b]:
                if self.leq(br, a):
                    result = False
                    break
        return self._memo_put(memo, key, result)

    def compare(self, a: GameId, b: GameId) -> Comparison:
        if a == b:
            return Comparison.EQUAL
        if self.leq(a, b):
            return Comparison.LESS
        if self.leq(b, a):
            return Comparison.GREATER
        return Comparison.CONFUSED

    def outcome(self, g: GameId) -> Outcome:
        """Normal-play outcome class with alternating perfect play."""
        ge = self.leq(self.zero, g)
        le = self.leq(g, self.zero)
        if ge and le:
            return Outcome.SECOND_WINS
        if ge:
            return Outcome.LEFT_WINS
        if le:
            return Outcome.RIGHT_WINS
        return Outcome.FIRST_WINS

    # ------------------------------------------------------------------
    # construction
    # ------------------------------------------------------------------

    def make_game(self, left_options: Iterable[GameId], right_options: Iterable[GameId]) -> GameId:
        """Intern the canonical form of the game with the given option sets."""
        left = tuple(sorted(set(left_options)))
        right = tuple(sorted(set(right_options)))
        key = (left, right)
        hit = self._canon.get(key)
        if hit is not None:
            return hit
        gid = self._canonicalize(left, right)
        return self._memo_put(self._canon, key, gid)

    def _canonicalize(self, left: tuple, right: tuple) -> GameId:
        for _ in range(_CANON_ITER_LIMIT):
            left = self._maximal(left)
            right = self._minimal(right)
            replaced = self._bypass_left(left, right)
            if replaced is not None:
                left = tuple(sorted(set(replaced)))
                continue
            replaced = self._bypass_right(left, right)
            if replaced is not None:
                right = tuple(sorted(set(replaced)))
                continue
            return self._intern(left, right)
        raise EngineError("canonicalization did not converge")

    def _maximal(self, opts: tuple) -> tuple:
        if len(opts) <= 1:
            return opts
        leq = self.leq
        return tuple(x for x in opts if not any(x != y and leq(x, y) for y in opts))

    def _minimal(self, opts: tuple) -> tuple:
        if len(opts) <= 1:
            return opts
        leq = self.leq
        return tuple(x for x in opts if not any(x != y and leq(y, x) for y in opts))

    def _bypass_left(self, left: tuple, right: tuple):
        # A Left option l reverses out through any Right response lr <= {left|right};
        # it is replaced by lr's Left options.
        for i, l in enumerate(left):
            for lr in self._right[l]:
                if self._leq_id_raw(lr, left, right):
                    return left[:i] + left[i + 1:] + self._left[lr]
        return None

    def _bypass_right(self, left: tuple, right: tuple):
        for i, r in enumerate(right):
            for rl in self._left[r]:
                if self._leq_raw_id(left, right, rl):
                    return right[:i] + right[i + 1:] + self._right[rl]
        return None

    def _leq_id_raw(self, x: GameId, left: tuple, right: tuple) -> bool:
        # x <= {left|right} where the right-hand game is not yet interned
        for xl in self._left[x]:
            if self._leq_raw_id(left, right, xl):
                return False
        for gr in right:
            if self.leq(gr, x):
                return False
        return True

    def _leq_raw_id(self, left: tuple, right: tuple, x: GameId) -> bool:
        # {left|right} <= x
        for gl in left:
            if self.leq(x, gl):
                return False
        for xr in self._right[x]:
            if self._leq_id_raw(xr, left, right):
                return False
        return True

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------

    def add(self, a: GameId, b: GameId) -> GameId:
        """Disjunctive sum."""
        if a > b:
            a, b = b, a
        if a == self.zero:
            return b
        key = (a, b)
        hit = self._add.get(key)
        if hit is not None:
            return hit
        lefts = [self.add(al, b) for al in self._left[a]]
        lefts += [self.add(a, bl) for bl in self._left[b]]
        rights = [self.add(ar, b) for ar in self._right[a]]
        rights += [self.add(a, br) for br in self._right[b]]
        return self._memo_put(self._add, key, self.make_game(lefts, rights))

    def negate(self, g: GameId) -> GameId:
        hit = self._neg.get(g)
        if hit is not None:
            return hit
        left = tuple(sorted(self.negate(r) for r in self._right[g]))
        right = tuple(sorted(self.negate(l) for l in self._left[g]))
        # negation of a canonical game is canonical, so intern directly
        neg = self._intern(left, right)
        self._memo_put(self._neg, g, neg)
        self._memo_put(self._neg, neg, g)
        return neg

    def sub(self, a: GameId, b: GameId) -> GameId:
        return self.add(a, self.negate(b))

    # ------------------------------------------------------------------
    # structure predicates
    # ------------------------------------------------------------------

    def birthday(self, g: GameId) -> int:
        hit = self._birthday.get(g)
        if hit is not None:
            return hit
        opts = self._left[g] + self._right[g]
        b = 1 + max((self.birthday(o) for o in opts), default=-1)
        return self._memo_put(self._birthday, g, b)

    def is_all_small(self, g: GameId) -> bool:
        """True when every subposition has both or neither player able to move."""
        hit = self._all_small.get(g)
        if hit is not None:
            return hit
        left, right = self._left[g], self._right[g]
        if bool(left) != bool(right):
            result = False
        else:
            result = all(self.is_all_small(o) for o in left) and all(
                self.is_all_small(o) for o in right
            )
        return self._memo_put(self._all_small, g, result)

    # ------------------------------------------------------------------
    # named values
    # ------------------------------------------------------------------

    def number_value(self, g: GameId) -> Optional[Fraction]:
        """The dyadic rational g equals, or None when g is not a number."""
        memo = self._number
        if g in memo:
            return memo[g]
        left, right = self._left[g], self._right[g]
        result: Optional[Fraction]
        if not left and not right:
            result = Fraction(0)
        elif len(left) > 1 or len(right) > 1:
            result = None
        elif not right:
            lv = self.number_value(left[0])
            result = lv + 1 if lv is not None and lv.denominator == 1 and lv >= 0 else None
        elif not left:
            rv = self.number_value(right[0])
            result = rv - 1 if rv is not None and rv.denominator == 1 and rv <= 0 else None
        else:
            lv = self.number_value(left[0])
            rv = self.number_value(right[0])
            if lv is None or rv is None or not lv < rv:
                result = None
            else:
                result = _simplest_between(lv, rv)
        return self._memo_put(memo, g, result)

    def integer_value(self, g: GameId) -> Optional[int]:
        fr = self.number_value(g)
        if fr is None or fr.denominator != 1:
            return None
        return fr.numerator

    def number_game(self, value) -> GameId:
        """Canonical game equal to the dyadic rational ``value``."""
        fr = Fraction(value)
        hit = self._number_games.get(fr)
        if hit is not None:
            return hit
        if fr == 0:
            g = self.zero
        elif fr.denominator == 1:
            n = fr.numerator
            if n > 0:
                g = self.make_game([self.number_game(n - 1)], [])
            else:
                g = self.make_game([], [self.number_game(n + 1)])
        else:
            step = Fraction(1, fr.denominator)
            g = self.make_game([self.number_game(fr - step)], [self.number_game(fr + step)])
        return self._memo_put(self._number_games, fr, g)

    def nimber_order(self, g: GameId) -> Optional[int]:
        """k when g == *k (k == 0 meaning g == 0), else None."""
        memo = self._nimber
        if g in memo:
            return memo[g]
        left, right = self._left[g], self._right[g]
        result: Optional[int]
        if not left and not right:
            result = 0
        elif left != right:
            result = None
        else:
            orders = set()
            result = len(left)
            for o in left:
                k = self.nimber_order(o)
                if k is None:
                    result = None
                    break
                orders.add(k)
            if result is not None and orders != set(range(result)):
                result = None
        return self._memo_put(memo, g, result)

    def nimber_game(self, order: int) -> GameId:
        if order < 0:
            raise ValueError("nimber order must be nonnegative")
        hit = self._nimber_games.get(order)
        if hit is not None:
            return hit
        if order == 0:
            g = self.zero
        else:
            opts = [self.nimber_game(k) for k in range(order)]
            g = self.make_game(opts, opts)
        return self._memo_put(self._nimber_games, order, g)

    def ups_game(self, count: int, plus_star: bool = False) -> GameId:
        """count copies of up (negative counts give downs), plus * if asked."""
        key = (count, plus_star)
        hit = self._ups_games.get(key)
        if hit is not None:
            return hit
        if count == 0:
            g = self.star if plus_star else self.zero
        else:
            base = self.up if count > 0 else self.down
            g = base
            for _ in range(abs(count) - 1):
                g = self.add(g, base)
            if plus_star:
                g = self.add(g, self.star)
        return self._memo_put(self._ups_games, key, g)

    def _up_multiple_of(self, g: GameId) -> Optional[tuple[int, bool]]:
        r = self._ups_pattern(g, True)
        if r is not None:
            return r
        r = self._ups_pattern(g, False)
        if r is not None:
            return (-r[0], r[1])
        return None

    def _ups_pattern(self, g: GameId, positive: bool) -> Optional[tuple[int, bool]]:
        # canonical shapes: n.up = {0 | (n-1).up*}, n.up* = {0 | (n-1).up}, n >= 2
        if positive:
            if g == self.up:
                return (1, False)
            if g == self.up_star:
                return (1, True)
            if self._left[g] == (self.zero,) and len(self._right[g]) == 1:
                sub = self._ups_pattern(self._right[g][0], True)
                if sub is not None and sub[0] >= 1:
                    return (sub[0] + 1, not sub[1])
        else:
            if g == self.down:
                return (1, False)
            if g == self.down_star:
                return (1, True)
            if self._right[g] == (self.zero,) and len(self._left[g]) == 1:
                sub = self._ups_pattern(self._left[g][0], False)
                if sub is not None and sub[0] >= 1:
                    return (sub[0] + 1, not sub[1])
        return None

    def name_value(self, g: GameId) -> ValueName:
        """Classify g, verifying every non-Other name by reconstruction."""
        hit = self._names.get(g)
        if hit is not None:
            return hit
        name = self._compute_name(g)
        return self._memo_put(self._names, g, name)

    def _compute_name(self, g: GameId) -> ValueName:
        fr = self.number_value(g)
        if fr is not None and self.number_game(fr) == g:
            d = DyadicRational.from_fraction(fr)
            return ValueName("number", text=str(d), number=d)
        k = self.nimber_order(g)
        if k is not None and k >= 1 and self.nimber_game(k) == g:
            return ValueName("nimber", text="*" if k == 1 else f"*{k}", nimber_order=k)
        um = self._up_multiple_of(g)
        if um is not None and self.ups_game(um[0], um[1]) == g:
            return ValueName(
                "ups", text=_ups_text(um[0], um[1]), up_count=um[0], plus_star=um[1]
            )
        return ValueName("other", text=self._render_braces(g))

    def render(self, g: GameId) -> str:
        return self.name_value(g).text

    def canonical_text(self, g: GameId) -> str:
        """Brace form of the canonical tree, with named subgames abbreviated."""
        return self._render_braces(g)

    def _render_braces(self, g: GameId) -> str:
        lefts = ",".join(self.render(o) for o in self._left[g])
        rights = ",".join(self.render(o) for o in self._right[g])
        return "{%s|%s}" % (lefts, rights)
