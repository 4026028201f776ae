"""Verification suites: recompute the known results and report on them.

Each check returns a CheckReport holding per-instance rows.  A row with
``ok`` True/False participates in the pass/fail verdict; a row with ``ok``
None is informational only (instances outside any proved range).  Engine
results are cross-checked against the brute-force Oracle wherever the
instance fits the oracle budget; a disagreement there is not a "failed
row" but an engine defect, so it raises CrossCheckFailure immediately.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

from .cgt import Comparison, EngineError, Outcome
from .atomic import StarOrder
from .families import FamilyKind, FamilySpec, build
from .graphs import connected_graphs
from .rules import (
    EngineContext,
    Player,
    Variant,
    make_context,
    variant_moves,
)


class CrossCheckFailure(EngineError):
    """Engine and brute-force oracle disagreed on an instance."""


@dataclass(frozen=True)
class CheckRow:
    instance: str
    computed: str
    expected: Optional[str] = None
    ok: Optional[bool] = None  # None: informational, no assertion made
    note: str = ""


@dataclass
class CheckReport:
    name: str
    scope: str
    rows: list[CheckRow] = field(default_factory=list)
    passed: bool = True
    elapsed_s: float = 0.0

    def finish(self) -> "CheckReport":
        self.passed = all(row.ok is not False for row in self.rows)
        return self

    def to_dict(self) -> dict:
        d = self.stable_dict()
        d["elapsed_s"] = round(self.elapsed_s, 3)
        return d

    def stable_dict(self) -> dict:
        """Deterministic form: everything except timing."""
        return {
            "name": self.name,
            "scope": self.scope,
            "passed": self.passed,
            "rows": [
                {
                    "instance": r.instance,
                    "computed": r.computed,
                    "expected": r.expected,
                    "ok": r.ok,
                    "note": r.note,
                }
                for r in self.rows
            ],
        }


def format_report(report: CheckReport) -> str:
    lines = [
        f"[{'PASS' if report.passed else 'FAIL'}] {report.name} ({report.scope}) "
        f"[{report.elapsed_s:.2f}s]"
    ]
    for r in report.rows:
        if r.ok is None:
            mark = "info"
        else:
            mark = "ok" if r.ok else "FAIL"
        exp = f" expected {r.expected}" if r.expected is not None else ""
        note = f"  ({r.note})" if r.note else ""
        lines.append(f"  {mark:4} {r.instance}: {r.computed}{exp}{note}")
    return "\n".join(lines)


# ----------------------------------------------------------------------
# oracle budget
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class OracleBudget:
    """Largest instance per family the brute-force referee is asked to replay."""

    path_to: int = 12
    cycle_to: int = 12
    complete_to: int = 6
    wheel_to: int = 6

    def covers(self, spec: FamilySpec) -> bool:
        limit = {
            FamilyKind.PATH: self.path_to,
            FamilyKind.CYCLE: self.cycle_to,
            FamilyKind.COMPLETE: self.complete_to,
            FamilyKind.WHEEL: self.wheel_to,
        }.get(spec.kind)
        return limit is not None and spec.a <= limit


def _cross_check(ctx: EngineContext, spec: FamilySpec, variant: Variant,
                 computed: Outcome, budget: OracleBudget) -> bool:
    if not budget.covers(spec):
        return False
    actual = ctx.oracle.outcome(build(spec), variant)
    if actual is not computed:
        raise CrossCheckFailure(
            f"{variant.value} {spec}: engine says {computed.value}, "
            f"oracle says {actual.value}"
        )
    return True


# ----------------------------------------------------------------------
# winner theorems
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class WinnerClaim:
    start: int
    excluded: frozenset[int]
    winner: Outcome

    def applies(self, n: int) -> bool:
        return n >= self.start and n not in self.excluded


WINNER_CLAIMS: dict[tuple[Variant, FamilyKind], WinnerClaim] = {
    (Variant.CLASSIC, FamilyKind.PATH): WinnerClaim(5, frozenset(), Outcome.LEFT_WINS),
    (Variant.CLASSIC, FamilyKind.CYCLE): WinnerClaim(3, frozenset({5}), Outcome.LEFT_WINS),
    (Variant.CLASSIC, FamilyKind.WHEEL): WinnerClaim(3, frozenset({5}), Outcome.LEFT_WINS),
    (Variant.CLASSIC, FamilyKind.COMPLETE): WinnerClaim(3, frozenset(), Outcome.LEFT_WINS),
    (Variant.FORBIDDEN_LEAF, FamilyKind.PATH): WinnerClaim(8, frozenset({11}), Outcome.RIGHT_WINS),
    (Variant.FORBIDDEN_LEAF, FamilyKind.CYCLE): WinnerClaim(8, frozenset({11}), Outcome.RIGHT_WINS),
    (Variant.FORBIDDEN_LEAF, FamilyKind.COMPLETE): WinnerClaim(5, frozenset(), Outcome.LEFT_WINS),
    (Variant.MUTUAL_FAILURES, FamilyKind.PATH): WinnerClaim(9, frozenset(), Outcome.LEFT_WINS),
    (Variant.MUTUAL_FAILURES, FamilyKind.CYCLE): WinnerClaim(10, frozenset(), Outcome.LEFT_WINS),
    (Variant.MUTUAL_FAILURES, FamilyKind.WHEEL): WinnerClaim(10, frozenset(), Outcome.LEFT_WINS),
    (Variant.MUTUAL_FAILURES, FamilyKind.COMPLETE): WinnerClaim(5, frozenset(), Outcome.LEFT_WINS),
}

_FAMILY_FLOOR = {
    FamilyKind.PATH: 2,
    FamilyKind.CYCLE: 3,
    FamilyKind.WHEEL: 3,
    FamilyKind.COMPLETE: 2,
}


def check_winners(ctx: EngineContext, variant: Variant, family: FamilyKind,
                  lo: int, hi: int,
                  budget: OracleBudget = OracleBudget()) -> CheckReport:
    """Outcomes across a family range, asserted where a theorem applies."""
    t0 = time.perf_counter()
    claim = WINNER_CLAIMS.get((variant, family))
    report = CheckReport(
        name=f"winners {variant.value} {family.value}",
        scope=f"n={lo}..{hi}",
    )
    lo = max(lo, _FAMILY_FLOOR[family])
    for n in range(lo, hi + 1):
        spec = FamilySpec(family, n)
        outcome = ctx.engine.outcome_of(build(spec), variant)
        checked = _cross_check(ctx, spec, variant, outcome, budget)
        note = "oracle agrees" if checked else ""
        if claim is not None and claim.applies(n):
            report.rows.append(CheckRow(
                instance=str(spec),
                computed=outcome.value,
                expected=claim.winner.value,
                ok=outcome is claim.winner,
                note=note,
            ))
        else:
            report.rows.append(CheckRow(
                instance=str(spec), computed=outcome.value, note=note,
            ))
    report.elapsed_s = time.perf_counter() - t0
    return report.finish()


# ----------------------------------------------------------------------
# atomic weight table and formula
# ----------------------------------------------------------------------

def check_table_aw(ctx: EngineContext, max_n: int) -> CheckReport:
    """Atomic weights of mutual-failures paths against the closed form.

    Expected values: 0 for n in {2,3,4}, then ceil(n/4) - 1 from n = 5 on
    (which also reproduces the published n <= 12 table).
    """
    t0 = time.perf_counter()
    report = CheckReport(name="table-aw", scope=f"n=2..{max_n}")
    for n in range(2, max_n + 1):
        expected = 0 if n < 5 else math.ceil(n / 4) - 1
        value = ctx.engine.game_of(build(FamilySpec(FamilyKind.PATH, n)),
                                   Variant.MUTUAL_FAILURES)
        aw = ctx.atomic.atomic_weight(value)
        computed = str(aw.integer) if aw.is_integer else ctx.store.render(aw.value)
        report.rows.append(CheckRow(
            instance=f"path {n}",
            computed=computed,
            expected=str(expected),
            ok=aw.is_integer and aw.integer == expected,
        ))
    report.elapsed_s = time.perf_counter() - t0
    return report.finish()


# ----------------------------------------------------------------------
# sign corollaries
# ----------------------------------------------------------------------

def check_path_value_signs(ctx: EngineContext, variant: Variant,
                           max_n: int) -> CheckReport:
    """Classic path values are never negative; forbidden-leaf never positive."""
    if variant is Variant.CLASSIC:
        banned = Comparison.LESS
        label = "not < 0"
    elif variant is Variant.FORBIDDEN_LEAF:
        banned = Comparison.GREATER
        label = "not > 0"
    else:
        raise ValueError("sign corollaries exist for classic and fl only")
    t0 = time.perf_counter()
    report = CheckReport(
        name=f"path-signs {variant.value}", scope=f"n=2..{max_n}"
    )
    zero = ctx.store.zero
    for n in range(2, max_n + 1):
        value = ctx.engine.game_of(build(FamilySpec(FamilyKind.PATH, n)), variant)
        cmp = ctx.store.compare(value, zero)
        report.rows.append(CheckRow(
            instance=f"path {n}",
            computed=f"vs 0: {cmp.value}",
            expected=label,
            ok=cmp is not banned,
        ))
    report.elapsed_s = time.perf_counter() - t0
    return report.finish()


# ----------------------------------------------------------------------
# far-star behavior of mutual-failures paths
# ----------------------------------------------------------------------

def check_farstar_paths(ctx: EngineContext, max_n: int) -> CheckReport:
    """From n = 5 on, mutual-failures paths exceed every remote star and
    carry atomic weight >= 1.  Smaller paths are reported informationally."""
    t0 = time.perf_counter()
    report = CheckReport(name="farstar-paths", scope=f"n=2..{max_n}")
    for n in range(2, max_n + 1):
        value = ctx.engine.game_of(build(FamilySpec(FamilyKind.PATH, n)),
                                   Variant.MUTUAL_FAILURES)
        order = ctx.atomic.remote_star_order(value)
        aw = ctx.atomic.atomic_weight(value)
        aw_txt = str(aw.integer) if aw.is_integer else ctx.store.render(aw.value)
        computed = f"{order.value}, AW={aw_txt}"
        if n >= 5:
            ok = order is StarOrder.GREATER and aw.is_integer and aw.integer >= 1
            report.rows.append(CheckRow(
                instance=f"path {n}", computed=computed,
                expected="Greater, AW>=1", ok=ok,
            ))
        else:
            report.rows.append(CheckRow(instance=f"path {n}", computed=computed))
    report.elapsed_s = time.perf_counter() - t0
    return report.finish()


# ----------------------------------------------------------------------
# move-availability bias
# ----------------------------------------------------------------------

def check_bias_props(ctx: EngineContext, max_vertices: int) -> CheckReport:
    """Exhaustive over connected graphs: classic Right-movable implies
    Left-movable, and forbidden-leaf Left-movable implies Right-movable."""
    t0 = time.perf_counter()
    report = CheckReport(name="bias-props", scope=f"connected graphs, n<={max_vertices}")
    reps = connected_graphs(max_vertices)
    for n in sorted(reps):
        classic_bad = []
        fl_bad = []
        for g in reps[n]:
            right_ok = bool(variant_moves(g, Player.RIGHT, Variant.CLASSIC,
                                          max_vertices).results)
            left_ok = bool(variant_moves(g, Player.LEFT, Variant.CLASSIC,
                                         max_vertices).results)
            if right_ok and not left_ok:
                classic_bad.append(g)
            fl_left = bool(variant_moves(g, Player.LEFT, Variant.FORBIDDEN_LEAF,
                                         max_vertices).results)
            if fl_left and not right_ok:
                fl_bad.append(g)
        ok = not classic_bad and not fl_bad
        note = ""
        if not ok:
            note = f"{len(classic_bad)} classic / {len(fl_bad)} fl counterexamples"
        report.rows.append(CheckRow(
            instance=f"n={n} ({len(reps[n])} graphs)",
            computed="no counterexamples" if ok else "counterexamples found",
            expected="no counterexamples",
            ok=ok,
            note=note,
        ))
    report.elapsed_s = time.perf_counter() - t0
    return report.finish()


# ----------------------------------------------------------------------
# full run
# ----------------------------------------------------------------------

@dataclass
class VerifyConfig:
    suites: tuple[str, ...] = ("table-aw", "winners", "path-signs", "farstar", "bias")
    table_aw_max_n: int = 12
    signs_max_n: int = 16
    farstar_max_n: int = 12
    bias_max_vertices: int = 6
    winners_variant: Optional[Variant] = None
    winners_family: Optional[FamilyKind] = None
    winners_from: Optional[int] = None
    winners_to: Optional[int] = None
    oracle_budget: OracleBudget = OracleBudget()
    jobs: int = 1


_DEFAULT_WINNER_RANGES: dict[FamilyKind, tuple[int, int]] = {
    FamilyKind.PATH: (2, 16),
    FamilyKind.CYCLE: (3, 14),
    FamilyKind.WHEEL: (3, 8),
    FamilyKind.COMPLETE: (2, 6),
}

SUITE_NAMES = ("table-aw", "winners", "path-signs", "farstar", "bias")


def run_all(config: VerifyConfig, ctx: Optional[EngineContext] = None) -> list[CheckReport]:
    """Run the selected suites and return their reports in a stable order."""
    if ctx is None:
        ctx = make_context()
    tasks: list[Callable[[], CheckReport]] = []
    if "table-aw" in config.suites:
        tasks.append(lambda: check_table_aw(ctx, config.table_aw_max_n))
    if "winners" in config.suites:
        for (variant, family), _claim in WINNER_CLAIMS.items():
            if config.winners_variant is not None and variant is not config.winners_variant:
                continue
            if config.winners_family is not None and family is not config.winners_family:
                continue
            lo, hi = _DEFAULT_WINNER_RANGES[family]
            if config.winners_from is not None:
                lo = config.winners_from
            if config.winners_to is not None:
                hi = config.winners_to
            tasks.append(
                lambda v=variant, f=family, a=lo, b=hi: check_winners(
                    ctx, v, f, a, b, config.oracle_budget
                )
            )
    if "path-signs" in config.suites:
        tasks.append(lambda: check_path_value_signs(ctx, Variant.CLASSIC, config.signs_max_n))
        tasks.append(lambda: check_path_value_signs(
            ctx, Variant.FORBIDDEN_LEAF, config.signs_max_n))
    if "farstar" in config.suites:
        tasks.append(lambda: check_farstar_paths(ctx, config.farstar_max_n))
    if "bias" in config.suites:
        tasks.append(lambda: check_bias_props(ctx, config.bias_max_vertices))

    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            return list(pool.map(lambda t: t(), tasks))
    return [t() for t in tasks]
