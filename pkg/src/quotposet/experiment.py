"""Exhaustive small-scale verification of the implication diagram and the
comparison table between congruence kinds."""

from __future__ import annotations

import os
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterator

from .congruences import (
    ARROWS,
    CHECKERS,
    DIAGRAM_KINDS,
    arrow_premise,
    classify,
    is_compatible,
)
from .errors import TooLarge
from .io import fixture_to_json, partition_to_json
from .partition import Partition, enumerate_partitions
from .poset import Poset, enumerate_posets
from .quotients import is_strong_map, quotient_poset

MATRIX_CAP = 5
DEFAULT_N = 4
WORKERS_ENV = "QUOTPOSET_WORKERS"
CHUNK = 250


def extra_posets() -> list[tuple[str, Poset]]:
    """Named six-element posets searched with all their partitions on top of
    the exhaustive sweep; each separates kinds that smaller posets cannot."""
    from . import families

    return [
        ("stacked_bowties", families.stacked_bowties()),
        ("split_upper_bounds", families.split_upper_bounds()[0]),
        ("uneven_fork", families.uneven_fork()),
        ("hexagon", families.hexagon()),
        ("two_cherries", families.two_cherries()),
    ]


def implied_reach() -> dict[str, set[str]]:
    """Kinds implied by each kind along arrows, using a conditional arrow only
    when its condition follows from the source kind.

    "strong" follows once the source reaches the weak order kind; "zero"
    follows for orbit partitions, where a unique minimum is always fixed.
    """
    reach: dict[str, set[str]] = {}
    for k in DIAGRAM_KINDS:
        seen: set[str] = set()
        changed = True
        while changed:
            changed = False
            for a in ARROWS:
                if a.source != k and a.source not in seen:
                    continue
                if a.condition == "strong" and "weak_order" not in seen | {k}:
                    continue
                if a.condition == "zero" and k != "orbit":
                    continue
                if a.target not in seen:
                    seen.add(a.target)
                    changed = True
        seen.discard(k)
        reach[k] = seen
    return reach


def non_arrow_pairs() -> list[tuple[str, str]]:
    reach = implied_reach()
    return [
        (a, b) for a in DIAGRAM_KINDS for b in DIAGRAM_KINDS if a != b and b not in reach[a]
    ]


@dataclass
class ArrowCheck:
    source: str
    target: str
    condition: str | None
    premise_cases: int = 0
    violations: int = 0
    first_violation: dict | None = None

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "target": self.target,
            "condition": self.condition,
            "premise_cases": self.premise_cases,
            "violations": self.violations,
            "first_violation": self.first_violation,
        }


@dataclass
class SeparationCheck:
    source: str
    target: str
    counterexample_found: bool = False
    smallest_n: int | None = None
    fixture: dict | None = None

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "target": self.target,
            "counterexample_found": self.counterexample_found,
            "smallest_n": self.smallest_n,
            "fixture": self.fixture,
            "status": "separated" if self.counterexample_found else "not separated at this scale",
        }


@dataclass
class MatrixExperimentResult:
    n_max: int
    cases: int
    arrows_checked: list[ArrowCheck]
    non_arrows: list[SeparationCheck]
    seed: int | None = None
    extras: tuple[str, ...] = ()

    @property
    def total_violations(self) -> int:
        return sum(a.violations for a in self.arrows_checked)

    def to_json(self) -> dict:
        return {
            "n_max": self.n_max,
            "seed": self.seed,
            "cases": self.cases,
            "extra_posets": list(self.extras),
            "total_violations": self.total_violations,
            "arrows_checked": [a.to_json() for a in self.arrows_checked],
            "non_arrows": [s.to_json() for s in self.non_arrows],
        }


def _key(seed: int | None, n: int, pi: int, ti: int) -> tuple:
    """Search-order key; the seed reorders which fixture is reported, nothing else.

    Extra posets carry negative indices and sort after enumerated ones of the
    same size."""
    base = (n, pi < 0, abs(pi), ti)
    if seed is None:
        return base
    return (zlib.crc32(f"{seed}:{n}:{pi}:{ti}".encode()),) + base


def _verdict_json(verdicts: dict, kinds: tuple[str, ...]) -> dict:
    return {k: verdicts[k].to_json() for k in kinds}


def _item_posets(n: int, start: int, stop: int) -> Iterator[tuple[int, Poset]]:
    if n < 0:
        # extra poset number ``start``, indexed -1, -2, ...
        yield -(start + 1), extra_posets()[start][1]
        return
    for pi, p in enumerate(enumerate_posets(n)):
        if pi >= stop:
            break
        if pi >= start:
            yield pi, p


def _scan(n: int, start: int, stop: int, seed: int | None, pairs: list[tuple[str, str]]) -> dict:
    """One work item: posets ``start..stop-1`` on ``n`` elements (or one extra
    poset when ``n < 0``), with all partitions."""
    arrows: list[list[Any]] = [[0, 0, None, None] for _ in ARROWS]  # premise, viol, key, fixture
    seps: dict[tuple[str, str], list[Any]] = {}
    cases = 0
    for pi, p in _item_posets(n, start, stop):
        n = p.n
        parts = list(enumerate_partitions(n))
        for ti, t in enumerate(parts):
            cases += 1
            verdicts = classify(p, t, strict=False).verdicts
            for k, arrow in enumerate(ARROWS):
                if not arrow_premise(p, t, verdicts, arrow):
                    continue
                rec = arrows[k]
                rec[0] += 1
                if not verdicts[arrow.target].holds:
                    rec[1] += 1
                    key = _key(seed, n, pi, ti)
                    if rec[2] is None or key < rec[2]:
                        rec[2] = key
                        rec[3] = fixture_to_json(
                            p, t, verdicts=_verdict_json(verdicts, (arrow.source, arrow.target))
                        )
            for a, b in pairs:
                va, vb = verdicts[a], verdicts[b]
                if va.holds and vb.applicable and not vb.holds:
                    key = _key(seed, n, pi, ti)
                    rec = seps.get((a, b))
                    if rec is None:
                        rec = seps[(a, b)] = [n, key, None]
                    rec[0] = min(rec[0], n)
                    if rec[2] is None or key < rec[1]:
                        rec[1] = key
                        rec[2] = fixture_to_json(p, t, verdicts=_verdict_json(verdicts, (a, b)))
    return {"cases": cases, "arrows": arrows, "seps": seps}


def _work_items(n_max: int, extras: bool) -> Iterator[tuple[int, int, int]]:
    for n in range(n_max + 1):
        count = sum(1 for _ in enumerate_posets(n))
        for start in range(0, count, CHUNK):
            yield n, start, min(start + CHUNK, count)
    if extras:
        for k in range(len(extra_posets())):
            yield -1, k, k + 1


def worker_count(workers: int | None = None) -> int:
    if workers is not None:
        return max(1, workers)
    raw = os.environ.get(WORKERS_ENV, "")
    return max(1, int(raw)) if raw.strip().isdigit() else 1


def verify_matrix(
    n_max: int = DEFAULT_N,
    seed: int | None = None,
    workers: int | None = None,
    extras: bool = True,
) -> MatrixExperimentResult:
    """Classify every partition of every labeled poset with at most ``n_max``
    elements (and of the extra posets); count arrow violations and look for
    separating examples of every pair of kinds not linked by a path of arrows."""
    if n_max > MATRIX_CAP:
        raise TooLarge("verify-matrix poset size", n_max, MATRIX_CAP)
    pairs = non_arrow_pairs()
    items = list(_work_items(n_max, extras))
    w = worker_count(workers)
    if w > 1:
        with ProcessPoolExecutor(max_workers=w) as pool:
            futures = [pool.submit(_scan, n, a, b, seed, pairs) for n, a, b in items]
            results = [f.result() for f in futures]
    else:
        results = [_scan(n, a, b, seed, pairs) for n, a, b in items]

    checks = [ArrowCheck(a.source, a.target, a.condition) for a in ARROWS]
    best_arrow: list[Any] = [None] * len(ARROWS)
    seps = {pair: SeparationCheck(*pair) for pair in pairs}
    best_sep: dict[tuple[str, str], Any] = {}
    cases = 0
    for res in results:
        cases += res["cases"]
        for k, (prem, viol, key, fix) in enumerate(res["arrows"]):
            checks[k].premise_cases += prem
            checks[k].violations += viol
            if key is not None and (best_arrow[k] is None or key < best_arrow[k]):
                best_arrow[k] = key
                checks[k].first_violation = fix
        for pair, (n, key, fix) in res["seps"].items():
            s = seps[pair]
            s.counterexample_found = True
            s.smallest_n = n if s.smallest_n is None else min(s.smallest_n, n)
            if pair not in best_sep or key < best_sep[pair]:
                best_sep[pair] = key
                s.fixture = fix
    names = tuple(name for name, _ in extra_posets()) if extras else ()
    return MatrixExperimentResult(n_max, cases, checks, [seps[p] for p in pairs], seed, names)


def replay_separation(fixture: dict, source: str, target: str) -> bool:
    """Re-run both checkers on a stored fixture: source holds, target fails."""
    from .io import fixture_from_json

    p, t = fixture_from_json(fixture)
    vs, vt = CHECKERS[source](p, t), CHECKERS[target](p, t)
    return vs.holds and vt.applicable and not vt.holds


# ----------------------------------------------------------------- table

TABLE_KINDS: tuple[str, ...] = ("equivalence",) + DIAGRAM_KINDS
COLUMNS: tuple[str, ...] = ("self_dual", "preserves_grading", "quotient_map_strong", "closed_under_meet", "lattice")

# Expected entries (self-dual, grading, strong, intersection, lattice).
TABLE: dict[str, tuple[bool, bool, bool, bool, bool]] = {
    "equivalence": (True, False, False, True, False),
    "compatible": (True, False, False, True, False),
    "weak_order": (True, False, True, False, False),
    "iii": (False, False, True, False, False),
    "w_stable": (True, False, False, True, True),
    "order": (True, False, True, False, True),
    "haviar_lihova": (True, False, True, True, True),
    "gk": (True, False, True, False, False),
    "order_autonomous": (True, False, True, True, False),
    "closure": (False, False, True, False, False),
    "orbit": (True, True, True, False, False),
    "contraction": (True, False, False, False, False),
    "kolibiar": (True, False, True, False, True),
    "homogeneous": (False, False, True, False, False),
}


@dataclass
class TableCell:
    kind: str
    column: str
    expected: bool
    cases: int = 0
    failures: int = 0
    fixture: dict | None = None

    @property
    def status(self) -> str:
        if self.expected:
            return "confirmed" if self.failures == 0 else "contradicted"
        return "confirmed" if self.failures else "not separated at this scale"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "column": self.column,
            "expected": self.expected,
            "cases": self.cases,
            "failures": self.failures,
            "status": self.status,
            "fixture": self.fixture,
        }


@dataclass
class TableReport:
    n_max: int
    cells: list[TableCell] = field(default_factory=list)
    extras: tuple[str, ...] = ()

    def cell(self, kind: str, column: str) -> TableCell:
        for c in self.cells:
            if c.kind == kind and c.column == column:
                return c
        raise KeyError((kind, column))

    def to_json(self) -> dict:
        return {
            "n_max": self.n_max,
            "extra_posets": list(self.extras),
            "cells": [c.to_json() for c in self.cells],
        }


class _AlwaysHolds:
    holds = True
    applicable = True


def _verdicts(p: Poset, t: Partition) -> dict:
    v: dict = dict(classify(p, t, strict=False, kinds=DIAGRAM_KINDS).verdicts)
    v["equivalence"] = _AlwaysHolds()
    return v


def _fail(cell: TableCell, p: Poset, t: Partition, **extra: Any) -> None:
    cell.failures += 1
    if cell.fixture is None:
        cell.fixture = fixture_to_json(p, t, kind=cell.kind, column=cell.column, **extra)


def _quotient_graded(p: Poset, t: Partition) -> bool:
    if not is_compatible(p, t):
        return False
    return quotient_poset(p, t, "closure").quotient.grading_info.is_graded


def _quotient_strong(p: Poset, t: Partition) -> bool:
    if not is_compatible(p, t):
        return False
    res = quotient_poset(p, t, "closure")
    return is_strong_map(p, res.quotient, res.class_map)


def _table_posets(n_max: int, extras: bool) -> Iterator[Poset]:
    for n in range(n_max + 1):
        yield from enumerate_posets(n)
    if extras:
        for _, p in extra_posets():
            yield p


def table_checks(n_max: int = DEFAULT_N, extras: bool = True) -> TableReport:
    """Check every cell of the comparison table over all labeled posets with
    at most ``n_max`` elements (and the extra posets): a tick must hold in
    every case, a cross should be witnessed by a counterexample."""
    if n_max > MATRIX_CAP:
        raise TooLarge("table check poset size", n_max, MATRIX_CAP)
    cells = {(k, c): TableCell(k, c, TABLE[k][i]) for k in TABLE_KINDS for i, c in enumerate(COLUMNS)}
    cache: dict[int, tuple[list[Partition], dict[Partition, int]]] = {}
    for p in _table_posets(n_max, extras):
        if p.n not in cache:
            ps = list(enumerate_partitions(p.n))
            cache[p.n] = (ps, {t: i for i, t in enumerate(ps)})
        parts, index = cache[p.n]
        dual = p.dual()
        graded = p.grading_info.is_graded and len(p.components) <= 1
        lattice = p.is_lattice
        here = [_verdicts(p, t) for t in parts]
        there = [_verdicts(dual, t) for t in parts]
        strong = [None] * len(parts)
        grade = [None] * len(parts)
        for ti, t in enumerate(parts):
            for kind in TABLE_KINDS:
                v, w = here[ti][kind], there[ti][kind]
                if v.applicable and w.applicable:
                    cell = cells[(kind, "self_dual")]
                    cell.cases += 1
                    if v.holds != w.holds:
                        _fail(cell, p, t, holds_on_poset=v.holds, holds_on_dual=w.holds)
                if not v.holds:
                    continue
                cell = cells[(kind, "quotient_map_strong")]
                cell.cases += 1
                if strong[ti] is None:
                    strong[ti] = _quotient_strong(p, t)
                if not strong[ti]:
                    _fail(cell, p, t)
                if graded:
                    cell = cells[(kind, "preserves_grading")]
                    cell.cases += 1
                    if grade[ti] is None:
                        grade[ti] = _quotient_graded(p, t)
                    if not grade[ti]:
                        _fail(cell, p, t)
                if lattice:
                    cell = cells[(kind, "lattice")]
                    cell.cases += 1
                    if not CHECKERS["lattice"](p, t).holds:
                        _fail(cell, p, t)
        for kind in TABLE_KINDS:
            good = [ti for ti in range(len(parts)) if here[ti][kind].holds]
            cell = cells[(kind, "closed_under_meet")]
            for x, a in enumerate(good):
                for b in good[x + 1 :]:
                    cell.cases += 1
                    m = parts[a].meet(parts[b])
                    if not here[index[m]][kind].holds:
                        _fail(
                            cell,
                            p,
                            m,
                            operands=[partition_to_json(parts[a]), partition_to_json(parts[b])],
                        )
    names = tuple(name for name, _ in extra_posets()) if extras else ()
    return TableReport(n_max, [cells[(k, c)] for k in TABLE_KINDS for c in COLUMNS], names)
