"""Bound aggregation engine.

``lower_bound`` ascends the self-intersection levels k = 0, 1, 2, ...,
certifying each level obstructed until one survives: level 0 via the
null-class check, higher levels either by a surgery-friend certificate or
by killing every candidate class with the per-class battery (adjunction
bounds first, then the instanton energy check, then the V_s lambda search,
in increasing cost order).  The first unobstructed level is a sound lower
bound because every check is a necessary condition for the disk.

``upper_bound`` takes the minimum over the record's direct constructions
(4 * positive clasp number, 4 * slicing number, explicit witnesses) and
closes it under concordance and connected-sum transfer across the whole
database by a monotone fixed point.

Reports are deterministic: identical inputs and configuration produce
byte-identical serialized output regardless of the parallelism degree.
"""

from __future__ import annotations

import itertools
import warnings as _warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Mapping, Sequence

from .knots import KnotDatabase, KnotRecord, format_rational
from .lattice import HomologyClass, enumerate_classes
from .obstructions import (
    Verdict,
    beta_adjunction,
    friend_rule,
    gamma_general,
    null_class_check,
    vs_obstruction,
)
from .staircase import VsSequence, VsUnavailable, nu_plus, vs_of

ALL_OBSTRUCTIONS = frozenset({"s", "vs", "gamma", "friend"})

DEFAULT_MAX_K = 64


class CyclicRelationWarning(UserWarning):
    """Concordance / connected-sum references form a cycle."""


@dataclass(frozen=True)
class EngineConfig:
    """Search cap, enabled obstruction set, gamma c-sweep, parallelism degree.

    ``max_k = None`` means: cap at the record's upper bound when one is
    known, else at ``DEFAULT_MAX_K``.
    """

    max_k: int | None = None
    obstructions: frozenset[str] = ALL_OBSTRUCTIONS
    gamma_c_sweep: bool = False
    parallelism: int = 1

    def __post_init__(self) -> None:
        if self.max_k is not None and self.max_k < 0:
            raise ValueError("max_k must be non-negative")
        unknown = set(self.obstructions) - ALL_OBSTRUCTIONS
        if unknown:
            raise ValueError(f"unknown obstructions: {sorted(unknown)}")
        if self.parallelism < 1:
            raise ValueError("parallelism must be at least 1")


@dataclass(frozen=True)
class ClassCertificate:
    cls: HomologyClass
    rule: str
    verdict: Verdict


@dataclass(frozen=True)
class LevelCertificate:
    level: int
    kind: str  # "null_class" | "friend" | "classes"
    witness: Mapping[str, object] | None = None
    classes: tuple[ClassCertificate, ...] = ()


@dataclass(frozen=True)
class LowerBoundSearch:
    """Result of the ascending level search: (L, certificates) plus extras."""

    level: int
    exhausted: bool
    surviving_class: HomologyClass | None
    certificates: tuple[LevelCertificate, ...]


@dataclass(frozen=True)
class BoundReport:
    """Certified interval for one knot."""

    knot: str
    lower: int
    lower_exhausted: bool
    upper: int | None
    upper_witness: str | None
    surviving_class: HomologyClass | None
    certificates: tuple[LevelCertificate, ...]

    def __post_init__(self) -> None:
        if self.upper is not None and self.lower > self.upper:
            raise ValueError(
                f"{self.knot}: certified lower bound {self.lower} exceeds upper bound "
                f"{self.upper}; the record data is inconsistent"
            )

    @property
    def display(self) -> str:
        return display_interval(self.lower, self.upper)


def display_interval(lower: int, upper: int | None) -> str:
    if upper is None:
        return f"[{lower},?]"
    if lower == upper:
        return str(lower)
    return f"[{lower},{upper}]"


# --- lower bounds -----------------------------------------------------------


def _beta_items(record: KnotRecord, v: VsSequence | None) -> list[tuple[str, int]]:
    """All adjunction-type scalar bounds stored on the record."""
    items = [(f"s_{p}", record.s_invariants[p]) for p in sorted(record.s_invariants)]
    if record.tau is not None:
        items.append(("2tau", 2 * record.tau))
    if v is not None:
        items.append(("2nu+", 2 * nu_plus(v)))
    return items


def _gamma_c_vectors(n: int, sweep: bool) -> list[tuple[int, ...]]:
    if not sweep:
        return [(0,) * n]
    return sorted(itertools.product((0, 1), repeat=n))


def _vs_or_none(record: KnotRecord) -> VsSequence | None:
    try:
        return vs_of(record)
    except VsUnavailable:
        return None


def _kill_class(
    record: KnotRecord,
    cls: HomologyClass,
    v: VsSequence | None,
    betas: Sequence[tuple[str, int]],
    cfg: EngineConfig,
) -> ClassCertificate | None:
    """First obstruction that kills the class, or None if it survives."""
    if "s" in cfg.obstructions:
        for label, beta in betas:
            vd = beta_adjunction(cls, beta)
            if vd.obstructed:
                return ClassCertificate(cls, f"beta[{label}]", vd)
    if "gamma" in cfg.obstructions and record.gamma:
        for c in _gamma_c_vectors(cls.n, cfg.gamma_c_sweep):
            vd = gamma_general(cls, c, record.signature, record.gamma)
            if vd.obstructed:
                return ClassCertificate(cls, "gamma", vd)
    if "vs" in cfg.obstructions and v is not None:
        vd = vs_obstruction(cls, v)
        if vd.obstructed:
            return ClassCertificate(cls, "vs", vd)
    return None


def _friend_coverage(record: KnotRecord, cfg: EngineConfig) -> tuple[int, Mapping | None]:
    """Highest level k whose friendships certify sd+ > k, as (k + 1, witness).

    A firing friendship at level k obstructs every level <= k, since a
    norm-j disk blows up to a norm-k disk for any k >= j.
    """
    if "friend" not in cfg.obstructions:
        return 0, None
    best = 0
    witness: Mapping | None = None
    for fr in record.friends:
        vd = friend_rule(fr.k, fr.friend_s)
        if vd.obstructed and fr.k + 1 > best:
            best = fr.k + 1
            witness = dict(vd.witness or {}, friend_name=fr.friend_name)
    return best, witness


def lower_bound(record: KnotRecord, cfg: EngineConfig | None = None) -> LowerBoundSearch:
    """Certified lower bound for sd+ of the record's knot.

    Level 0 is always decided by the full null-class check; levels below a
    firing friendship are covered by its certificate; any other level k is
    obstructed only if every class of norm k is killed.  If the cap is
    reached with everything obstructed, returns cap + 1 with
    ``exhausted`` set.
    """
    cfg = cfg or EngineConfig()
    v = _vs_or_none(record)
    betas = _beta_items(record, v)
    cap = cfg.max_k
    if cap is None:
        direct_upper, _ = _direct_upper(record)
        cap = direct_upper if direct_upper is not None else DEFAULT_MAX_K

    friend_cap, friend_witness = _friend_coverage(record, cfg)
    certificates: list[LevelCertificate] = []

    for k in range(0, cap + 1):
        if k < friend_cap:
            certificates.append(LevelCertificate(k, "friend", witness=friend_witness))
            continue
        if k == 0:
            vd = null_class_check(record)
            if vd.obstructed:
                certificates.append(LevelCertificate(0, "null_class", witness=vd.witness))
                continue
            return LowerBoundSearch(0, False, HomologyClass(()), tuple(certificates))
        classes = enumerate_classes(k)
        kills = _map_classes(
            classes,
            lambda cls: _kill_class(record, cls, v, betas, cfg),
            cfg.parallelism,
        )
        survivor = next((cls for cls, kill in zip(classes, kills) if kill is None), None)
        if survivor is not None:
            return LowerBoundSearch(k, False, survivor, tuple(certificates))
        certificates.append(
            LevelCertificate(k, "classes", classes=tuple(kill for kill in kills if kill))
        )
    return LowerBoundSearch(cap + 1, True, None, tuple(certificates))


def _map_classes(classes, fn, parallelism: int):
    if parallelism <= 1 or len(classes) <= 1:
        out = []
        for cls in classes:
            kill = fn(cls)
            out.append(kill)
            if kill is None:
                # survivor found; remaining verdicts are irrelevant to the report
                out.extend(None for _ in range(len(classes) - len(out)))
                break
        return out
    with ThreadPoolExecutor(max_workers=parallelism) as pool:
        return list(pool.map(fn, classes))


# --- upper bounds -----------------------------------------------------------


def _direct_upper(record: KnotRecord) -> tuple[int | None, str | None]:
    """Best record-local construction, ignoring cross-record transfer."""
    candidates: list[tuple[int, str]] = []
    if record.clasp_plus is not None:
        candidates.append((4 * record.clasp_plus, f"4*clasp_plus = {4 * record.clasp_plus}"))
    if record.slicing_number is not None:
        candidates.append(
            (4 * record.slicing_number, f"4*slicing_number = {4 * record.slicing_number}")
        )
    for w in record.upper_witnesses:
        candidates.append((w.k, f"witness: {w.description}" if w.description else "witness"))
    if not candidates:
        return None, None
    best = min(c[0] for c in candidates)
    desc = next(d for val, d in candidates if val == best)
    return best, desc


def _relation_cycle(records: Mapping[str, KnotRecord]) -> list[str] | None:
    graph = {
        name: [t for t in ((r.concordant_to,) if r.concordant_to else ()) if t in records]
        + [t for t in (r.connected_sum_of or ()) if t in records]
        for name, r in records.items()
    }
    state: dict[str, int] = {}
    stack: list[str] = []

    def visit(node: str) -> list[str] | None:
        state[node] = 1
        stack.append(node)
        for nxt in graph[node]:
            if state.get(nxt, 0) == 1:
                return stack[stack.index(nxt):] + [nxt]
            if state.get(nxt, 0) == 0:
                found = visit(nxt)
                if found:
                    return found
        stack.pop()
        state[node] = 2
        return None

    for name in records:
        if state.get(name, 0) == 0:
            found = visit(name)
            if found:
                return found
    return None


def _upper_fixpoint(records: Mapping[str, KnotRecord]) -> dict[str, tuple[int | None, str | None]]:
    best: dict[str, tuple[int | None, str | None]] = {
        name: _direct_upper(r) for name, r in records.items()
    }
    cycle = _relation_cycle(records)
    if cycle:
        _warnings.warn(
            f"concordance/connected-sum references cycle: {' -> '.join(cycle)}",
            CyclicRelationWarning,
            stacklevel=3,
        )
    changed = True
    while changed:
        changed = False
        for name, record in records.items():
            current = best[name][0]
            if record.concordant_to and record.concordant_to in best:
                via, _ = best[record.concordant_to]
                if via is not None and (current is None or via < current):
                    best[name] = (via, f"concordant to {record.concordant_to} (<= {via})")
                    current = via
                    changed = True
            if record.connected_sum_of:
                parts = [best.get(n, (None, None))[0] for n in record.connected_sum_of]
                if all(p is not None for p in parts):
                    total = sum(parts)  # type: ignore[arg-type]
                    if current is None or total < current:
                        best[name] = (
                            total,
                            "connected sum "
                            + " + ".join(record.connected_sum_of)
                            + f" (<= {total})",
                        )
                        changed = True
    return best


def upper_bound(record: KnotRecord, db: KnotDatabase | None = None) -> tuple[int | None, str | None]:
    """Least upper bound for sd+ from constructions and relation transfer.

    The minimum over 4*clasp_plus, 4*slicing_number, explicit witnesses,
    the upper bound of a concordant knot, and the sum over connected-sum
    summands, closed under transfer across ``db`` by a monotone fixed
    point.  Returns (None, None) when no source applies.
    """
    records: dict[str, KnotRecord] = dict(db.records) if db else {}
    records[record.name] = record
    return _upper_fixpoint(records)[record.name]


# --- tables -----------------------------------------------------------------


@dataclass(frozen=True)
class BetaTableRow:
    beta: int
    min_k: int
    witness: HomologyClass


def beta_table(betas: Sequence[int]) -> list[BetaTableRow]:
    """For each beta, the first level with a class surviving the adjunction bound.

    The witness is the first surviving class in the canonical enumeration
    order (descending tuples, lexicographically descending).
    """
    if not betas:
        raise ValueError("betas must be non-empty")
    rows = []
    for beta in betas:
        if beta <= 0:
            rows.append(BetaTableRow(beta, 0, HomologyClass(())))
            continue
        k = 1
        while True:
            hit = next(
                (cls for cls in enumerate_classes(k) if beta <= cls.norm - sum(cls.a)), None
            )
            if hit is not None:
                rows.append(BetaTableRow(beta, k, hit))
                break
            k += 1
    return rows


@dataclass(frozen=True)
class TableRow:
    name: str
    lower: int | None
    upper: int | None
    display: str
    error: str | None = None


def bound_report(
    record: KnotRecord, db: KnotDatabase | None = None, cfg: EngineConfig | None = None
) -> BoundReport:
    cfg = cfg or EngineConfig()
    upper, upper_witness = upper_bound(record, db)
    effective = cfg
    if cfg.max_k is None:
        effective = replace(cfg, max_k=upper if upper is not None else DEFAULT_MAX_K)
    search = lower_bound(record, effective)
    return BoundReport(
        knot=record.name,
        lower=search.level,
        lower_exhausted=search.exhausted,
        upper=upper,
        upper_witness=upper_witness,
        surviving_class=search.surviving_class,
        certificates=search.certificates,
    )


def report_table(db: KnotDatabase, cfg: EngineConfig | None = None) -> list[TableRow]:
    """Per-record intervals over the whole database, failures reported inline."""
    cfg = cfg or EngineConfig()
    uppers = _upper_fixpoint(dict(db.records))
    rows = []
    for record in db:
        try:
            upper, _ = uppers[record.name]
            effective = cfg
            if cfg.max_k is None:
                effective = replace(cfg, max_k=upper if upper is not None else DEFAULT_MAX_K)
            search = lower_bound(record, effective)
            if upper is not None and search.level > upper:
                raise ValueError(
                    f"certified lower bound {search.level} exceeds upper bound {upper}"
                )
            rows.append(
                TableRow(record.name, search.level, upper, display_interval(search.level, upper))
            )
        except Exception as exc:
            rows.append(TableRow(record.name, None, None, "error", error=str(exc)))
    return rows


# --- serialization ----------------------------------------------------------


def _jsonable(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, HomologyClass):
        return list(value.a)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, Mapping):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return value


def report_to_jsonable(report: BoundReport) -> dict:
    """BoundReport as plain JSON data, deterministic field order."""
    certs = []
    for cert in report.certificates:
        entry: dict[str, object] = {"level": cert.level, "kind": cert.kind}
        if cert.witness is not None:
            entry["witness"] = _jsonable(cert.witness)
        if cert.classes:
            entry["classes"] = [
                {
                    "class": list(c.cls.a),
                    "rule": c.rule,
                    "witness": _jsonable(c.verdict.witness),
                }
                for c in cert.classes
            ]
        certs.append(entry)
    return {
        "name": report.knot,
        "lower": report.lower,
        "lower_exhausted": report.lower_exhausted,
        "upper": report.upper,
        "upper_witness": report.upper_witness,
        "surviving_class": list(report.surviving_class.a) if report.surviving_class else None,
        "interval": report.display,
        "certificates": certs,
    }
