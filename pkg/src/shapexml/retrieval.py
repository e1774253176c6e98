"""Descriptor store, ranked queries and the K-reference matching benchmark."""

from __future__ import annotations

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .descriptor import ShapeDescriptor, read_descriptor
from .errors import (
    AllFilesInvalid,
    DirectoryUnreadable,
    EmptyStore,
    InsufficientClassMembers,
    ShapeXmlError,
)
from .matching import CostModel, global_filter, global_signature, shape_distance

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class StoreEntry:
    name: str
    label: str
    descriptor: ShapeDescriptor


@dataclass(frozen=True)
class DescriptorStore:
    root: Path | None
    entries: tuple[StoreEntry, ...]
    warnings: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(sorted(self.entries, key=lambda e: e.name)))
        names = [e.name for e in self.entries]
        if len(set(names)) != len(names):
            raise ValueError("store entry names must be unique")

    def __len__(self) -> int:
        return len(self.entries)

    def by_label(self) -> dict[str, list[StoreEntry]]:
        groups = defaultdict(list)
        for e in self.entries:
            groups[e.label].append(e)
        return dict(sorted(groups.items()))

    def subset(self, names) -> "DescriptorStore":
        keep = set(names)
        return DescriptorStore(self.root, tuple(e for e in self.entries if e.name in keep))


def class_label(name: str, separator: str = "-") -> str:
    return name.split(separator, 1)[0]


def build_store(root, separator: str = "-") -> DescriptorStore:
    """Load every ``*.xml`` under ``root``; unparseable files become warnings."""
    root = Path(root)
    try:
        files = sorted(p for p in root.iterdir() if p.suffix.lower() == ".xml" and p.is_file())
    except OSError as exc:
        raise DirectoryUnreadable(f"{root}: {exc}") from None
    entries, warnings = [], []
    for path in files:
        try:
            d = read_descriptor(path)
        except (ShapeXmlError, OSError) as exc:
            msg = f"{path.name}: {type(exc).__name__}: {exc}"
            log.warning("skipping %s", msg)
            warnings.append(msg)
            continue
        entries.append(StoreEntry(path.stem, class_label(path.stem, separator), d))
    if not entries:
        raise AllFilesInvalid(f"no valid descriptor files in {root}")
    return DescriptorStore(root, tuple(entries), tuple(warnings))


@dataclass(frozen=True)
class QueryResult:
    hits: list[tuple[str, float]]
    fallback: bool  # True when nothing passed the global filter


def query(
    store: DescriptorStore,
    q: ShapeDescriptor,
    top_n: int = 10,
    tol: int = 1,
    mode: str = "per-curve-best",
    cm: CostModel = CostModel(),
) -> QueryResult:
    """Rank store entries by shape distance to ``q``.

    Only entries passing the global filter are ranked, unless none pass, in
    which case everything is ranked and ``fallback`` is set. Among equal
    distances an entry with exactly the query's curve sequence comes first,
    since the per-curve-best mean also reaches zero for shapes that merely
    repeat or drop copies of the same curves. Remaining ties go by name.
    """
    if len(store) == 0:
        raise EmptyStore("cannot query an empty store")
    sig = global_signature(q)
    pool = [e for e in store.entries if global_filter(sig, global_signature(e.descriptor), tol)]
    fallback = not pool
    if fallback:
        pool = list(store.entries)
    scored = [
        (shape_distance(q, e.descriptor, cm, mode, tol).shape_distance, e.descriptor.curves != q.curves, e.name)
        for e in pool
    ]
    scored.sort()
    return QueryResult([(name, dist) for dist, _, name in scored[: max(top_n, 0)]], fallback)


@dataclass(frozen=True)
class BenchmarkConfig:
    k: int = 3
    iterations: int = 10
    seed: int = 0
    tol: int = 1
    mode: str = "per-curve-best"

    def __post_init__(self):
        if self.k < 1 or self.iterations < 1:
            raise ValueError("k and iterations must be >= 1")


@dataclass
class BenchmarkReport:
    percentages: dict[int, float] = field(default_factory=dict)
    per_iteration: dict[int, list[float]] = field(default_factory=dict)
    queries: dict[int, int] = field(default_factory=dict)
    # k -> Counter of (true label, predicted label)
    confusion: dict[int, Counter] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def summary_rows(self) -> list[tuple[int, float]]:
        return sorted(self.percentages.items())

    def iteration_rows(self) -> list[tuple[int, int, float]]:
        return [(k, it, acc) for k, accs in sorted(self.per_iteration.items()) for it, acc in enumerate(accs)]


def run_benchmark(
    store: DescriptorStore,
    cfg: BenchmarkConfig = BenchmarkConfig(),
    k_values=None,
    cm: CostModel = CostModel(),
) -> BenchmarkReport:
    """Percentage of matching for each K.

    Every iteration draws K references per class without replacement; every
    other member of a participating class is queried against the references
    alone and counts as a match when its top-ranked reference shares its
    class. Classes with no more than K members sit out that K.
    """
    k_values = [cfg.k] if k_values is None else list(k_values)
    groups = store.by_label()
    report = BenchmarkReport()
    for k in k_values:
        classes = {lab: members for lab, members in groups.items() if len(members) > k}
        for lab in groups:
            if lab not in classes:
                report.warnings.append(f"k={k}: class {lab!r} has {len(groups[lab])} members, skipped")
        if not classes:
            continue
        accs, confusion, n_queries = [], Counter(), 0
        for it in range(cfg.iterations):
            rng = np.random.default_rng([cfg.seed, k, it])
            refs, queries = [], []
            for lab, members in classes.items():
                chosen = set(rng.choice(len(members), size=k, replace=False).tolist())
                for i, e in enumerate(members):
                    (refs if i in chosen else queries).append(e)
            ref_store = DescriptorStore(store.root, tuple(refs))
            labels = {e.name: e.label for e in refs}
            hits = 0
            for e in queries:
                top = query(ref_store, e.descriptor, top_n=1, tol=cfg.tol, mode=cfg.mode, cm=cm).hits[0][0]
                confusion[(e.label, labels[top])] += 1
                hits += labels[top] == e.label
            accs.append(100.0 * hits / len(queries))
            n_queries += len(queries)
        report.per_iteration[k] = accs
        report.percentages[k] = float(np.mean(accs))
        report.queries[k] = n_queries
        report.confusion[k] = confusion
    if not report.percentages:
        raise InsufficientClassMembers(
            f"no class has more than {min(k_values)} members; nothing to benchmark"
        )
    for w in report.warnings:
        log.warning(w)
    return report
