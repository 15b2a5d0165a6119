"""Erasure sampling, super-stabilizer composition, and effective distance.

Erasures are permanent: once a qubit drops out it stays out for the rest of
the shot. Data-qubit erasures deform the stabilizer group by merging the
generators that shared the lost qubit (Stace-style products, found with a
union-find pass). Ancilla erasures do not deform anything; they only make
measurements unavailable, which the circuit layer handles separately.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from collections import deque

import numpy as np

from .lattice import KINDS, PLAQUETTE, STAR, CodeLayout, StabilizerGen

PER_ROUND = "round"
PER_GATE = "gate"


@dataclass(frozen=True)
class ErasureModel:
    """Per-qubit erasure process.

    ``per round`` mode erases each surviving qubit with probability ``p_e``
    once per syndrome round. ``per gate`` folds ``alpha`` gate slots per
    qubit per round into a single round-level draw of probability
    ``1 - (1 - p_e)**alpha``.
    """

    p_e: float
    mode: str = PER_ROUND
    alpha: int = 1

    def __post_init__(self):
        if not 0.0 <= self.p_e <= 1.0:
            raise ValueError(f"p_e must be a probability, got {self.p_e}")
        if self.mode not in (PER_ROUND, PER_GATE):
            raise ValueError(f"unknown erasure mode {self.mode!r}")
        if self.alpha < 1:
            raise ValueError("alpha must be a positive integer")

    @property
    def round_probability(self) -> float:
        if self.mode == PER_ROUND:
            return self.p_e
        return 1.0 - (1.0 - self.p_e) ** self.alpha


@dataclass(frozen=True)
class ErasureInstance:
    """Sampled erasure timings: which qubits drop out before which round."""

    seed: int
    rounds: int
    events: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for evs in self.events:
            for q in evs:
                if q in seen:
                    raise ValueError(f"qubit {q} erased twice")
                seen.add(q)

    def erased_after(self, round_index: int) -> set[int]:
        """All qubits erased before or at the start of ``round_index``."""
        out: set[int] = set()
        for r in range(min(round_index + 1, self.rounds)):
            out.update(self.events[r])
        return out

    @property
    def total_erased(self) -> int:
        return sum(len(e) for e in self.events)

    def to_text(self) -> str:
        lines = []
        for r, evs in enumerate(self.events):
            lines.append(f"round {r}: " + " ".join(str(q) for q in evs))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, *, seed: int = 0) -> "ErasureInstance":
        events = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            head, _, tail = line.partition(":")
            if not head.startswith("round"):
                raise ValueError(f"bad erasure instance line: {line!r}")
            events.append(tuple(int(tok) for tok in tail.split()))
        return cls(seed=seed, rounds=len(events), events=tuple(events))


class ErasureState:
    """Accumulated erased set while stepping through an instance's rounds."""

    def __init__(self):
        self.erased: set[int] = set()
        self.round_index: int = -1

    def advance(self, instance: ErasureInstance) -> set[int]:
        """Step one round; returns the newly erased qubit ids."""
        self.round_index += 1
        new = set(instance.events[self.round_index])
        if new & self.erased:
            raise ValueError("instance re-erases an already erased qubit")
        self.erased |= new
        return new


def sample_erasure_instance(
    model: ErasureModel,
    layout: CodeLayout,
    rounds: int,
    seed: int,
    qubits: tuple[int, ...] | None = None,
) -> ErasureInstance:
    """Draw erasure timings for every qubit (data and ancilla) of a patch."""
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    qs = np.asarray(layout.all_qubits if qubits is None else qubits, dtype=np.int64)
    p = model.round_probability
    rng = np.random.default_rng(seed)
    alive = np.ones(len(qs), dtype=bool)
    events = []
    for _ in range(rounds):
        if p == 0.0:
            events.append(())
            continue
        hit = alive & (rng.random(len(qs)) < p)
        events.append(tuple(int(q) for q in qs[hit]))
        alive &= ~hit
    return ErasureInstance(seed=seed, rounds=rounds, events=tuple(events))


def expected_erasure_ratio(p_e: float, alpha: int, rounds: int) -> float:
    """Fraction of qubits expected to be erased after ``alpha * rounds`` slots."""
    if not 0.0 <= p_e <= 1.0:
        raise ValueError(f"p_e must be a probability, got {p_e}")
    return 1.0 - (1.0 - p_e) ** (alpha * rounds)


class UnionFind:
    """Union-find over a fixed id universe, path compression + union by rank."""

    def __init__(self, ids):
        self.parent = {i: i for i in ids}
        self.rank = {i: 0 for i in ids}

    def find(self, x):
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return ra

    def groups(self) -> dict:
        out: dict = {}
        for i in self.parent:
            out.setdefault(self.find(i), []).append(i)
        return out


@dataclass(frozen=True)
class MergedGen:
    """A (possibly merged) generator of the deformed group.

    ``constituents`` lists the ideal generators multiplied together;
    ``support`` excludes every erased data qubit.
    """

    gen_id: int
    kind: str
    constituents: tuple[int, ...]
    support: tuple[int, ...]

    @property
    def weight(self) -> int:
        return len(self.support)


@dataclass(frozen=True)
class DeformedStabilizerSet:
    stars: tuple[MergedGen, ...]
    plaquettes: tuple[MergedGen, ...]
    destroyed: bool

    def generators(self, kind: str | None = None) -> tuple[MergedGen, ...]:
        if kind == STAR:
            return self.stars
        if kind == PLAQUETTE:
            return self.plaquettes
        if kind is None:
            return self.stars + self.plaquettes
        raise ValueError(f"unknown generator kind {kind!r}")


def _merge_kind(
    layout: CodeLayout, kind: str, erased: frozenset[int]
) -> tuple[MergedGen, ...]:
    gens = layout.generators(kind)
    uf = UnionFind(g.gen_id for g in gens)
    gens_of = layout.gens_of_qubit[kind]
    for q in erased:
        owners = gens_of.get(q, ())
        for other in owners[1:]:
            uf.union(owners[0], other)
    by_id = layout.gen_by_id
    merged = []
    for _, members in sorted(uf.groups().items()):
        members.sort()
        support = set()
        for gid in members:
            support.update(by_id[gid].support)
        support -= erased
        merged.append(
            MergedGen(
                gen_id=members[0],
                kind=kind,
                constituents=tuple(members),
                support=tuple(sorted(support)),
            )
        )
    return tuple(merged)


def erased_cluster_spans(layout: CodeLayout, erased: set[int], kind: str) -> bool:
    """True when a connected cluster of erased data qubits joins the two
    boundaries that terminate chains of ``kind``.

    A spanning cluster gives the corresponding logical operator a free path,
    i.e. effective distance zero.
    """
    adj = layout.adjacency[kind]
    src, snk = layout.boundary_attach[kind]
    frontier = deque(q for q in erased if q in src)
    seen = set(frontier)
    while frontier:
        q = frontier.popleft()
        if q in snk:
            return True
        for nb in adj[q]:
            if nb in erased and nb not in seen:
                seen.add(nb)
                frontier.append(nb)
    return False


def compose_superstabilizers(
    layout: CodeLayout, erased: set[int]
) -> DeformedStabilizerSet:
    """Regenerate the stabilizer generators for a given erased data set.

    Generators of one kind that share an erased data qubit are unioned;
    each union-find root becomes one merged generator whose support excludes
    the erased qubits. The code is destroyed when an erased cluster spans
    opposite boundaries (equivalently, when a merged generator region
    connects them), leaving a weight-zero logical operator.
    """
    erased_data = frozenset(erased) & layout.data_set
    if erased_data != frozenset(erased):
        bad = set(erased) - layout.data_set
        raise ValueError(f"erased set contains non-data qubits: {sorted(bad)}")
    stars = _merge_kind(layout, STAR, erased_data)
    plaquettes = _merge_kind(layout, PLAQUETTE, erased_data)
    destroyed = erased_cluster_spans(
        layout, set(erased_data), STAR
    ) or erased_cluster_spans(layout, set(erased_data), PLAQUETTE)
    return DeformedStabilizerSet(stars=stars, plaquettes=plaquettes, destroyed=destroyed)


def _chain_search(
    layout: CodeLayout,
    kind: str,
    cost_of,
) -> tuple[float, list[int] | None]:
    """Cheapest boundary-to-boundary chain under a per-qubit cost function.

    Chains of ``kind`` step between data qubits sharing a generator of that
    kind and terminate on the matching boundary pair. Costs are 0 or 1 (or
    None to forbid a qubit), so a deque-based 0-1 BFS is exact.
    """
    adj = layout.adjacency[kind]
    src, snk = layout.boundary_attach[kind]
    INF = float("inf")
    dist: dict[int, float] = {}
    parent: dict[int, int | None] = {}
    dq: deque[int] = deque()
    for q in src:
        c = cost_of(q)
        if c is None:
            continue
        if c < dist.get(q, INF):
            dist[q] = c
            parent[q] = None
            if c == 0:
                dq.appendleft(q)
            else:
                dq.append(q)
    best: tuple[float, int] | None = None
    while dq:
        q = dq.popleft()
        dq_cost = dist[q]
        if best is not None and dq_cost >= best[0]:
            continue
        if q in snk:
            if best is None or dq_cost < best[0]:
                best = (dq_cost, q)
            continue
        for nb in adj[q]:
            c = cost_of(nb)
            if c is None:
                continue
            nd = dq_cost + c
            if nd < dist.get(nb, INF):
                dist[nb] = nd
                parent[nb] = q
                if c == 0:
                    dq.appendleft(nb)
                else:
                    dq.append(nb)
    if best is None:
        return INF, None
    path = []
    node: int | None = best[1]
    while node is not None:
        path.append(node)
        node = parent[node]
    path.reverse()
    return best[0], path


def chain_distance(
    layout: CodeLayout, erased: set[int], kind: str
) -> tuple[int, list[int] | None]:
    """Shortest logical chain length for one kind, erased qubits free.

    Passing through an erased qubit costs nothing: the merged generator
    covering the cluster lets the chain tunnel through, which is exactly how
    super stabilizers shorten logical operators.
    """
    dist, path = _chain_search(
        layout, kind, lambda q: 0 if q in erased else 1
    )
    if path is None:
        # Perpendicular all-erased wall; this kind's dual is destroyed.
        return 0, None
    return int(dist), path


def effective_distance(layout: CodeLayout, erased: set[int]) -> int:
    """Weight of the shortest logical operator of the deformed code.

    Minimum over the Z-type chain (left/right boundaries, star adjacency)
    and X-type chain (top/bottom, plaquette adjacency); 0 when destroyed.
    """
    erased_data = set(erased) & layout.data_set
    if erased_data != set(erased):
        bad = set(erased) - layout.data_set
        raise ValueError(f"erased set contains non-data qubits: {sorted(bad)}")
    dz, _ = chain_distance(layout, erased_data, STAR)
    dx, _ = chain_distance(layout, erased_data, PLAQUETTE)
    return min(dz, dx)


def logical_path(
    layout: CodeLayout,
    kind: str,
    forbidden,
) -> list[int] | None:
    """A surviving logical representative avoiding forbidden qubits.

    ``forbidden`` maps a qubit id to True when it may not appear on the
    support (e.g. it will not be measured). Returns None when no
    representative survives, which only happens for destroyed codes.
    """
    _, path = _chain_search(
        layout, kind, lambda q: None if forbidden(q) else 1
    )
    return path
