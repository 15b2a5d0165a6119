"""Static geometry of the unrotated planar surface code.

Qubits live on a (2d-1) x (2d-1) integer grid. Cells with even coordinate
parity (row+col even) hold data qubits; odd-parity cells hold the syndrome
ancillas. Star (X-type) ancillas sit at (even row, odd col), plaquette
(Z-type) ancillas at (odd row, even col). Star generators truncate to
weight 3 on the top/bottom rows (the smooth boundaries); plaquettes
truncate on the left/right columns (the rough boundaries).

Logical operators: logical Z runs along the top data row (rough boundary
to rough boundary), logical X down the leftmost data column. A qubit id is
``row * n_cols + col`` in the grid of the layout, so ids stay meaningful
when a d x d patch is embedded in the taller grid used for patch merging.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property

Coord = tuple[int, int]

STAR = "star"
PLAQUETTE = "plaquette"
KINDS = (STAR, PLAQUETTE)

# CNOT layer order around an ancilla: north, west, east, south.
LAYER_DIRS: tuple[Coord, ...] = ((-1, 0), (0, -1), (0, 1), (1, 0))


@dataclass(frozen=True)
class StabilizerGen:
    """One ideal stabilizer generator.

    ``gen_id`` equals the ancilla's qubit id, which makes generator identity
    stable across deformations and across patch embeddings.
    """

    gen_id: int
    kind: str
    ancilla: Coord
    support: tuple[int, ...]
    # (layer index, data qubit id) pairs in N,W,E,S order; off-grid
    # directions are simply absent.
    schedule: tuple[tuple[int, int], ...]

    @property
    def weight(self) -> int:
        return len(self.support)


@dataclass(frozen=True)
class CodeLayout:
    """Geometry of one planar patch, possibly embedded in a larger grid.

    ``height``/``width`` are the vertical/horizontal code distances of the
    patch; ``build_layout`` produces the square case height == width == d.
    """

    distance: int
    height: int
    width: int
    n_rows: int
    n_cols: int
    row0: int
    col0: int
    data_qubits: tuple[int, ...]
    star_generators: tuple[StabilizerGen, ...]
    plaquette_generators: tuple[StabilizerGen, ...]
    logical_x_support: frozenset[int]
    logical_z_support: frozenset[int]

    def qubit_id(self, row: int, col: int) -> int:
        return row * self.n_cols + col

    def coord(self, qubit: int) -> Coord:
        return divmod(qubit, self.n_cols)

    @property
    def row_last(self) -> int:
        return self.row0 + 2 * self.height - 2

    @property
    def col_last(self) -> int:
        return self.col0 + 2 * self.width - 2

    @cached_property
    def data_set(self) -> frozenset[int]:
        return frozenset(self.data_qubits)

    @cached_property
    def ancilla_qubits(self) -> tuple[int, ...]:
        return tuple(sorted(g.gen_id for g in self.generators()))

    @cached_property
    def all_qubits(self) -> tuple[int, ...]:
        return tuple(sorted(self.data_qubits + self.ancilla_qubits))

    def generators(self, kind: str | None = None) -> tuple[StabilizerGen, ...]:
        if kind == STAR:
            return self.star_generators
        if kind == PLAQUETTE:
            return self.plaquette_generators
        if kind is None:
            return self.star_generators + self.plaquette_generators
        raise ValueError(f"unknown generator kind {kind!r}")

    @cached_property
    def gen_by_id(self) -> dict[int, StabilizerGen]:
        return {g.gen_id: g for g in self.generators()}

    @cached_property
    def gens_of_qubit(self) -> dict[str, dict[int, tuple[int, ...]]]:
        """Per kind: data qubit id -> ids of generators containing it."""
        out: dict[str, dict[int, tuple[int, ...]]] = {}
        for kind in KINDS:
            m: dict[int, list[int]] = {}
            for g in self.generators(kind):
                for q in g.support:
                    m.setdefault(q, []).append(g.gen_id)
            out[kind] = {q: tuple(sorted(v)) for q, v in m.items()}
        return out

    @cached_property
    def adjacency(self) -> dict[str, dict[int, tuple[int, ...]]]:
        """Per kind: data qubit -> data qubits sharing a generator of that kind.

        Chains of Z errors step between qubits sharing a star; X chains step
        between qubits sharing a plaquette.
        """
        out: dict[str, dict[int, tuple[int, ...]]] = {}
        for kind in KINDS:
            nbrs: dict[int, set[int]] = {q: set() for q in self.data_qubits}
            for g in self.generators(kind):
                for a in g.support:
                    for b in g.support:
                        if a != b:
                            nbrs[a].add(b)
            out[kind] = {q: tuple(sorted(v)) for q, v in nbrs.items()}
        return out

    @cached_property
    def boundary_attach(self) -> dict[str, tuple[frozenset[int], frozenset[int]]]:
        """Data qubits whose chains may terminate, per chain kind.

        ``star`` entry: termination sets for Z chains (left column, right
        column). ``plaquette`` entry: termination sets for X chains (top row,
        bottom row). A chain terminates where the would-be next generator of
        its kind falls off the grid.
        """
        left = frozenset(
            self.qubit_id(r, self.col0)
            for r in range(self.row0, self.row_last + 1, 2)
        )
        right = frozenset(
            self.qubit_id(r, self.col_last)
            for r in range(self.row0, self.row_last + 1, 2)
        )
        top = frozenset(
            self.qubit_id(self.row0, c)
            for c in range(self.col0, self.col_last + 1, 2)
        )
        bottom = frozenset(
            self.qubit_id(self.row_last, c)
            for c in range(self.col0, self.col_last + 1, 2)
        )
        return {STAR: (left, right), PLAQUETTE: (top, bottom)}

    def contains_coord(self, row: int, col: int) -> bool:
        return (
            self.row0 <= row <= self.row_last
            and self.col0 <= col <= self.col_last
        )


def build_patch(
    height: int,
    width: int,
    *,
    n_rows: int | None = None,
    n_cols: int | None = None,
    row0: int = 0,
    col0: int = 0,
) -> CodeLayout:
    """Construct a planar patch with the given vertical/horizontal distances.

    The patch occupies rows ``row0 .. row0 + 2*height - 2`` and columns
    ``col0 .. col0 + 2*width - 2`` of a grid with ``n_rows`` x ``n_cols``
    cells (defaulting to exactly the patch extent). Offsets must be even so
    the parity convention is preserved under embedding.
    """
    if height < 2 or width < 2:
        raise ValueError("patch distances must be at least 2")
    if row0 % 2 or col0 % 2:
        raise ValueError("patch offsets must be even")
    if n_rows is None:
        n_rows = row0 + 2 * height - 1
    if n_cols is None:
        n_cols = col0 + 2 * width - 1
    row_last = row0 + 2 * height - 2
    col_last = col0 + 2 * width - 2
    if row_last >= n_rows or col_last >= n_cols:
        raise ValueError("patch does not fit in the grid")

    def qid(r: int, c: int) -> int:
        return r * n_cols + c

    data = tuple(
        qid(r, c)
        for r in range(row0, row_last + 1)
        for c in range(col0, col_last + 1)
        if (r + c) % 2 == 0
    )
    data_set = set(data)

    def make_gen(r: int, c: int, kind: str) -> StabilizerGen:
        support = []
        schedule = []
        for layer, (dr, dc) in enumerate(LAYER_DIRS):
            rr, cc = r + dr, c + dc
            if row0 <= rr <= row_last and col0 <= cc <= col_last:
                q = qid(rr, cc)
                support.append(q)
                schedule.append((layer, q))
        return StabilizerGen(
            gen_id=qid(r, c),
            kind=kind,
            ancilla=(r, c),
            support=tuple(sorted(support)),
            schedule=tuple(schedule),
        )

    stars = tuple(
        make_gen(r, c, STAR)
        for r in range(row0, row_last + 1, 2)
        for c in range(col0 + 1, col_last, 2)
    )
    plaquettes = tuple(
        make_gen(r, c, PLAQUETTE)
        for r in range(row0 + 1, row_last, 2)
        for c in range(col0, col_last + 1, 2)
    )

    logical_z = frozenset(qid(row0, c) for c in range(col0, col_last + 1, 2))
    logical_x = frozenset(qid(r, col0) for r in range(row0, row_last + 1, 2))
    assert logical_z <= data_set and logical_x <= data_set

    return CodeLayout(
        distance=min(height, width),
        height=height,
        width=width,
        n_rows=n_rows,
        n_cols=n_cols,
        row0=row0,
        col0=col0,
        data_qubits=data,
        star_generators=stars,
        plaquette_generators=plaquettes,
        logical_x_support=logical_x,
        logical_z_support=logical_z,
    )


def build_layout(d: int) -> CodeLayout:
    """Build the distance-d square planar code.

    Rejects even or too-small distances; the supported family is odd d >= 3.
    """
    if not isinstance(d, int) or d < 3:
        raise ValueError(f"code distance must be an integer >= 3, got {d}")
    if d % 2 == 0:
        raise ValueError(f"code distance must be odd, got {d}")
    return build_patch(d, d)


def cnot_schedule(layout: CodeLayout) -> list[list[tuple[int, int]]]:
    """Four CNOT layers covering every (generator, support qubit) pair once.

    Each entry is an (ancilla id, data id) pair; star ancillas act as the
    CNOT control, plaquette ancillas as the target. Within one layer every
    ancilla moves in the same direction (N, W, E, S in layers 0..3), which
    keeps the layers conflict-free and the residual hook errors diagonal.
    """
    layers: list[list[tuple[int, int]]] = [[], [], [], []]
    for g in layout.generators():
        for layer, q in g.schedule:
            layers[layer].append((g.gen_id, q))
    for layer in layers:
        layer.sort()
    return layers


def layout_to_json(layout: CodeLayout) -> str:
    """Diagnostic JSON dump of qubit coordinates and generator supports."""
    doc = {
        "distance": layout.distance,
        "height": layout.height,
        "width": layout.width,
        "grid": [layout.n_rows, layout.n_cols],
        "data_qubits": {str(q): list(layout.coord(q)) for q in layout.data_qubits},
        "generators": [
            {
                "id": g.gen_id,
                "kind": g.kind,
                "ancilla": list(g.ancilla),
                "support": list(g.support),
            }
            for g in layout.generators()
        ],
        "logical_z": sorted(layout.logical_z_support),
        "logical_x": sorted(layout.logical_x_support),
    }
    return json.dumps(doc, indent=2, sort_keys=True)
