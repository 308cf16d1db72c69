"""The sphere-by-sphere symmetry-breaking colouring construction.

Starting from a colouring that marks only the root, each step colours the
next sphere: vertices are partitioned by their exact neighbourhoods into
the previous sphere's orbits, a small fixing set of partition classes gets
colour offsets so that preserving the colouring forces every class to be
fixed setwise, and finally every class is split into chunks of size at
most ceil(sqrt(max_degree)) using the barred palette. The stabilizer of
the result then has only small orbits inside the coloured ball.

Every step appends a trace record with the orbits, partitions, chosen
fixing sets and colour deltas, so the whole run can be re-audited
independently (see :mod:`asymcolour.audit`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import total_ordering

from .errors import GraphFormatError, InternalInvariantError, VertexRangeError
from .graphs import Graph, eccentricity, sphere
from .symmetry import (
    DEFAULT_CAP,
    PermGroup,
    automorphism_group,
    block_index_map,
    colouring_stabilizer,
    minimal_fixing_set,
    orbits,
    partition_image,
    pointwise_stabilizer,
)

_KIND_RANK = {"root": 0, "numeric": 1, "barred": 2, "far": 3}


@total_ordering
@dataclass(frozen=True)
class Colour:
    """One colour of the palette {root} | numeric 1,2,... | barred 1,2,... | far.

    Total order: root < numeric(1) < numeric(2) < ... < barred(1) < ... < far.
    The order extends the numeric minimum used for induced block colours;
    during the inner loop only numeric colours occur on the active sphere,
    so the extension never changes a value the construction depends on.
    """

    kind: str
    value: int = 0

    def __post_init__(self):
        if self.kind not in _KIND_RANK:
            raise ValueError(f"unknown colour kind {self.kind!r}")
        if self.kind in ("root", "far") and self.value != 0:
            raise ValueError(f"{self.kind} colour carries no value")
        if self.kind in ("numeric", "barred") and self.value < 1:
            raise ValueError(f"{self.kind} colour needs value >= 1, got {self.value}")

    def sort_key(self) -> tuple[int, int]:
        return (_KIND_RANK[self.kind], self.value)

    def __lt__(self, other: "Colour") -> bool:
        return self.sort_key() < other.sort_key()

    def token(self) -> str:
        if self.kind == "root":
            return "0"
        if self.kind == "far":
            return "inf"
        if self.kind == "barred":
            return f"b:{self.value}"
        return str(self.value)

    @classmethod
    def from_token(cls, token: str) -> "Colour":
        if token == "0":
            return ROOT
        if token == "inf":
            return FAR
        if token.startswith("b:"):
            return barred(int(token[2:]))
        return numeric(int(token))

    def __repr__(self):
        return f"Colour({self.token()!r})"


ROOT = Colour("root")
FAR = Colour("far")


def numeric(n: int) -> Colour:
    return Colour("numeric", n)


def barred(b: int) -> Colour:
    return Colour("barred", b)


@dataclass(frozen=True)
class Colouring:
    """A total colour assignment, plus the construction metadata.

    ``root`` and ``radius`` are set by the construction (radius k means
    exactly the vertices at distance > k are far-coloured); colourings
    parsed from files may carry ``None`` there.
    """

    colours: tuple[Colour, ...]
    root: int | None = None
    radius: int | None = None

    def __getitem__(self, v: int) -> Colour:
        return self.colours[v]

    def __len__(self) -> int:
        return len(self.colours)

    def distinct_colours(self) -> set[Colour]:
        return set(self.colours)

    def max_numeric(self) -> int:
        """Largest numeric colour value used, 0 if none."""
        return max((c.value for c in self.colours if c.kind == "numeric"), default=0)

    def barred_values(self) -> set[int]:
        return {c.value for c in self.colours if c.kind == "barred"}


def serialize_colouring(colouring: Colouring) -> str:
    """One line per vertex: "v<TAB>token"."""
    return "".join(f"{v}\t{c.token()}\n" for v, c in enumerate(colouring.colours))


def parse_colouring(text: str) -> Colouring:
    """Parse the per-vertex colour file; every vertex must appear exactly once."""
    assigned: dict[int, Colour] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise GraphFormatError(f"expected 'vertex<TAB>colour', got {line!r}", line=lineno)
        try:
            v = int(fields[0])
            colour = Colour.from_token(fields[1])
        except ValueError as exc:
            raise GraphFormatError(str(exc), line=lineno) from None
        if v in assigned:
            raise GraphFormatError(f"vertex {v} coloured twice", line=lineno)
        assigned[v] = colour
    if not assigned:
        raise GraphFormatError("empty colouring")
    n = max(assigned) + 1
    if sorted(assigned) != list(range(n)):
        missing = min(set(range(n)) - set(assigned))
        raise GraphFormatError(f"vertex {missing} has no colour")
    colours = tuple(assigned[v] for v in range(n))
    roots = [v for v, c in enumerate(colours) if c == ROOT]
    return Colouring(colours, root=roots[0] if len(roots) == 1 else None)


def ceil_sqrt(delta: int) -> int:
    if delta < 1:
        raise ValueError(f"max degree must be >= 1, got {delta}")
    return math.isqrt(delta - 1) + 1


@dataclass(frozen=True)
class ColourBudget:
    """Colour bounds as functions of the maximal degree.

    ``total`` bounds the number of distinct colours; ``numeric`` bounds the
    largest numeric colour value the construction can produce.
    """

    total: float
    numeric: float


def colour_bound(delta: int) -> ColourBudget:
    """1 + (5/2 + 3/2 log2 d) ceil(sqrt d) total colours; the numeric
    values stay below 1 + (1 + log2 d) ceil(3 ceil(sqrt d) / 2)."""
    if delta < 1:
        raise ValueError(f"max degree must be >= 1, got {delta}")
    s = ceil_sqrt(delta)
    log = math.log2(delta)
    return ColourBudget(
        total=1.0 + (2.5 + 1.5 * log) * s,
        numeric=1.0 + (1.0 + log) * math.ceil(3 * s / 2),
    )


def initial_colouring(graph: Graph, root: int) -> Colouring:
    """Radius-0 colouring: the root alone gets the root colour, everything
    else is far."""
    if not (0 <= root < graph.n):
        raise VertexRangeError(f"root {root} outside 0..{graph.n - 1}")
    colours = tuple(ROOT if v == root else FAR for v in range(graph.n))
    return Colouring(colours, root=root, radius=0)


def neighbourhood_refinement(graph: Graph, next_sphere, orbit_list) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Nested partitions of the next sphere by exact neighbourhoods.

    The first partition has the whole sphere as one block; partition i
    refines partition i-1 by the exact neighbour set inside the i-th orbit
    of the previous sphere. Blocks are ordered by minimum vertex.
    """
    next_sphere = tuple(sorted(next_sphere))
    current: tuple[tuple[int, ...], ...] = (next_sphere,) if next_sphere else ()
    result = [current]
    for orbit in orbit_list:
        orbit_set = frozenset(orbit)
        refined: list[tuple[int, ...]] = []
        for block in current:
            groups: dict[frozenset[int], list[int]] = {}
            for v in block:
                groups.setdefault(graph.neighbours(v) & orbit_set, []).append(v)
            refined.extend(tuple(vs) for vs in groups.values())
        current = tuple(sorted(refined, key=lambda b: b[0]))
        result.append(current)
    return tuple(result)


def induced_colouring(colours, partition) -> tuple[Colour, ...]:
    """Per-block colour: the minimum vertex colour in each block."""
    return tuple(min(colours[v] for v in block) for block in partition)


@dataclass(frozen=True)
class InnerStep:
    """Record of one inner refinement index: which classes got offsets."""

    index: int
    acting_orbit: tuple[int, ...]
    stabilizer_order: int
    size_bound: float
    fixing_blocks: tuple[tuple[int, ...], ...]
    recoloured: tuple[tuple[int, Colour, Colour], ...]


@dataclass(frozen=True)
class ClassSplit:
    """Record of the final split of one finest-partition class."""

    block: tuple[int, ...]
    chunks: tuple[tuple[int, ...], ...]
    chunk_colours: tuple[Colour, ...]


@dataclass(frozen=True)
class StepTrace:
    """Everything step k did while colouring sphere k+1."""

    k: int
    sphere: tuple[int, ...]
    next_sphere: tuple[int, ...]
    orbit_list: tuple[tuple[int, ...], ...]
    partitions: tuple[tuple[tuple[int, ...], ...], ...]
    inner: tuple[InnerStep, ...]
    splits: tuple[ClassSplit, ...]
    stabilizer_order: int
    final_sphere_colours: tuple[tuple[int, Colour], ...]


STABILIZER_EMBED_LIMIT = 120


@dataclass(frozen=True)
class RefinementTrace:
    """Full record of a run, sufficient to re-audit every invariant.

    ``orbit_domain`` documents which sphere the per-step orbits are taken
    on: this implementation always uses the previous sphere (the one that
    is already coloured), the convention forced by the construction's own
    bookkeeping. The residual symmetry after the last step is embedded as
    an explicit element list when it is small enough to print.
    """

    root: int
    horizon: int
    max_degree: int
    bound_mode: str
    stabilizer_orders: tuple[int, ...]
    steps: tuple[StepTrace, ...]
    orbit_domain: str = "previous-sphere"
    final_stabilizer: tuple[tuple[int, ...], ...] | None = None


def _fixing_size_bound(m: int, bound_mode: str) -> float:
    """Cap on the fixing-set length for an acting orbit of size m.

    "csg" uses the classification-backed subgroup-chain bound ceil(3m/2);
    "elementary" uses the weaker m*log2(m) estimate that only needs
    Lagrange's theorem.
    """
    if bound_mode == "csg":
        return math.ceil(3 * m / 2)
    if bound_mode == "elementary":
        return m * math.log2(m) if m > 1 else 0.0
    raise ValueError(f"unknown bound mode {bound_mode!r}")


def _running_stabilizer(stabilizer: PermGroup, partitions, state) -> PermGroup:
    """Elements preserving the induced block colourings of every partition.

    This is the definition of the running stabilizer; the construction
    recomputes it from scratch at each inner index rather than relying on
    the incremental identity, so the trace stays auditable.
    """
    conditions = []
    for blocks in partitions:
        if not blocks:
            continue
        induced = induced_colouring(state, blocks)
        conditions.append((blocks, block_index_map(blocks), induced))

    def preserves(p) -> bool:
        for blocks, index_of, induced in conditions:
            img = partition_image(p, blocks, index_of)
            if img is None:
                raise InternalInvariantError("stabilizer element does not permute a refinement partition")
            if any(induced[img[b]] != induced[b] for b in range(len(blocks))):
                return False
        return True

    return stabilizer.subgroup(preserves)


def split_into_chunks(block, chunk_cap: int) -> tuple[tuple[int, ...], ...]:
    """Split a sorted class into up to chunk_cap + 1 chunks of size at most
    chunk_cap, as evenly as possible, in vertex order.

    Using one chunk more than the barred palette would suggest costs
    nothing (the first chunk keeps its colour) and separates classes of
    size up to chunk_cap + 1 completely.
    """
    block = tuple(sorted(block))
    count = min(len(block), chunk_cap + 1)
    base, extra = divmod(len(block), count)
    chunks = []
    start = 0
    for i in range(count):
        size = base + (1 if i < extra else 0)
        chunks.append(block[start:start + size])
        start += size
    return tuple(chunks)


def extend_colouring(
    graph: Graph,
    root: int,
    colouring: Colouring,
    stabilizer: PermGroup,
    *,
    bound_mode: str = "csg",
) -> tuple[Colouring, StepTrace]:
    """One construction step: colour the next sphere.

    ``stabilizer`` must be the stabilizer of ``colouring`` in the graph's
    automorphism group. Returns the extended colouring (radius k+1, equal
    to the input on the current ball) and the step's trace record.
    """
    k = colouring.radius
    if k is None:
        raise ValueError("colouring has no radius; use a construction colouring")
    delta = graph.max_degree
    chunk_cap = ceil_sqrt(delta)
    sphere_k = sphere(graph, root, k)
    next_sphere = sphere(graph, root, k + 1)
    if not next_sphere:
        raise ValueError(f"no vertices at distance {k + 1} from root {root}")

    orbit_list = orbits(stabilizer, sphere_k)
    partitions = neighbourhood_refinement(graph, next_sphere, orbit_list)

    state: dict[int, Colour] = {v: numeric(1) for v in next_sphere}
    inner_records = []
    for i in range(len(orbit_list)):
        gamma_tilde = _running_stabilizer(stabilizer, partitions[: i + 1], state)
        acting_orbit = orbit_list[i]
        target_blocks = partitions[i + 1]

        # the pointwise stabilizer of the acting orbit must already fix
        # every class of the next partition setwise; this is what makes
        # the fixing-set size bound below sound
        promised = pointwise_stabilizer(gamma_tilde, acting_orbit)
        for block in target_blocks:
            bset = frozenset(block)
            for p in promised.elements:
                if frozenset(p[v] for v in block) != bset:
                    raise InternalInvariantError(
                        "pointwise stabilizer of the acting orbit moves a refinement class"
                    )

        size_bound = _fixing_size_bound(len(acting_orbit), bound_mode)
        fixing = minimal_fixing_set(gamma_tilde, target_blocks, size_bound)

        deltas = []
        for offset, block in enumerate(fixing, start=1):
            for v in block:
                old = state[v]
                new = numeric(old.value + offset)
                state[v] = new
                deltas.append((v, old, new))
        inner_records.append(
            InnerStep(
                index=i,
                acting_orbit=acting_orbit,
                stabilizer_order=gamma_tilde.order,
                size_bound=size_bound,
                fixing_blocks=fixing,
                recoloured=tuple(deltas),
            )
        )

    splits = []
    for block in partitions[-1]:
        if len(block) > delta:
            raise InternalInvariantError(f"finest class {block} is larger than the maximal degree")
        chunks = split_into_chunks(block, chunk_cap)
        chunk_colours = [state[chunks[0][0]]]
        for b, chunk in enumerate(chunks[1:], start=1):
            colour = barred(b)
            chunk_colours.append(colour)
            for v in chunk:
                state[v] = colour
        splits.append(ClassSplit(block=block, chunks=chunks, chunk_colours=tuple(chunk_colours)))

    new_colours = list(colouring.colours)
    for v in next_sphere:
        new_colours[v] = state[v]
    extended = Colouring(tuple(new_colours), root=root, radius=k + 1)

    trace = StepTrace(
        k=k,
        sphere=sphere_k,
        next_sphere=next_sphere,
        orbit_list=orbit_list,
        partitions=partitions,
        inner=tuple(inner_records),
        splits=tuple(splits),
        stabilizer_order=stabilizer.order,
        final_sphere_colours=tuple((v, state[v]) for v in next_sphere),
    )
    return extended, trace


def run(
    graph: Graph,
    root: int,
    horizon: int | None = None,
    *,
    bound_mode: str = "csg",
    cap: int = DEFAULT_CAP,
) -> tuple[Colouring, RefinementTrace]:
    """Run the construction from the root out to the given horizon.

    The default horizon is the root's eccentricity, after which no vertex
    is far-coloured. The colouring stabilizer is recomputed from the full
    automorphism group after every step.
    """
    if not (0 <= root < graph.n):
        raise VertexRangeError(f"root {root} outside 0..{graph.n - 1}")
    ecc = eccentricity(graph, root)
    if horizon is None:
        horizon = ecc
    if horizon < 0 or horizon > ecc:
        raise ValueError(f"horizon {horizon} outside 0..{ecc} (eccentricity of root {root})")

    full_group = automorphism_group(graph, cap=cap)
    colouring = initial_colouring(graph, root)
    stabilizer = colouring_stabilizer(full_group, colouring)
    orders = [stabilizer.order]
    steps = []
    for _ in range(horizon):
        colouring, step = extend_colouring(graph, root, colouring, stabilizer, bound_mode=bound_mode)
        stabilizer = colouring_stabilizer(full_group, colouring)
        orders.append(stabilizer.order)
        steps.append(step)

    trace = RefinementTrace(
        root=root,
        horizon=horizon,
        max_degree=graph.max_degree,
        bound_mode=bound_mode,
        stabilizer_orders=tuple(orders),
        steps=tuple(steps),
        final_stabilizer=stabilizer.elements if stabilizer.order <= STABILIZER_EMBED_LIMIT else None,
    )
    return colouring, trace


def _fmt_block(block) -> str:
    return "{" + ",".join(str(v) for v in block) + "}"


def serialize_trace(trace: RefinementTrace) -> str:
    """Deterministic line-oriented trace report, one section per step and
    inner index."""
    lines = [
        "trace-format 1",
        f"root {trace.root}",
        f"horizon {trace.horizon}",
        f"max-degree {trace.max_degree}",
        f"bound-mode {trace.bound_mode}",
        f"orbit-domain {trace.orbit_domain}",
        "stabilizer-orders " + " ".join(str(o) for o in trace.stabilizer_orders),
    ]
    for step in trace.steps:
        lines.append(f"step {step.k}")
        lines.append(f"sphere {_fmt_block(step.sphere)}")
        lines.append(f"next-sphere {_fmt_block(step.next_sphere)}")
        lines.append("orbits " + (" ".join(_fmt_block(a) for a in step.orbit_list) or "none"))
        for i, blocks in enumerate(step.partitions):
            lines.append(f"partition {i} " + (" ".join(_fmt_block(b) for b in blocks) or "none"))
        for rec in step.inner:
            fixing = " ".join(
                f"{_fmt_block(block)}:{offset}" for offset, block in enumerate(rec.fixing_blocks, start=1)
            )
            lines.append(
                f"inner {rec.index} acting-orbit {_fmt_block(rec.acting_orbit)} "
                f"stabilizer-order {rec.stabilizer_order} size-bound {rec.size_bound:g} "
                f"fixing-set {fixing or 'none'}"
            )
            recolour = " ".join(f"{v}:{old.token()}->{new.token()}" for v, old, new in rec.recoloured)
            lines.append(f"recolour {recolour or 'none'}")
        for split in trace_splits_sorted(step):
            chunks = "|".join(_fmt_block(c) for c in split.chunks)
            colours = "|".join(c.token() for c in split.chunk_colours)
            lines.append(f"split {_fmt_block(split.block)} chunks {chunks} colours {colours}")
        lines.append(
            "sphere-colours " + " ".join(f"{v}:{c.token()}" for v, c in step.final_sphere_colours)
        )
        lines.append("end-step")
    if trace.final_stabilizer is None:
        lines.append(f"final-stabilizer omitted order {trace.stabilizer_orders[-1]}")
    else:
        lines.append(f"final-stabilizer order {len(trace.final_stabilizer)}")
        lines.extend("perm " + " ".join(str(x) for x in p) for p in trace.final_stabilizer)
    return "\n".join(lines) + "\n"


def trace_splits_sorted(step: StepTrace):
    return sorted(step.splits, key=lambda s: s.block[0])
