"""Brute-force ground truth for everything the construction claims.

Every search here is exhaustive over an explicitly bounded space; nothing
is sampled, so oracle output is admissible as test ground truth. Sizes
are protected by guards, not by approximation.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .colouring import Colouring, numeric
from .errors import AsymmetricGraphError, InternalInvariantError, SearchGuardError, NoAsymmetricColouringError
from .graphs import Graph, ball, eccentricity
from .symmetry import DEFAULT_CAP, PermGroup, automorphism_group, colouring_stabilizer

DISTINGUISHING_VERTEX_GUARD = 12
TWO_COLOURING_VERTEX_GUARD = 20


@dataclass(frozen=True)
class OracleReport:
    """Result of one exhaustive computation.

    ``search_space`` is the number of objects the search examined;
    ``elapsed`` is wall-clock seconds (diagnostic only, never part of a
    deterministic output file).
    """

    quantity: str
    value: object
    search_space: int
    elapsed: float
    details: dict = field(default_factory=dict)

    def kv_lines(self) -> list[str]:
        lines = [
            f"oracle.quantity {self.quantity}",
            f"oracle.value {self.value}",
            f"oracle.search-space {self.search_space}",
            f"oracle.elapsed {self.elapsed:.3f}",
        ]
        lines.extend(f"oracle.{key} {value}" for key, value in sorted(self.details.items()))
        return lines


def is_asymmetric(graph: Graph, colouring, cap: int = DEFAULT_CAP) -> bool:
    """True iff only the identity automorphism preserves the colouring."""
    group = automorphism_group(graph, cap=cap)
    return colouring_stabilizer(group, colouring).is_trivial()


def stabilizer_order(graph: Graph, colouring, cap: int = DEFAULT_CAP) -> int:
    group = automorphism_group(graph, cap=cap)
    return colouring_stabilizer(group, colouring).order


def _partitions_with_classes(n: int, classes: int):
    """All surjective colourings of 0..n-1 with exactly the given number of
    colour classes, one representative per colour renaming.

    Enumerated as restricted growth strings: class labels appear in first-
    use order, which quotients out colour permutations exactly. Vertex 0
    always has label 0, pinning one orbit representative's colour.
    """
    labels = [0] * n

    def grow(i: int, used: int):
        if n - i < classes - used:
            return
        if i == n:
            if used == classes:
                yield tuple(labels)
            return
        for c in range(min(used + 1, classes)):
            labels[i] = c
            yield from grow(i + 1, max(used, c + 1))

    yield from grow(1, 1) if n > 1 else iter([(0,)] if classes == 1 else [])


def _preserving_automorphism(group: PermGroup, labels) -> bool:
    """Whether some nontrivial group element preserves the label classes."""
    for p in group.elements:
        if all(labels[p[v]] == labels[v] for v in range(len(labels))):
            if any(p[v] != v for v in range(len(labels))):
                return True
    return False


def distinguishing_number(graph: Graph, max_colours: int | None = None, cap: int = DEFAULT_CAP) -> int:
    """The least number of colours admitting an asymmetric colouring.

    Exhaustive over set partitions (colourings up to colour renaming) with
    the first vertex's colour pinned; exactness is unaffected because both
    colour permutations and automorphisms act on the colouring space. The
    search at c colours only runs after every (c-1)-class partition has
    been refuted, so the returned value is minimal by exhaustion.
    """
    if graph.n > DISTINGUISHING_VERTEX_GUARD:
        raise SearchGuardError(
            f"distinguishing-number search supports up to {DISTINGUISHING_VERTEX_GUARD} vertices, got {graph.n}"
        )
    if max_colours is None:
        max_colours = graph.max_degree + 1
    if max_colours < 1:
        raise SearchGuardError(f"max_colours must be >= 1, got {max_colours}")
    group = automorphism_group(graph, cap=cap)
    for classes in range(1, min(max_colours, graph.n) + 1):
        for labels in _partitions_with_classes(graph.n, classes):
            if not _preserving_automorphism(group, labels):
                return classes
    raise NoAsymmetricColouringError(f"no asymmetric colouring with at most {max_colours} colours")


def distinguishing_witness(graph: Graph, classes: int, cap: int = DEFAULT_CAP) -> tuple[int, ...] | None:
    """First asymmetric partition with the given class count, if any."""
    group = automorphism_group(graph, cap=cap)
    for labels in _partitions_with_classes(graph.n, classes):
        if not _preserving_automorphism(group, labels):
            return labels
    return None


def motion(graph: Graph, cap: int = DEFAULT_CAP) -> int:
    """Minimum number of vertices moved by a nontrivial automorphism.

    Undefined for asymmetric graphs; that case raises rather than
    returning a sentinel.
    """
    group = automorphism_group(graph, cap=cap)
    if group.is_trivial():
        raise AsymmetricGraphError("graph has no nontrivial automorphism; motion is undefined")
    return min(
        sum(1 for v in range(graph.n) if p[v] != v)
        for p in group.elements
        if any(p[v] != v for v in range(graph.n))
    )


def motion_lemma_check(graph: Graph, cap: int = DEFAULT_CAP) -> OracleReport:
    """Check the motion hypothesis 2^(m/2) >= |Aut| and, when it holds,
    exhaustively find the promised asymmetric 2-colouring.

    The hypothesis holding but the search failing would disprove a
    theorem, so that case raises an internal error instead of reporting.
    """
    start = time.perf_counter()
    group = automorphism_group(graph, cap=cap)
    if group.is_trivial():
        raise AsymmetricGraphError("graph has no nontrivial automorphism; motion is undefined")
    m = min(
        sum(1 for v in range(graph.n) if p[v] != v)
        for p in group.elements
        if any(p[v] != v for v in range(graph.n))
    )
    hypothesis = 2.0 ** (m / 2) >= group.order
    details = {"motion": m, "aut-order": group.order}
    if not hypothesis:
        return OracleReport(
            quantity="motion-lemma",
            value="hypothesis-not-satisfied",
            search_space=0,
            elapsed=time.perf_counter() - start,
            details=details,
        )

    if graph.n > TWO_COLOURING_VERTEX_GUARD:
        raise SearchGuardError(
            f"2-colouring search supports up to {TWO_COLOURING_VERTEX_GUARD} vertices, got {graph.n}"
        )
    tested = 0
    witness = None
    # vertex 0's colour is pinned: swapping the two colours preserves asymmetry
    for mask in range(2 ** (graph.n - 1)):
        labels = (0,) + tuple((mask >> i) & 1 for i in range(graph.n - 1))
        tested += 1
        if not _preserving_automorphism(group, labels):
            witness = labels
            break
    if witness is None:
        raise InternalInvariantError("motion lemma hypothesis held but no 2-colouring was found")
    colouring = Colouring(tuple(numeric(label + 1) for label in witness))
    details["colouring"] = " ".join(c.token() for c in colouring.colours)
    return OracleReport(
        quantity="motion-lemma",
        value="colouring-found",
        search_space=tested,
        elapsed=time.perf_counter() - start,
        details=details,
    )


def interior_support_check(graph: Graph, root: int, truncation_radius: int, cap: int = DEFAULT_CAP) -> bool:
    """True iff no nontrivial automorphism moves only vertices strictly
    inside the truncation ball.

    When true, the boundary of the truncated graph is rigid: any
    automorphism fixing the outermost sphere and beyond pointwise is the
    identity, which is the finite stand-in for the extension argument on
    infinite graphs.
    """
    if truncation_radius > eccentricity(graph, root):
        raise ValueError(f"truncation radius {truncation_radius} exceeds the root's eccentricity")
    group = automorphism_group(graph, cap=cap)
    interior = set(ball(graph, root, truncation_radius - 1))
    for p in group.elements:
        support = {v for v in range(graph.n) if p[v] != v}
        if support and support <= interior:
            return False
    return True


def automorphism_order(graph: Graph, cap: int = DEFAULT_CAP) -> int:
    return automorphism_group(graph, cap=cap).order
