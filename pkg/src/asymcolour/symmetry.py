"""Permutations, explicit-element permutation groups, and stabilizers.

Groups are stored as full, sorted element lists rather than by generators:
the colouring construction repeatedly filters groups by colour and block
conditions, which is a one-line operation on element lists. A configurable
element cap (default 10**6) turns runaway groups into a hard error and
defines the desk scale of the whole artifact.

Permutations are tuples ``p`` with ``p[i]`` the image of ``i``.
"""

from __future__ import annotations

import itertools
import math
from collections import deque

from .errors import (
    DomainNotInvariantError,
    GroupCapError,
    InternalInvariantError,
    NotAPartitionActionError,
)
from .graphs import Graph

DEFAULT_CAP = 10**6

Perm = tuple[int, ...]


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """Composition p after q: the result maps i to p[q[i]]."""
    return tuple(p[x] for x in q)


def invert(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def is_permutation(p) -> bool:
    return sorted(p) == list(range(len(p)))


def format_permutation(p: Perm) -> str:
    """One-line image form "p(0) p(1) ... p(n-1)"."""
    return " ".join(str(x) for x in p)


def format_group(group: "PermGroup") -> str:
    """Element-per-line block, elements in sorted order."""
    return "\n".join(format_permutation(p) for p in group.elements) + "\n"


class PermGroup:
    """A permutation group on 0..degree-1 as an explicit element list.

    Elements are sorted, duplicate-free, and always include the identity.
    Construction by :meth:`from_elements` or :meth:`from_generators`
    enforces the element cap; closure itself is only verified by
    :meth:`validate` (tests call it, hot paths trust subgroup filtering).
    """

    __slots__ = ("degree", "elements", "generators", "_element_set")

    def __init__(self, degree: int, elements: tuple[Perm, ...], generators: tuple[Perm, ...] | None = None):
        self.degree = degree
        self.elements = elements
        self.generators = generators
        self._element_set = frozenset(elements)

    @classmethod
    def from_elements(cls, degree: int, elements, cap: int = DEFAULT_CAP) -> "PermGroup":
        elems = sorted({tuple(p) for p in elements} | {identity_perm(degree)})
        if len(elems) > cap:
            raise GroupCapError(f"group has {len(elems)} elements, cap is {cap}", cap=cap)
        for p in elems:
            if len(p) != degree or not is_permutation(p):
                raise ValueError(f"not a permutation of 0..{degree - 1}: {p}")
        return cls(degree, tuple(elems))

    @classmethod
    def from_generators(cls, degree: int, generators, cap: int = DEFAULT_CAP) -> "PermGroup":
        """Close a generator list under composition (and hence inversion)."""
        gens = [tuple(g) for g in generators]
        for g in gens:
            if len(g) != degree or not is_permutation(g):
                raise ValueError(f"not a permutation of 0..{degree - 1}: {g}")
        elems = {identity_perm(degree)}
        frontier = deque(elems)
        while frontier:
            p = frontier.popleft()
            for g in gens:
                q = compose(g, p)
                if q not in elems:
                    elems.add(q)
                    if len(elems) > cap:
                        raise GroupCapError(f"closure exceeded cap {cap}", cap=cap)
                    frontier.append(q)
        return cls(degree, tuple(sorted(elems)), generators=tuple(gens))

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls(degree, (identity_perm(degree),))

    @classmethod
    def symmetric(cls, degree: int, cap: int = DEFAULT_CAP) -> "PermGroup":
        if math.factorial(degree) > cap:
            raise GroupCapError(f"Sym({degree}) has {math.factorial(degree)} elements, cap is {cap}", cap=cap)
        return cls(degree, tuple(sorted(itertools.permutations(range(degree)))))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, p) -> bool:
        return tuple(p) in self._element_set

    def __eq__(self, other):
        if not isinstance(other, PermGroup):
            return NotImplemented
        return self.degree == other.degree and self.elements == other.elements

    def __hash__(self):
        return hash((self.degree, self.elements))

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order})"

    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self._element_set <= other._element_set

    def subgroup(self, predicate) -> "PermGroup":
        """The elements satisfying a predicate (caller promises a subgroup)."""
        return PermGroup(self.degree, tuple(p for p in self.elements if predicate(p)))

    def validate(self) -> None:
        """Check the full group axioms on the element list.

        Quadratic in the order; meant for tests and auditing, not hot paths.
        """
        ident = identity_perm(self.degree)
        if ident not in self._element_set:
            raise ValueError("identity missing")
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("duplicate elements")
        if tuple(sorted(self.elements)) != self.elements:
            raise ValueError("elements not sorted")
        for p in self.elements:
            if invert(p) not in self._element_set:
                raise ValueError(f"inverse of {p} missing")
            for q in self.elements:
                if compose(p, q) not in self._element_set:
                    raise ValueError(f"product of {p} and {q} missing")


def _twin_order_floor(graph: Graph, colour_key) -> int:
    """A cheap lower bound on |Aut|: products of factorials of twin classes.

    Vertices sharing the same colour and the same open (or the same closed)
    neighbourhood can be permuted freely among themselves, so each twin
    class of size t contributes t! automorphisms. Used to fail fast on the
    cap before enumerating anything.
    """
    bound = 1
    for closed in (False, True):
        classes: dict[tuple, int] = {}
        for v in range(graph.n):
            nbhd = graph.neighbours(v) | {v} if closed else graph.neighbours(v)
            key = (closed, colour_key(v), nbhd)
            classes[key] = classes.get(key, 0) + 1
        size = 1
        for count in classes.values():
            size *= math.factorial(count)
        bound = max(bound, size)
    return bound


def _refined_classes(graph: Graph, colour_key) -> list[int]:
    """Iterated neighbourhood refinement (1-dimensional WL).

    Starts from (colour, degree) classes and repeatedly splits by the
    multiset of neighbouring classes until stable. Automorphisms preserve
    the resulting class labels, so they prune the image candidates below.
    """
    keys = [(colour_key(v), graph.degree(v)) for v in range(graph.n)]
    ids = _compress(keys)
    while True:
        keys = [(ids[v], tuple(sorted(ids[u] for u in graph.adjacency[v]))) for v in range(graph.n)]
        new_ids = _compress(keys)
        if len(set(new_ids)) == len(set(ids)):
            return new_ids
        ids = new_ids


def _compress(keys) -> list[int]:
    order = {key: i for i, key in enumerate(sorted(set(keys)))}
    return [order[key] for key in keys]


def automorphism_group(graph: Graph, colouring=None, cap: int = DEFAULT_CAP) -> PermGroup:
    """All adjacency-preserving bijections, optionally colour-preserving.

    Exhaustive backtracking over vertex images in breadth-first order from
    vertex 0, pruned by the refined vertex classes and by adjacency with
    already-assigned neighbours. For a bijection of a finite graph to
    itself, mapping every edge onto an edge already forces non-edges onto
    non-edges, so the per-vertex adjacency checks are sufficient.

    ``colouring`` may be a Colouring or any mapping-like object indexable
    by vertex; images are then restricted to equal colours.
    """
    n = graph.n
    if colouring is None:
        colour_key = lambda v: 0
    else:
        colour_key = lambda v: colouring[v]

    if _twin_order_floor(graph, colour_key) > cap:
        raise GroupCapError(f"automorphism group exceeds cap {cap} (twin classes alone)", cap=cap)

    classes = _refined_classes(graph, colour_key)
    members: dict[int, list[int]] = {}
    for v in range(n):
        members.setdefault(classes[v], []).append(v)

    # breadth-first assignment order: every later vertex has an earlier
    # neighbour, which keeps candidate sets small
    order: list[int] = []
    seen = [False] * n
    queue = deque([0])
    seen[0] = True
    while queue:
        u = queue.popleft()
        order.append(u)
        for v in graph.adjacency[u]:
            if not seen[v]:
                seen[v] = True
                queue.append(v)

    earlier_neighbours: list[list[int]] = []
    position = {v: i for i, v in enumerate(order)}
    for i, v in enumerate(order):
        earlier_neighbours.append([u for u in graph.adjacency[v] if position[u] < i])

    image = [-1] * n
    used = [False] * n
    found: list[Perm] = []

    def extend(i: int) -> None:
        if i == len(order):
            found.append(tuple(image))
            if len(found) > cap:
                raise GroupCapError(f"automorphism group exceeds cap {cap}", cap=cap)
            return
        v = order[i]
        anchors = earlier_neighbours[i]
        if anchors:
            candidates = graph.adjacency[image[anchors[0]]]
        else:
            candidates = members[classes[v]]
        for w in candidates:
            if used[w] or classes[w] != classes[v]:
                continue
            ok = True
            for u in anchors:
                if not graph.has_edge(image[u], w):
                    ok = False
                    break
            if ok:
                image[v] = w
                used[w] = True
                extend(i + 1)
                used[w] = False
                image[v] = -1

    extend(0)
    return PermGroup(n, tuple(sorted(found)))


def orbits(group: PermGroup, domain) -> tuple[tuple[int, ...], ...]:
    """Orbit partition of a setwise-invariant domain.

    Blocks are ordered by their minimum element; members sorted.
    """
    domain = sorted(domain)
    domain_set = set(domain)
    for p in group.elements:
        for v in domain:
            if p[v] not in domain_set:
                raise DomainNotInvariantError(f"element maps {v} to {p[v]} outside the domain")
    remaining = set(domain)
    blocks = []
    for v in domain:
        if v not in remaining:
            continue
        orbit = {p[v] for p in group.elements}
        blocks.append(tuple(sorted(orbit)))
        remaining -= orbit
    return tuple(blocks)


def pointwise_stabilizer(group: PermGroup, targets) -> PermGroup:
    targets = tuple(targets)
    return group.subgroup(lambda p: all(p[v] == v for v in targets))


def block_stabilizer(group: PermGroup, partition) -> PermGroup:
    """Elements fixing every block of the partition setwise."""
    blocks = [frozenset(b) for b in partition]
    return group.subgroup(lambda p: all(frozenset(p[v] for v in b) == b for b in blocks))


def colouring_stabilizer(group: PermGroup, colouring) -> PermGroup:
    """Elements preserving a total colouring of the domain."""
    return group.subgroup(lambda p: all(colouring[p[v]] == colouring[v] for v in range(group.degree)))


def chain_length_bound(n: int) -> int:
    """Maximal length of a strict subgroup chain in Sym(n): the closed form
    floor((3n-1)/2) minus the number of ones in the binary expansion of n."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return (3 * n - 1) // 2 - n.bit_count()


def longest_chain_bruteforce(n: int) -> int:
    """Exact longest subgroup chain of Sym(n), by full lattice enumeration.

    Enumerates every subgroup (cyclic extension: repeatedly adjoin one
    coset representative and close), then takes the longest strictly
    decreasing path from Sym(n) to the trivial group, counted as the
    number of strict inclusions. Limited to n <= 5.
    """
    if not 1 <= n <= 5:
        raise ValueError(f"subgroup lattice enumeration supports 1 <= n <= 5, got {n}")
    full = list(itertools.permutations(range(n)))
    ident = identity_perm(n)

    subgroups: dict[frozenset, tuple[Perm, ...]] = {frozenset({ident}): ()}
    frontier = deque(subgroups.items())
    while frontier:
        elems, gens = frontier.popleft()
        seen_cosets: set[Perm] = set()
        for g in full:
            if g in elems:
                continue
            coset_rep = min(compose(h, g) for h in elems)
            if coset_rep in seen_cosets:
                continue
            seen_cosets.add(coset_rep)
            new_gens = gens + (g,)
            new_elems = frozenset(_close(elems | {g}, new_gens))
            if new_elems not in subgroups:
                subgroups[new_elems] = new_gens
                frontier.append((new_elems, new_gens))

    lattice = list(subgroups)
    proper_subs: dict[frozenset, list[frozenset]] = {H: [] for H in lattice}
    for H in lattice:
        for K in lattice:
            if K < H:
                proper_subs[H].append(K)

    depth: dict[frozenset, int] = {}

    def longest(H: frozenset) -> int:
        if len(H) == 1:
            return 0
        if H not in depth:
            depth[H] = 1 + max(longest(K) for K in proper_subs[H])
        return depth[H]

    return longest(frozenset(full))


def _close(start, gens):
    elems = set(start)
    frontier = deque(elems)
    while frontier:
        p = frontier.popleft()
        for g in gens:
            q = compose(g, p)
            if q not in elems:
                elems.add(q)
                frontier.append(q)
    return elems


def partition_image(perm: Perm, blocks, index_of: dict[int, int]) -> list[int] | None:
    """Where the permutation sends each block, or None if some image is
    not itself a block of the partition."""
    result = []
    for b, block in enumerate(blocks):
        target = index_of.get(perm[block[0]])
        if target is None or len(blocks[target]) != len(block):
            return None
        tset = set(blocks[target])
        if any(perm[v] not in tset for v in block):
            return None
        result.append(target)
    return result


def block_index_map(blocks) -> dict[int, int]:
    return {v: i for i, block in enumerate(blocks) for v in block}


def minimal_fixing_set(group: PermGroup, blocks, size_bound: float | None = None) -> tuple[tuple[int, ...], ...]:
    """A small, inclusion-minimal list of blocks whose setwise fixing
    forces every block of the partition to be fixed setwise.

    Greedy phase: while the running stabilizer still moves some block,
    adjoin the moved block with the smallest minimum vertex. Prune phase:
    scan the picks in reverse insertion order and drop any pick whose
    removal keeps the stabilizer equal to the full block stabilizer. The
    result is returned sorted by minimum vertex.

    Each greedy pick strictly shrinks the induced action on the block set,
    so the greedy length is bounded by the longest subgroup chain in the
    symmetric group on the blocks; `size_bound` (when given) is an
    additional promise from the caller and both bounds are enforced as
    internal-consistency checks.
    """
    blocks = tuple(tuple(sorted(b)) for b in blocks)
    index_of = block_index_map(blocks)
    for p in group.elements:
        if partition_image(p, blocks, index_of) is None:
            raise NotAPartitionActionError("group does not permute the blocks of the partition")

    target = block_stabilizer(group, blocks)

    def stabilizer_of(picks) -> PermGroup:
        chosen = [frozenset(blocks[i]) for i in picks]
        return group.subgroup(lambda p: all(frozenset(p[v] for v in b) == b for b in chosen))

    picks: list[int] = []
    current = group
    while current.order != target.order:
        moved = None
        for b, block in enumerate(blocks):
            if b in picks:
                continue
            bset = frozenset(block)
            if any(frozenset(p[v] for v in block) != bset for p in current.elements):
                moved = b
                break
        if moved is None:
            raise InternalInvariantError("no moved block found while stabilizers still differ")
        picks.append(moved)
        current = stabilizer_of(picks)

    for b in reversed(list(picks)):
        trial = [x for x in picks if x != b]
        if stabilizer_of(trial).order == target.order:
            picks = trial

    if picks and len(picks) > chain_length_bound(len(blocks)):
        raise InternalInvariantError(
            f"fixing set of length {len(picks)} exceeds the chain bound for {len(blocks)} blocks"
        )
    if size_bound is not None and len(picks) > size_bound:
        raise InternalInvariantError(f"fixing set of length {len(picks)} exceeds promised bound {size_bound}")

    return tuple(blocks[b] for b in sorted(picks, key=lambda i: blocks[i][0]))
