"""Independent re-verification of a construction run.

Given the graph and the trace of a run, every invariant the construction
promises is rechecked from scratch: stabilizers are recomputed from the
full automorphism group, the inner colouring states are replayed from the
recorded deltas, and each bound is tested numerically. The audit shares
the group primitives with the construction but none of its control flow,
so a bookkeeping bug in one of the two shows up as a failed check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .colouring import (
    Colouring,
    FAR,
    ROOT,
    RefinementTrace,
    ceil_sqrt,
    colour_bound,
    induced_colouring,
    initial_colouring,
    numeric,
)
from .graphs import Graph, ball, distances, sphere
from .symmetry import (
    DEFAULT_CAP,
    automorphism_group,
    block_index_map,
    colouring_stabilizer,
    orbits,
    partition_image,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    step: int | None
    passed: bool
    detail: str = ""

    def label(self) -> str:
        where = f" (step {self.step})" if self.step is not None else ""
        return f"{self.name}{where}"


def audit_run(graph: Graph, trace: RefinementTrace, final: Colouring, cap: int = DEFAULT_CAP) -> list[CheckResult]:
    """Recheck every per-step invariant of a finished run."""
    checks: list[CheckResult] = []
    root = trace.root
    # a single-vertex graph has max degree 0; its bounds degenerate to the
    # max-degree-1 case (and no step ever runs)
    delta = max(graph.max_degree, 1)
    chunk_cap = ceil_sqrt(delta)
    dist = distances(graph, root)
    budget = colour_bound(delta)
    full_group = automorphism_group(graph, cap=cap)

    colourings = _replay_colourings(graph, trace)
    checks.append(
        CheckResult(
            "replay-matches-result",
            None,
            colourings[-1].colours == final.colours,
            "colouring rebuilt from the trace differs from the returned colouring",
        )
    )

    stabilizers = [colouring_stabilizer(full_group, c) for c in colourings]
    for k, recorded in enumerate(trace.stabilizer_orders):
        checks.append(
            CheckResult(
                "stabilizer-order-recorded",
                k,
                stabilizers[k].order == recorded,
                f"recomputed order {stabilizers[k].order}, trace says {recorded}",
            )
        )
    if trace.final_stabilizer is not None:
        checks.append(
            CheckResult(
                "final-stabilizer-elements",
                None,
                trace.final_stabilizer == stabilizers[-1].elements,
                "embedded final stabilizer differs from the recomputed one",
            )
        )

    for k, colouring in enumerate(colourings):
        ok_root = all((colouring[v] == ROOT) == (v == root) for v in range(graph.n))
        checks.append(CheckResult("root-colour-unique", k, ok_root))
        ok_far = all((colouring[v] == FAR) == (dist[v] > k) for v in range(graph.n))
        checks.append(CheckResult("far-matches-distance", k, ok_far))
        if k > 0:
            prev = colourings[k - 1]
            inner_ball = ball(graph, root, k - 1)
            ok_restrict = all(colouring[v] == prev[v] for v in inner_ball)
            checks.append(CheckResult("inner-ball-preserved", k, ok_restrict))
        orbit_sizes = [len(b) for b in orbits(stabilizers[k], ball(graph, root, k))]
        checks.append(
            CheckResult(
                "ball-orbits-small",
                k,
                max(orbit_sizes, default=0) <= chunk_cap,
                f"largest orbit {max(orbit_sizes, default=0)} > ceil(sqrt({delta})) = {chunk_cap}",
            )
        )
        if k > 0:
            checks.append(
                CheckResult(
                    "stabilizer-monotone",
                    k,
                    stabilizers[k].is_subgroup_of(stabilizers[k - 1]),
                )
            )

    for step in trace.steps:
        checks.extend(_audit_step(graph, trace, step, colourings[step.k], stabilizers[step.k], delta))

    used = {c for c in final.colours if c != FAR}
    checks.append(
        CheckResult(
            "colour-count",
            None,
            len(used) <= budget.total,
            f"{len(used)} distinct colours, bound {budget.total:g}",
        )
    )
    checks.append(
        CheckResult(
            "max-numeric",
            None,
            final.max_numeric() <= budget.numeric,
            f"max numeric {final.max_numeric()}, bound {budget.numeric:g}",
        )
    )
    checks.append(
        CheckResult(
            "barred-palette",
            None,
            all(b <= chunk_cap for b in final.barred_values()),
            f"barred values {sorted(final.barred_values())} exceed {chunk_cap}",
        )
    )
    return checks


def _replay_colourings(graph: Graph, trace: RefinementTrace) -> list[Colouring]:
    """Rebuild c_0..c_K from the per-step sphere colour records."""
    colourings = [initial_colouring(graph, trace.root)]
    for step in trace.steps:
        colours = list(colourings[-1].colours)
        for v, colour in step.final_sphere_colours:
            colours[v] = colour
        colourings.append(Colouring(tuple(colours), root=trace.root, radius=step.k + 1))
    return colourings


def _audit_step(graph, trace, step, colouring, stabilizer, delta):
    checks: list[CheckResult] = []
    k = step.k
    chunk_cap = ceil_sqrt(delta)

    checks.append(
        CheckResult(
            "orbits-match",
            k,
            orbits(stabilizer, sphere(graph, trace.root, k)) == step.orbit_list,
            "recorded orbit list differs from recomputed orbits",
        )
    )

    partitions = step.partitions
    expected_first = (step.next_sphere,) if step.next_sphere else ()
    ok_first = partitions[0] == expected_first
    ok_nested = True
    for i in range(1, len(partitions)):
        coarse = {v: b for b, block in enumerate(partitions[i - 1]) for v in block}
        for block in partitions[i]:
            if len({coarse[v] for v in block}) != 1:
                ok_nested = False
    checks.append(CheckResult("partitions-nested", k, ok_first and ok_nested))

    oversized_ok = True
    for i, blocks in enumerate(partitions):
        large = [b for b in blocks if len(b) > delta]
        if i == len(partitions) - 1 and large:
            oversized_ok = False
        if len(large) > 1:
            oversized_ok = False
    checks.append(CheckResult("class-sizes", k, oversized_ok))

    # replay the inner loop against recomputed running stabilizers
    state = {v: numeric(1) for v in step.next_sphere}
    recolour_counts = {v: 0 for v in step.next_sphere}
    size_cap = math.ceil(3 * chunk_cap / 2)
    for rec in step.inner:
        checks.append(
            CheckResult(
                "acting-orbit-match",
                k,
                rec.acting_orbit == step.orbit_list[rec.index],
                f"inner {rec.index}",
            )
        )
        gamma_tilde = _recompute_running_stabilizer(stabilizer, partitions[: rec.index + 1], state)
        checks.append(
            CheckResult(
                "running-stabilizer-order",
                k,
                gamma_tilde.order == rec.stabilizer_order,
                f"inner {rec.index}: recomputed {gamma_tilde.order}, trace says {rec.stabilizer_order}",
            )
        )

        blocks_i = partitions[rec.index]
        mono = all(len({state[v] for v in block}) == 1 for block in blocks_i)
        checks.append(CheckResult("blocks-monochromatic", k, mono, f"inner {rec.index}"))

        fixes = all(
            frozenset(p[v] for v in block) == frozenset(block)
            for block in blocks_i
            for p in gamma_tilde.elements
        )
        checks.append(CheckResult("running-stabilizer-fixes-blocks", k, fixes, f"inner {rec.index}"))

        checks.append(
            CheckResult(
                "fixing-set-size",
                k,
                len(rec.fixing_blocks) <= size_cap and len(rec.fixing_blocks) <= rec.size_bound,
                f"inner {rec.index}: {len(rec.fixing_blocks)} picks, caps {size_cap} and {rec.size_bound:g}",
            )
        )

        parent_of = block_index_map(blocks_i) if blocks_i else {}
        halving = True
        for block in rec.fixing_blocks:
            parent = partitions[rec.index][parent_of[block[0]]] if blocks_i else None
            if parent is not None and len(block) > len(parent) / 2:
                halving = False
        checks.append(CheckResult("fixing-halves-parent", k, halving, f"inner {rec.index}"))

        before = dict(state)
        for offset, block in enumerate(rec.fixing_blocks, start=1):
            for v in block:
                state[v] = numeric(state[v].value + offset)
                recolour_counts[v] += 1
        replayed = {(v, before[v], state[v]) for v in state if before[v] != state[v]}
        checks.append(
            CheckResult(
                "recolour-deltas-match",
                k,
                replayed == set(rec.recoloured),
                f"inner {rec.index}",
            )
        )

        induced_ok = True
        for j in range(rec.index + 1):
            if partitions[j] and induced_colouring(before, partitions[j]) != induced_colouring(state, partitions[j]):
                induced_ok = False
        checks.append(CheckResult("induced-colours-stable", k, induced_ok, f"inner {rec.index}"))

    if partitions[-1]:
        mono_final = all(len({state[v] for v in block}) == 1 for block in partitions[-1])
        checks.append(CheckResult("blocks-monochromatic", k, mono_final, "finest partition"))

    limit = 1 + math.log2(delta)
    checks.append(
        CheckResult(
            "recolour-count-cap",
            k,
            all(count <= limit for count in recolour_counts.values()),
            f"max recolour count {max(recolour_counts.values(), default=0)}, cap {limit:g}",
        )
    )

    split_ok = True
    seen_blocks = []
    for split in step.splits:
        seen_blocks.append(split.block)
        flat = tuple(v for chunk in split.chunks for v in chunk)
        if flat != split.block:
            split_ok = False
        if any(len(chunk) > chunk_cap for chunk in split.chunks):
            split_ok = False
        if len(split.chunk_colours) != len(split.chunks):
            split_ok = False
        if split.chunk_colours[0] != state[split.block[0]]:
            split_ok = False
        for b, colour in enumerate(split.chunk_colours[1:], start=1):
            if colour.kind != "barred" or colour.value != b:
                split_ok = False
        if len(set(split.chunk_colours)) != len(split.chunk_colours):
            split_ok = False
    if tuple(seen_blocks) != partitions[-1]:
        split_ok = False
    checks.append(CheckResult("final-split", k, split_ok))

    final_state = dict(state)
    for split in step.splits:
        for chunk, colour in zip(split.chunks, split.chunk_colours):
            for v in chunk:
                final_state[v] = colour
    checks.append(
        CheckResult(
            "sphere-colours-match",
            k,
            tuple((v, final_state[v]) for v in step.next_sphere) == step.final_sphere_colours,
        )
    )
    return checks


def _recompute_running_stabilizer(stabilizer, partitions, state):
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
                return False
            if any(induced[img[b]] != induced[b] for b in range(len(blocks))):
                return False
        return True

    return stabilizer.subgroup(preserves)


def summarize(checks: list[CheckResult]) -> dict[str, CheckResult]:
    """First failing result per check name, or the first result if all pass."""
    summary: dict[str, CheckResult] = {}
    for check in checks:
        if check.name not in summary or (summary[check.name].passed and not check.passed):
            summary[check.name] = check
    return summary


def all_passed(checks: list[CheckResult]) -> bool:
    return all(c.passed for c in checks)
