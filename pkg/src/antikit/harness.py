"""Desk-scale verification harness.

Exhaustively enumerates small oriented graphs (or samples larger ones) and
checks one of a fixed set of statements against the implementation,
producing a deterministic, re-checkable report.  Reports never claim more
than "no counterexample at this scale": the interesting statements are
asymptotic or open, so the harness validates the implementation, not the
mathematics.
"""

from __future__ import annotations

import json
import math
import os
import random
import time
from dataclasses import dataclass
from itertools import permutations
from typing import Iterator

from .antimatching import (
    AntimatchingRequest,
    SizeNotReachedError,
    find_antimatching,
    find_bounded_antimatching,
)
from .antiwalk import reach_from
from .digraph import (
    Digraph,
    OrientedGraph,
    degree_profile,
    format_oedge,
    graph_from_json_obj,
    graph_to_json_obj,
)
from .embed import embed_exact, iter_embeddings, longest_antipath, oracle_embed
from .gadgets import blowup, directed_triangle, four_copy, peel_pseudo
from .treedecomp import RootedAntiTree, antitree_from_shape


class TooLargeError(ValueError):
    pass


class IoFailureError(RuntimeError):
    pass


STATEMENTS = (
    "path_conjecture",
    "antitree_density",
    "antimatching_lemma5",
    "antimatching_lemma6",
    "peel_lemma",
    "gadget_pullback",
    "blowup_tightness",
)

_EXHAUSTIVE_LIMIT = 6


# ---- enumeration ------------------------------------------------------


def _pair_list(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def num_oriented(n: int) -> int:
    return 3 ** (n * (n - 1) // 2)


def graph_from_code(n: int, code: int) -> OrientedGraph:
    """Decode an index in [0, 3^C(n,2)) into a labeled oriented graph: one
    base-3 digit per vertex pair (0 none, 1 low->high, 2 high->low)."""
    out = [0] * n
    inn = [0] * n
    for i, j in _pair_list(n):
        code, digit = divmod(code, 3)
        if digit == 1:
            out[i] |= 1 << j
            inn[j] |= 1 << i
        elif digit == 2:
            out[j] |= 1 << i
            inn[i] |= 1 << j
    return OrientedGraph(n, out, inn)


def graph_code(g: OrientedGraph) -> int:
    code = 0
    for i, j in reversed(_pair_list(g.n)):
        if g.has_edge(i, j):
            digit = 1
        elif g.has_edge(j, i):
            digit = 2
        else:
            digit = 0
        code = code * 3 + digit
    return code


def canonical_code(g: OrientedGraph) -> int:
    """Smallest code over all vertex relabelings; brute force, n <= 6."""
    if g.n > _EXHAUSTIVE_LIMIT:
        raise TooLargeError(f"canonical form by brute force needs n <= {_EXHAUSTIVE_LIMIT}")
    best = None
    for perm in permutations(range(g.n)):
        code = graph_code(g.relabel(list(perm)))
        if best is None or code < best:
            best = code
    return best if best is not None else 0


def enumerate_oriented(n: int, *, canonical: bool = False) -> Iterator[OrientedGraph]:
    """Every labeled oriented graph on n vertices, by increasing code.  With
    canonical=True only the least-code representative of each isomorphism
    class survives."""
    if n > _EXHAUSTIVE_LIMIT:
        raise TooLargeError(
            f"3^{n * (n - 1) // 2} orientations at n={n}; refusing beyond n={_EXHAUSTIVE_LIMIT}"
        )
    for code in range(num_oriented(n)):
        g = graph_from_code(n, code)
        if canonical and canonical_code(g) != code:
            continue
        yield g


def random_oriented(n: int, rng: random.Random, edge_prob: float = 0.6) -> OrientedGraph:
    out = [0] * n
    inn = [0] * n
    for i, j in _pair_list(n):
        if rng.random() < edge_prob:
            if rng.random() < 0.5:
                out[i] |= 1 << j
                inn[j] |= 1 << i
            else:
                out[j] |= 1 << i
                inn[i] |= 1 << j
    return OrientedGraph(n, out, inn)


def random_digraph(n: int, rng: random.Random, edge_prob: float = 0.6) -> Digraph:
    out = [0] * n
    inn = [0] * n
    for u in range(n):
        for v in range(n):
            if u != v and rng.random() < edge_prob:
                out[u] |= 1 << v
                inn[v] |= 1 << u
    return Digraph(n, out, inn)


def random_antitree(
    num_vertices: int, rng: random.Random, root_class: str | None = None
) -> RootedAntiTree:
    """Uniform random parent attachment; orientation forced by depth parity."""
    parent: list[int | None] = [None]
    for v in range(1, num_vertices):
        parent.append(rng.randrange(v))
    if root_class is None:
        root_class = rng.choice(("source", "sink"))
    return antitree_from_shape(num_vertices, 0, parent, root_class=root_class)


def path_orientation(k: int, bits: int) -> OrientedGraph:
    """The k-edge path with edge i forward (low->high) iff bit i of bits."""
    edges = []
    for i in range(k):
        if (bits >> i) & 1:
            edges.append((i, i + 1))
        else:
            edges.append((i + 1, i))
    return OrientedGraph.from_edges(k + 1, edges)


# ---- jobs and reports --------------------------------------------------


@dataclass(frozen=True)
class VerificationJob:
    statement: str
    n_range: tuple[int, ...] = (4,)
    k_range: tuple[int, ...] = (1, 2, 3)
    mode: str = "exhaustive"
    seed: int = 0
    sample_count: int = 100
    edge_prob: float = 0.6
    eta: float = 0.1
    canonical: bool = False

    def __post_init__(self):
        if self.statement not in STATEMENTS:
            raise ValueError(f"unknown statement {self.statement!r}")
        if self.mode not in ("exhaustive", "sampled"):
            raise ValueError("mode must be 'exhaustive' or 'sampled'")
        if self.mode == "exhaustive" and self.statement != "blowup_tightness":
            if any(n > _EXHAUSTIVE_LIMIT for n in self.n_range):
                raise TooLargeError(
                    f"exhaustive mode needs n <= {_EXHAUSTIVE_LIMIT}"
                )

    def to_json_obj(self) -> dict:
        return {
            "statement": self.statement,
            "n_range": list(self.n_range),
            "k_range": list(self.k_range),
            "mode": self.mode,
            "seed": self.seed,
            "sample_count": self.sample_count,
            "edge_prob": self.edge_prob,
            "eta": self.eta,
            "canonical": self.canonical,
        }


@dataclass(frozen=True)
class Counterexample:
    note: str
    host: dict
    pattern: dict | None = None

    def to_json_obj(self) -> dict:
        obj = {"note": self.note, "host": self.host}
        if self.pattern is not None:
            obj["pattern"] = self.pattern
        return obj


@dataclass(frozen=True)
class VerificationReport:
    job: VerificationJob
    instances_checked: int
    counterexamples: tuple[Counterexample, ...]
    elapsed_ms: int

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def canonical_json(self) -> str:
        """Stable serialization: everything except the timing, so identical
        (job, seed) runs compare byte for byte."""
        obj = {
            "job": self.job.to_json_obj(),
            "instances_checked": self.instances_checked,
            "counterexamples": [c.to_json_obj() for c in self.counterexamples],
        }
        return json.dumps(obj, sort_keys=True, indent=2) + "\n"

    def to_json(self) -> str:
        obj = {
            "job": self.job.to_json_obj(),
            "instances_checked": self.instances_checked,
            "counterexamples": [c.to_json_obj() for c in self.counterexamples],
            "elapsed_ms": self.elapsed_ms,
        }
        return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# ---- per-chunk statement checkers --------------------------------------
#
# Each checker consumes an iterator of hosts and returns
# (instances_checked, counterexamples).  Hosts arrive in a deterministic
# order fixed by (seed, chunk index), so reports merge reproducibly.


def _hosts_for_chunk(
    job: VerificationJob, n: int, chunk: tuple[int, int], chunk_index: int
) -> Iterator[OrientedGraph]:
    lo, hi = chunk
    if job.mode == "exhaustive":
        for code in range(lo, hi):
            g = graph_from_code(n, code)
            if job.canonical and canonical_code(g) != code:
                continue
            yield g
    else:
        rng = random.Random(job.seed * 1_000_003 + chunk_index)
        for _ in range(hi - lo):
            yield random_oriented(n, rng, job.edge_prob)


def _check_path_conjecture(job, hosts):
    checked = 0
    bad = []
    for g in hosts:
        profile = degree_profile(g)
        for k in job.k_range:
            if 2 * profile.min_semidegree <= k:
                continue
            for bits in range(1 << k):
                pattern = path_orientation(k, bits)
                checked += 1
                if embed_exact(pattern, g) is not None:
                    continue
                # re-verify with the independent oracle before reporting, so
                # a backtracker bug cannot masquerade as a counterexample
                if oracle_embed(pattern, g) is not None:
                    note = (
                        f"internal disagreement: oracle embeds the {k}-edge "
                        f"path orientation {bits:#x} but the backtracker missed it"
                    )
                else:
                    note = (
                        f"missing {k}-edge path orientation {bits:#x} "
                        f"despite min semidegree {profile.min_semidegree}"
                    )
                bad.append(
                    Counterexample(
                        note=note,
                        host=graph_to_json_obj(g),
                        pattern=graph_to_json_obj(pattern),
                    )
                )
    return checked, bad


def _check_antimatching_lemma5(job, hosts):
    checked = 0
    bad = []
    for g in hosts:
        delta = degree_profile(g).min_semidegree
        if delta < 1:
            continue
        for anchor in range(g.n):
            for t in range(1, delta + 1):
                checked += 1
                try:
                    got = find_antimatching(g, AntimatchingRequest(t=t, anchor=anchor))
                    got.validate(g)
                    if got.size() != t:
                        raise SizeNotReachedError("undersized", got)
                except (SizeNotReachedError, ValueError) as err:
                    bad.append(
                        Counterexample(
                            note=f"anchor {anchor}, t={t}: {err}",
                            host=graph_to_json_obj(g),
                        )
                    )
    return checked, bad


def _check_antimatching_lemma6(job, hosts):
    checked = 0
    bad = []
    for g in hosts:
        delta = degree_profile(g).min_semidegree
        if delta < 1:
            continue
        for anchor in range(g.n):
            for t in range(1, delta + 1):
                checked += 1
                try:
                    got = find_bounded_antimatching(
                        g, AntimatchingRequest(t=t, anchor=anchor)
                    )
                    got.validate(g)
                    report = reach_from(g, anchor)
                    worst = max(report.ood[a] for a, _ in got.edges)
                    if worst > 8 * t:
                        raise ValueError(f"tail at out-out distance {worst} > 8t")
                except (SizeNotReachedError, ValueError, RuntimeError) as err:
                    bad.append(
                        Counterexample(
                            note=f"anchor {anchor}, t={t}: {err}",
                            host=graph_to_json_obj(g),
                        )
                    )
    return checked, bad


def _check_peel_lemma(job, hosts_unused, n, chunk, chunk_index):
    rng = random.Random((job.seed * 1_000_003 + chunk_index) ^ 0x9E3779B9)
    lo, hi = chunk
    checked = 0
    bad = []
    for _ in range(hi - lo):
        g = random_digraph(n, rng, job.edge_prob)
        for k in job.k_range:
            if g.edge_count() <= (k - 1) * g.n:
                continue
            checked += 1
            peeled = peel_pseudo(g, k)
            profile = degree_profile(peeled)
            if peeled.edge_count() == 0 or 2 * profile.min_pseudo_semidegree < k:
                bad.append(
                    Counterexample(
                        note=f"k={k}: peel left {peeled.edge_count()} edges, "
                        f"pseudo-semidegree {profile.min_pseudo_semidegree}",
                        host=graph_to_json_obj(g),
                    )
                )
    return checked, bad


def _check_gadget_pullback(job, hosts):
    checked = 0
    bad = []
    for idx, d_prime in enumerate(hosts):
        if d_prime.edge_count() == 0:
            continue
        gadget, gmap = four_copy(d_prime)
        vstar = gmap.v_star()
        d1 = gmap.d1_vertices()
        rng = random.Random(idx * 7919 + job.seed)
        # The confinement claim needs the pinned vertex to carry an out-edge,
        # so root the antidirected pattern at a source.
        pattern_tree = random_antitree(rng.randrange(2, 6), rng, root_class="source")
        pattern = pattern_tree.to_oriented_graph()
        base = d_prime.reverse() if gmap.input_reversed else d_prime
        checked += 1
        for emb in iter_embeddings(pattern, gadget, pin=(pattern_tree.root, vstar)):
            if any(x not in d1 for x in emb.image):
                bad.append(
                    Counterexample(
                        note="embedding pinned in V* escaped the first copy",
                        host=graph_to_json_obj(gadget),
                        pattern=graph_to_json_obj(pattern),
                    )
                )
                break
            pulled = gmap.pull_back(emb.as_dict())
            if any(
                not base.has_edge(pulled[u], pulled[v]) for u, v in pattern.edges()
            ):
                bad.append(
                    Counterexample(
                        note="pulled-back map is not an embedding of the input",
                        host=graph_to_json_obj(d_prime),
                        pattern=graph_to_json_obj(pattern),
                    )
                )
                break
    return checked, bad


def _check_blowup_tightness(job, hosts_unused):
    checked = 0
    bad = []
    for ell in job.k_range:
        g = blowup(directed_triangle(), ell)
        checked += 1
        profile = degree_profile(g)
        longest = longest_antipath(g)
        if profile.min_semidegree != ell or longest != 2 * ell:
            bad.append(
                Counterexample(
                    note=f"ell={ell}: min semidegree {profile.min_semidegree}, "
                    f"longest antipath on {longest} vertices (expected {2 * ell})",
                    host=graph_to_json_obj(g),
                )
            )
    return checked, bad


def _check_antitree_density(job, hosts):
    checked = 0
    bad = []
    for g in hosts:
        for k in job.k_range:
            if g.edge_count() <= (1 + job.eta) * (k - 1) * g.n:
                continue
            checked += 1
            peeled = peel_pseudo(g, k)
            if peeled.edge_count() == 0:
                bad.append(
                    Counterexample(
                        note=f"k={k}: dense host peeled to nothing",
                        host=graph_to_json_obj(g),
                    )
                )
                continue
            pseudo = degree_profile(peeled).min_pseudo_semidegree
            if 2 * pseudo < k:
                bad.append(
                    Counterexample(
                        note=f"k={k}: peeled pseudo-semidegree {pseudo} below k/2",
                        host=graph_to_json_obj(g),
                    )
                )
                continue
            gadget, _ = four_copy(peeled)
            if degree_profile(gadget).min_semidegree < pseudo:
                bad.append(
                    Counterexample(
                        note=f"k={k}: gadget semidegree dropped below {pseudo}",
                        host=graph_to_json_obj(peeled),
                    )
                )
    return checked, bad


def job_from_json_obj(obj: dict) -> VerificationJob:
    data = dict(obj)
    data["n_range"] = tuple(data["n_range"])
    data["k_range"] = tuple(data["k_range"])
    return VerificationJob(**data)


def _run_chunk(args: tuple) -> tuple[int, list[Counterexample]]:
    job_obj, n, chunk, chunk_index = args
    job = job_from_json_obj(job_obj) if isinstance(job_obj, dict) else job_obj
    if job.statement == "peel_lemma":
        return _check_peel_lemma(job, None, n, chunk, chunk_index)
    if job.statement == "blowup_tightness":
        return _check_blowup_tightness(job, None)
    hosts = _hosts_for_chunk(job, n, chunk, chunk_index)
    if job.statement == "path_conjecture":
        return _check_path_conjecture(job, hosts)
    if job.statement == "antimatching_lemma5":
        return _check_antimatching_lemma5(job, hosts)
    if job.statement == "antimatching_lemma6":
        return _check_antimatching_lemma6(job, hosts)
    if job.statement == "gadget_pullback":
        return _check_gadget_pullback(job, hosts)
    if job.statement == "antitree_density":
        return _check_antitree_density(job, hosts)
    raise ValueError(job.statement)


def _worker_count() -> int:
    raw = os.environ.get("ANTIKIT_WORKERS", "1")
    try:
        count = int(raw)
    except ValueError:
        count = 1
    return max(1, count)


def _chunks_for(job: VerificationJob, n: int) -> list[tuple[int, int]]:
    if job.statement == "blowup_tightness":
        return [(0, 1)]
    if job.mode == "exhaustive" and job.statement not in ("peel_lemma",):
        total = num_oriented(n)
        step = max(1, math.ceil(total / 8))
        return [(lo, min(lo + step, total)) for lo in range(0, total, step)]
    total = job.sample_count
    step = max(1, math.ceil(total / 8))
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


def run(job: VerificationJob) -> VerificationReport:
    """Execute the job, fanning chunks across ANTIKIT_WORKERS processes
    (default 1); merging is order-fixed so the report is deterministic."""
    start = time.monotonic()
    ns = job.n_range if job.statement != "blowup_tightness" else (3,)
    tasks = []
    chunk_index = 0
    for n in ns:
        for chunk in _chunks_for(job, n):
            tasks.append((job.to_json_obj(), n, chunk, chunk_index))
            chunk_index += 1
    workers = _worker_count()
    results: list[tuple[int, list[Counterexample]]]
    if workers == 1 or len(tasks) <= 1:
        results = [_run_chunk(t) for t in tasks]
    else:
        import multiprocessing

        with multiprocessing.Pool(min(workers, len(tasks))) as pool:
            results = pool.map(_run_chunk, tasks)
    checked = sum(r[0] for r in results)
    bad: list[Counterexample] = []
    for _, chunk_bad in results:
        bad.extend(chunk_bad)
    elapsed_ms = int((time.monotonic() - start) * 1000)
    return VerificationReport(
        job=job,
        instances_checked=checked,
        counterexamples=tuple(bad),
        elapsed_ms=elapsed_ms,
    )


def report_emit(report: VerificationReport, out_dir: str) -> None:
    """Write report.json, a one-line summary, and counterexample graphs as
    oedge sidecars (re-loadable, so every failure can be re-checked)."""
    try:
        os.makedirs(out_dir, exist_ok=True)
        with open(os.path.join(out_dir, "report.json"), "w") as fh:
            fh.write(report.to_json())
        lines = []
        verdict = "PASS" if report.passed else "FAIL"
        lines.append(
            f"{verdict} {report.job.statement}: {report.instances_checked} instances, "
            f"{len(report.counterexamples)} counterexamples, {report.elapsed_ms} ms"
        )
        for i, cx in enumerate(report.counterexamples):
            host = graph_from_json_obj(cx.host)
            host_path = os.path.join(out_dir, f"cx_{i:04d}_host.oedge")
            with open(host_path, "w") as fh:
                fh.write(format_oedge(host))
            if cx.pattern is not None:
                pattern = graph_from_json_obj(cx.pattern)
                with open(os.path.join(out_dir, f"cx_{i:04d}_pattern.oedge"), "w") as fh:
                    fh.write(format_oedge(pattern))
            lines.append(f"  cx {i}: {cx.note}")
        with open(os.path.join(out_dir, "summary.txt"), "w") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as err:
        raise IoFailureError(f"could not write report to {out_dir}: {err}") from err
