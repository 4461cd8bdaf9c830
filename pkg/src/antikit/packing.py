"""Two-dimensional balanced bin packing.

Items are (p, q) pairs of non-negative weights packed into exactly t bins so
that every bin keeps both coordinate sums at most (1 - 7*alpha) * m.  The
instance hypotheses are

    (a)  (1 - alpha) * sum(p) <= sum(q) <= (1 + alpha) * sum(p)
    (b)  p_i + q_i <= alpha * m for every item
    (c)  max(sum(p), sum(q)) < (1 - 10*alpha) * m * t

The packer works in two phases.  Phase one sorts items by |p - q| descending
and places greedily while keeping every bin's p-sum at most (1 - 9*alpha)*m
and its skew p-sum minus q-sum inside [-alpha*m, alpha*m].  Phase two takes
the leftovers: once no leftover fits under the skew window, hypothesis (b)
forces the remaining skews to share one sign, and then filling by p-sum (or
q-sum, for the negative sign) alone stays within bounds because the skew of
a bin only moves away from the blocked side.  A counting argument on (c)
guarantees phase two always finds room, so on-hypothesis inputs never fail.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass


class HypothesisViolatedError(ValueError):
    """Carries the name of the first failed hypothesis clause."""

    def __init__(self, clause: str, detail: str):
        super().__init__(f"hypothesis ({clause}) violated: {detail}")
        self.clause = clause


class PackingFailedError(RuntimeError):
    pass


class TooLargeForOracleError(ValueError):
    pass


@dataclass(frozen=True)
class PackingInstance:
    items: tuple[tuple[int, int], ...]
    m: int
    t: int
    alpha: float

    def __post_init__(self):
        if self.t < 1:
            raise ValueError("t must be at least 1")
        if self.m < 1:
            raise ValueError("m must be at least 1")
        if not (0 < self.alpha < 0.1):
            raise ValueError("alpha must lie in (0, 0.1)")
        for p, q in self.items:
            if p < 0 or q < 0:
                raise ValueError("weights must be non-negative")

    def failed_clause(self) -> tuple[str, str] | None:
        """Name and describe the first violated hypothesis, if any."""
        sp = sum(p for p, _ in self.items)
        sq = sum(q for _, q in self.items)
        if not ((1 - self.alpha) * sp <= sq <= (1 + self.alpha) * sp):
            return ("a", f"sum p = {sp}, sum q = {sq}, alpha = {self.alpha}")
        for i, (p, q) in enumerate(self.items):
            if p + q > self.alpha * self.m:
                return ("b", f"item {i} has p + q = {p + q} > {self.alpha * self.m}")
        cap = (1 - 10 * self.alpha) * self.m * self.t
        if max(sp, sq) >= cap:
            return ("c", f"max coordinate sum {max(sp, sq)} >= {cap}")
        return None

    def to_json_obj(self) -> dict:
        return {
            "items": [[p, q] for p, q in self.items],
            "m": self.m,
            "t": self.t,
            "alpha": self.alpha,
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "PackingInstance":
        return cls(
            items=tuple((int(p), int(q)) for p, q in obj["items"]),
            m=int(obj["m"]),
            t=int(obj["t"]),
            alpha=float(obj["alpha"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "PackingInstance":
        return cls.from_json_obj(json.loads(text))


@dataclass(frozen=True)
class PackingPlan:
    """``bin_of[i]`` is the bin index of item i."""

    bin_of: tuple[int, ...]
    t: int

    def bins(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.t)]
        for i, b in enumerate(self.bin_of):
            out[b].append(i)
        return out

    def bin_sums(self, inst: PackingInstance) -> list[tuple[int, int]]:
        sums = [[0, 0] for _ in range(self.t)]
        for i, b in enumerate(self.bin_of):
            sums[b][0] += inst.items[i][0]
            sums[b][1] += inst.items[i][1]
        return [(p, q) for p, q in sums]

    def validate(self, inst: PackingInstance) -> None:
        if len(self.bin_of) != len(inst.items) or self.t != inst.t:
            raise ValueError("plan shape does not match instance")
        cap = (1 - 7 * inst.alpha) * inst.m
        for b, (p, q) in enumerate(self.bin_sums(inst)):
            if p > cap or q > cap:
                raise ValueError(f"bin {b} sums ({p}, {q}) exceed cap {cap}")

    def to_json_obj(self) -> dict:
        return {"bin_of": list(self.bin_of), "t": self.t}


def pack(inst: PackingInstance, *, check: bool = True) -> PackingPlan:
    """Pack ``inst`` into t bins with both coordinate sums capped at
    (1 - 7*alpha) * m per bin.

    With ``check`` (the default) the instance hypotheses are verified first
    and a :class:`HypothesisViolatedError` names the broken clause.  With
    ``check=False`` the packer simply tries its best and raises
    :class:`PackingFailedError` if its result would break the cap, which can
    only happen off-hypothesis.
    """
    if check:
        failed = inst.failed_clause()
        if failed is not None:
            raise HypothesisViolatedError(*failed)

    m, t, alpha = inst.m, inst.t, inst.alpha
    work_cap = (1 - 9 * alpha) * m
    window = alpha * m
    bin_p = [0] * t
    bin_q = [0] * t

    order = sorted(
        range(len(inst.items)),
        key=lambda i: (-(abs(inst.items[i][0] - inst.items[i][1])), i),
    )
    bin_of: dict[int, int] = {}

    def delta(b: int) -> int:
        return bin_p[b] - bin_q[b]

    # Phase one: greedy under the skew window and the working p-cap.
    leftovers: list[int] = []
    for i in order:
        p, q = inst.items[i]
        best = None
        for b in range(t):
            if bin_p[b] + p > work_cap:
                continue
            nd = delta(b) + (p - q)
            if abs(nd) > window:
                continue
            key = (abs(nd), b)
            if best is None or key < best[0]:
                best = (key, b)
        if best is None:
            leftovers.append(i)
        else:
            b = best[1]
            bin_of[i] = b
            bin_p[b] += p
            bin_q[b] += q

    # Phase two: place leftovers under the skew window while possible; once
    # stuck, the survivors' skews share a sign on-hypothesis and the matching
    # single-coordinate cap suffices.
    while leftovers:
        placed = False
        for idx, i in enumerate(leftovers):
            p, q = inst.items[i]
            for b in range(t):
                if bin_p[b] + p <= work_cap and abs(delta(b) + p - q) <= window:
                    bin_of[i] = b
                    bin_p[b] += p
                    bin_q[b] += q
                    leftovers.pop(idx)
                    placed = True
                    break
            if placed:
                break
        if placed:
            continue

        signs = {(inst.items[i][0] - inst.items[i][1] > 0) for i in leftovers
                 if inst.items[i][0] != inst.items[i][1]}
        if len(signs) > 1:
            return _salvage(inst, bin_of, bin_p, bin_q, leftovers)
        positive = signs != {False}
        for i in list(leftovers):
            p, q = inst.items[i]
            target = None
            for b in range(t):
                if positive and bin_p[b] + p <= work_cap:
                    target = b
                    break
                if not positive and bin_q[b] + q <= work_cap:
                    target = b
                    break
            if target is None:
                return _salvage(inst, bin_of, bin_p, bin_q, leftovers)
            bin_of[i] = target
            bin_p[target] += p
            bin_q[target] += q
            leftovers.remove(i)

    plan = PackingPlan(tuple(bin_of[i] for i in range(len(inst.items))), t)
    plan.validate(inst)
    return plan


def _salvage(inst, bin_of, bin_p, bin_q, leftovers) -> PackingPlan:
    """Off-hypothesis escape hatch: try the exhaustive oracle if the
    instance is small enough, otherwise give up."""
    try:
        plan = oracle_pack(inst)
    except TooLargeForOracleError:
        plan = None
    if plan is None:
        raise PackingFailedError(
            f"{len(leftovers)} items would not fit (instance off-hypothesis)"
        )
    return plan


def oracle_pack(
    inst: PackingInstance, *, item_limit: int = 12, bin_limit: int = 3
) -> PackingPlan | None:
    """Exhaustive packer for small instances; None when infeasible.

    Tries every assignment of items to bins, so it is capped at
    ``item_limit`` items and ``bin_limit`` bins.
    """
    k = len(inst.items)
    if k > item_limit or inst.t > bin_limit:
        raise TooLargeForOracleError(
            f"oracle capped at {item_limit} items / {bin_limit} bins, "
            f"got {k} / {inst.t}"
        )
    cap = (1 - 7 * inst.alpha) * inst.m
    for assignment in itertools.product(range(inst.t), repeat=k):
        sums = [[0, 0] for _ in range(inst.t)]
        ok = True
        for i, b in enumerate(assignment):
            sums[b][0] += inst.items[i][0]
            sums[b][1] += inst.items[i][1]
            if sums[b][0] > cap or sums[b][1] > cap:
                ok = False
                break
        if ok:
            return PackingPlan(tuple(assignment), inst.t)
    return None
