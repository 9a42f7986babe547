"""Basis solvers over violator-space handles.

Three entry points, all deterministic functions of (space, seed):

  bfa               brute-force basis of a subset, the terminal solver
  german_algorithm  sample r = ceil(d*sqrt(n/2)) elements, then repeatedly
                    add the violators of a basis of the working set; needs
                    at most d+1 basis calls
  swiss_algorithm   keep an integer weight per element, sample
                    r = ceil(c*d^2) slips per round, double the weights of
                    the violators of the sample's basis until none remain

Weights are exact Python ints on purpose: totals pass 2^64 after enough
doubling rounds and sampling must stay exact.
"""

from __future__ import annotations

import bisect
import itertools
import math
import random
from dataclasses import dataclass

from .core import (
    RoundRecord,
    RunTrace,
    ViolatorSpace,
    find_basis,
    resolve_dimension,
    restrict,
)
from .seeding import spawn
from .subsets import expand


class SolverStall(RuntimeError):
    """Sampling loop hit its safety cap; the partial trace is attached."""

    def __init__(self, message: str, trace: RunTrace):
        super().__init__(message)
        self.trace = trace


class WeightMap:
    """Integer multiplicities over the ground set, with a cached total."""

    __slots__ = ("mu", "total")

    def __init__(self, mu):
        self.mu = list(mu)
        if any(not isinstance(w, int) or w < 1 for w in self.mu):
            raise ValueError("weights must be ints >= 1")
        self.total = sum(self.mu)

    @classmethod
    def unit(cls, n: int) -> "WeightMap":
        return cls([1] * n)

    def double(self, mask: int) -> None:
        added = 0
        m = mask
        while m:
            low = m & -m
            i = low.bit_length() - 1
            added += self.mu[i]
            self.mu[i] *= 2
            m ^= low
        self.total += added

    def snapshot(self) -> tuple[int, ...]:
        return tuple(self.mu)


@dataclass(frozen=True)
class SolveResult:
    basis: int
    trace: RunTrace
    calls: int  # inner-solver calls (german) or sampling rounds (swiss)


def weighted_sample(weights: WeightMap, r: int, rng: random.Random) -> int:
    """Collapse of a uniform r-subset of the slip multiset.

    Element h contributes mu_h distinguishable slips. A uniform r-subset
    of all slips is drawn with Floyd's method and mapped back to element
    indices; this has the same law as removing one random slip at a time.
    The result has between 1 and r elements set.
    """
    total = weights.total
    if not 1 <= r <= total:
        raise ValueError(f"sample size {r} outside [1, {total}]")
    chosen: set[int] = set()
    for j in range(total - r, total):
        t = rng.randrange(j + 1)
        if t in chosen:
            chosen.add(j)
        else:
            chosen.add(t)
    cums = list(itertools.accumulate(weights.mu))
    mask = 0
    for slip in chosen:
        mask |= 1 << bisect.bisect_right(cums, slip)
    return mask


def bfa(space: ViolatorSpace, subset: int, **kwargs) -> int:
    """Brute-force basis of (subset, V restricted to subset).

    Exactly core.find_basis: the condition V(B) & subset == 0 it
    enumerates is the restricted-space basis condition, so no separate
    restriction plumbing is needed.
    """
    return find_basis(space, subset, **kwargs)


def _swiss_on_restriction(space: ViolatorSpace, subset: int, seed: int, d: int) -> int:
    sub = restrict(space, subset, dim_hint=d)
    res = swiss_algorithm(sub, seed)
    return expand(res.basis, subset)


def german_algorithm(space: ViolatorSpace, seed: int, inner: str = "bfa") -> SolveResult:
    """Sample-then-grow solver; at most d+1 inner-solver calls.

    Each round computes a basis B of the working set (via bfa or via the
    swiss algorithm on the restriction) and merges V(B) into the working
    set; V(B) == V(working set) by locality, and a round with violators
    adds an element of every basis of H, so d+1 rounds always suffice.
    When n <= r the sample would be everything, so the inner solver is
    invoked directly on the full space (recorded as a delegated trace
    with zero rounds).
    """
    if inner not in ("bfa", "sa"):
        raise ValueError(f"inner solver must be 'bfa' or 'sa', got {inner!r}")
    d = resolve_dimension(space)
    n = space.n
    r = min(n, max(1, math.ceil(d * math.sqrt(n / 2.0))))
    if n <= r:
        if inner == "bfa":
            basis = find_basis(space, space.ground)
        else:
            basis = swiss_algorithm(space, spawn(seed, 1)).basis
        trace = RunTrace(kind="ga", initial=None, rounds=(),
                         terminated_cleanly=True, delegated=True)
        return SolveResult(basis, trace, 1)

    rng = random.Random(spawn(seed, 0))
    sample = weighted_sample(WeightMap.unit(n), r, rng)
    g = sample
    recs: list[RoundRecord] = []
    calls = 0
    while True:
        if calls >= d + 1:
            raise RuntimeError(
                f"basis loop ran past {d + 1} rounds; the handle does not "
                f"satisfy the violator-space axioms")
        calls += 1
        if inner == "bfa":
            b = find_basis(space, g)
        else:
            b = _swiss_on_restriction(space, g, spawn(seed, calls), d)
        v = space.violators(b)
        recs.append(RoundRecord(index=calls, sample=g, basis=b,
                                violators=v, working=g | v))
        g |= v
        if v == 0:
            trace = RunTrace(kind="ga", initial=sample, rounds=tuple(recs),
                             terminated_cleanly=True)
            return SolveResult(b, trace, calls)


def default_safety_cap(d: int, n: int) -> int:
    return math.ceil(64 * (d + 1) * (math.log2(max(n, 2)) + 1))


def swiss_algorithm(space: ViolatorSpace, seed: int, c: float = 2.0,
                    max_rounds: int | None = None) -> SolveResult:
    """Weight-doubling solver.

    Rounds draw a weighted sample R, compute its basis B = bfa(R), and
    double the weight of every global violator of B; a round with no
    violators ends the run. When n <= r the solver degenerates to bfa on
    the full ground set (delegated trace, zero rounds). Exceeding the
    safety cap raises SolverStall with the trace attached.
    """
    d = resolve_dimension(space)
    n = space.n
    r = min(n, max(1, math.ceil(c * d * d)))
    if n <= r:
        basis = find_basis(space, space.ground)
        trace = RunTrace(kind="sa", initial=None, rounds=(),
                         terminated_cleanly=True, delegated=True)
        return SolveResult(basis, trace, 1)

    cap = default_safety_cap(d, n) if max_rounds is None else max_rounds
    rng = random.Random(spawn(seed, 0))
    weights = WeightMap.unit(n)
    recs: list[RoundRecord] = []
    for i in range(1, cap + 1):
        sample = weighted_sample(weights, r, rng)
        b = find_basis(space, sample)
        v = space.violators(b)
        weights.double(v)
        recs.append(RoundRecord(index=i, sample=sample, basis=b, violators=v,
                                slips=r, weight_total=weights.total))
        if v == 0:
            trace = RunTrace(kind="sa", initial=None, rounds=tuple(recs),
                             terminated_cleanly=True,
                             final_weights=weights.snapshot())
            return SolveResult(b, trace, i)
    trace = RunTrace(kind="sa", initial=None, rounds=tuple(recs),
                     terminated_cleanly=False, final_weights=weights.snapshot())
    raise SolverStall(f"no violator-free basis within {cap} rounds", trace)


def sa_forever(space: ViolatorSpace, seed: int, max_rounds: int,
               c: float = 2.0) -> RunTrace:
    """Run the weight-doubling loop for exactly max_rounds rounds.

    There is no termination check: a quiet round does not stop the loop,
    and later samples may double weights again. That makes per-round
    events like "the first k rounds all had violators" measurable over a
    fixed horizon. Refuses r >= n: sampling r of n slips must leave
    something out for round events to mean anything, matching the
    solvers' delegation guard.
    """
    d = resolve_dimension(space)
    n = space.n
    r = min(n, max(1, math.ceil(c * d * d)))
    if r >= n:
        raise ValueError(f"sample size r={r} must be below n={n} for round estimation")
    rng = random.Random(spawn(seed, 0))
    weights = WeightMap.unit(n)
    recs: list[RoundRecord] = []
    for i in range(1, max_rounds + 1):
        sample = weighted_sample(weights, r, rng)
        b = find_basis(space, sample)
        v = space.violators(b)
        weights.double(v)
        recs.append(RoundRecord(index=i, sample=sample, basis=b, violators=v,
                                slips=r, weight_total=weights.total))
    clean = not recs or recs[-1].violators == 0
    return RunTrace(kind="sa-forever", initial=None, rounds=tuple(recs),
                    terminated_cleanly=clean, final_weights=weights.snapshot())
