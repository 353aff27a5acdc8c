"""Spacing shifts: binary subshifts where all distances between 1s lie in a
parameter set P.

A word is admissible when the difference set of its 1-positions is contained
in P, so the language is hereditary by construction. Counting uses a
bounded-window bitmask DP when the excluded-difference set N \\ P is finite
(window = largest excluded difference), and branch and bound over 1-position
subsets with forward pruning otherwise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .core import Word
from .errors import PreconditionError, ResourceCapExceeded
from .langkit import (
    SubshiftSpec,
    entropy_estimates,
    max_density_word,
)
from .sets import IntSetSpec, difference_set

WINDOWED_DP_MAX_WINDOW = 24
DEFAULT_NODE_CAP = 20_000_000


@dataclass(frozen=True)
class PSetSpec:
    """The parameter P of a spacing shift; membership decidable to any horizon."""

    base: IntSetSpec

    def contains(self, d):
        return self.base.contains(d)

    def excluded_max(self):
        """Largest element of N \\ P when that set is provably finite, else None."""
        ep = self.base.eventually_periodic()
        if ep is None:
            return None
        pre, per = ep
        if not all(per):
            return None
        return max((i + 1 for i, b in enumerate(pre) if not b), default=0)

    def __str__(self):
        return str(self.base)


def admissible(P, w):
    """P-admissibility of a binary word: all 1-position differences lie in P."""
    syms = w.symbols if isinstance(w, Word) else tuple(w)
    if any(s not in (0, 1) for s in syms):
        raise PreconditionError("spacing admissibility needs a binary word")
    ones = [i + 1 for i, s in enumerate(syms) if s == 1]
    for i in range(len(ones)):
        for j in range(i + 1, len(ones)):
            if not P.contains(ones[j] - ones[i]):
                return False
    return True


def _count_windowed_dp(P, k, w):
    """DP over the bitmask of 1s among the last w positions; applicable when
    every difference above w lies in P."""
    if w == 0:
        return 2 ** k
    if w > WINDOWED_DP_MAX_WINDOW:
        raise ResourceCapExceeded("windowed DP window %d exceeds cap" % w)
    mask = (1 << w) - 1
    # bit (d-1) of `excluded` set  <->  difference d excluded
    excluded = 0
    for d in range(1, w + 1):
        if not P.contains(d):
            excluded |= 1 << (d - 1)
    vec = {0: 1}
    for _ in range(k):
        nxt = {}
        for state, cnt in vec.items():
            s0 = (state << 1) & mask
            nxt[s0] = nxt.get(s0, 0) + cnt
            if state & excluded == 0:
                s1 = ((state << 1) | 1) & mask
                nxt[s1] = nxt.get(s1, 0) + cnt
        vec = nxt
    return sum(vec.values())


def _count_branch_and_bound(P, k, node_cap=DEFAULT_NODE_CAP):
    """Count admissible 1-position subsets of [1, k]; positions ascending, the
    running allowed-positions list is intersected on every choice."""
    p_bits = [False] + [P.contains(d) for d in range(1, k)]
    nodes = 0

    def rec(allowed):
        nonlocal nodes
        total = 1
        for idx, q in enumerate(allowed):
            nodes += 1
            if nodes > node_cap:
                raise ResourceCapExceeded("spacing count exceeded %d nodes" % node_cap)
            total += rec([r for r in allowed[idx + 1:] if p_bits[r - q]])
        return total

    return rec(list(range(1, k + 1)))


def count_spacing(P, k, strategy=None, node_cap=DEFAULT_NODE_CAP):
    """lambda_k for Omega_P, exact. Strategy is auto-selected: windowed DP when
    N \\ P is finite with small maximum, branch and bound otherwise."""
    if k < 1:
        raise PreconditionError("k must be >= 1")
    if strategy is None:
        w = P.excluded_max()
        strategy = "windowed_dp" if w is not None and w <= WINDOWED_DP_MAX_WINDOW \
            else "branch_and_bound"
    if strategy == "windowed_dp":
        w = P.excluded_max()
        if w is None:
            raise PreconditionError("windowed DP needs a finite excluded set")
        return _count_windowed_dp(P, k, w)
    if strategy == "branch_and_bound":
        return _count_branch_and_bound(P, k, node_cap=node_cap)
    raise PreconditionError("unknown spacing strategy %r" % (strategy,))


def spacing_shift(P):
    """Build the langkit spec for Omega_P."""
    if not isinstance(P, PSetSpec):
        P = PSetSpec(P)

    def step(state, i, a):
        # state: tuple of 1-based 1-positions so far
        if a == 0:
            return True, state
        q = i + 1
        for p in state:
            if not P.contains(q - p):
                return False, state
        return True, state + (q,)

    def pos_next(chosen, start, k):
        for q in range(start, k + 1):
            if all(P.contains(q - p) for p in chosen):
                yield q

    w = P.excluded_max()
    strategy = "windowed_dp" if w is not None and w <= WINDOWED_DP_MAX_WINDOW \
        else "branch_and_bound"
    return SubshiftSpec(
        n=2, family="spacing", label="spacing:P=%s" % P,
        start_state=(), step=step,
        counting_strategy=strategy,
        counter=lambda k: count_spacing(P, k, strategy=strategy),
        position_next=pos_next,
        params={"P": str(P)})


def transition_set_check(P, H):
    """Verify N([1]_P, [1]_P) = P up to the horizon: the gap word 1 0^(m-1) 1 is
    admissible exactly for m in P."""
    if H < 1:
        raise PreconditionError("H must be >= 1")
    for m in range(1, H + 1):
        gap_word = (1,) + (0,) * (m - 1) + (1,)
        if admissible(P, gap_word) != P.contains(m):
            return False
    return True


def weak_mixing_probe(P, block_len, H):
    """Finite-horizon thickness evidence: does P contain `block_len` consecutive
    integers within [1, H]? (Weak mixing of Omega_P is equivalent to P thick.)"""
    run = 0
    for d in range(1, H + 1):
        run = run + 1 if P.contains(d) else 0
        if run >= block_len:
            return True
    return False


def recurrence_entropy_probe(R, k_max, strategy=None):
    """Entropy-side evidence for R as a recurrence set: h_k upper bounds for
    Omega_{N \\ R} (R is a recurrence set iff that entropy is zero)."""
    from .sets import ComplementSet

    P = PSetSpec(ComplementSet(R))
    spec = spacing_shift(P)
    return entropy_estimates(spec, k_max, strategy=strategy)


def delta_star_bound_check(A, k, trials, H, seed, structured=True):
    """For `trials` seeded random (plus structured) k-element sets B in [1, H],
    verify that A - A contains a positive element of B - B. Precondition of the
    underlying pigeonhole lemma: the density estimate of A on [1, H] exceeds 1/k."""
    members = A.members(H)
    beta = Fraction(len(members), H)
    if beta * k <= 1:
        raise PreconditionError(
            "density estimate %s <= 1/%d; the bound's precondition fails" % (beta, k))
    diff = set()
    for i, a in enumerate(members):
        for b in members[:i]:
            diff.add(a - b)

    def violates(B):
        bs = sorted(B)
        for i in range(len(bs)):
            for j in range(i + 1, len(bs)):
                if bs[j] - bs[i] in diff:
                    return False
        return True

    candidates = []
    if structured:
        for step in range(1, 21):
            B = [1 + t * step for t in range(k)]
            if B[-1] <= H:
                candidates.append(B)
    rng = random.Random(seed)
    for _ in range(trials):
        candidates.append(rng.sample(range(1, H + 1), k))
    for B in candidates:
        if violates(B):
            return False, tuple(sorted(B))
    return True, None


def difference_subset_witness(A, H, node_cap=DEFAULT_NODE_CAP):
    """A dense admissible word for Omega_{(A-A) cap [1,H]}: its 1-positions B
    satisfy (B - B) inside (A - A), restricted to the horizon. The topological
    route behind 'positive Banach density gives a positive-density difference
    subset'."""
    P = PSetSpec(difference_set(A, H))
    spec = spacing_shift(P)
    w, value = max_density_word(spec, 1, H, require_target=False, node_cap=node_cap)
    return w, value, P
