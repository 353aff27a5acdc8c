"""Integer-set calculus: subsets of N with decidable membership.

Every spec can answer membership up to any horizon; densities are exact when
the description permits (eventually periodic, or a generator with a sparsity
certificate) and finite-horizon estimates otherwise. Estimates are never
silently conflated with exact values: each density result carries an
``exact`` flag, and classification verdicts are finite-horizon evidence only.

Set expression grammar (round-trips bit-exactly through parse/str):

    set := finite:{a,b,c} | periodic:<pre>;<per> | complement:(set)
         | union:(set|set|...) | evens | odds | pow2diff | factorial_blocks
         | window:<bitstring>
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import SpecParseError

_DEFAULT_HORIZON = 10_000


class IntSetSpec:
    """Base class; subclasses implement contains() and to_expr()."""

    def contains(self, i):
        raise NotImplementedError

    def to_expr(self):
        raise NotImplementedError

    def members(self, H):
        return [i for i in range(1, H + 1) if self.contains(i)]

    def bits(self, H):
        return [1 if self.contains(i) else 0 for i in range(1, H + 1)]

    def eventually_periodic(self):
        """(pre_bits, per_bits) if membership is provably eventually periodic."""
        return None

    def __str__(self):
        return self.to_expr()

    def __contains__(self, i):
        return self.contains(i)


@dataclass(frozen=True)
class FiniteSet(IntSetSpec):
    elements: frozenset

    def contains(self, i):
        return i in self.elements

    def to_expr(self):
        return "finite:{%s}" % ",".join(str(e) for e in sorted(self.elements))

    def eventually_periodic(self):
        m = max(self.elements) if self.elements else 0
        pre = tuple(1 if i in self.elements else 0 for i in range(1, m + 1))
        return pre, (0,)


@dataclass(frozen=True)
class PeriodicSet(IntSetSpec):
    pre: tuple
    per: tuple
    name: str = ""

    def __post_init__(self):
        if not self.per:
            raise ValueError("period bits must be nonempty")

    def contains(self, i):
        if i < 1:
            return False
        if i <= len(self.pre):
            return bool(self.pre[i - 1])
        return bool(self.per[(i - len(self.pre) - 1) % len(self.per)])

    def to_expr(self):
        if self.name:
            return self.name
        return "periodic:%s;%s" % ("".join(map(str, self.pre)), "".join(map(str, self.per)))

    def eventually_periodic(self):
        return self.pre, self.per


@dataclass(frozen=True)
class ComplementSet(IntSetSpec):
    inner: IntSetSpec

    def contains(self, i):
        return i >= 1 and not self.inner.contains(i)

    def to_expr(self):
        return "complement:(%s)" % self.inner.to_expr()

    def eventually_periodic(self):
        ep = self.inner.eventually_periodic()
        if ep is None:
            return None
        pre, per = ep
        return tuple(1 - b for b in pre), tuple(1 - b for b in per)


@dataclass(frozen=True)
class UnionSet(IntSetSpec):
    parts: tuple

    def contains(self, i):
        return any(p.contains(i) for p in self.parts)

    def to_expr(self):
        return "union:(%s)" % "|".join(p.to_expr() for p in self.parts)

    def eventually_periodic(self):
        eps = [p.eventually_periodic() for p in self.parts]
        if any(ep is None for ep in eps) or not eps:
            return None
        pre_len = max(len(pre) for pre, _ in eps)
        per_len = lcm(*[len(per) for _, per in eps])
        pre = tuple(1 if self.contains(i) else 0 for i in range(1, pre_len + 1))
        per = tuple(1 if self.contains(i) else 0 for i in range(pre_len + 1, pre_len + per_len + 1))
        return pre, per


@dataclass(frozen=True)
class WindowSet(IntSetSpec):
    """Explicit bits up to a horizon; membership beyond the horizon is unknown
    and reported as False. Density results over window sets are estimates."""

    window_bits: tuple

    @property
    def horizon(self):
        return len(self.window_bits)

    def contains(self, i):
        return 1 <= i <= len(self.window_bits) and bool(self.window_bits[i - 1])

    def to_expr(self):
        return "window:%s" % "".join(map(str, self.window_bits))


@dataclass(frozen=True)
class Pow2DiffSet(IntSetSpec):
    """Differences of powers of two, {2**n - 2**m : n > m >= 0}.

    Membership test: i = 2**a * (2**b - 1) with b >= 1, i.e. after stripping
    trailing zero bits the remainder is all-ones in binary.
    """

    def contains(self, i):
        if i < 1:
            return False
        x = i >> ((i & -i).bit_length() - 1)
        return (x & (x + 1)) == 0

    def to_expr(self):
        return "pow2diff"


@dataclass(frozen=True)
class FactorialBlocksSet(IntSetSpec):
    """Union of blocks [n!, n! + n) for n >= 2: asymptotic density 0 but upper
    Banach density 1 (each block is a run of n consecutive members)."""

    def contains(self, i):
        if i < 2:
            return False
        f, n = 2, 2
        while f <= i:
            if f <= i < f + n:
                return True
            n += 1
            f *= n
        return False

    def to_expr(self):
        return "factorial_blocks"


EVENS = PeriodicSet((), (0, 1), name="evens")
ODDS = PeriodicSet((), (1, 0), name="odds")
NATURALS = PeriodicSet((), (1,), name="")
EMPTY = PeriodicSet((), (0,), name="")

_NAMED = {
    "evens": EVENS,
    "odds": ODDS,
    "pow2diff": Pow2DiffSet(),
    "factorial_blocks": FactorialBlocksSet(),
}


def parse_set_expr(text):
    text = text.strip()
    if text in _NAMED:
        return _NAMED[text]
    if text.startswith("finite:{") and text.endswith("}"):
        body = text[len("finite:{"):-1].strip()
        if not body:
            return FiniteSet(frozenset())
        try:
            elems = frozenset(int(t) for t in body.split(","))
        except ValueError as e:
            raise SpecParseError("bad finite set %r" % (text,)) from e
        if any(e < 1 for e in elems):
            raise SpecParseError("finite set elements must be positive: %r" % (text,))
        return FiniteSet(elems)
    if text.startswith("periodic:"):
        body = text[len("periodic:"):]
        if body.count(";") != 1:
            raise SpecParseError("periodic set needs pre;per, got %r" % (text,))
        pre, per = body.split(";")
        if not per or not all(c in "01" for c in pre + per):
            raise SpecParseError("periodic set bits must be 0/1 with nonempty period: %r" % (text,))
        return PeriodicSet(tuple(int(c) for c in pre), tuple(int(c) for c in per))
    if text.startswith("complement:(") and text.endswith(")"):
        return ComplementSet(parse_set_expr(text[len("complement:("):-1]))
    if text.startswith("union:(") and text.endswith(")"):
        body = text[len("union:("):-1]
        parts, depth, start = [], 0, 0
        for i, c in enumerate(body):
            if c == "(":
                depth += 1
            elif c == ")":
                depth -= 1
            elif c == "|" and depth == 0:
                parts.append(body[start:i])
                start = i + 1
        parts.append(body[start:])
        if any(not p.strip() for p in parts):
            raise SpecParseError("empty union member in %r" % (text,))
        return UnionSet(tuple(parse_set_expr(p) for p in parts))
    if text.startswith("window:"):
        bits = text[len("window:"):]
        if not bits or not all(c in "01" for c in bits):
            raise SpecParseError("window bits must be 0/1: %r" % (text,))
        return WindowSet(tuple(int(c) for c in bits))
    raise SpecParseError("unrecognized set expression %r" % (text,))


# -- densities ---------------------------------------------------------------

@dataclass(frozen=True)
class DensityResult:
    value: object          # Fraction when exact, float estimate otherwise
    exact: bool
    exists: object = None  # asymptotic density: True/False/None (unknown)
    horizon: object = None

    def as_float(self):
        return float(self.value)

    def to_json(self):
        out = {"value": float(self.value), "exact": self.exact}
        if self.exact:
            out["value_exact"] = str(self.value)
        if self.exists is not None:
            out["exists"] = self.exists
        if self.horizon is not None:
            out["horizon"] = self.horizon
        return out


def _period_density(ep):
    pre, per = ep
    return Fraction(sum(per), len(per))


def _grid(H):
    ns, n = [], 8
    while n < H:
        ns.append(n)
        n *= 2
    ns.append(H)
    return ns


def upper_density(A, H=_DEFAULT_HORIZON):
    """limsup of |A \\cap [1,n]| / n; exact for eventually periodic specs."""
    ep = A.eventually_periodic()
    if ep is not None:
        return DensityResult(_period_density(ep), exact=True, exists=True)
    bits = A.bits(H)
    counts = _prefix_counts(bits)
    est = max(Fraction(counts[n], n) for n in _grid(H))
    return DensityResult(float(est), exact=False, horizon=H)


def asymptotic_density(A, H=_DEFAULT_HORIZON):
    """Density limit where it provably exists, window estimates otherwise."""
    ep = A.eventually_periodic()
    if ep is not None:
        return DensityResult(_period_density(ep), exact=True, exists=True)
    if isinstance(A, FactorialBlocksSet):
        # sparsity certificate: |A cap [1, n!]| <= 2 + 3 + ... + (n-1) = o(n!)
        return DensityResult(Fraction(0), exact=True, exists=True)
    bits = A.bits(H)
    counts = _prefix_counts(bits)
    est = Fraction(counts[H], H)
    return DensityResult(float(est), exact=False, exists=None, horizon=H)


def upper_banach_density(A, H=_DEFAULT_HORIZON, min_window=16):
    """limsup of window densities; exact for eventually periodic specs, else the
    max density over sampled windows [m, n) in [1, H] with n - m >= min_window."""
    ep = A.eventually_periodic()
    if ep is not None:
        return DensityResult(_period_density(ep), exact=True, exists=True)
    bits = A.bits(H)
    counts = _prefix_counts(bits)
    best = Fraction(0)
    L = min_window
    lengths = []
    while L <= H:
        lengths.append(L)
        L *= 2
    for L in lengths:
        for start in range(0, H - L + 1):
            c = counts[start + L] - counts[start]
            if Fraction(c, L) > best:
                best = Fraction(c, L)
    return DensityResult(float(best), exact=False, horizon=H)


def _prefix_counts(bits):
    counts = [0]
    for b in bits:
        counts.append(counts[-1] + b)
    return counts


# -- set algebra to a horizon --------------------------------------------------

def difference_set(A, H):
    """{a - a' : a, a' in A cap [1, H], a > a'} as a windowed set."""
    mem = A.members(H)
    diffs = set()
    for i, a in enumerate(mem):
        for b in mem[:i]:
            diffs.add(a - b)
    bits = [1 if d in diffs else 0 for d in range(1, H + 1)]
    return WindowSet(tuple(bits))


def sum_set_FS(S, depth, bound):
    """All sums of at most `depth` distinct elements of S, truncated at `bound`."""
    from .errors import PreconditionError

    elems = S.members(bound)
    if not elems:
        raise PreconditionError("sum_set_FS: no elements of S below %d" % bound)
    sums = set()

    def rec(idx, remaining, acc):
        for j in range(idx, len(elems)):
            s = acc + elems[j]
            if s > bound:
                break
            sums.add(s)
            if remaining > 1:
                rec(j + 1, remaining - 1, s)

    rec(0, depth, 0)
    bits = [1 if v in sums else 0 for v in range(1, bound + 1)]
    return WindowSet(tuple(bits))


# -- finite-horizon classification ---------------------------------------------

@dataclass(frozen=True)
class ClassifyReport:
    horizon: int
    thick_run: int
    max_gap: object           # None when fewer than two members
    piecewise_syndetic_evidence: bool
    delta_witness: tuple      # largest D found with D-D inside A
    ip_witness: tuple         # largest S found with FS(S) inside A
    ip_bound: int

    def to_json(self):
        return {
            "horizon": self.horizon,
            "thick_run": self.thick_run,
            "max_gap": self.max_gap,
            "piecewise_syndetic_evidence": self.piecewise_syndetic_evidence,
            "delta_witness": list(self.delta_witness),
            "delta_witness_size": len(self.delta_witness),
            "ip_witness": list(self.ip_witness),
            "ip_witness_size": len(self.ip_witness),
            "ip_bound": self.ip_bound,
        }


def _longest_run(members):
    best = run = 0
    prev = None
    for m in members:
        run = run + 1 if prev is not None and m == prev + 1 else 1
        best = max(best, run)
        prev = m
    return best


def largest_delta_subset(A, H, node_cap=2_000_000):
    """Largest D subset of [1, H] found with D - D inside A (bounded backtracking,
    deterministic ascending order; the size is a lower bound on the true max)."""
    bits = [False] + [A.contains(d) for d in range(1, H + 1)]
    best = []
    nodes = 0

    def rec(chosen, allowed):
        nonlocal best, nodes
        if len(chosen) > len(best):
            best = list(chosen)
        for idx, q in enumerate(allowed):
            nodes += 1
            if nodes > node_cap:
                return
            if len(chosen) + 1 + (len(allowed) - idx - 1) <= len(best):
                break
            nxt = [r for r in allowed[idx + 1:] if bits[r - q]]
            chosen.append(q)
            rec(chosen, nxt)
            chosen.pop()

    rec([], list(range(1, H + 1)))
    return tuple(best)


def largest_ip_subset(A, bound, node_cap=2_000_000, max_size=12):
    """Largest S found with FS(S) inside A and every finite sum <= bound.
    The result is a lower bound on the true maximum: the search stops at
    max_size elements and at the node cap (dense A admits huge IP sets)."""
    candidates = A.members(bound)
    best = []
    nodes = 0

    def rec(start, chosen, sums):
        nonlocal best, nodes
        if len(chosen) > len(best):
            best = list(chosen)
        if len(best) >= max_size:
            return
        top = max(sums) if sums else 0
        for j in range(start, len(candidates)):
            nodes += 1
            if nodes > node_cap or len(best) >= max_size:
                return
            c = candidates[j]
            if sums and c + top > bound:
                break  # candidates ascend, later c only overflows more
            new_sums = {c} | {c + t for t in sums}
            if any(s > bound or not A.contains(s) for s in new_sums):
                continue
            chosen.append(c)
            rec(j + 1, chosen, sums | new_sums)
            chosen.pop()

    rec(0, [], frozenset())
    return tuple(best)


def classify(A, H=_DEFAULT_HORIZON, ip_bound=None, node_cap=2_000_000):
    """Finite-horizon structure report: longest run (thickness evidence), max gap
    (syndeticity evidence), and bounded Delta / IP witness searches."""
    if ip_bound is None:
        ip_bound = min(H, 4096)
    members = A.members(H)
    thick_run = _longest_run(members)
    if len(members) >= 1:
        gaps = [members[0]]
        gaps += [b - a for a, b in zip(members, members[1:])]
        gaps.append(H + 1 - members[-1])
        max_gap = max(gaps)
    else:
        max_gap = None
    pws = thick_run >= 2 and max_gap is not None
    delta_w = largest_delta_subset(A, min(H, 512), node_cap=node_cap)
    ip_w = largest_ip_subset(A, ip_bound, node_cap=node_cap)
    return ClassifyReport(
        horizon=H,
        thick_run=thick_run,
        max_gap=max_gap,
        piecewise_syndetic_evidence=pws,
        delta_witness=delta_w,
        ip_witness=ip_w,
        ip_bound=ip_bound,
    )
