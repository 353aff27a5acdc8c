"""Distribution functions of orbit-distance time series and the constructive
scrambled-family machinery.

For a pair of points x, y the time series is d_j = rho(sigma^j x, sigma^j y).
The lower distribution F(t) is the liminf of prefix frequencies of
{j : d_j < t}; the upper distribution F* is the limsup. For an eventually
periodic pair the series is itself eventually periodic, so both functions are
a single exact step function with breakpoints at the rationals n**-k.

Generator-backed pairs (the scrambled family below) get empirical profiles:
prefix frequencies measured at the construction's own checkpoints b_n, with
liminf estimated by the minimum over checkpoints and limsup by the maximum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .core import EventuallyPeriodicPoint
from .errors import AlphabetMismatch, PreconditionError
from .sets import IntSetSpec

DEFAULT_GROWTH = 200


# -- exact machinery for eventually periodic pairs ----------------------------

def _check_pair(x, y):
    if x.alphabet != y.alphabet:
        raise AlphabetMismatch("%r vs %r" % (x.alphabet, y.alphabet))


def _cycle_structure(x, y):
    """(p, c, D) with D the 1-based disagreement positions inside (p, p+c];
    beyond index p the disagreement set is D shifted by multiples of c."""
    p = max(len(x.preperiod), len(y.preperiod))
    c = lcm(len(x.period), len(y.period))
    D = [i for i in range(p + 1, p + c + 1) if x.symbol_at(i) != y.symbol_at(i)]
    return p, c, D


def diff_equal_densities(x, y):
    """Exact (upper = asymptotic) densities of Diff(x,y) = {i : x_i != y_i}
    and its complement Equal(x,y); both limits exist for eventually periodic
    pairs."""
    _check_pair(x, y)
    p, c, D = _cycle_structure(x, y)
    d = Fraction(len(D), c)
    return d, 1 - d


def _gap_cycle(x, y):
    """For j in one cycle, the gap to the next disagreement after shifting by
    j, or None when the pair agrees from some point on (empty cycle set)."""
    p, c, D = _cycle_structure(x, y)
    if not D:
        return p, c, [None] * c
    gaps = []
    for j in range(p, p + c):
        nxt = min(d if d > j else d + c for d in D)
        gaps.append(nxt - j)
    return p, c, gaps


@dataclass(frozen=True)
class DistributionProfile:
    """F and F* sampled on a threshold grid.

    `fstar_one_everywhere` records whether F*(t) = 1 for every t > 0 (not just
    on the grid): exactly decidable in the exact case, a tolerance judgement
    (threshold 0.99 on every grid point) in the empirical case.
    """

    n: int
    thresholds: tuple
    F_values: tuple
    Fstar_values: tuple
    exact: bool
    fstar_one_everywhere: bool
    horizon: int = None
    checkpoints: tuple = ()

    def to_json(self):
        rows = []
        for t, f, fs in zip(self.thresholds, self.F_values, self.Fstar_values):
            rows.append({"t": _threshold_str(self.n, t),
                         "F": str(f), "Fstar": str(fs)})
        out = {"exact": self.exact, "grid": rows,
               "fstar_one_everywhere": self.fstar_one_everywhere}
        if not self.exact:
            out["horizon"] = self.horizon
            out["checkpoints"] = list(self.checkpoints)
        return out


def _threshold_str(n, t):
    if t >= 1:
        return str(t)
    # render n**-k thresholds symbolically, anything else as a plain fraction
    num, den = t.numerator, t.denominator
    if num == 1:
        k, q = 0, 1
        while q < den:
            q *= n
            k += 1
        if q == den:
            return "%d^-%d" % (n, k)
    return str(t)


def _default_grid(n, max_k):
    grid = [Fraction(1, n ** a) for a in range(max_k, 0, -1)]
    grid.append(Fraction(1))
    return grid


def distribution_profile(x, y, thresholds=None, horizon=None,
                         checkpoints=None, n=None):
    """Exact profile for a pair of eventually periodic points; empirical
    profile (measured at checkpoints up to the horizon) for a pair of finite
    symbol sequences."""
    if isinstance(x, EventuallyPeriodicPoint) and isinstance(y, EventuallyPeriodicPoint):
        return _exact_profile(x, y, thresholds)
    if isinstance(x, EventuallyPeriodicPoint) or isinstance(y, EventuallyPeriodicPoint):
        raise PreconditionError("mixed exact/empirical pair is not supported")
    if n is None:
        n = 2
    return _empirical_profile(tuple(x), tuple(y), thresholds, horizon, checkpoints, n)


def _exact_profile(x, y, thresholds):
    _check_pair(x, y)
    n = x.alphabet.size
    p, c, gaps = _gap_cycle(x, y)
    if gaps and gaps[0] is None:
        dists = [Fraction(0)] * c
        max_gap = 1
    else:
        dists = [Fraction(1, n ** g) for g in gaps]
        max_gap = max(gaps)
    if thresholds is None:
        thresholds = _default_grid(n, max_gap + 1)
    thresholds = tuple(sorted(thresholds))
    F = tuple(Fraction(sum(1 for d in dists if d < t), c) for t in thresholds)
    fstar_one = all(d == 0 for d in dists)
    return DistributionProfile(n=n, thresholds=thresholds, F_values=F,
                               Fstar_values=F, exact=True,
                               fstar_one_everywhere=fstar_one)


def _gap_series(xs, ys):
    """Gaps g_j with d_j = n**-g_j for j = 0..N-1; when no disagreement is
    visible after j the true distance is below n**-(N-j), and that lower
    bound on the gap stands in for it. Distances are handled through their
    exponents to avoid materializing n**100000-denominator rationals."""
    N = len(xs)
    if len(ys) != N:
        raise PreconditionError("empirical pair needs equal-length prefixes")
    nxt = N + 1  # next disagreement position (1-based), scanning backwards
    gaps = [0] * N
    for j in range(N - 1, -1, -1):
        if xs[j] != ys[j]:
            nxt = j + 1
        gaps[j] = nxt - j if nxt <= N else N - j
    return gaps


def _gap_cutoff(n, t):
    """Smallest g with n**-g < t, so d_j < t iff g_j >= cutoff."""
    g = 0
    scale = Fraction(1)
    while scale >= t:
        scale /= n
        g += 1
    return g


def _empirical_profile(xs, ys, thresholds, horizon, checkpoints, n):
    N = len(xs)
    if horizon is not None:
        N = min(N, horizon)
        xs, ys = xs[:N], ys[:N]
    if N == 0:
        raise PreconditionError("empty prefixes")
    if thresholds is None:
        thresholds = _default_grid(n, 12)
    thresholds = tuple(sorted(thresholds))
    if checkpoints is None:
        checkpoints = []
        m = 16
        while m < N:
            checkpoints.append(m)
            m *= 4
        checkpoints.append(N)
    checkpoints = tuple(sorted(set(min(m, N) for m in checkpoints if m > 0)))
    gaps = _gap_series(xs, ys)
    F, Fstar = [], []
    for t in thresholds:
        cutoff = _gap_cutoff(n, t)
        freqs = []
        below = 0
        it = iter(checkpoints)
        target = next(it)
        for j, g in enumerate(gaps, start=1):
            if g >= cutoff:
                below += 1
            if j == target:
                freqs.append(Fraction(below, j))
                target = next(it, None)
                if target is None:
                    break
        F.append(min(freqs))
        Fstar.append(max(freqs))
    fstar_one = all(v >= Fraction(99, 100) for v in Fstar)
    return DistributionProfile(n=n, thresholds=thresholds, F_values=tuple(F),
                               Fstar_values=tuple(Fstar), exact=False,
                               fstar_one_everywhere=fstar_one,
                               horizon=N, checkpoints=checkpoints)


# -- classification -----------------------------------------------------------

@dataclass(frozen=True)
class PairClass:
    verdict: str            # DC1 | DC2-not-DC1 | DC3-not-DC2 | none
    evidence: bool          # empirical verdicts are evidence, never exact
    certificates: dict = field(default_factory=dict)

    def to_json(self):
        return {"verdict": self.verdict, "evidence": self.evidence,
                "certificates": {k: str(v) for k, v in self.certificates.items()}}


def classify_pair(profile):
    """DC1: F* = 1 for all t > 0 and F(s) = 0 for some s. DC2: same upper
    condition with F(s) < 1. DC3: F < F* on a subinterval of positive length
    (two consecutive grid thresholds). Empirical profiles use tolerances
    (F* >= 0.99, F <= 0.01 for 'zero', F <= 0.9 for 'below one') and the
    verdict is tagged as evidence."""
    ts, F, Fs = profile.thresholds, profile.F_values, profile.Fstar_values
    evidence = not profile.exact
    one_tol = Fraction(1) if profile.exact else Fraction(9, 10)
    certs = {}
    if profile.fstar_one_everywhere:
        # a measured prefix-frequency minimum of 0 does not evidence
        # liminf = 0, so only exact profiles can earn the DC1 verdict
        zero_at = None
        if profile.exact:
            zero_at = next((t for t, f in zip(ts, F) if f == 0 and t > 0), None)
        small_at = next((t for t, f in zip(ts, F) if f < one_tol and t > 0), None)
        if zero_at is not None:
            certs["F_zero_at"] = zero_at
            return PairClass("DC1", evidence, certs)
        if small_at is not None:
            certs["F_below_one_at"] = small_at
            return PairClass("DC2-not-DC1", evidence, certs)
    gap_tol = Fraction(0) if profile.exact else Fraction(1, 20)
    for i in range(len(ts) - 1):
        if F[i] + gap_tol < Fs[i] and F[i + 1] + gap_tol < Fs[i + 1]:
            certs["F_lt_Fstar_on"] = (ts[i], ts[i + 1])
            return PairClass("DC3-not-DC2", evidence, certs)
    return PairClass("none", evidence, certs)


# -- the scrambled family -----------------------------------------------------

@dataclass(frozen=True)
class ScrambledFamily:
    members: tuple          # m characteristic sequences, tuples of 0/1 bits
    horizon: int
    b: tuple                # checkpoint sequence b_1 < b_2 < ...
    blocks: tuple           # ((lo, hi), ...) with block n = (b_{2n-1}, b_{2n}]
    index_sets: tuple       # A_i as tuples of block indices within range
    density: Fraction       # exact density of S
    log: dict

    def member_ones(self, i):
        return [p + 1 for p, bit in enumerate(self.members[i]) if bit]


def build_scrambled_family(S, m, horizon, growth=DEFAULT_GROWTH):
    """Family of m binary sequences whose pairwise Diff sets concentrate on
    sparse block ranges of S.

    Checkpoints b_n are multiples of the period of S (so prefix densities on
    blocks are exact) and grow by a factor max(n, growth); the growth factor
    keeps the classical condition n*b_n <= b_{n+1} while pushing the gap
    ranges wide enough that finite-horizon frequency measurements approach
    their limits. Block n is S restricted to (b_{2n-1}, b_{2n}]; member i
    takes the blocks with index congruent to i mod m; the in-between ranges
    (b_{2n}, b_{2n+1}] are empty for every member, which is what drives the
    Equal frequency toward 1.
    """
    if m < 2:
        raise PreconditionError("need at least 2 members")
    if not isinstance(S, IntSetSpec):
        raise PreconditionError("S must be an integer-set spec")
    ep = S.eventually_periodic()
    if ep is None:
        raise PreconditionError("S must be eventually periodic")
    pre, per = ep
    dens = Fraction(sum(per), len(per))
    if dens == 0:
        raise PreconditionError("S has density 0; the construction needs ud(S) > 0")
    period = len(per)
    b = [period if period > 1 else 2]
    while True:
        n_idx = len(b)
        target = max(n_idx, growth) * b[-1]
        nxt = -(-target // period) * period
        if nxt <= b[-1]:
            nxt = b[-1] + period
        if nxt > horizon:
            break
        b.append(nxt)
    if len(b) < 2:
        raise PreconditionError(
            "horizon %d too small for even one block at growth %d" % (horizon, growth))
    blocks = []
    n_blocks = len(b) // 2
    for k in range(n_blocks):
        blocks.append((b[2 * k], b[2 * k + 1]))
    index_sets = tuple(tuple(n for n in range(1, n_blocks + 1) if n % m == i % m)
                       for i in range(m))
    bits_S = S.bits(horizon)
    members = []
    for A in index_sets:
        bits = [0] * horizon
        for n in A:
            lo, hi = blocks[n - 1]
            for p in range(lo + 1, min(hi, horizon) + 1):
                if bits_S[p - 1]:
                    bits[p - 1] = 1
        members.append(tuple(bits))
    log = {
        "b": list(b),
        "growth_ok": all(k * b[k - 1] <= b[k] for k in range(1, len(b))),
        "blocks": [list(bl) for bl in blocks],
        "index_sets": [list(A) for A in index_sets],
        "density": str(dens),
        "growth": growth,
        "block_ones": [sum(bits_S[lo:hi]) for lo, hi in blocks],
    }
    return ScrambledFamily(members=tuple(members), horizon=horizon, b=tuple(b),
                           blocks=tuple(blocks), index_sets=index_sets,
                           density=dens, log=log)


def family_pair_profile(fam, i, j, thresholds=None):
    """Empirical distribution profile of members i and j, measured at the
    construction's own checkpoints."""
    return distribution_profile(fam.members[i], fam.members[j],
                                thresholds=thresholds,
                                checkpoints=fam.b, n=2)


def family_pair_frequencies(fam, i, j):
    """Raw Diff/Equal prefix frequencies at every checkpoint b_n, for the
    window-level assertions about the construction."""
    xs, ys = fam.members[i], fam.members[j]
    rows = []
    diff = 0
    pos = 0
    for cp in fam.b:
        while pos < cp:
            if xs[pos] != ys[pos]:
                diff += 1
            pos += 1
        rows.append((cp, Fraction(diff, cp), 1 - Fraction(diff, cp)))
    return rows


# -- minimal DC1-style certificate for syndetic points ------------------------

def dc1_minimal_witness(x, k):
    """For x with no k-run of zeros, pair x with 0^infinity: every shifted
    distance is at least n**-k, so F(n**-k) = 0 exactly. The other half of the
    DC1 definition (F* = 1 for all t > 0) requires the Equal set to have upper
    density one, which fails for periodic x; both certificate components are
    reported separately."""
    n = x.alphabet.size
    span = len(x.preperiod) + 2 * len(x.period) + k
    run = 0
    for i in range(1, span + 1):
        run = run + 1 if x.symbol_at(i) == 0 else 0
        if run >= k:
            raise PreconditionError("x has a zero run of length %d" % k)
    zero = EventuallyPeriodicPoint(x.alphabet, (), (0,))
    t = Fraction(1, n ** k)
    profile = _exact_profile(x, zero, _default_grid(n, k + 1))
    f_at_t = profile.F_values[profile.thresholds.index(t)]
    cls = classify_pair(profile)
    certs = dict(cls.certificates)
    certs["F_at_threshold"] = t
    certs["F_value"] = f_at_t
    certs["fstar_one_everywhere"] = profile.fstar_one_everywhere
    return PairClass(cls.verdict, cls.evidence, certs)
