"""Beta shifts: greedy digit expansion of 1, lexicographic admissibility,
follower-state counting.

The base beta is held exactly: either a rational (decimal strings parse to
exact fractions) or a quadratic integer (a + b*sqrt(d))/c. All digits are
produced by exact arithmetic, so every floor is certified; a PrecisionError
is reserved for genuinely ambiguous inputs and cannot fire on the exact
representations used here.

Finite-length membership rule: w is in L(Omega_beta) iff every suffix of w is
lexicographically <= the equal-length prefix of the digit sequence of 1.
This is the zero-padding reading of the tail condition defining Omega_beta
(replacing a tail by zeros only decreases a sequence lexicographically), and
it makes membership finite and exact.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from math import gcd, isqrt

from .core import EventuallyPeriodicPoint, Word, lex_compare, shift_point, word
from .errors import PreconditionError, SpecParseError

DEFAULT_DIGIT_HORIZON = 4096


class QuadraticNumber:
    """Exact (a + b*sqrt(d)) / c with integer a, b, c > 0 and d >= 2 not a
    perfect square. Supports the arithmetic the greedy expansion needs."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        if c == 0:
            raise ValueError("zero denominator")
        if d < 2 or isqrt(d) ** 2 == d:
            raise ValueError("d must be >= 2 and not a perfect square")
        if c < 0:
            a, b, c = -a, -b, -c
        g = gcd(gcd(abs(a), abs(b)), c)
        if g > 1:
            a, b, c = a // g, b // g, c // g
        self.a, self.b, self.c, self.d = a, b, c, d

    def __repr__(self):
        return "(%d%+d*sqrt%d)/%d" % (self.a, self.b, self.d, self.c)

    def _sign_numerator(self):
        # sign of a + b*sqrt(d)
        a, b, d = self.a, self.b, self.d
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        t = a * a - b * b * d
        if a > 0:  # b < 0: positive iff a^2 > b^2 d
            return (t > 0) - (t < 0)
        return (t < 0) - (t > 0)

    def sign(self):
        return self._sign_numerator()

    def __mul__(self, other):
        if isinstance(other, QuadraticNumber):
            if other.d != self.d:
                raise ValueError("mixed radicands")
            a = self.a * other.a + self.b * other.b * self.d
            b = self.a * other.b + self.b * other.a
            return QuadraticNumber(a, b, self.c * other.c, self.d)
        other = Fraction(other)
        return QuadraticNumber(self.a * other.numerator, self.b * other.numerator,
                               self.c * other.denominator, self.d)

    __rmul__ = __mul__

    def __sub__(self, other):
        other = Fraction(other)
        num = other.numerator
        den = other.denominator
        return QuadraticNumber(self.a * den - num * self.c, self.b * den,
                               self.c * den, self.d)

    def _cmp(self, other):
        diff = self - other if not isinstance(other, QuadraticNumber) else None
        if diff is None:
            if other.d != self.d:
                raise ValueError("mixed radicands")
            a = self.a * other.c - other.a * self.c
            b = self.b * other.c - other.b * self.c
            if a == 0 and b == 0:
                return 0
            return QuadraticNumber(a, b, self.c * other.c, self.d).sign()
        return diff.sign()

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __floor__(self):
        # integer guess from isqrt bounds, then exact adjustment
        a, b, c, d = self.a, self.b, self.c, self.d
        root = isqrt(b * b * d)
        num = a + (root if b >= 0 else -root)
        m = num // c
        while self._cmp(m + 1) >= 0:
            m += 1
        while self._cmp(m) < 0:
            m -= 1
        return m

    def __float__(self):
        return (self.a + self.b * math.sqrt(self.d)) / self.c


_QUAD_RE = re.compile(r"^quad:\((-?\d+)\+(-?\d+)\*sqrt(\d+)\)/(\d+)$")


def parse_beta(text):
    """Parse a beta value: a decimal string or quad:(a+b*sqrtd)/c."""
    text = text.strip()
    m = _QUAD_RE.match(text)
    if m:
        a, b, d, c = (int(g) for g in m.groups())
        try:
            value = QuadraticNumber(a, b, c, d)
        except ValueError as e:
            raise SpecParseError(str(e)) from e
    else:
        try:
            value = Fraction(text)
        except (ValueError, ZeroDivisionError) as e:
            raise SpecParseError("bad beta value %r" % (text,)) from e
    return BetaSpec(value, label=text)


class BetaSpec:
    """An exact non-integer base beta > 1 plus a digit horizon."""

    def __init__(self, beta, digit_horizon=DEFAULT_DIGIT_HORIZON, label=None):
        if not (beta > 1):
            raise PreconditionError("beta must exceed 1")
        fl = math.floor(beta)
        if beta == fl:
            raise PreconditionError(
                "integer beta rejected: the digit alphabet {0..floor(beta)} "
                "has floor(beta)+1 symbols but the ambient shift has ceil(beta)")
        self.beta = beta
        self.floor_beta = fl
        self.digit_horizon = digit_horizon
        self.label = label if label is not None else str(beta)
        self._digits = []
        self._remainder = Fraction(1)

    def __repr__(self):
        return "BetaSpec(%s)" % self.label

    @property
    def alphabet_size(self):
        return self.floor_beta + 1

    def digit(self, i):
        """0-based: digit(i) is the (i+1)-st digit of the expansion of 1."""
        if i >= self.digit_horizon:
            raise PreconditionError(
                "digit index %d exceeds digit_horizon %d" % (i, self.digit_horizon))
        while len(self._digits) <= i:
            prod = self.beta * self._remainder
            d = math.floor(prod)
            self._digits.append(d)
            self._remainder = prod - d
        return self._digits[i]


def beta_digits(spec, k):
    """The first k digits of the expansion of 1 in base beta, as a Word."""
    if k > spec.digit_horizon:
        raise PreconditionError("k exceeds digit_horizon")
    return word([spec.digit(i) for i in range(k)], n=spec.alphabet_size)


def parry_check(d, H):
    """Check sigma^k(d) <= d lexicographically for 0 <= k <= H.

    Exact (True/False) for eventually periodic points. For a finite prefix the
    result may be None: some shifted copy agreed with the prefix over the whole
    available comparison length, which decides nothing.
    """
    if isinstance(d, EventuallyPeriodicPoint):
        for k in range(1, H + 1):
            shifted = shift_point(d, k)
            hor = len(shifted.preperiod) + len(d.preperiod) + \
                math.lcm(len(shifted.period), len(d.period))
            verdict = 0
            for i in range(1, hor + 1):
                a, b = shifted.symbol_at(i), d.symbol_at(i)
                if a != b:
                    verdict = -1 if a < b else 1
                    break
            if verdict > 0:
                return False
        return True
    syms = d.symbols if isinstance(d, Word) else tuple(d)
    L = len(syms)
    indeterminate = False
    for k in range(1, min(H, L - 1) + 1):
        cmp = lex_compare(syms[k:], syms[:L - k])
        if cmp > 0:
            return False
        if cmp == 0:
            indeterminate = True
    return None if indeterminate else True


def word_in_beta_language(spec, w):
    """Suffix rule: every suffix of w is <= the equal-length digit prefix."""
    syms = w.symbols if isinstance(w, Word) else tuple(w)
    if len(syms) > spec.digit_horizon:
        raise PreconditionError("word longer than digit_horizon")
    n = spec.alphabet_size
    if any(not (0 <= s < n) for s in syms):
        return False
    digits = [spec.digit(i) for i in range(len(syms))]
    for start in range(len(syms)):
        suffix = syms[start:]
        if lex_compare(suffix, tuple(digits[:len(suffix)])) > 0:
            return False
    return True


def count_beta_language(spec, k):
    """lambda_k via the follower-state DP: the state is the length of the
    current maximal match with a digit prefix; O(k^2) time, exact."""
    if k < 1:
        raise PreconditionError("k must be >= 1")
    if k > spec.digit_horizon:
        raise PreconditionError("k exceeds digit_horizon")
    digits = [spec.digit(i) for i in range(k)]
    vec = [0] * (k + 1)
    vec[0] = 1
    for _ in range(k):
        nxt = [0] * (k + 1)
        for s, cnt in enumerate(vec):
            if not cnt:
                continue
            d = digits[s]
            nxt[s + 1] += cnt        # play the digit d, extend the match
            if d:
                nxt[0] += cnt * d    # any smaller digit resets the match
        vec = nxt
    return sum(vec)


def beta_shift(spec):
    """langkit spec for Omega_beta over the alphabet {0..floor(beta)}."""
    from .langkit import SubshiftSpec

    def step(state, i, a):
        d = spec.digit(state)
        if a > d:
            return False, state
        return True, (state + 1 if a == d else 0)

    return SubshiftSpec(
        n=spec.alphabet_size, family="beta", label="beta:beta=%s" % spec.label,
        start_state=0, step=step,
        counting_strategy="automaton_dp",
        counter=lambda k: count_beta_language(spec, k),
        params={"beta": spec.label})


def beta_hereditary_probe(spec, k):
    """Exhaustive coordinate-lowering check on L_k(Omega_beta); true for every
    valid beta (beta shifts are hereditary)."""
    from .langkit import hereditary_check

    ok, _ = hereditary_check(beta_shift(spec), k)
    return ok


def entropy_vs_log_beta(spec, k):
    """(log2(lambda_k)/k, log2(beta)) - the entropy of a beta shift is log2(beta),
    and the first component is a finite upper-bound estimate of it."""
    from .langkit import log2_int

    lam = count_beta_language(spec, k)
    return log2_int(lam) / k, math.log2(float(spec.beta))
