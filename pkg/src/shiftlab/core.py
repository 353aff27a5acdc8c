"""Alphabets, finite words, eventually periodic points and the shift metric.

Conventions used everywhere in the package:

* symbols are the integers ``0 .. n-1`` for an alphabet of size ``n >= 2``;
* sequence indices are 1-based, so a point is ``omega = (omega_i), i >= 1``;
* the metric returns exact rationals ``n**-k`` where ``k`` is the 1-based
  index of the first disagreement.

An eventually periodic point ``u . v v v ...`` is kept in a canonical form
(minimal preperiod, primitive period), which makes equality, the metric and
shifting exact and decidable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import AlphabetMismatch, SpecParseError


@dataclass(frozen=True)
class Alphabet:
    size: int

    def __post_init__(self):
        if self.size < 2:
            raise ValueError("alphabet size must be >= 2, got %r" % (self.size,))


@dataclass(frozen=True)
class Word:
    """A finite string of symbols over a fixed alphabet."""

    alphabet: Alphabet
    symbols: tuple

    def __post_init__(self):
        n = self.alphabet.size
        for s in self.symbols:
            if not (0 <= s < n):
                raise ValueError("symbol %r out of range for alphabet of size %d" % (s, n))

    def __len__(self):
        return len(self.symbols)

    def __str__(self):
        return "".join(str(s) for s in self.symbols)

    def weight(self):
        """Number of nonzero symbols (equals sum(w) on a binary alphabet)."""
        return sum(1 for s in self.symbols if s != 0)


def word(text_or_symbols, n=2):
    """Build a Word from a digit string or a symbol iterable."""
    if isinstance(text_or_symbols, Word):
        return text_or_symbols
    if isinstance(text_or_symbols, str):
        syms = tuple(int(c) for c in text_or_symbols)
    else:
        syms = tuple(int(s) for s in text_or_symbols)
    return Word(Alphabet(n), syms)


def _symbols(x):
    return x.symbols if isinstance(x, Word) else tuple(x)


def lex_compare(x, y):
    """Lexicographic comparison of two equal-length symbol prefixes.

    Returns -1, 0 or 1. Raises AlphabetMismatch for Words over different
    alphabets.
    """
    if isinstance(x, Word) and isinstance(y, Word) and x.alphabet != y.alphabet:
        raise AlphabetMismatch("lex_compare: %r vs %r" % (x.alphabet, y.alphabet))
    xs, ys = _symbols(x), _symbols(y)
    if len(xs) != len(ys):
        raise ValueError("lex_compare expects equal-length prefixes")
    for a, b in zip(xs, ys):
        if a < b:
            return -1
        if a > b:
            return 1
    return 0


def _primitive_root(per):
    k = len(per)
    for d in range(1, k + 1):
        if k % d == 0 and per[:d] * (k // d) == per:
            return per[:d]
    return per


def _canonicalize(pre, per):
    pre, per = tuple(pre), tuple(per)
    if not per:
        raise ValueError("period must be nonempty")
    # absorb trailing preperiod symbols that merely rotate the period
    while pre and pre[-1] == per[-1]:
        pre = pre[:-1]
        per = (per[-1],) + per[:-1]
    return pre, _primitive_root(per)


@dataclass(frozen=True)
class EventuallyPeriodicPoint:
    """The infinite sequence preperiod . period period ... in canonical form."""

    alphabet: Alphabet
    preperiod: tuple
    period: tuple

    def __post_init__(self):
        pre, per = _canonicalize(self.preperiod, self.period)
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)
        n = self.alphabet.size
        for s in pre + per:
            if not (0 <= s < n):
                raise ValueError("symbol %r out of range for alphabet of size %d" % (s, n))

    def symbol_at(self, i):
        """1-based coordinate omega_i."""
        if i < 1:
            raise IndexError("indices are 1-based")
        p = len(self.preperiod)
        if i <= p:
            return self.preperiod[i - 1]
        return self.period[(i - p - 1) % len(self.period)]

    def prefix(self, k):
        return tuple(self.symbol_at(i) for i in range(1, k + 1))

    def __str__(self):
        return format_point(self)


def periodic_point(pre, per, n=2):
    """Build an EventuallyPeriodicPoint from digit strings or symbol iterables."""
    pre_s = tuple(int(c) for c in pre)
    per_s = tuple(int(c) for c in per)
    return EventuallyPeriodicPoint(Alphabet(n), pre_s, per_s)


def parse_point(text, n=2):
    """Parse the textual syntax ``pre;per`` (e.g. ``;10`` or ``11;0``)."""
    if text.count(";") != 1:
        raise SpecParseError("point must be written as pre;per, got %r" % (text,))
    pre, per = text.split(";")
    if not per:
        raise SpecParseError("period part must be nonempty in %r" % (text,))
    if not all(c.isdigit() for c in pre + per):
        raise SpecParseError("point symbols must be digits in %r" % (text,))
    try:
        return periodic_point(pre, per, n)
    except ValueError as e:
        raise SpecParseError(str(e)) from e


def format_point(x):
    # canonical form round-trips bit-exactly through parse_point
    return "%s;%s" % ("".join(map(str, x.preperiod)), "".join(map(str, x.period)))


def _same_alphabet(x, y):
    if x.alphabet != y.alphabet:
        raise AlphabetMismatch("%r vs %r" % (x.alphabet, y.alphabet))


def equality_horizon(x, y):
    """Comparison length after which two eventually periodic points must agree."""
    return len(x.preperiod) + len(y.preperiod) + lcm(len(x.period), len(y.period))


def first_disagreement(x, y):
    """1-based index of the first coordinate where x and y differ, or None."""
    _same_alphabet(x, y)
    for i in range(1, equality_horizon(x, y) + 1):
        if x.symbol_at(i) != y.symbol_at(i):
            return i
    return None


def metric_rho(x, y):
    """The shift metric rho(x, y) = n**-k at the first disagreement k, 0 if equal."""
    k = first_disagreement(x, y)
    if k is None:
        return Fraction(0)
    return Fraction(1, x.alphabet.size ** k)


def shift_point(x, j):
    """sigma**j applied to an eventually periodic point, in canonical form."""
    if j < 0:
        raise ValueError("shift amount must be nonnegative")
    pre, per = x.preperiod, x.period
    if j <= len(pre):
        return EventuallyPeriodicPoint(x.alphabet, pre[j:], per)
    r = (j - len(pre)) % len(per)
    return EventuallyPeriodicPoint(x.alphabet, (), per[r:] + per[:r])


def point_prefix(x, k):
    """The first k coordinates of x as a Word."""
    return Word(x.alphabet, x.prefix(k))


# -- word plumbing ------------------------------------------------------------

def concat(u, v):
    if u.alphabet != v.alphabet:
        raise AlphabetMismatch("concat: %r vs %r" % (u.alphabet, v.alphabet))
    return Word(u.alphabet, u.symbols + v.symbols)


def subword(w, i, length):
    """The length-`length` factor of w starting at 1-based position i."""
    if i < 1 or i + length - 1 > len(w):
        raise IndexError("subword out of range: i=%d len=%d |w|=%d" % (i, length, len(w)))
    return Word(w.alphabet, w.symbols[i - 1:i - 1 + length])


def occurrences(u, w):
    """All 1-based positions where u appears in w."""
    if u.alphabet != w.alphabet:
        raise AlphabetMismatch("occurrences: %r vs %r" % (u.alphabet, w.alphabet))
    k = len(u)
    return [t for t in range(1, len(w) - k + 2) if w.symbols[t - 1:t - 1 + k] == u.symbols]


def ones_positions(w):
    """1-based positions carrying the symbol 1."""
    syms = _symbols(w)
    return [i + 1 for i, s in enumerate(syms) if s == 1]
