"""Subsets of a finite universe {0, ..., n-1} as immutable bitmasks.

The canonical order used everywhere (class members, report tables, witness
search) is cardinality first, then the numeric bit value.
"""

from .errors import InputError


def bits_of(points, n):
    """Pack an iterable of points into a bitmask, validating the range."""
    bits = 0
    for p in points:
        if not isinstance(p, int) or p < 0 or p >= n:
            raise InputError(f"point {p!r} outside universe of size {n}")
        bits |= 1 << p
    return bits


def points_of(bits):
    """Unpack a bitmask into a sorted tuple of points."""
    out = []
    i = 0
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return tuple(out)


def popcount(bits):
    return bits.bit_count()


def restrict_bits(bits, carrier_bits):
    """Trace bits on the carrier, compressed to indices 0..|carrier|-1."""
    out = 0
    pos = 0
    while carrier_bits:
        if carrier_bits & 1:
            if bits & 1:
                out |= 1 << pos
            pos += 1
        carrier_bits >>= 1
        bits >>= 1
    return out


def sort_key(bits):
    """Canonical order: cardinality, then numeric value."""
    return (bits.bit_count(), bits)


class SubsetMask:
    """An immutable subset of {0, ..., n-1}."""

    __slots__ = ("n", "bits")

    def __init__(self, n, bits=0):
        if not isinstance(n, int) or n < 0:
            raise InputError(f"universe size must be a nonnegative int, got {n!r}")
        if not isinstance(bits, int) or bits < 0 or bits >> n:
            raise InputError(f"bits {bits!r} not a subset of a {n}-point universe")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name, value):
        raise AttributeError("SubsetMask is immutable")

    @classmethod
    def from_points(cls, n, points):
        return cls(n, bits_of(points, n))

    @classmethod
    def empty(cls, n):
        return cls(n, 0)

    @classmethod
    def full(cls, n):
        return cls(n, (1 << n) - 1)

    def points(self):
        return points_of(self.bits)

    def card(self):
        return self.bits.bit_count()

    def complement(self):
        return SubsetMask(self.n, ((1 << self.n) - 1) ^ self.bits)

    def _check_universe(self, other):
        if not isinstance(other, SubsetMask):
            raise InputError(f"expected SubsetMask, got {type(other).__name__}")
        if other.n != self.n:
            raise InputError(f"universe mismatch: {self.n} vs {other.n}")

    def __or__(self, other):
        self._check_universe(other)
        return SubsetMask(self.n, self.bits | other.bits)

    def __and__(self, other):
        self._check_universe(other)
        return SubsetMask(self.n, self.bits & other.bits)

    def __sub__(self, other):
        self._check_universe(other)
        return SubsetMask(self.n, self.bits & ~other.bits)

    def issubset(self, other):
        self._check_universe(other)
        return self.bits & ~other.bits == 0

    def isdisjoint(self, other):
        self._check_universe(other)
        return self.bits & other.bits == 0

    def __le__(self, other):
        return self.issubset(other)

    def __contains__(self, point):
        return isinstance(point, int) and 0 <= point < self.n and self.bits >> point & 1

    def sort_key(self):
        return (self.bits.bit_count(), self.bits)

    def __lt__(self, other):
        self._check_universe(other)
        return self.sort_key() < other.sort_key()

    def __eq__(self, other):
        return (
            isinstance(other, SubsetMask) and self.n == other.n and self.bits == other.bits
        )

    def __hash__(self):
        return hash((self.n, self.bits))

    def __bool__(self):
        return self.bits != 0

    def __repr__(self):
        return f"SubsetMask({self.n}, {{{', '.join(map(str, self.points()))}}})"
