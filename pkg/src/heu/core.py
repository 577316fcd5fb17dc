"""State spaces, hypotheses, acts, capacities, measures and the Choquet integral.

Hypotheses are plain ``int`` bitmasks: state ``i`` of a :class:`StateSpace`
is bit ``i``.  All numbers are :class:`fractions.Fraction`; nothing in this
module touches floating point.

>>> space = StateSpace(("a", "b"))
>>> nu = validate_capacity({0b00: 0, 0b01: "1/4", 0b10: 0, 0b11: 1}, space)
>>> choquet_integral(Act.of([3, 1]), nu)
Fraction(3, 2)
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (
    BadAlpha,
    DimensionMismatch,
    InputError,
    MissingEntry,
    NotGrounded,
    NotMonotone,
    NotNormalized,
    TooLarge,
)

Hypothesis = int

MAX_STATES = 30
MAX_TABLE_STATES = 16

ZERO = Fraction(0)
ONE = Fraction(1)


def rational(x):
    """Coerce ints, Fractions and strings such as ``"3/2"`` or ``"0.25"``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InputError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {x!r}") from exc
    if isinstance(x, float):
        raise InputError(f"floats are not accepted, pass {x!r} as a string")
    raise InputError(f"not a rational: {x!r}")


def format_rational(x):
    return f"{x.numerator}/{x.denominator}"


# --- bitmask helpers -------------------------------------------------------

def bits(mask):
    """Indices of the set bits of ``mask``, ascending."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def popcount(mask):
    return bin(mask).count("1")


def lowest_bit(mask):
    return (mask & -mask).bit_length() - 1


def submasks(mask):
    """All submasks of ``mask`` in increasing numeric order."""
    out = []
    sub = 0
    while True:
        out.append(sub)
        if sub == mask:
            return out
        sub = (sub - mask) & mask


def mask_to_string(mask, n):
    """Little-endian binary string: character ``i`` is state ``i``."""
    return "".join("1" if mask >> i & 1 else "0" for i in range(n))


def string_to_mask(text, n=None):
    if not isinstance(text, str) or any(c not in "01" for c in text) or not text:
        raise InputError(f"bad mask string: {text!r}")
    if n is not None and len(text) != n:
        raise DimensionMismatch(f"mask {text!r} has {len(text)} states, expected {n}")
    return sum(1 << i for i, c in enumerate(text) if c == "1")


def check_table_size(n):
    if n > MAX_TABLE_STATES:
        raise TooLarge(f"dense tables need n <= {MAX_TABLE_STATES}, got {n}")


@lru_cache(maxsize=None)
def subset_bitsets(n):
    """``sub[H]`` is a bitset over masks with bit ``G`` set iff ``G`` is a subset of ``H``."""
    size = 1 << n
    sub = [0] * size
    for h in range(size):
        acc = 1 << h
        for i in bits(h):
            acc |= sub[h & ~(1 << i)]
        sub[h] = acc
    return tuple(sub)


@lru_cache(maxsize=None)
def superset_bitsets(n):
    size = 1 << n
    full = size - 1
    sup = [0] * size
    for h in range(full, -1, -1):
        acc = 1 << h
        for i in bits(full & ~h):
            acc |= sup[h | 1 << i]
        sup[h] = acc
    return tuple(sup)


# --- state space -----------------------------------------------------------

@dataclass(frozen=True)
class StateSpace:
    labels: tuple

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        if not 1 <= len(labels) <= MAX_STATES:
            raise InputError(f"need 1 <= n <= {MAX_STATES} states, got {len(labels)}")
        if len(set(labels)) != len(labels):
            raise InputError("state labels must be distinct")

    @classmethod
    def of_size(cls, n):
        return cls(tuple(f"s{i}" for i in range(n)))

    @property
    def n(self):
        return len(self.labels)

    @property
    def full(self):
        return (1 << self.n) - 1

    def index(self, label):
        try:
            return self.labels.index(label)
        except ValueError:
            raise InputError(f"unknown state {label!r}") from None

    def mask(self, states):
        """Mask of an iterable of labels (or integer indices)."""
        m = 0
        for s in states:
            i = s if isinstance(s, int) else self.index(s)
            if not 0 <= i < self.n:
                raise InputError(f"state index {i} out of range")
            m |= 1 << i
        return m

    def labels_of(self, mask):
        return [self.labels[i] for i in bits(mask)]

    def complement(self, mask):
        return self.full & ~mask

    def hypotheses(self):
        return range(1 << self.n)


def _coerce_space(space, n):
    if space is None:
        return StateSpace.of_size(n)
    if isinstance(space, int):
        return StateSpace.of_size(space)
    if space.n != n:
        raise DimensionMismatch(f"space has {space.n} states, data has {n}")
    return space


# --- acts --------------------------------------------------------------------

@dataclass(frozen=True)
class Act:
    """Nonnegative state-contingent payoff, in utils."""

    payoffs: tuple

    def __post_init__(self):
        pay = tuple(rational(x) for x in self.payoffs)
        if not pay:
            raise InputError("an act needs at least one state")
        if any(x < 0 for x in pay):
            raise InputError("act payoffs must be nonnegative")
        object.__setattr__(self, "payoffs", pay)

    @classmethod
    def of(cls, payoffs):
        return cls(tuple(payoffs))

    @classmethod
    def constant(cls, n, x):
        return cls((rational(x),) * n)

    @classmethod
    def bet(cls, n, hypothesis):
        return cls(tuple(ONE if hypothesis >> i & 1 else ZERO for i in range(n)))

    @property
    def n(self):
        return len(self.payoffs)

    def __len__(self):
        return len(self.payoffs)

    def __getitem__(self, i):
        return self.payoffs[i]

    def level_set(self, x):
        return sum(1 << i for i, v in enumerate(self.payoffs) if v >= x)

    def scaled(self, alpha):
        alpha = rational(alpha)
        if alpha < 0:
            raise BadAlpha("scale must be nonnegative")
        return Act(tuple(alpha * v for v in self.payoffs))

    def __le__(self, other):
        _same_n(self, other)
        return all(a <= b for a, b in zip(self.payoffs, other.payoffs))


def _same_n(f, g):
    if f.n != g.n:
        raise DimensionMismatch(f"acts on {f.n} and {g.n} states")


def act_max(f, g):
    _same_n(f, g)
    return Act(tuple(max(a, b) for a, b in zip(f.payoffs, g.payoffs)))


def act_min(f, g):
    _same_n(f, g)
    return Act(tuple(min(a, b) for a, b in zip(f.payoffs, g.payoffs)))


def mix(f, g, alpha):
    """Pointwise ``alpha*f + (1-alpha)*g``."""
    _same_n(f, g)
    alpha = rational(alpha)
    if not 0 <= alpha <= 1:
        raise BadAlpha(f"mixture weight {alpha} outside [0, 1]")
    return Act(tuple(alpha * a + (1 - alpha) * b for a, b in zip(f.payoffs, g.payoffs)))


def splice(f, g, hypothesis):
    """``f`` on the hypothesis, ``g`` elsewhere."""
    _same_n(f, g)
    return Act(tuple(a if hypothesis >> i & 1 else b
                     for i, (a, b) in enumerate(zip(f.payoffs, g.payoffs))))


def act_algebra(f, g, op, arg=None):
    """Dispatch on ``op`` in ``{"max", "min", "mix", "splice"}``; ``arg`` is alpha or the event."""
    if op == "max":
        return act_max(f, g)
    if op == "min":
        return act_min(f, g)
    if op == "mix":
        return mix(f, g, arg)
    if op == "splice":
        return splice(f, g, arg)
    raise InputError(f"unknown act operation {op!r}")


# --- measures and capacities ---------------------------------------------------

@dataclass(frozen=True)
class Measure:
    """Probability on the states; ``weights[i]`` is the mass of state ``i``."""

    weights: tuple

    def __post_init__(self):
        w = tuple(rational(x) for x in self.weights)
        if not 1 <= len(w) <= MAX_STATES:
            raise InputError("measure needs between 1 and 30 states")
        if any(x < 0 for x in w):
            raise InputError("measure weights must be nonnegative")
        if sum(w) != 1:
            raise InputError(f"measure weights sum to {sum(w)}, not 1")
        object.__setattr__(self, "weights", w)

    @classmethod
    def of(cls, weights):
        return cls(tuple(weights))

    @classmethod
    def uniform(cls, n):
        return cls((Fraction(1, n),) * n)

    @property
    def n(self):
        return len(self.weights)

    def __call__(self, mask):
        return sum((self.weights[i] for i in bits(mask)), ZERO)

    @property
    def support(self):
        return sum(1 << i for i, w in enumerate(self.weights) if w > 0)

    @property
    def full_support(self):
        return all(w > 0 for w in self.weights)

    def table(self):
        """Dense list of ``mu(H)`` for every mask."""
        check_table_size(self.n)
        size = 1 << self.n
        out = [ZERO] * size
        for m in range(1, size):
            low = m & -m
            out[m] = out[m ^ low] + self.weights[low.bit_length() - 1]
        return out


@dataclass(frozen=True)
class Capacity:
    """Grounded, normalized, monotone set function stored as a dense table."""

    values: tuple
    space: StateSpace = None

    def __post_init__(self):
        vals = tuple(rational(x) for x in self.values)
        size = len(vals)
        n = size.bit_length() - 1
        if size < 2 or size != 1 << n:
            raise DimensionMismatch(f"capacity table length {size} is not 2^n")
        check_table_size(n)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "space", _coerce_space(self.space, n))
        _check_capacity(vals, n)

    @property
    def n(self):
        return self.space.n

    def __call__(self, mask):
        return self.values[mask]

    __getitem__ = __call__

    @property
    def is_additive(self):
        w = [self.values[1 << i] for i in range(self.n)]
        return all(v == sum((w[i] for i in bits(m)), ZERO) for m, v in enumerate(self.values))

    @classmethod
    def from_measure(cls, mu, space=None):
        return cls(tuple(mu.table()), space)


def _check_capacity(vals, n):
    full = (1 << n) - 1
    if vals[0] != 0:
        raise NotGrounded(f"capacity of the empty set is {vals[0]}", witness=0)
    if vals[full] != 1:
        raise NotNormalized(f"capacity of the full space is {vals[full]}", witness=full)
    # The smallest violating G always has a violating cover pair, so scanning
    # covers in increasing G finds it; H is then the smallest subset beating it.
    for g in range(1, full + 1):
        vg = vals[g]
        if any(vals[g & ~(1 << i)] > vg for i in bits(g)):
            h = next(h for h in submasks(g) if vals[h] > vg)
            raise NotMonotone(f"capacity decreases from {h:b} to {g:b}", witness=(h, g))


def validate_capacity(table, space=None):
    """Build a :class:`Capacity` from a mask-keyed mapping or a dense sequence.

    Raises :class:`MissingEntry`, :class:`NotGrounded`,
    :class:`NotNormalized` or :class:`NotMonotone`; the monotonicity witness
    ``(H, G)`` has ``G`` minimal, then ``H`` minimal.
    """
    if isinstance(table, dict):
        n = space.n if isinstance(space, StateSpace) else space
        if n is None:
            top = max(table) if table else 0
            n = max(top.bit_length(), 1)
        check_table_size(n)
        missing = [m for m in range(1 << n) if m not in table]
        if missing:
            raise MissingEntry(f"no capacity value for mask {missing[0]:b}", witness=missing[0])
        extra = [m for m in table if not 0 <= m < 1 << n]
        if extra:
            raise DimensionMismatch(f"mask {extra[0]} outside a {n}-state space")
        values = tuple(table[m] for m in range(1 << n))
    else:
        values = tuple(table)
    return Capacity(values, space)


# --- Choquet integral ----------------------------------------------------------

def choquet_levels(f, setfunc):
    """Choquet integral of act ``f`` against any callable on masks.

    Sum over the distinct payoff levels ``x_1 < ... < x_k`` (with ``x_0 = 0``)
    of ``(x_i - x_{i-1}) * setfunc({w : f(w) >= x_i})``.
    """
    pay = f.payoffs
    order = sorted(range(len(pay)), key=pay.__getitem__)
    level = (1 << len(pay)) - 1
    total = ZERO
    prev = ZERO
    k = 0
    while k < len(order):
        x = pay[order[k]]
        if x > prev:
            total += (x - prev) * setfunc(level)
            prev = x
        while k < len(order) and pay[order[k]] == x:
            level &= ~(1 << order[k])
            k += 1
    return total


def choquet_integral(f, nu):
    if f.n != nu.n:
        raise DimensionMismatch(f"act has {f.n} states, capacity has {nu.n}")
    return choquet_levels(f, nu.values.__getitem__)
