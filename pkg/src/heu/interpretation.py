"""Interpretation maps on hypotheses and their structural properties.

An interpretation sends each hypothesis (a mask) to the hypothesis the
agent acts as if it were.  Properties are checked, never presumed:

* truth ``H <= pi(H)``, introspection ``pi(pi(H)) == pi(H)``,
* monotonicity, consistency ``pi(H|G) <= pi(H)|pi(G)``, distribution,
* the dual pair ``pi(H) <= H`` and ``pi(H) & pi(G) <= pi(H & G)``.

Coherent maps are exactly those of the form
``pi(H) = base | union(c[w] for w in H)``, which is how they are
enumerated.
"""

import os
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, product

from .core import (
    MAX_TABLE_STATES,
    StateSpace,
    bits,
    check_table_size,
    popcount,
    submasks,
    Capacity,
)
from .errors import (
    BadGenerators,
    DimensionMismatch,
    Infeasible,
    InputError,
    NotGrounded,
    NotWeaklyCoherent,
    TheoremViolation,
    TooLarge,
)

DEFAULT_EXHAUSTIVE_N = 4


def exhaustive_cap():
    """Largest n accepted by the exhaustive routines (``HEU_MAX_N`` overrides 4)."""
    raw = os.environ.get("HEU_MAX_N")
    if raw is None:
        return DEFAULT_EXHAUSTIVE_N
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"HEU_MAX_N must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class GeneratorForm:
    """``base`` is the image of the empty set, ``singletons[w]`` the image of ``{w}``."""

    base: int
    singletons: tuple

    def __post_init__(self):
        object.__setattr__(self, "singletons", tuple(self.singletons))

    @property
    def n(self):
        return len(self.singletons)

    def violation(self):
        """First broken invariant as ``(name, detail)``, or ``None``."""
        n = self.n
        full = (1 << n) - 1
        c = self.singletons
        if self.base & ~full or any(x & ~full for x in c):
            return ("range", None)
        for w in range(n):
            if not c[w] >> w & 1:
                return ("truth", w)
            if self.base & ~c[w]:
                return ("base_inclusion", w)
        for w in range(n):
            for v in bits(c[w]):
                if c[v] & ~c[w]:
                    return ("transitivity", (w, v))
        for w in bits(self.base):
            if c[w] & ~self.base:
                return ("base_closure", w)
        return None


class Interpretation:
    """A total map on the hypotheses of a state space.

    Backed by a dense table (``n <= 16``), by a :class:`GeneratorForm`, or by
    a plain function; the dense table is materialized on demand.
    """

    def __init__(self, space, table=None, generators=None, func=None):
        if isinstance(space, int):
            space = StateSpace.of_size(space)
        self.space = space
        n = space.n
        if table is not None:
            check_table_size(n)
            table = tuple(int(x) for x in table)
            if len(table) != 1 << n:
                raise DimensionMismatch(f"table has {len(table)} entries, expected {1 << n}")
            if any(not 0 <= x < 1 << n for x in table):
                raise InputError("interpretation table entry outside the state space")
        if generators is not None and generators.n != n:
            raise DimensionMismatch("generator form and space disagree on n")
        if table is None and generators is None and func is None:
            raise InputError("interpretation needs a table, generators or a function")
        self._table = table
        self._generators = generators
        self._func = func

    # construction helpers

    @classmethod
    def identity(cls, space):
        if isinstance(space, int):
            space = StateSpace.of_size(space)
        return cls(space, generators=GeneratorForm(0, tuple(1 << i for i in range(space.n))))

    @classmethod
    def constant(cls, space, mask):
        if isinstance(space, int):
            space = StateSpace.of_size(space)
        return cls(space, func=lambda h: mask)

    @property
    def n(self):
        return self.space.n

    @property
    def generators(self):
        return self._generators

    def __call__(self, h):
        if self._table is not None:
            return self._table[h]
        if self._generators is not None:
            g = self._generators
            out = g.base
            c = g.singletons
            while h:
                low = h & -h
                out |= c[low.bit_length() - 1]
                h ^= low
            return out
        return self._func(h)

    @cached_property
    def table(self):
        if self._table is not None:
            return self._table
        check_table_size(self.n)
        size = 1 << self.n
        if self._generators is not None:
            g = self._generators
            out = [g.base] * size
            for m in range(1, size):
                low = m & -m
                out[m] = out[m ^ low] | g.singletons[low.bit_length() - 1]
            return tuple(out)
        return tuple(self._func(h) for h in range(size))

    def is_identity(self):
        g = self._generators
        if g is not None:
            return g.base == 0 and all(c == 1 << i for i, c in enumerate(g.singletons))
        return all(x == h for h, x in enumerate(self.table))

    def _key(self):
        if self.n <= MAX_TABLE_STATES:
            return ("table", self.table)
        if self._generators is not None:
            return ("gen", self._generators)
        return ("id", id(self))

    def __eq__(self, other):
        if not isinstance(other, Interpretation):
            return NotImplemented
        return self.n == other.n and self._key() == other._key()

    def __hash__(self):
        return hash((self.n, self._key()))

    def __repr__(self):
        if self._generators is not None:
            g = self._generators
            return f"Interpretation(n={self.n}, base={g.base:#x}, singletons={list(g.singletons)})"
        if self.n <= 4:
            return f"Interpretation(n={self.n}, table={list(self.table)})"
        return f"Interpretation(n={self.n})"


# --- property checks ---------------------------------------------------------

@dataclass(frozen=True)
class Check:
    holds: bool
    witness: object = None


@dataclass(frozen=True)
class PropertyReport:
    """Outcome of every property scan; witnesses are colex-minimal (last argument first)."""

    truth: Check
    introspection: Check
    monotone: Check
    consistency: Check
    distribution: Check
    truth_dual: Check
    consistency_dual: Check

    @property
    def weakly_coherent(self):
        return self.truth.holds and self.introspection.holds and self.monotone.holds

    @property
    def coherent(self):
        return self.weakly_coherent and self.consistency.holds

    @property
    def dual_coherent(self):
        return (self.truth_dual.holds and self.introspection.holds
                and self.monotone.holds and self.consistency_dual.holds)

    def as_dict(self):
        return {
            "truth": self.truth, "introspection": self.introspection,
            "monotone": self.monotone, "consistency": self.consistency,
            "distribution": self.distribution, "truth_dual": self.truth_dual,
            "consistency_dual": self.consistency_dual,
        }


def _first(pred, size):
    for h in range(size):
        if pred(h):
            return Check(False, h)
    return Check(True)


def _first_pair(pred, size):
    for g in range(size):
        for h in range(size):
            if pred(h, g):
                return Check(False, (h, g))
    return Check(True)


def _monotone(t, size):
    for g in range(1, size):
        tg = t[g]
        if any(t[g & ~(1 << i)] & ~tg for i in bits(g)):
            h = next(h for h in submasks(g) if t[h] & ~tg)
            return Check(False, (h, g))
    return Check(True)


def check_properties(pi):
    t = pi.table
    size = len(t)
    return PropertyReport(
        truth=_first(lambda h: h & ~t[h], size),
        introspection=_first(lambda h: t[t[h]] != t[h], size),
        monotone=_monotone(t, size),
        consistency=_first_pair(lambda h, g: t[h | g] & ~(t[h] | t[g]), size),
        distribution=_first_pair(lambda h, g: t[h | g] != t[h] | t[g], size),
        truth_dual=_first(lambda h: t[h] & ~h, size),
        consistency_dual=_first_pair(lambda h, g: t[h] & t[g] & ~t[h & g], size),
    )


def classify(pi):
    """One of ``coherent``, ``weakly_coherent``, ``dual_coherent`` or ``none``.

    The identity is both coherent and dual coherent; it is reported as coherent.
    """
    rep = check_properties(pi)
    if rep.coherent:
        return "coherent"
    if rep.weakly_coherent:
        return "weakly_coherent"
    if rep.dual_coherent:
        return "dual_coherent"
    return "none"


def is_coherent(pi):
    """Fast coherence test (truth, introspection, distribution)."""
    t = pi.table
    size = len(t)
    if any(h & ~t[h] or t[t[h]] != t[h] for h in range(size)):
        return False
    return all(t[h | g] == t[h] | t[g] for g in range(size) for h in range(g))


# --- generator form -----------------------------------------------------------

def from_generators(g, space=None):
    bad = g.violation()
    if bad is not None:
        raise BadGenerators(f"generator form violates {bad[0]}", witness=bad)
    if space is None:
        space = StateSpace.of_size(g.n)
    return Interpretation(space, generators=g)


def extract_generators(pi):
    return GeneratorForm(pi(0), tuple(pi(1 << i) for i in range(pi.n)))


def image_lattice(pi):
    """The set of images ``{pi(H)}``; requires a weakly coherent map."""
    rep = check_properties(pi)
    if not rep.weakly_coherent:
        raise NotWeaklyCoherent("image lattice needs a weakly coherent map", witness=rep)
    images = frozenset(pi.table)
    for a, b in combinations(images, 2):
        if a & b not in images:
            raise TheoremViolation("image set not closed under intersection", witness=(a, b))
        if rep.coherent and a | b not in images:
            raise TheoremViolation("coherent image set not closed under union", witness=(a, b))
    return images


def derive_implication(pi):
    """``H => G`` iff ``pi(H) <= pi(G)``."""
    from .implication import ImplicationRelation

    return ImplicationRelation.from_interpretation(pi)


def dualize(pi):
    """``H -> complement(pi(complement(H)))``; an involution."""
    full = pi.space.full
    if pi.n <= MAX_TABLE_STATES:
        t = pi.table
        return Interpretation(pi.space, table=tuple(full & ~t[full & ~h] for h in range(full + 1)))
    return Interpretation(pi.space, func=lambda h: full & ~pi(full & ~h))


def compose_capacity(mu, pi):
    """The table ``H -> mu(pi(H))`` validated as a capacity."""
    if mu.n != pi.n:
        raise DimensionMismatch(f"measure has {mu.n} states, interpretation has {pi.n}")
    base = pi(0)
    if mu(base) != 0:
        raise NotGrounded(f"image of the empty set carries mass {mu(base)}", witness=base)
    m = mu.table()
    return Capacity(tuple(m[x] for x in pi.table), pi.space)


# --- enumeration ------------------------------------------------------------

def _check_enum_n(n):
    if n < 1:
        raise InputError("n must be at least 1")
    cap = exhaustive_cap()
    if n > cap:
        raise TooLarge(f"exhaustive enumeration capped at n = {cap} (set HEU_MAX_N)")


@lru_cache(maxsize=None)
def _preorders(k):
    """Reflexive transitive relations on ``range(k)`` as tuples of reach masks."""
    choices = []
    for i in range(k):
        others = [j for j in range(k) if j != i]
        choices.append([(1 << i) | sum(1 << others[b] for b in bits(s))
                        for s in range(1 << len(others))])
    out = []
    for reach in product(*choices):
        if all(not reach[j] & ~reach[i] for i in range(k) for j in bits(reach[i])):
            out.append(reach)
    return tuple(out)


@lru_cache(maxsize=None)
def _coherent_generators(n):
    full = (1 << n) - 1
    out = []
    for base in range(full + 1):
        rest = [i for i in range(n) if not base >> i & 1]
        for reach in _preorders(len(rest)):
            c = [base] * n
            for local, i in enumerate(rest):
                c[i] = base | sum(1 << rest[b] for b in bits(reach[local]))
            out.append(GeneratorForm(base, tuple(c)))
    return tuple(out)


def enumerate_coherent(n):
    """Every coherent interpretation on ``n`` states, each exactly once."""
    _check_enum_n(n)
    space = StateSpace.of_size(n)
    for g in _coherent_generators(n):
        yield Interpretation(space, generators=g)


@lru_cache(maxsize=None)
def _moore_families(n):
    full = (1 << n) - 1
    others = list(range(full))
    out = []
    for choice in range(1 << full):
        fam = [others[i] for i in bits(choice)] + [full]
        members = set(fam)
        if all(a & b in members for a, b in combinations(fam, 2)):
            out.append(tuple(sorted(fam)))
    return tuple(out)


def _closure_table(family, n):
    fam = sorted(family, key=popcount)
    out = []
    for h in range(1 << n):
        out.append(next(p for p in fam if h & ~p == 0))
    return tuple(out)


def enumerate_weakly_coherent(n):
    """Every weakly coherent interpretation, via intersection-closed families."""
    _check_enum_n(n)
    space = StateSpace.of_size(n)
    for fam in _moore_families(n):
        yield Interpretation(space, table=_closure_table(fam, n))


# --- completion -------------------------------------------------------------

def _satisfies(t, constraints):
    return all(t[h] == s for h, s in constraints)


def complete_to_coherent(constraints, space):
    """Smallest coherent map with ``pi(H) == S`` for every constraint ``H -> S``.

    Minimal by total image cardinality, then by table order.  Raises
    :class:`Infeasible` with a conflicting subset of constraints.
    """
    if isinstance(space, int):
        space = StateSpace.of_size(space)
    cons = sorted(constraints.items())
    full = space.full
    for h, s in cons:
        if not (0 <= h <= full and 0 <= s <= full):
            raise InputError("constraint mask outside the state space")
    _check_enum_n(space.n)
    tables = [Interpretation(space, generators=g).table for g in _coherent_generators(space.n)]
    best = None
    for t in tables:
        if _satisfies(t, cons):
            key = (sum(popcount(x) for x in t), t)
            if best is None or key < best:
                best = key
    if best is not None:
        return Interpretation(space, table=best[1])
    for size in (1, 2):
        for subset in combinations(cons, size):
            if not any(_satisfies(t, subset) for t in tables):
                pair = subset if size == 2 else subset * 2
                raise Infeasible("no coherent map meets these constraints", witness=pair)
    raise Infeasible("no coherent map meets all constraints jointly", witness=tuple(cons))
