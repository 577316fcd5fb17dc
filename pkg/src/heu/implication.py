"""Subjective implication relations over hypotheses.

A relation is stored as one bitset per hypothesis: bit ``G`` of ``rows[H]``
is set iff ``H => G``.  That is a ``2^n x 2^n`` bit matrix, materialized
for ``n <= 12``; larger relations derived from an interpretation are
evaluated on demand.
"""

from dataclasses import dataclass
from functools import cached_property

from .core import StateSpace, subset_bitsets, superset_bitsets
from .errors import AxiomViolation, DimensionMismatch, InputError, TooLarge
from .interpretation import Check, Interpretation

MAX_MATRIX_STATES = 12


def set_bits(x):
    """Indices of set bits, ascending; fast on wide ints."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def union_of_members(bitset):
    out = 0
    for m in set_bits(bitset):
        out |= m
    return out


class ImplicationRelation:
    def __init__(self, space, rows=None, interpretation=None):
        if isinstance(space, int):
            space = StateSpace.of_size(space)
        self.space = space
        if rows is None and interpretation is None:
            raise InputError("relation needs rows or an interpretation")
        if rows is not None:
            if space.n > MAX_MATRIX_STATES:
                raise TooLarge(f"bit-matrix storage needs n <= {MAX_MATRIX_STATES}")
            rows = tuple(rows)
            if len(rows) != 1 << space.n:
                raise DimensionMismatch("relation rows do not match the state space")
        self._rows = rows
        self._pi = interpretation

    @property
    def n(self):
        return self.space.n

    @classmethod
    def from_pairs(cls, space, pairs):
        if isinstance(space, int):
            space = StateSpace.of_size(space)
        size = 1 << space.n
        rows = [0] * size
        for h, g in pairs:
            if not (0 <= h < size and 0 <= g < size):
                raise DimensionMismatch(f"pair ({h}, {g}) outside a {space.n}-state space")
            rows[h] |= 1 << g
        return cls(space, rows)

    @classmethod
    def from_interpretation(cls, pi):
        if pi.n > MAX_MATRIX_STATES:
            return cls(pi.space, interpretation=pi)
        t = pi.table
        pre = {}
        for h, p in enumerate(t):
            pre[p] = pre.get(p, 0) | 1 << h
        above = {p: 0 for p in pre}
        for p in pre:
            for q, members in pre.items():
                if p & ~q == 0:
                    above[p] |= members
        return cls(pi.space, [above[p] for p in t])

    @classmethod
    def subset_order(cls, space):
        if isinstance(space, int):
            space = StateSpace.of_size(space)
        return cls(space, superset_bitsets(space.n))

    @classmethod
    def total(cls, space):
        if isinstance(space, int):
            space = StateSpace.of_size(space)
        size = 1 << space.n
        return cls(space, [(1 << size) - 1] * size)

    @property
    def rows(self):
        if self._rows is None:
            if self.n > MAX_MATRIX_STATES:
                raise TooLarge(f"bit-matrix storage needs n <= {MAX_MATRIX_STATES}")
            self._rows = ImplicationRelation.from_interpretation(self._pi).rows
        return self._rows

    @cached_property
    def cols(self):
        """``cols[G]``: bitset of every ``H`` with ``H => G`` (the down-set of ``G``)."""
        size = 1 << self.n
        cols = [0] * size
        for h, r in enumerate(self.rows):
            bit = 1 << h
            for g in set_bits(r):
                cols[g] |= bit
        return tuple(cols)

    def implies(self, h, g):
        if self._rows is None and self._pi is not None:
            return self._pi(h) & ~self._pi(g) == 0
        return bool(self.rows[h] >> g & 1)

    def pairs(self):
        for h, r in enumerate(self.rows):
            for g in set_bits(r):
                yield (h, g)

    def __len__(self):
        return sum(bin(r).count("1") for r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, ImplicationRelation):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __le__(self, other):
        if self.n != other.n:
            raise DimensionMismatch("relations on different spaces")
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def with_pairs(self, added=(), removed=()):
        rows = list(self.rows)
        for h, g in added:
            rows[h] |= 1 << g
        for h, g in removed:
            rows[h] &= ~(1 << g)
        return ImplicationRelation(self.space, rows)

    def __repr__(self):
        return f"ImplicationRelation(n={self.n}, pairs={len(self)})"


# --- axioms ------------------------------------------------------------------

@dataclass(frozen=True)
class AxiomReport:
    trv: Check
    ded: Check
    mon: Check
    dcmp: Check

    @property
    def weak(self):
        """Transitivity, deduction and monotonicity."""
        return self.trv.holds and self.ded.holds and self.mon.holds

    @property
    def all(self):
        return self.weak and self.dcmp.holds

    def first_failure(self):
        for name in ("trv", "ded", "mon", "dcmp"):
            if not getattr(self, name).holds:
                return name
        return None

    def as_dict(self):
        return {"trv": self.trv, "ded": self.ded, "mon": self.mon, "dcmp": self.dcmp}


def _check_trv(rows):
    for h, r in enumerate(rows):
        for g in set_bits(r):
            bad = rows[g] & ~r
            if bad:
                return Check(False, (h, g, (bad & -bad).bit_length() - 1))
    return Check(True)


def _check_ded(rows):
    size = len(rows)
    for h in range(size):
        rh = rows[h]
        for h2 in range(h + 1, size):
            bad = rh & rows[h2] & ~rows[h | h2]
            if bad:
                return Check(False, (h, h2, (bad & -bad).bit_length() - 1))
    return Check(True)


def _check_mon(rows, n):
    sup = superset_bitsets(n)
    for h, r in enumerate(rows):
        bad = sup[h] & ~r
        if bad:
            return Check(False, (h, (bad & -bad).bit_length() - 1))
    return Check(True)


def _check_dcmp_closure(upper):
    """Decomposition when every down-set is principal; ``upper[X]`` is its top."""
    size = len(upper)
    best = None
    for h in range(size):
        uh = upper[h]
        for h2 in range(h, size):
            gap = upper[h | h2] & ~(uh | upper[h2])
            if gap:
                cand = (gap & -gap, h, h2)
                if best is None or cand < best:
                    best = cand
    return Check(True) if best is None else Check(False, best)


def _check_dcmp_search(rows, cols, n):
    size = 1 << n
    sub = subset_bitsets(n)
    sup = superset_bitsets(n)
    for f in range(size):
        rf = rows[f]
        for h in range(size):
            for h2 in range(h, size):
                if not rf >> (h | h2) & 1:
                    continue
                left = cols[h] & sub[f]
                right = cols[h2] & sub[f]
                if not any(right & sup[f & ~g] for g in set_bits(left)):
                    return Check(False, (f, h, h2))
    return Check(True)


def check_axioms(rel):
    """Scan transitivity, deduction, monotonicity and decomposition.

    Witnesses: ``trv (H, G, F)``, ``ded (H, H2, G)``, ``mon (H, G)``,
    ``dcmp (F, H, H2)``; each lexicographically minimal.
    """
    rows = rel.rows
    trv = _check_trv(rows)
    ded = _check_ded(rows)
    mon = _check_mon(rows, rel.n)
    if trv.holds and ded.holds and mon.holds:
        # every down-set is then the set of subsets of its union
        dcmp = _check_dcmp_closure([union_of_members(c) for c in rel.cols])
    else:
        dcmp = _check_dcmp_search(rows, rel.cols, rel.n)
    return AxiomReport(trv, ded, mon, dcmp)


def down_set(rel, h):
    """Every ``G`` with ``G => H``."""
    if rel._rows is None and rel._pi is not None:
        top = rel._pi(h)
        return frozenset(g for g in range(1 << rel.n) if rel._pi(g) & ~top == 0)
    return frozenset(set_bits(rel.cols[h]))


def _require_weak(rel):
    report = check_axioms(rel)
    if not report.weak:
        name = report.first_failure()
        raise AxiomViolation(f"relation fails {name}", witness=report, axiom=name)
    return report


def interpretation_from_relation(rel):
    """``pi(H)`` is the union of the down-set of ``H``.

    Needs transitivity, deduction and monotonicity; the result is then the
    unique weakly coherent map the relation is derived from (coherent when
    decomposition also holds).
    """
    _require_weak(rel)
    return Interpretation(rel.space, table=[union_of_members(c) for c in rel.cols])


def meet_hypothesis(rel, members):
    """A hypothesis whose down-set is the intersection of the members' down-sets.

    The canonical choice is the intersection of the members' interpretations.
    """
    members = list(members)
    if not members:
        raise InputError("meet of an empty collection")
    pi = interpretation_from_relation(rel)
    out = rel.space.full
    for h in members:
        out &= pi(h)
    return out


def equivalence_classes(rel):
    """Classes of mutual implication, as sorted tuples of masks (debugging aid)."""
    rows = rel.rows
    seen = set()
    out = []
    for h in range(len(rows)):
        if h in seen:
            continue
        cls = tuple(g for g in set_bits(rows[h]) if rows[g] >> h & 1)
        seen.update(cls)
        out.append(cls)
    return out
