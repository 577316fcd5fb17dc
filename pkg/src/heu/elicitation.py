"""Recover an interpretation and a probability from betting behavior.

Behavior enters as the capacity that represents it under Choquet valuation.
Indifference between the bets on ``G`` and on ``G | H`` reveals ``H => G``;
from that relation the interpretation is rebuilt, and the probability is the
solution of an exact linear feasibility problem on the image sets.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ._exact_lp import solve_nonnegative
from .core import Act, Measure, bits, choquet_integral, choquet_levels, superset_bitsets
from .errors import (
    AxiomViolation,
    ExtensionInfeasible,
    HeucondViolation,
    NotCoherent,
    PrerequisiteFailed,
    TheoremViolation,
    TooLarge,
)
from .implication import (
    ImplicationRelation,
    MAX_MATRIX_STATES,
    check_axioms,
    set_bits,
    union_of_members,
)
from .interpretation import Check, Interpretation, check_properties, is_coherent

# Relation axiom -> the preference axiom it is read off at the event level.
PREFERENCE_AXIOM = {"trv": "A-mod", "ded": "A-mod", "mon": "A-chq", "dcmp": "A-rel"}


def implication_from_capacity(nu):
    """``H => G`` iff ``nu(G | H) == nu(G)``: the two bets are indifferent."""
    if nu.n > MAX_MATRIX_STATES:
        raise TooLarge(f"revealed relations need n <= {MAX_MATRIX_STATES}")
    v = nu.values
    size = len(v)
    rows = []
    for h in range(size):
        r = 0
        for g in range(size):
            if v[g | h] == v[g]:
                r |= 1 << g
        rows.append(r)
    return ImplicationRelation(nu.space, rows)


def check_modularity(nu):
    """Bet-form modularity; witness ``(G, H, F)`` lexicographically minimal.

    ``nu(G) == nu(G|H)`` must imply ``nu(G|F) == nu(G|F|H)``.
    """
    cols = implication_from_capacity(nu).cols
    sup = superset_bitsets(nu.n)
    for g in range(len(cols)):
        keep = cols[g]
        for k in set_bits(sup[g]):
            keep &= cols[k]
        bad = cols[g] & ~keep
        if bad:
            h = (bad & -bad).bit_length() - 1
            f = next(f for f in range(len(cols)) if not cols[g | f] >> h & 1)
            return Check(False, (g, h, f))
    return Check(True)


def _revealed_closure(nu):
    """Revealed relation and the union of each down-set, after the modularity gate."""
    mod = check_modularity(nu)
    if not mod.holds:
        raise PrerequisiteFailed("capacity fails modularity", witness=mod.witness)
    rel = implication_from_capacity(nu)
    report = check_axioms(rel)
    if not report.weak:
        raise TheoremViolation("modular capacity revealed a relation failing I1-I3",
                               witness=report)
    return rel, [union_of_members(c) for c in rel.cols]


def check_relevance(nu):
    """Event-form relevance; witness ``(H, H2, F)`` with no admissible split of ``F``.

    The canonical split ``G = F & pi(H)``, ``G2 = F & pi(H2)`` is tried first;
    an exhaustive cover search confirms any failure.
    """
    rel, upper = _revealed_closure(nu)
    cols = rel.cols
    size = len(upper)
    for h in range(size):
        for h2 in range(h, size):
            gap = upper[h | h2] & ~(upper[h] | upper[h2])
            if not gap:
                continue
            f = gap & -gap
            if not _has_cover(f, cols[h], cols[h2]):
                return Check(False, (h, h2, f))
            raise TheoremViolation("canonical split failed but a cover exists",
                                   witness=(h, h2, f))
    return Check(True)


def _has_cover(f, left, right):
    for g in submasks_of(f):
        if left >> g & 1:
            rest = f & ~g
            for g2 in submasks_of(f):
                if right >> g2 & 1 and g2 & rest == rest:
                    return True
    return False


def submasks_of(mask):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class IEReport:
    holds: bool
    witness: dict = None
    checked: int = 0


def check_inclusion_exclusion(nu, n_max=3):
    """Inclusion-exclusion over every collection of at most ``n_max`` distinct hypotheses.

    With ``F`` the full space the coefficients are ``alpha[I] = nu(H_I)``,
    ``H_I`` being the meet representative of the members indexed by ``I``.
    """
    if not 1 <= n_max <= 4:
        raise ValueError("n_max must be between 1 and 4")
    rel = implication_from_capacity(nu)
    report = check_axioms(rel)
    if not report.weak:
        raise PrerequisiteFailed("revealed relation fails I1-I3", witness=report)
    upper = [union_of_members(c) for c in rel.cols]
    v = nu.values
    checked = 0
    for k in range(1, n_max + 1):
        index_sets = [s for s in range(1, 1 << k)]
        for coll in combinations(range(len(v)), k):
            checked += 1
            g = 0
            for h in coll:
                g |= h
            coeffs = {}
            total = Fraction(0)
            for s in index_sets:
                meet = -1
                for i in bits(s):
                    meet &= upper[coll[i]]
                alpha = v[meet]
                coeffs[s] = alpha
                total += alpha if bin(s).count("1") % 2 else -alpha
            if total != v[g]:
                witness = {
                    "collection": list(coll),
                    "coefficients": {tuple(bits(s)): a for s, a in coeffs.items()},
                    "observed": v[g],
                    "predicted": total,
                }
                return IEReport(False, witness, checked)
    return IEReport(True, None, checked)


# --- representation --------------------------------------------------------------

@dataclass(frozen=True)
class Representation:
    """A coherent interpretation with a measure; ``atoms`` partition the states.

    Atom masses are identified by behavior; how an atom's mass splits across
    its states is a convention (uniform) unless the atom is a single state.
    """

    pi: Interpretation
    mu: Measure
    atoms: tuple
    atom_masses: tuple
    unique_on_algebra: bool = True

    @property
    def identified(self):
        return tuple(bin(a).count("1") == 1 for a in self.atoms)

    @property
    def algebra(self):
        out = []
        for choice in range(1 << len(self.atoms)):
            m = 0
            for i in bits(choice):
                m |= self.atoms[i]
            out.append(m)
        return sorted(out)

    def value(self, f):
        """HEU value of an act."""
        return choquet_levels(f, lambda h: self.mu(self.pi(h)))


def algebra_atoms(sets, n):
    """Atoms of the algebra generated by ``sets``, ordered by lowest state."""
    sig = {}
    sets = sorted(sets)
    for w in range(n):
        key = tuple(s >> w & 1 for s in sets)
        sig[key] = sig.get(key, 0) | 1 << w
    return tuple(sorted(sig.values(), key=lambda a: a & -a))


def check_heucond(pi, mu):
    """Images with a null symmetric difference must coincide; witness ``(H, G)``."""
    first = {}
    for h, p in enumerate(pi.table):
        first.setdefault(p, h)
    images = sorted(first)
    for p, q in combinations(images, 2):
        if mu(p ^ q) == 0:
            return Check(False, (first[p], first[q]))
    return Check(True)


def _image_targets(nu, pi):
    targets = {}
    for h, p in enumerate(pi.table):
        val = nu(h)
        if targets.setdefault(p, val) != val:
            raise TheoremViolation("capacity differs across one image class", witness=(p, h))
    return targets


def _ie_certificate(nu):
    for k in range(2, 5 if nu.n <= 5 else 3):
        ie = check_inclusion_exclusion(nu, k)
        if not ie.holds:
            return ie
    return ie


def recover_representation(nu):
    """Identify the interpretation and measure behind a capacity.

    Raises :class:`AxiomViolation` (relation axiom and report),
    :class:`ExtensionInfeasible` (a violated inclusion-exclusion identity) or
    :class:`HeucondViolation`.  On success ``nu(H) == mu(pi(H))`` for all ``H``.
    """
    rel = implication_from_capacity(nu)
    report = check_axioms(rel)
    if not report.all:
        name = report.first_failure()
        raise AxiomViolation(
            f"revealed implication fails {name} ({PREFERENCE_AXIOM[name]})",
            witness=report, axiom=name)
    pi = Interpretation(nu.space, table=[union_of_members(c) for c in rel.cols])
    if not is_coherent(pi):
        raise TheoremViolation("relation passes every axiom but its map is not coherent")
    return _fit_measure(nu, pi, retry=True)


def _fit_measure(nu, pi, retry):
    n = nu.n
    targets = _image_targets(nu, pi)
    images = sorted(targets)
    a = [[1 if p >> w & 1 else 0 for w in range(n)] for p in images]
    b = [targets[p] for p in images]
    a.append([1] * n)
    b.append(Fraction(1))
    x = solve_nonnegative(a, b)
    if x is None:
        cert = _ie_certificate(nu)
        raise ExtensionInfeasible("no measure matches the capacity on the image sets",
                                  witness=cert)
    atoms = algebra_atoms(images, n)
    masses = []
    weights = [Fraction(0)] * n
    for atom in atoms:
        states = list(bits(atom))
        mass = sum((x[w] for w in states), Fraction(0))
        masses.append(mass)
        for w in states:
            weights[w] = mass / len(states)
    mu = Measure(tuple(weights))
    cond = check_heucond(pi, mu)
    if not cond.holds:
        if not retry:
            raise HeucondViolation("heucond fails after normalization", witness=cond.witness)
        normalized = normalize_interpretation(pi, mu)
        again = check_heucond(normalized, mu)
        if not again.holds or not check_properties(normalized).coherent:
            raise HeucondViolation("heucond fails and normalization does not repair it",
                                   witness={"original": cond.witness,
                                            "normalized": again.witness})
        pi = normalized
    m = mu.table()
    for h in range(1 << n):
        if m[pi(h)] != nu(h):
            raise TheoremViolation("recovered pair does not reproduce the capacity", witness=h)
    return Representation(pi, mu, atoms, tuple(masses))


def normalize_interpretation(pi, mu, mode="lower"):
    """Merge images whose symmetric difference is null.

    ``mode="lower"`` maps ``H`` to the intersection of every image
    ``pi(G)`` with ``mu(pi(H) ^ pi(G)) == 0``; ``mode="upper"`` takes the
    union instead.  Both preserve ``mu o pi`` and satisfy heucond; only the
    upper form keeps truth when null states exist.
    """
    if not is_coherent(pi):
        raise NotCoherent("normalization needs a coherent interpretation")
    if mode not in ("lower", "upper"):
        raise ValueError(f"unknown mode {mode!r}")
    t = pi.table
    images = sorted(set(t))
    merged = {}
    for p in images:
        acc = -1 if mode == "lower" else 0
        for q in images:
            if mu(p ^ q) == 0:
                acc = acc & q if mode == "lower" else acc | q
        merged[p] = acc
    return Interpretation(pi.space, table=[merged[p] for p in t])


@dataclass(frozen=True)
class VerificationReport:
    entrywise: Check
    heucond: Check
    choquet: Check
    coherent: bool

    @property
    def ok(self):
        return self.entrywise.holds and self.heucond.holds and self.choquet.holds and self.coherent


def verify_representation(nu, rep, trials=100, seed=0):
    """Entrywise ``nu == mu o pi``, heucond, and Choquet values of random acts."""
    m = rep.mu.table()
    composed = [m[rep.pi(h)] for h in range(1 << nu.n)]
    bad = next((h for h in range(len(composed)) if composed[h] != nu(h)), None)
    entry = Check(True) if bad is None else Check(False, bad)
    rng = random.Random(seed)
    choq = Check(True)
    for _ in range(trials):
        f = Act(tuple(Fraction(rng.randint(0, 12), rng.randint(1, 4)) for _ in range(nu.n)))
        if choquet_integral(f, nu) != choquet_levels(f, composed.__getitem__):
            choq = Check(False, f.payoffs)
            break
    return VerificationReport(entry, check_heucond(rep.pi, rep.mu), choq, is_coherent(rep.pi))
