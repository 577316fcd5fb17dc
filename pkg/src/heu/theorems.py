"""Exhaustive and randomized checks of the theory's propositions.

Each check returns a :class:`Result` with an instance count; ``run_all``
drives them for ``verify-theorems`` and the acceptance suite.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product

from .analysis import better_reasoner, hedging_check, is_concave, is_convex, prop4_equivalence
from .core import Act, Capacity, Measure, bits, choquet_integral, popcount
from .elicitation import (
    check_inclusion_exclusion,
    check_modularity,
    check_relevance,
    implication_from_capacity,
    recover_representation,
)
from .errors import ExtensionInfeasible, HEUError
from .implication import check_axioms, interpretation_from_relation
from .interpretation import (
    check_properties,
    compose_capacity,
    derive_implication,
    dualize,
    enumerate_coherent,
    enumerate_weakly_coherent,
    image_lattice,
    Interpretation,
)


@dataclass
class Result:
    name: str
    passed: bool
    instances: int
    detail: object = None

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        extra = "" if self.passed or self.detail is None else f"  first failure: {self.detail}"
        return f"{status}  {self.name}  ({self.instances} instances){extra}"


class _Tally:
    def __init__(self, name):
        self.name = name
        self.count = 0
        self.failure = None

    def check(self, ok, detail):
        self.count += 1
        if not ok and self.failure is None:
            self.failure = detail

    def result(self):
        return Result(self.name, self.failure is None, self.count, self.failure)


# --- random instances ------------------------------------------------------------

def random_measure(rng, n, support=None, top=9):
    """Rational measure positive exactly on ``support`` (default: every state)."""
    if support is None:
        support = (1 << n) - 1
    raw = [rng.randint(1, top) if support >> i & 1 else 0 for i in range(n)]
    total = sum(raw)
    return Measure(tuple(Fraction(x, total) for x in raw))


def random_capacity(rng, n, top=6):
    """Monotone capacity built level by level from random increments."""
    size = 1 << n
    raw = [0] * size
    for m in sorted(range(1, size), key=popcount):
        floor = max(raw[m & ~(1 << i)] for i in bits(m))
        raw[m] = floor + rng.randint(0, top)
    raw[-1] += 1
    full = raw[-1]
    return Capacity(tuple(Fraction(x, full) for x in raw))


def random_act(rng, n, top=6):
    return Act(tuple(Fraction(rng.randint(0, top * 4), rng.randint(1, 4)) for _ in range(n)))


def choquet_by_permutation(f, values):
    """Sort states by payoff, best first, and weight each by its marginal capacity."""
    order = sorted(range(len(f.payoffs)), key=lambda i: -f.payoffs[i])
    total = Fraction(0)
    prev_set, prev_val = 0, Fraction(0)
    for i in order:
        prev_set |= 1 << i
        val = values[prev_set]
        total += f.payoffs[i] * (val - prev_val)
        prev_val = val
    return total


def _grounded_measure(rng, pi):
    """Full support outside ``pi(0)``; ``None`` when ``pi(0)`` is everything."""
    support = pi.space.full & ~pi(0)
    return random_measure(rng, pi.n, support) if support else None


# --- checks ------------------------------------------------------------------------

def check_relation_roundtrip(n_max):
    t = _Tally("relation and interpretation determine each other")
    for n in range(1, n_max + 1):
        for pi in enumerate_coherent(n):
            rel = derive_implication(pi)
            back = interpretation_from_relation(rel)
            t.check(back == pi and check_axioms(rel).all, ("pi", pi))
            t.check(derive_implication(back) == rel, ("rel", pi))
    return t.result()


def check_revealed_implication(n_max, rng, measures=3):
    t = _Tally("betting reveals the derived implication")
    for n in range(1, n_max + 1):
        for pi in enumerate_coherent(n):
            for _ in range(measures):
                mu = _grounded_measure(rng, pi)
                if mu is None:
                    break
                nu = compose_capacity(mu, pi)
                t.check(implication_from_capacity(nu) == derive_implication(pi), (pi, mu))
    return t.result()


def check_recovery(n_max, rng, measures=20):
    t = _Tally("capacity recovers interpretation and measure")
    for n in range(1, n_max + 1):
        for pi in enumerate_coherent(n):
            for _ in range(measures):
                mu = _grounded_measure(rng, pi)
                if mu is None:
                    break
                try:
                    rep = recover_representation(compose_capacity(mu, pi))
                except HEUError as exc:
                    t.check(False, (pi, mu, repr(exc)))
                    continue
                same_mass = all(rep.mu(a) == mu(a) for a in rep.atoms)
                t.check(rep.pi == pi and same_mass, (pi, mu))
    return t.result()


def check_comparative(n_max):
    t = _Tally("pointwise-smaller maps perceive fewer implications")
    for n in range(1, n_max + 1):
        maps = list(enumerate_coherent(n))
        for p1 in maps:
            for p2 in maps:
                try:
                    prop4_equivalence(p1, p2)
                    t.check(True, None)
                except HEUError as exc:
                    t.check(False, (p1, p2, repr(exc)))
    return t.result()


def check_ambiguity(n_max, rng, trials=10_000, measures=2):
    """Concavity of coherent capacities, convexity of dual ones, hedging aversion."""
    t = _Tally("coherent maps are ambiguity seeking, dual maps averse")
    pool = []
    for n in range(1, n_max + 1):
        for pi in enumerate_coherent(n):
            for _ in range(measures):
                mu = _grounded_measure(rng, pi)
                if mu is None:
                    break
                pool.append((pi, mu))
                t.check(is_concave(compose_capacity(mu, pi)).holds, ("concave", pi, mu))
                dual = dualize(pi)
                if dual(0) == 0:
                    table = mu.table()
                    values = tuple(table[x] for x in dual.table)
                    t.check(is_convex(Capacity(values, pi.space)).holds, ("convex", pi, mu))
    for _ in range(trials):
        pi, mu = pool[rng.randrange(len(pool))]
        f, g = random_act(rng, pi.n), random_act(rng, pi.n)
        rep = hedging_check(mu, pi, f, g)
        t.check(rep.aversion, ("hedging", pi, mu, f, g))
    return t.result()


def check_image_meets(n_max):
    t = _Tally("images closed under meets; implication as inclusion; meet representatives")
    for n in range(1, n_max + 1):
        for pi in enumerate_weakly_coherent(n):
            images = image_lattice(pi)
            t.check(all(a & b in images for a in images for b in images), ("meet", pi))
        for pi in enumerate_coherent(n):
            rel = derive_implication(pi)
            tab, cols = pi.table, rel.cols
            size = len(tab)
            ok = all(rel.implies(h, g) == (h & ~tab[g] == 0) for h in range(size) for g in range(size))
            t.check(ok, ("inclusion", pi))
            ok = all(cols[tab[a] & tab[b]] == cols[a] & cols[b] for a in range(size) for b in range(a, size))
            t.check(ok, ("representative", pi))
    return t.result()


def check_modularity_gate(n_max, rng, random_caps=200):
    """Modular capacities reveal I1-I3; relevance adds decomposition."""
    t = _Tally("modularity and relevance yield the implication axioms")
    caps = []
    for n in range(1, n_max + 1):
        for pi in enumerate_weakly_coherent(n):
            mu = _grounded_measure(rng, pi)
            if mu is not None:
                caps.append(compose_capacity(mu, pi))
        caps.extend(random_capacity(rng, n, top=2) for _ in range(random_caps))
    for nu in caps:
        if not check_modularity(nu).holds:
            continue
        report = check_axioms(implication_from_capacity(nu))
        t.check(report.weak, ("weak", nu.values))
        if check_relevance(nu).holds:
            t.check(report.dcmp.holds, ("dcmp", nu.values))
    return t.result()


def check_infeasibility(n_max, rng, trials=300):
    t = _Tally("infeasible extensions violate inclusion-exclusion")
    for _ in range(trials):
        n = rng.randint(2, n_max)
        nu = random_capacity(rng, n, top=3)
        try:
            recover_representation(nu)
        except ExtensionInfeasible:
            t.check(not check_inclusion_exclusion(nu, 2).holds, nu.values)
        except HEUError:
            pass
    return t.result()


def check_choquet(rng, trials=10_000, n_max=8):
    t = _Tally("Choquet integral matches the sorted-states formula")
    for _ in range(trials):
        n = rng.randint(1, n_max)
        nu = random_capacity(rng, n)
        f = random_act(rng, n)
        t.check(choquet_integral(f, nu) == choquet_by_permutation(f, nu.values), (f, nu.values))
    return t.result()


def check_distribution(n_max=2):
    """Distribution iff monotonicity and consistency, over every table."""
    t = _Tally("distribution equals monotonicity plus consistency")
    for n in range(1, n_max + 1):
        size = 1 << n
        for table in product(range(size), repeat=size):
            r = check_properties(Interpretation(n, table=table))
            t.check(r.distribution.holds == (r.monotone.holds and r.consistency.holds), table)
    return t.result()


def check_partial_order(n_max=3):
    t = _Tally("the better-reasoner relation is a partial order")
    for n in range(1, n_max + 1):
        maps = list(enumerate_coherent(n))
        leq = {(i, j): better_reasoner(a, b).verdict in ("better", "equal")
               for i, a in enumerate(maps) for j, b in enumerate(maps)}
        for i in range(len(maps)):
            t.check(leq[i, i], ("reflexive", i))
            for j in range(len(maps)):
                if i != j and leq[i, j]:
                    t.check(not leq[j, i], ("antisymmetric", i, j))
        for i, j, k in permutations(range(len(maps)), 3):
            if leq[i, j] and leq[j, k]:
                t.check(leq[i, k], ("transitive", i, j, k))
    return t.result()


def run_all(n=4, seed=0, quick=False):
    """Every check at size ``n``; ``quick`` shrinks the random trial counts."""
    rng = random.Random(seed)
    scale = 10 if quick else 1
    small = min(n, 3)
    return [
        check_relation_roundtrip(n),
        check_revealed_implication(n, rng),
        check_recovery(n, rng, measures=max(20 // scale, 2)),
        check_comparative(small),
        check_partial_order(small),
        check_ambiguity(n, rng, trials=10_000 // scale),
        check_image_meets(n),
        check_modularity_gate(small, rng),
        check_infeasibility(max(n, 2), rng),
        check_choquet(rng, trials=10_000 // scale),
        check_distribution(min(n, 2)),
    ]

