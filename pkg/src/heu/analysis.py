"""Valuation, conditional evaluation, comparisons and ambiguity attitudes."""

import warnings
from dataclasses import dataclass
from fractions import Fraction

from .core import Act, choquet_levels, mix
from .errors import (
    DimensionMismatch,
    NotCoherent,
    NotGrounded,
    NullConditioningEvent,
    SpaceMismatch,
    TheoremViolation,
)
from .interpretation import check_properties, derive_implication, dualize, is_coherent

HALF = Fraction(1, 2)


def _same_n(mu, pi):
    if mu.n != pi.n:
        raise DimensionMismatch(f"measure has {mu.n} states, interpretation has {pi.n}")


def heu_value(f, mu, pi):
    """Choquet integral of ``f`` against ``mu o pi``.

    Works lazily, so generator-form maps on up to 30 states are fine.  Warns
    when ``pi`` is neither coherent nor dual-coherent (the value is still a
    Choquet integral).
    """
    _same_n(mu, pi)
    if f.n != mu.n:
        raise DimensionMismatch(f"act has {f.n} states, measure has {mu.n}")
    if pi.generators is None and pi.n <= 12 and not is_coherent(pi):
        if not check_properties(pi).dual_coherent:
            warnings.warn("valuing an act under a map that is not coherent", stacklevel=2)
    base = pi(0)
    if mu(base):
        raise NotGrounded(f"image of the empty set carries mass {mu(base)}", witness=base)
    return choquet_levels(f, lambda h: mu(pi(h)))


VARIANTS = ("interpreted", "payoff", "joint")


def conditional_heu(h, o, mu, pi, variant="interpreted"):
    """Conditional evaluation of the bet on ``h`` after observing ``o``.

    ``interpreted`` (default): ``mu(pi(h) & pi(o)) / mu(pi(o))``.
    ``payoff``: ``mu(h & pi(o)) / mu(pi(o))``, conditioning on the
    interpreted observation but paying on the literal event.
    ``joint``: ``mu(pi(h & o)) / mu(pi(o))``.
    """
    _same_n(mu, pi)
    po = pi(o)
    denom = mu(po)
    if denom == 0:
        raise NullConditioningEvent("the interpreted observation has zero mass", witness=o)
    if variant == "interpreted":
        num = mu(pi(h) & po)
    elif variant == "payoff":
        num = mu(h & po)
    elif variant == "joint":
        num = mu(pi(h & o))
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return num / denom


def conditional_expectation(f, o, mu, pi):
    """Expected payoff of ``f`` under ``mu`` conditioned on ``pi(o)``."""
    _same_n(mu, pi)
    po = pi(o)
    denom = mu(po)
    if denom == 0:
        raise NullConditioningEvent("the interpreted observation has zero mass", witness=o)
    num = sum((f[w] * mu.weights[w] for w in range(mu.n) if po >> w & 1), Fraction(0))
    return num / denom


# --- comparative reasoning ------------------------------------------------------

@dataclass(frozen=True)
class ComparisonResult:
    verdict: str
    witness: int = None


def better_reasoner(pi1, pi2):
    """Compare two coherent maps by pointwise inclusion of their images.

    ``better`` means ``pi1(H) <= pi2(H)`` everywhere (``pi1`` is closer to
    the truth); ``worse`` is the reverse.  ``incomparable`` carries the
    first hypothesis where ``pi1(H)`` is not inside ``pi2(H)``.
    """
    if pi1.space != pi2.space:
        raise SpaceMismatch("interpretations live on different state spaces")
    for i, pi in enumerate((pi1, pi2), 1):
        if not is_coherent(pi):
            raise NotCoherent(f"interpretation {i} is not coherent")
    t1, t2 = pi1.table, pi2.table
    if t1 == t2:
        return ComparisonResult("equal")
    first_out = next((h for h in range(len(t1)) if t1[h] & ~t2[h]), None)
    if first_out is None:
        return ComparisonResult("better")
    if all(not t2[h] & ~t1[h] for h in range(len(t1))):
        return ComparisonResult("worse", first_out)
    return ComparisonResult("incomparable", first_out)


def prop4_equivalence(pi1, pi2):
    """Pointwise ``pi1 <= pi2`` iff every implication of ``pi1`` is one of ``pi2``.

    Returns the shared truth value; ``equal`` counts as better.  Raises
    :class:`TheoremViolation` if the two sides disagree.
    """
    verdict = better_reasoner(pi1, pi2).verdict
    by_images = verdict in ("better", "equal")
    by_relation = derive_implication(pi1) <= derive_implication(pi2)
    if by_images != by_relation:
        raise TheoremViolation("image inclusion and implication inclusion disagree",
                               witness=(verdict, by_relation))
    return by_images


# --- ambiguity attitudes ----------------------------------------------------------

@dataclass(frozen=True)
class PairCheck:
    holds: bool
    witness: tuple = None


def _pair_scan(nu, sign):
    v = nu.values
    size = len(v)
    for g in range(size):
        for h in range(g + 1, size):
            if g & ~h == 0 or h & ~g == 0:
                continue
            lhs = v[g & h] + v[g | h]
            rhs = v[g] + v[h]
            if (lhs - rhs) * sign > 0:
                return PairCheck(False, (g, h))
    return PairCheck(True)


def is_concave(nu):
    """``nu(G & H) + nu(G | H) <= nu(G) + nu(H)``; witness ``(G, H)`` with ``G < H``."""
    return _pair_scan(nu, 1)


def is_convex(nu):
    """The reverse inequality."""
    return _pair_scan(nu, -1)


@dataclass(frozen=True)
class HedgingReport:
    value_f: Fraction
    value_g: Fraction
    value_mix: Fraction
    aversion: bool
    preference: bool
    kind: str

    @property
    def consistent(self):
        """Whether the pair respects the attitude the map's kind predicts."""
        return self.aversion if self.kind == "coherent" else self.preference


def hedging_check(mu, pi, f, g):
    """Evaluate ``f``, ``g`` and their even mix.

    ``aversion``: the better of ``f`` and ``g`` is weakly preferred to the
    mix.  ``preference``: the mix is weakly preferred to the worse one.
    Coherent maps must show aversion, dual-coherent maps preference.
    """
    rep = check_properties(pi)
    if rep.coherent:
        kind = "coherent"
    elif rep.dual_coherent:
        kind = "dual_coherent"
    else:
        raise NotCoherent("hedging check needs a coherent or dual-coherent map", witness=rep)
    if f.n != g.n:
        raise DimensionMismatch("acts of different lengths")
    vf, vg = heu_value(f, mu, pi), heu_value(g, mu, pi)
    vm = heu_value(mix(f, g, HALF), mu, pi)
    return HedgingReport(vf, vg, vm, max(vf, vg) >= vm, vm >= min(vf, vg), kind)


def dual_value(f, mu, pi):
    """Value under the dual map, the ambiguity-averse mirror image."""
    return heu_value(f, mu, dualize(pi))


def bet_value(h, mu, pi):
    return heu_value(Act.bet(mu.n, h), mu, pi)
