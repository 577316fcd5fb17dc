"""Worked examples: Monty Hall, pivotal voting, the winner's curse, disclosure.

Each constructor returns a :class:`Scenario` whose headline rows pair a
computed value with the value the story predicts; ``Scenario.ok`` says
whether they all match exactly.
"""

import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .analysis import conditional_expectation, conditional_heu, heu_value
from .core import Act, Measure, StateSpace, mix, rational
from .errors import BadDimensions, BadParameters, InputError
from .interpretation import GeneratorForm, Interpretation, classify, complete_to_coherent, from_generators


@dataclass(frozen=True)
class Row:
    description: str
    computed: Fraction
    expected: Fraction

    @property
    def ok(self):
        return self.computed == self.expected


@dataclass(frozen=True)
class Scenario:
    name: str
    space: StateSpace
    mu: Measure
    pi_rational: Interpretation
    pi_behavioral: Interpretation
    named_events: dict
    headline: tuple
    classification: str
    variants: tuple = ()
    notes: tuple = field(default=())

    @property
    def ok(self):
        return all(r.ok for r in self.headline)

    def table(self):
        """Headline rows as aligned text."""
        width = max(len(d) for d in [r.description for r in self.headline]
                    + [d for d, _ in self.variants])
        lines = [f"{'quantity':<{width}}  {'computed':>10}  {'expected':>10}  ok"]
        for r in self.headline:
            lines.append(f"{r.description:<{width}}  {_fmt(r.computed):>10}  "
                         f"{_fmt(r.expected):>10}  {'yes' if r.ok else 'NO'}")
        for desc, value in self.variants:
            lines.append(f"{desc:<{width}}  {_fmt(value):>10}")
        return "\n".join(lines)


def _fmt(x):
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _quiet_value(f, mu, pi):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return heu_value(f, mu, pi)


# --- Monty Hall ---------------------------------------------------------------

def monty_hall():
    """Contestant picks door 1; states name (prize door, opened door).

    The behavioral map reads "door 2 opened" as "prize not behind door 2"
    and "door 3 opened" as "prize not behind door 3".  Taken literally that
    map is not coherent; a coherent completion is reported alongside.
    """
    space = StateSpace(("w12", "w13", "w23", "w32"))
    mu = Measure.of([Fraction(1, 6), Fraction(1, 6), Fraction(1, 3), Fraction(1, 3)])
    ev = {
        "P1": space.mask(["w12", "w13"]),
        "P2": space.mask(["w23"]),
        "P3": space.mask(["w32"]),
        "O2": space.mask(["w12", "w32"]),
        "O3": space.mask(["w13", "w23"]),
    }
    ev["not P2"] = space.full & ~ev["P2"]
    ev["not P3"] = space.full & ~ev["P3"]
    literal = {ev["O2"]: ev["not P2"], ev["O3"]: ev["not P3"]}
    table = [literal.get(h, h) for h in range(16)]
    behavioral = Interpretation(space, table=table)
    identity = Interpretation.identity(space)
    repaired = complete_to_coherent(literal, space)

    bet = lambda h: Act.bet(4, h)  # noqa: E731
    hedge = mix(bet(ev["O2"]), bet(ev["O3"]), Fraction(1, 2))
    third, two_thirds, half = Fraction(1, 3), Fraction(2, 3), Fraction(1, 2)
    rows = (
        Row("P1 | O2, identity", conditional_heu(ev["P1"], ev["O2"], mu, identity), third),
        Row("P3 | O2, identity", conditional_heu(ev["P3"], ev["O2"], mu, identity), two_thirds),
        Row("P1 | O2, behavioral", conditional_heu(ev["P1"], ev["O2"], mu, behavioral), half),
        Row("P3 | O2, behavioral", conditional_heu(ev["P3"], ev["O2"], mu, behavioral), half),
        Row("bet on O2, behavioral", _quiet_value(bet(ev["O2"]), mu, behavioral), two_thirds),
        Row("bet on O3, behavioral", _quiet_value(bet(ev["O3"]), mu, behavioral), two_thirds),
        Row("even hedge of O2 and O3", _quiet_value(hedge, mu, behavioral), half),
    )
    variants = (
        ("P1 | O2, coherent completion", conditional_heu(ev["P1"], ev["O2"], mu, repaired)),
        ("P3 | O2, coherent completion", conditional_heu(ev["P3"], ev["O2"], mu, repaired)),
        ("P3 | O2, completion, payoff form",
         conditional_heu(ev["P3"], ev["O2"], mu, repaired, variant="payoff")),
    )
    return Scenario(
        "monty-hall", space, mu, identity, behavioral, ev, rows, classify(behavioral),
        variants,
        notes=("the literal map fails monotonicity: O2 lies inside {w12, w23, w32} "
               "but its image does not",
               "P3 is pinned to {w32}"),
    )


# --- pivotal voting ---------------------------------------------------------------

VOTING_STATES = ("B,b,p", "B,r,p", "B,b,np", "B,r,np", "R,b,p", "R,r,p", "R,b,np", "R,r,np")


def pivotal_voting():
    """Jury vote: guilt colour (B/R), own signal (b/r), pivotal or not.

    The behavioral juror ignores whether her vote is pivotal, so each
    pivotal state is paired with its non-pivotal twin.
    """
    space = StateSpace(VOTING_STATES)
    w = [Fraction(x, 54) for x in (8, 4, 10, 5, 0, 0, 9, 18)]
    mu = Measure.of(w)
    twin = {0: 2, 1: 3, 4: 6, 5: 7}
    twin.update({v: k for k, v in twin.items()})
    behavioral = from_generators(
        GeneratorForm(0, tuple((1 << i) | (1 << twin[i]) for i in range(8))), space)
    identity = Interpretation.identity(space)
    ev = {
        "B": 0b00001111,
        "R": 0b11110000,
        "r,p": space.mask(["B,r,p", "R,r,p"]),
    }
    rows = (
        Row("B | {r,p}, identity", conditional_heu(ev["B"], ev["r,p"], mu, identity), Fraction(1)),
        Row("R | {r,p}, identity", conditional_heu(ev["R"], ev["r,p"], mu, identity), Fraction(0)),
        Row("R | pi({r,p}), behavioral",
            conditional_heu(ev["R"], ev["r,p"], mu, behavioral), Fraction(2, 3)),
        Row("B | pi({r,p}), behavioral",
            conditional_heu(ev["B"], ev["r,p"], mu, behavioral), Fraction(1, 3)),
        Row("total mass", sum(w), Fraction(1)),
    )
    blocks = tuple((f"{VOTING_STATES[i][:3]} block", w[i] + w[twin[i]]) for i in (0, 1, 4, 5))
    return Scenario("pivotal-voting", space, mu, identity, behavioral, ev, rows,
                    classify(behavioral), blocks)


# --- winner's curse --------------------------------------------------------------

WC_VALUES = (Fraction(0), Fraction(1))
WC_WEIGHTS = tuple(Fraction(x, 24) for x in (3, 1, 2, 1, 1, 3, 2, 11))


def winners_curse(values=WC_VALUES, signals=2, weights=WC_WEIGHTS, bid=None, signal=None):
    """Common-value auction on (value, own signal, highest rival bid).

    State ``(v, s, u)`` sits at index ``(v * signals + s) * len(values) + u``.
    The bidder wins when the highest rival bid is below ``bid``; the
    behavioral bidder's map forgets the rival-bid coordinate.
    """
    values = tuple(rational(v) for v in values)
    k = len(values)
    if k < 1 or signals < 1:
        raise BadDimensions("need at least one value and one signal")
    if len(set(values)) != k or any(v < 0 for v in values):
        raise BadParameters("values must be distinct and nonnegative")
    n = k * signals * k
    if len(weights) != n:
        raise BadDimensions(f"joint weights need {n} entries, got {len(weights)}")
    try:
        mu = Measure.of(weights)
    except InputError as exc:
        raise BadParameters(str(exc)) from exc
    ordered = sorted(values)
    if bid is None:
        bid = (ordered[0] + ordered[1]) / 2 if k > 1 else ordered[0] + 1
    bid = rational(bid)
    if signal is None:
        signal = signals - 1
    if not 0 <= signal < signals:
        raise BadParameters(f"signal {signal} outside 0..{signals - 1}")

    labels = tuple(f"v{a},s{s},u{b}" for a in range(k) for s in range(signals) for b in range(k))
    space = StateSpace(labels)
    idx = lambda a, s, b: (a * signals + s) * k + b  # noqa: E731
    gens = []
    for a in range(k):
        for s in range(signals):
            cell = sum(1 << idx(a, s, b) for b in range(k))
            gens.extend([cell] * k)
    behavioral = from_generators(GeneratorForm(0, tuple(gens)), space)
    identity = Interpretation.identity(space)
    value_act = Act.of([values[a] for a in range(k) for _ in range(signals) for _ in range(k)])

    sig = sum(1 << idx(a, signal, b) for a in range(k) for b in range(k))
    win = sum(1 << idx(a, s, b) for a in range(k) for s in range(signals) for b in range(k)
              if values[b] < bid)
    ev = {"signal": sig, "win": win, "signal and win": sig & win}
    beh_win = conditional_expectation(value_act, ev["signal and win"], mu, behavioral)
    beh_sig = conditional_expectation(value_act, sig, mu, behavioral)
    rat_win = conditional_expectation(value_act, ev["signal and win"], mu, identity)
    rat_sig = conditional_expectation(value_act, sig, mu, identity)
    rows = [Row("E[v | s, win], behavioral = E[v | s]", beh_win, beh_sig),
            Row("E[v | s], behavioral = rational", beh_sig, rat_sig)]
    if weights == WC_WEIGHTS and values == WC_VALUES and signals == 2:
        rows.append(Row("E[v | s, win], rational", rat_win, Fraction(1, 2)))
        rows.append(Row("E[v | s], rational", rat_sig, Fraction(13, 16)))
    variants = (("E[v | s, win], rational", rat_win),
                ("overvaluation from ignoring the win", beh_win - rat_win))
    return Scenario("winners-curse", space, mu, identity, behavioral, ev, tuple(rows),
                    classify(behavioral) if n <= 12 else "coherent", variants)


# --- disclosure ---------------------------------------------------------------------

def disclosure(n=5, beta=(0, 1, 1, 1, 1)):
    """Seller of quality ``i`` reveals it with probability ``beta[i-1]``.

    States ``(v_i, r_j)`` sit at index ``(i - 1) * (n + 1) + j``; ``r_0``
    is silence.  The behavioral buyer reads any hypothesis touching silence
    as the whole space.
    """
    if n < 2:
        raise BadParameters("disclosure needs at least two quality levels")
    if n * (n + 1) > 30:
        raise BadParameters("disclosure supports n <= 5 (at most 30 states)")
    beta = tuple(rational(b) for b in beta)
    if len(beta) != n or any(not 0 <= b <= 1 for b in beta):
        raise BadParameters("beta needs n entries in [0, 1]")
    width = n + 1
    space = StateSpace(tuple(f"v{i},r{j}" for i in range(1, n + 1) for j in range(width)))
    at = lambda i, j: (i - 1) * width + j  # noqa: E731
    w = [Fraction(0)] * (n * width)
    for i in range(1, n + 1):
        w[at(i, i)] = beta[i - 1] / n
        w[at(i, 0)] = (1 - beta[i - 1]) / n
    mu = Measure.of(w)
    silent = sum(1 << at(i, 0) for i in range(1, n + 1))
    if mu(silent) == 0:
        raise BadParameters("every type always discloses, so silence has zero mass")
    full = space.full
    behavioral = from_generators(
        GeneratorForm(0, tuple(full if silent >> k & 1 else 1 << k for k in range(n * width))),
        space)
    identity = Interpretation.identity(space)
    quality = {i: sum(1 << at(i, j) for j in range(width)) for i in range(1, n + 1)}
    ev = {"R0": silent, **{f"V{i}": m for i, m in quality.items()}}

    top = 0
    while top < n and beta[n - 1 - top] == 1:
        top += 1
    prior = Fraction(1, n)
    rows = [
        Row(f"V{n} | R0, behavioral",
            conditional_heu(quality[n], silent, mu, behavioral, variant="payoff"), prior),
        Row(f"V{n} | R0, rational", conditional_heu(quality[n], silent, mu, identity),
            (1 - beta[-1]) / n / mu(silent)),
    ]
    if top:
        upper = 0
        for i in range(n - top + 1, n + 1):
            upper |= quality[i]
        rows.append(Row(f"top {top} types | R0, rational",
                        conditional_heu(upper, silent, mu, identity), Fraction(0)))
    kind = classify(behavioral) if n * width <= 10 else "coherent"
    return Scenario("disclosure", space, mu, identity, behavioral, ev, tuple(rows), kind,
                    notes=("conditionals pay on the literal quality event; its image "
                           "touches silence and so is the whole space",))


SCENARIOS = {
    "monty-hall": monty_hall,
    "pivotal-voting": pivotal_voting,
    "winners-curse": winners_curse,
    "disclosure": disclosure,
}
