import random
from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from heu.core import Capacity, Measure, validate_capacity
from heu.errors import (
    AxiomViolation,
    ExtensionInfeasible,
    NotCoherent,
    PrerequisiteFailed,
    TooLarge,
)
from heu.elicitation import (
    PREFERENCE_AXIOM,
    Representation,
    algebra_atoms,
    check_heucond,
    check_inclusion_exclusion,
    check_modularity,
    check_relevance,
    implication_from_capacity,
    normalize_interpretation,
    recover_representation,
    verify_representation,
)
from heu.implication import ImplicationRelation, check_axioms
from heu.interpretation import (
    GeneratorForm,
    Interpretation,
    check_properties,
    compose_capacity,
    derive_implication,
    enumerate_coherent,
    enumerate_weakly_coherent,
    from_generators,
    is_coherent,
)
from heu.scenarios import monty_hall, pivotal_voting
from heu.theorems import random_capacity, random_measure

FULL = Measure.of([F(1, 2), F(1, 3), F(1, 6)])


def grid_capacities(n, grid=(F(0), F(1, 2), F(1))):
    inner = (1 << n) - 2
    for vals in product(grid, repeat=inner):
        try:
            yield validate_capacity([F(0), *vals, F(1)])
        except ValueError:
            continue


# --- revealed implication ----------------------------------------------------------

def test_additive_capacity_reveals_subset_order():
    nu = Capacity.from_measure(Measure.of([F(1, 10), F(1, 5), F(3, 10), F(2, 5)]))
    assert implication_from_capacity(nu) == ImplicationRelation.subset_order(4)


def test_voting_capacity_reveals_derived_relation():
    sc = pivotal_voting()
    nu = compose_capacity(sc.mu, sc.pi_behavioral)
    assert implication_from_capacity(nu) == derive_implication(sc.pi_behavioral)


def test_monty_hall_indifference_reveals_perceived_implication():
    sc = monty_hall()
    nu = compose_capacity(sc.mu, sc.pi_behavioral)
    ev = sc.named_events
    assert nu(ev["O2"]) == nu(ev["O2"] | ev["not P2"])
    assert implication_from_capacity(nu).implies(ev["not P2"], ev["O2"])


def test_revealed_relation_size_cap():
    with pytest.raises(TooLarge):
        implication_from_capacity(Capacity.from_measure(Measure.uniform(13)))


# --- modularity and relevance -----------------------------------------------------------

def test_modularity_holds_for_heu_capacities():
    rng = random.Random(1)
    for n in range(1, 4):
        for pi in enumerate_coherent(n):
            support = pi.space.full & ~pi(0)
            if support:
                assert check_modularity(compose_capacity(random_measure(rng, n, support), pi)).holds
    assert check_modularity(Capacity.from_measure(Measure.uniform(3))).holds


def test_modularity_violation_from_grid_search():
    nu = next(nu for nu in grid_capacities(3) if not check_modularity(nu).holds)
    g, h, f = check_modularity(nu).witness
    assert nu(g) == nu(g | h)
    assert nu(g | f) != nu(g | f | h)
    with pytest.raises(PrerequisiteFailed):
        check_relevance(nu)


def test_relevance_holds_for_coherent_and_additive():
    for pi in enumerate_coherent(3):
        if pi(0) == 0:
            assert check_relevance(compose_capacity(FULL, pi)).holds
    assert check_relevance(Capacity.from_measure(FULL)).holds


def test_relevance_fails_for_weakly_coherent_only_maps():
    seen = 0
    for pi in enumerate_weakly_coherent(3):
        if is_coherent(pi):
            continue
        seen += 1
        nu = compose_capacity(FULL, pi)
        check = check_relevance(nu)
        assert not check.holds
        h, h2, f = check.witness
        rel = implication_from_capacity(nu)
        assert rel.implies(f, h | h2)
        assert check_axioms(rel).first_failure() == "dcmp"
    assert seen == 16


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 3), st.integers(0, 10**6))
def test_modular_capacities_reveal_weakly_coherent_relations(n, seed):
    nu = random_capacity(random.Random(seed), n, top=3)
    if check_modularity(nu).holds:
        rep = check_axioms(implication_from_capacity(nu))
        assert rep.weak
        assert rep.dcmp.holds == check_relevance(nu).holds


# --- inclusion-exclusion ---------------------------------------------------------

def test_disjoint_images_add_up():
    pi = from_generators(GeneratorForm(0, (0b011, 0b011, 0b100)))
    nu = compose_capacity(FULL, pi)
    assert nu(0b101) == nu(0b001) + nu(0b100)
    assert check_inclusion_exclusion(nu, 2).holds


def test_inclusion_exclusion_holds_for_heu_capacities():
    for n in range(1, 4):
        for pi in enumerate_coherent(n):
            if pi(0) == 0:
                rep = check_inclusion_exclusion(compose_capacity(Measure.uniform(n), pi), 3)
                assert rep.holds and rep.checked > 0


def test_inclusion_exclusion_witness_on_concave_capacity():
    from heu.analysis import is_concave

    nu = validate_capacity([0, F(1, 2), F(1, 2), 1, F(1, 2), 1, 1, 1])
    assert is_concave(nu).holds
    rep = check_inclusion_exclusion(nu, 3)
    assert not rep.holds
    assert rep.witness["collection"] == [1, 2, 4]
    assert rep.witness["observed"] == 1 and rep.witness["predicted"] == F(3, 2)
    with pytest.raises(ValueError):
        check_inclusion_exclusion(nu, 5)


# --- recovery ----------------------------------------------------------------

def test_additive_capacity_recovers_identity():
    mu = Measure.of([F(1, 6), F(1, 3), F(1, 2)])
    rep = recover_representation(Capacity.from_measure(mu))
    assert rep.pi.is_identity() and rep.mu == mu
    assert all(rep.identified)


def test_voting_recovery_block_masses():
    sc = pivotal_voting()
    rep = recover_representation(compose_capacity(sc.mu, sc.pi_behavioral))
    assert rep.pi == sc.pi_behavioral
    blocks = {sc.space.mask([a, b]): m for a, b, m in (
        ("B,b,p", "B,b,np", F(1, 3)), ("B,r,p", "B,r,np", F(1, 6)),
        ("R,b,p", "R,b,np", F(1, 6)), ("R,r,p", "R,r,np", F(1, 3)))}
    assert dict(zip(rep.atoms, rep.atom_masses)) == blocks
    assert not any(rep.identified)
    assert verify_representation(compose_capacity(sc.mu, sc.pi_behavioral), rep).ok


def test_round_trip_with_full_support():
    rng = random.Random(3)
    for n in range(1, 4):
        for pi in enumerate_coherent(n):
            if pi(0):
                continue
            mu = random_measure(rng, n)
            rep = recover_representation(compose_capacity(mu, pi))
            assert rep.pi == pi
            assert all(rep.mu(a) == mu(a) for a in rep.atoms)
            assert set(rep.algebra) >= set(pi.table)


def test_recovery_rejects_non_representable_capacities():
    nu = validate_capacity([0, F(1, 4), F(1, 4), 1])
    with pytest.raises(ExtensionInfeasible) as err:
        recover_representation(nu)
    assert not err.value.witness.holds
    assert err.value.witness.witness["collection"] == [1, 2]
    nu = validate_capacity([0, F(1, 2), F(1, 2), 1, F(1, 2), 1, 1, 1])
    with pytest.raises(AxiomViolation) as err:
        recover_representation(nu)
    assert err.value.axiom == "dcmp" and PREFERENCE_AXIOM["dcmp"] == "A-rel"


def test_null_state_counterexample():
    pi = from_generators(GeneratorForm(0, (0b001, 0b111, 0b100)))
    mu = Measure.of([F(7, 8), 0, F(1, 8)])
    upper = normalize_interpretation(pi, mu, "upper")
    assert not is_coherent(upper) and check_properties(upper).weakly_coherent
    with pytest.raises(AxiomViolation) as err:
        recover_representation(compose_capacity(mu, pi))
    assert err.value.axiom == "dcmp"


def test_null_states_recover_iff_upper_normalization_is_coherent():
    rng = random.Random(11)
    outcomes = {True: 0, False: 0}
    for n in (2, 3):
        for pi in enumerate_coherent(n):
            for _ in range(6):
                support = pi.space.full & ~pi(0)
                if not support:
                    break
                mu = random_measure(rng, n, support & ~(1 << rng.randrange(n)) or support)
                upper = normalize_interpretation(pi, mu, "upper")
                nu = compose_capacity(mu, pi)
                try:
                    rep = recover_representation(nu)
                except AxiomViolation as exc:
                    assert exc.axiom == "dcmp" and not is_coherent(upper)
                    outcomes[False] += 1
                else:
                    assert rep.pi == upper and is_coherent(upper)
                    assert verify_representation(nu, rep, trials=20).ok
                    outcomes[True] += 1
    assert outcomes[True] and outcomes[False]


def test_algebra_atoms():
    assert algebra_atoms([0b0011, 0b0110], 4) == (0b0001, 0b0010, 0b0100, 0b1000)
    assert algebra_atoms([0b0101], 4) == (0b0101, 0b1010)


# --- normalization and verification ------------------------------------------------------

def test_normalize_with_full_support_is_a_no_op():
    for pi in enumerate_coherent(3):
        assert normalize_interpretation(pi, FULL) == pi
        assert normalize_interpretation(pi, FULL, "upper") == pi
        assert check_heucond(pi, FULL).holds


def test_normalize_identity_with_null_states():
    mu = Measure.of([F(1, 2), 0, F(1, 2)])
    ident = Interpretation.identity(3)
    assert not check_heucond(ident, mu).holds
    foot = normalize_interpretation(ident, mu)
    upper = normalize_interpretation(ident, mu, "upper")
    assert foot.table == tuple(h & ~0b010 for h in range(8))
    assert upper.table == tuple(h | 0b010 for h in range(8))
    m = mu.table()
    for h in range(8):
        assert m[foot(h)] == m[upper(h)] == m[h]
    assert check_heucond(upper, mu).holds and is_coherent(upper)
    assert not check_properties(foot).truth.holds


def test_normalize_merges_images_differing_by_a_null_state():
    pi = from_generators(GeneratorForm(0, (0b011, 0b010, 0b100)))
    mu = Measure.of([0, F(1, 2), F(1, 2)])
    upper = normalize_interpretation(pi, mu, "upper")
    assert upper(0b010) == upper(0b001) == 0b011
    with pytest.raises(NotCoherent):
        normalize_interpretation(monty_hall().pi_behavioral, Measure.uniform(4))
    with pytest.raises(ValueError):
        normalize_interpretation(pi, mu, "sideways")


def test_verification_catches_bad_representations():
    sc = pivotal_voting()
    nu = compose_capacity(sc.mu, sc.pi_behavioral)
    rep = recover_representation(nu)
    ident = Representation(Interpretation.identity(sc.space), rep.mu, rep.atoms, rep.atom_masses)
    report = verify_representation(nu, ident)
    assert not report.entrywise.holds and not report.ok
    block = rep.atoms[0]
    other = rep.atoms[1]
    w = list(rep.mu.weights)
    lo, hi = (block & -block).bit_length() - 1, (other & -other).bit_length() - 1
    w[lo] += F(1, 1000)
    w[hi] -= F(1, 1000)
    bumped = Representation(rep.pi, Measure(tuple(w)), rep.atoms, rep.atom_masses)
    report = verify_representation(nu, bumped)
    assert not report.entrywise.holds
    assert sc.pi_behavioral(report.entrywise.witness) & (block | other)
