from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from heu.core import Measure, StateSpace
from heu.errors import BadGenerators, Infeasible, NotGrounded, NotWeaklyCoherent, TooLarge
from heu.interpretation import (
    GeneratorForm,
    Interpretation,
    check_properties,
    classify,
    complete_to_coherent,
    compose_capacity,
    derive_implication,
    dualize,
    enumerate_coherent,
    enumerate_weakly_coherent,
    extract_generators,
    from_generators,
    image_lattice,
    is_coherent,
)
from heu.implication import ImplicationRelation
from heu.scenarios import disclosure, monty_hall, pivotal_voting, winners_curse

from oracles import coherent_tables_bruteforce, lattice_tables, properties

FLAGS = ("truth", "introspection", "monotone", "consistency", "distribution")


def tables(n):
    size = 1 << n
    return st.lists(st.integers(0, size - 1), min_size=size, max_size=size)


def test_identity_and_constant_maps():
    ident = Interpretation.identity(3)
    rep = check_properties(ident)
    assert all(getattr(rep, k).holds for k in FLAGS)
    assert classify(ident) == "coherent"
    top = Interpretation(3, table=[7] * 8)
    assert classify(top) == "coherent"
    assert image_lattice(top) == {7}


def test_monty_hall_literal_map_fails_monotonicity():
    pi = monty_hall().pi_behavioral
    rep = check_properties(pi)
    assert rep.truth.holds and rep.introspection.holds
    assert not rep.monotone.holds
    assert rep.monotone.witness == (0b1001, 0b1101)
    assert not rep.distribution.holds and not rep.consistency.holds
    assert classify(pi) == "none"


def test_example_four_map_and_its_dual():
    # two states (v1, r0), (v1, r1); silence is state 0
    pi = from_generators(GeneratorForm(0, (0b11, 0b10)))
    assert pi.table == (0, 3, 2, 3)
    assert classify(pi) == "coherent"
    assert classify(dualize(pi)) == "dual_coherent"


def test_example_four_classifies_coherent_at_small_sizes():
    for n, beta in ((2, (0, 1)), (3, (F(1, 2), 1, 1))):
        assert disclosure(n, beta).classification == "coherent"


def test_non_monotone_table_is_none():
    pi = Interpretation(2, table=[0, 3, 2, 2])
    assert not check_properties(pi).monotone.holds
    assert classify(pi) == "none"


def test_generator_round_trips_and_examples():
    assert from_generators(GeneratorForm(0, (1, 2, 4))).is_identity()
    voting = pivotal_voting()
    pi = voting.pi_behavioral
    b_r_p = voting.space.mask(["B,r,p"])
    assert pi(b_r_p) == voting.space.mask(["B,r,p", "B,r,np"])
    wc = winners_curse()
    state = wc.space.index("v1,s0,u0")
    assert wc.pi_behavioral(1 << state) == wc.space.mask(["v1,s0,u0", "v1,s0,u1"])
    for n in range(1, 5):
        for pi in enumerate_coherent(n):
            assert from_generators(extract_generators(pi)) == pi


@pytest.mark.parametrize("gens, name", [
    (GeneratorForm(0, (2, 2)), "truth"),
    (GeneratorForm(1, (1, 2)), "base_inclusion"),
    (GeneratorForm(0, (3, 6, 4)), "transitivity"),
])
def test_bad_generators(gens, name):
    with pytest.raises(BadGenerators) as err:
        from_generators(gens)
    assert err.value.witness[0] == name


def test_image_lattice_examples():
    assert image_lattice(Interpretation.identity(3)) == set(range(8))
    voting = pivotal_voting()
    images = image_lattice(voting.pi_behavioral)
    blocks = [0b00000101, 0b00001010, 0b01010000, 0b10100000]
    unions = {sum(b for i, b in enumerate(blocks) if c >> i & 1) for c in range(16)}
    assert images == unions
    with pytest.raises(NotWeaklyCoherent):
        image_lattice(monty_hall().pi_behavioral)


def test_derive_implication_examples():
    assert derive_implication(Interpretation.identity(3)) == ImplicationRelation.subset_order(3)
    assert derive_implication(Interpretation(2, table=[3] * 4)) == ImplicationRelation.total(2)
    pi = complete_to_coherent({0b1001: 0b1011, 0b1011: 0b1011}, 4)
    rel = derive_implication(pi)
    assert rel.implies(0b1001, 0b1011) and rel.implies(0b1011, 0b1001)


def test_dualize_examples():
    assert dualize(Interpretation.identity(3)).is_identity()
    assert dualize(Interpretation(2, table=[3] * 4)).table == (0,) * 4
    pi = pivotal_voting().pi_behavioral
    twin = {0: 2, 1: 3, 4: 6, 5: 7, 2: 0, 3: 1, 6: 4, 7: 5}
    expected = tuple(sum(1 << i for i in range(8) if h >> i & 1 and h >> twin[i] & 1)
                     for h in range(256))
    assert dualize(pi).table == expected


# --- enumeration ------------------------------------------------------------------

def test_enumeration_counts_and_oracles():
    assert [sum(1 for _ in enumerate_coherent(n)) for n in range(1, 5)] == [2, 7, 45, 500]
    for n in (1, 2):
        brute = set(coherent_tables_bruteforce(n))
        assert {pi.table for pi in enumerate_coherent(n)} == brute
    for n in range(1, 5):
        tabs = [pi.table for pi in enumerate_coherent(n)]
        assert len(set(tabs)) == len(tabs)
        assert set(tabs) == set(lattice_tables(n))


def test_enumerated_maps_are_coherent():
    for n in range(1, 4):
        assert all(classify(pi) == "coherent" for pi in enumerate_coherent(n))


def test_weakly_coherent_enumeration():
    assert [sum(1 for _ in enumerate_weakly_coherent(n)) for n in range(1, 5)] == [2, 7, 61, 2480]
    for n in range(1, 4):
        for pi in enumerate_weakly_coherent(n):
            assert check_properties(pi).weakly_coherent


def test_enumeration_cap(monkeypatch):
    with pytest.raises(TooLarge):
        list(enumerate_coherent(5))
    monkeypatch.setenv("HEU_MAX_N", "5")
    assert next(iter(enumerate_coherent(5))).n == 5


# --- properties against the set-based oracle ---------------------------------------------

def test_property_flags_match_oracle_exhaustively_small():
    from itertools import product

    for n in (1, 2):
        size = 1 << n
        for table in product(range(size), repeat=size):
            rep = check_properties(Interpretation(n, table=table))
            want = properties(table, n)
            assert {k: getattr(rep, k).holds for k in FLAGS} == want
            assert rep.distribution.holds == (rep.monotone.holds and rep.consistency.holds)
            assert dualize(dualize(Interpretation(n, table=table))).table == table


@settings(max_examples=300, deadline=None)
@given(tables(3))
def test_distribution_iff_monotone_and_consistent(table):
    rep = check_properties(Interpretation(3, table=table))
    assert rep.distribution.holds == (rep.monotone.holds and rep.consistency.holds)
    assert {k: getattr(rep, k).holds for k in FLAGS} == properties(table, 3)


@settings(max_examples=300, deadline=None)
@given(tables(3))
def test_dualize_is_an_involution(table):
    pi = Interpretation(3, table=table)
    assert dualize(dualize(pi)) == pi


def test_coherent_iff_dual_is_dual_coherent():
    for n in range(1, 4):
        for pi in enumerate_coherent(n):
            assert check_properties(dualize(pi)).dual_coherent
        for pi in enumerate_weakly_coherent(n):
            if not is_coherent(pi):
                assert not check_properties(dualize(pi)).dual_coherent


def test_witnesses_present_iff_flag_false():
    for n in (1, 2):
        for pi in enumerate_weakly_coherent(n):
            rep = check_properties(pi)
            for check in rep.as_dict().values():
                assert (check.witness is None) == check.holds


def test_lattice_and_meet_inclusion():
    for n in range(1, 5):
        for pi in enumerate_coherent(n):
            images = image_lattice(pi)
            assert all(a | b in images and a & b in images for a in images for b in images)
            t = pi.table
            assert all(t[h & g] & ~(t[h] & t[g]) == 0 for h in range(len(t)) for g in range(len(t)))


# --- composition and completion ------------------------------------------------------------

def test_compose_capacity():
    mu = Measure.of([F(1, 6), F(1, 6), F(1, 3), F(1, 3)])
    assert compose_capacity(mu, Interpretation.identity(4)).values == tuple(mu.table())
    with pytest.raises(NotGrounded):
        compose_capacity(mu, Interpretation(4, table=[15] * 16))


@pytest.mark.parametrize("n, beta", [(2, (F(1, 3), F(3, 4))), (3, (0, F(1, 2), 1))])
def test_compose_capacity_disclosure(n, beta):
    sc = disclosure(n, beta)
    nu = compose_capacity(sc.mu, Interpretation(sc.space, table=sc.pi_behavioral.table))
    top = sc.space.mask([f"v{n},r{j}" for j in range(1, n + 1)])
    assert nu(top) == F(beta[-1]) / n
    silent = sc.named_events["R0"]
    assert all(nu(h) == 1 for h in range(1 << sc.space.n) if h & silent)


def test_complete_to_coherent():
    space = monty_hall().space
    pi = complete_to_coherent({0b1001: 0b1011, 0b0110: 0b0111}, space)
    assert is_coherent(pi)
    assert extract_generators(pi).singletons == (1, 2, 5, 10)
    with pytest.raises(Infeasible) as err:
        complete_to_coherent({0: 3, 3: 0}, 2)
    assert err.value.witness
    for pi in enumerate_coherent(3):
        assert complete_to_coherent(dict(enumerate(pi.table)), 3) == pi


def test_space_labels_matter_for_equality():
    a = Interpretation(StateSpace(("x", "y")), table=[0, 1, 2, 3])
    assert a == Interpretation.identity(StateSpace(("x", "y")))
