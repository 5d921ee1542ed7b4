"""Tests for Farey structure, predecessor chains and the approximation identities."""
from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings as hyp_settings, strategies as st

from kitebilliards.exceptions import DomainError, InvalidDeltaError
from kitebilliards.seqcore import (
    admissibility,
    apply_matrix,
    approximant_data,
    approximation_identities,
    case_matrix,
    chain_from_terms,
    diophantine_constant,
    extend_by_case,
    extend_many,
    farey_neighbors,
    inferior_predecessor,
    near_predecessors,
    neighbor_denominators,
    odd_rationals,
    penrose_chain,
    predecessor_chain,
    superior_chain,
    superior_predecessor,
    unit_chain,
    verify_case_table,
    verify_keycomp,
    verify_round_trip,
    verify_squeeze,
)

# =============================================================================
# Farey neighbours
# =============================================================================


@pytest.mark.parametrize(
    "a, minus, plus",
    [
        (F(3, 5), F(1, 2), F(2, 3)),
        (F(29, 69), F(21, 50), F(8, 19)),
        (F(1, 2), F(0, 1), F(1, 1)),
        (F(19, 49), F(12, 31), F(7, 18)),
        (F(379, 645), F(161, 274), F(218, 371)),
    ],
)
def test_farey_neighbors_worked_values(a, minus, plus):
    pair = farey_neighbors(a)
    assert pair.minus == minus
    assert pair.plus == plus


@pytest.mark.parametrize("a", [F(0), F(1), F(3, 2)])
def test_farey_neighbors_rejects_outside_unit_interval(a):
    with pytest.raises(DomainError):
        farey_neighbors(a)


def test_neighbor_denominators_of_one_is_formal_pair():
    assert neighbor_denominators(F(1)) == (0, 1)


def test_inferior_predecessor_worked_value():
    assert inferior_predecessor(F(19, 49)) == F(5, 13)


@pytest.mark.parametrize("a", [F(1), F(1, 2), F(12, 31)])
def test_inferior_predecessor_domain(a):
    with pytest.raises(DomainError):
        inferior_predecessor(a)


def test_odd_rationals_are_reduced_and_odd():
    values = list(odd_rationals(9))
    assert values[:2] == [F(1, 3), F(1, 5)]
    assert all((v.numerator * v.denominator) % 2 == 1 for v in values)


# =============================================================================
# Chains
# =============================================================================


def test_predecessor_chain_of_19_49():
    chain = predecessor_chain(F(19, 49))
    assert chain.terms == [F(1), F(1, 3), F(5, 13), F(19, 49)]
    assert chain.ds == [1, 2, 1]
    assert chain.deltas == [2, 4, 3]
    assert chain.sides == [-1, 1, 1]
    assert chain.neighbors[0] is None


def test_predecessor_chain_of_379_645():
    chain = predecessor_chain(F(379, 645))
    assert chain.terms == [F(1), F(3, 5), F(17, 29), F(37, 63), F(57, 97), F(379, 645)]
    assert chain.ds == [2, 2, 1, 0, 3]
    assert chain.deltas == [4, 5, 2, 1, 6]
    assert chain.superior == [True, True, True, False, True, True]


def test_predecessor_chain_rejects_even():
    with pytest.raises(DomainError):
        predecessor_chain(F(12, 31))


def test_superior_chain_skips_zero_digits():
    chain = superior_chain(F(379, 645))
    assert chain.terms == [F(1), F(3, 5), F(17, 29), F(57, 97), F(379, 645)]
    assert chain.source_indices == [0, 1, 2, 4, 5]


def test_superior_predecessor_and_near_predecessors():
    assert superior_predecessor(F(379, 645)) == F(57, 97)
    assert near_predecessors(F(379, 645)) == [F(57, 97)]
    assert near_predecessors(F(19, 49)) == [F(5, 13)]


def test_penrose_chain_terms():
    chain = penrose_chain(4)
    assert chain.terms == [
        F(1), F(1, 3), F(1, 5), F(3, 13), F(5, 21), F(13, 55), F(21, 89), F(55, 233), F(89, 377)
    ]
    assert chain.ds == [1, 0, 1, 0, 1, 0, 1, 0]
    assert superior_chain(chain.terminal).terms[:4] == [F(1), F(1, 5), F(5, 21), F(21, 89)]


def test_extend_by_case_reproduces_predecessor_chain():
    built = extend_many(unit_chain(), [2, 4, 3])
    reference = predecessor_chain(F(19, 49))
    assert built.terms == reference.terms
    assert built.ds == reference.ds
    assert [pair.plus for pair in built.neighbors[1:]] == [pair.plus for pair in reference.neighbors[1:]]
    assert [pair.minus for pair in built.neighbors[1:]] == [pair.minus for pair in reference.neighbors[1:]]


def test_extend_by_case_rejects_odd_first_delta():
    with pytest.raises(InvalidDeltaError):
        extend_by_case(unit_chain(), 3)


def test_extend_by_case_rejects_nonpositive_delta():
    with pytest.raises(InvalidDeltaError):
        extend_by_case(unit_chain(), 0)


def test_case_matrix_carries_farey_denominators():
    chain = predecessor_chain(F(19, 49))
    for m in range(1, len(chain.terms) - 1):
        got = apply_matrix(
            case_matrix(chain.sides[m - 1], chain.sides[m], chain.ds[m]),
            neighbor_denominators(chain.terms[m]),
        )
        assert got == neighbor_denominators(chain.terms[m + 1])


def test_chain_from_terms_requires_anchor():
    with pytest.raises(ValueError):
        chain_from_terms([F(1, 3)])


@st.composite
def odd_parameters(draw, max_q: int = 301):
    q = draw(st.integers(min_value=1, max_value=(max_q - 1) // 2)) * 2 + 1
    p = draw(st.integers(min_value=0, max_value=(q - 3) // 2)) * 2 + 1
    a = F(p, q)
    assume(a.denominator == q)
    return a


@given(odd_parameters())
@hyp_settings(max_examples=200, deadline=None)
def test_round_trip_property(a):
    chain = predecessor_chain(a)
    shorter = chain_from_terms(chain.terms[:-1])
    assert extend_by_case(shorter, chain.deltas[-1]).terminal == a


@given(odd_parameters())
@hyp_settings(max_examples=200, deadline=None)
def test_chain_denominators_increase(a):
    chain = predecessor_chain(a)
    assert chain.denominators == sorted(chain.denominators)
    assert chain.terms[0] == 1


# =============================================================================
# Diophantine constant and identities
# =============================================================================


def test_admissibility_value():
    assert admissibility(F(1, 3), F(5, 13)) == F(13, 3)


def test_admissibility_rejects_equal_parameters():
    with pytest.raises(DomainError):
        admissibility(F(1, 3), F(1, 3))


def test_diophantine_constant_matches_key_computation():
    # 5/13 is the near predecessor of 19/49, which lies above it, so Ω q' = q' + q₊
    omega = diophantine_constant(F(5, 13), F(19, 49))
    assert omega * 13 == 13 + 18


def test_approximant_data_of_unit_term():
    chain = predecessor_chain(F(19, 49))
    data = approximant_data(chain, F(19, 49))
    assert data.lambdas[0] == F(30, 49)
    assert data.lambdas[-1] == 0
    assert data.lambda_stars[0] == 1


@pytest.mark.parametrize("a", [F(19, 49), F(379, 645), F(25, 47)])
def test_approximation_identities_pass(a):
    report = approximation_identities(predecessor_chain(a), a)
    assert report.passed, report.failures
    assert report.checked > 0


def test_approximation_identities_on_penrose_chain():
    chain = penrose_chain(4)
    report = approximation_identities(chain, chain.terminal)
    assert report.passed, report.failures


def test_approximation_identities_reject_foreign_chain():
    with pytest.raises(DomainError):
        approximation_identities(predecessor_chain(F(19, 49)), F(379, 645))


@pytest.mark.parametrize("sweep", [verify_round_trip, verify_case_table, verify_squeeze, verify_keycomp])
def test_chain_sweeps_pass(sweep):
    report = sweep(60)
    assert report.passed, report.failures[:3]
    assert report.checked > 0
