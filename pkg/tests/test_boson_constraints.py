from fractions import Fraction

import pytest

from hurwitzkit.core.exceptions import DomainException, PoleException
from hurwitzkit.core.models import Partition
from hurwitzkit.services.boson_constraints import (
    BosonConstraints, BosonOperator, commutator, current_field, normal_order
)
from hurwitzkit.services.series_ring import RatFuncHbarRing, RationalRing

BETAS = [Fraction(1, 7), Fraction(-2, 9), Fraction(3, 11)]
TIMES = {1: Fraction(1), 2: Fraction(1, 2)}


@pytest.fixture
def bosons():
    return BosonConstraints(6)


def test_normal_order():
    assert normal_order((1, -1)) == {(-1, 1): 1, (): 1}
    assert normal_order((-1, 1)) == {(-1, 1): 1}
    assert normal_order((2, 0)) == {}


def test_operator_algebra():
    ring = RationalRing()
    j1 = BosonOperator.current(ring, 1)
    j_minus1 = BosonOperator.current(ring, -1)
    assert commutator(j1, j_minus1) == BosonOperator(ring, {(): 1})
    assert (j1 - j1).is_zero()
    assert j1.scale(2).to_text() == "2*J(1)"


def test_quadratic_operator_action():
    bosons = BosonConstraints(4)
    t2 = bosons.polynomial({bosons.monomial(Partition.of(2)): 1})
    image, valid = bosons.apply(bosons.build_L(1), t2)
    assert valid == 3
    assert image == bosons.polynomial({bosons.monomial(Partition.of(1)): 1})


def test_cubic_operator_action():
    bosons = BosonConstraints(4)
    f = bosons.polynomial({bosons.monomial(Partition.of(2, 1)): 1})
    image, _ = bosons.apply(bosons.build_M(0), f)
    expected = bosons.polynomial({
        bosons.monomial(Partition.of(1, 1, 1)): 1,
        bosons.monomial(Partition.of(3)): 6,
    })
    assert image == expected


def test_cubic_commutator_with_current(bosons):
    assert commutator(bosons.build_M(0), bosons.current(1)) == bosons.build_L(1).scale(-2)


def test_build_y_calibration(bosons):
    for m in range(4):
        assert bosons.residue(0, m) == (bosons.current(m) if m else BosonOperator.zero(bosons.ring))
        assert bosons.build_Y(m, bosons.linear_basis(m)) == bosons.build_L(m)
        assert bosons.build_Y(m, bosons.quadratic_basis(m)) == bosons.build_M(m)
    for m in range(1, 4):
        assert bosons.build_Y(m, [1]) == bosons.current(m)
    assert bosons.build_Y(0, [1]).is_zero()
    assert bosons.calibration_failures() == []


def test_linear_residue_carries_a_current_term(bosons):
    # x^{1-n}∂_x ↦ L̂_n + (n-1)/2·Ĵ_n before the D ↦ D+1 shift
    assert bosons.residue(1, 3) == bosons.build_L(3) + bosons.current(3)
    assert bosons.residue(1, 1) == bosons.build_L(1)


def test_current_field_expansion():
    assert dict(current_field(0)) == {(0,): 1}
    assert dict(current_field(1)) == {(0, 0): 1, (1,): 1}
    assert dict(current_field(2)) == {(0, 0, 0): 1, (0, 1): 3, (2,): 1}
    assert dict(current_field(3)) == {(0, 0, 0, 0): 1, (0, 0, 1): 6, (0, 2): 4, (1, 1): 3, (3,): 1}


def test_y_builder_matches_cubic_operator_on_t1_t2():
    bosons = BosonConstraints(4)
    t1t2 = bosons.polynomial({bosons.monomial(Partition.of(2, 1)): 1})
    image, _ = bosons.apply(bosons.build_Y(0, bosons.quadratic_basis(0)), t1t2)
    assert image == bosons.polynomial({
        bosons.monomial(Partition.of(1, 1, 1)): 1,
        bosons.monomial(Partition.of(3)): 6,
    })


def acts_alike(bosons, first, second):
    for mu in bosons.basis(bosons.truncation):
        f = bosons.polynomial({bosons.monomial(mu): 1})
        if bosons.apply(first, f)[0] != bosons.apply(second, f)[0]:
            return False
    return True


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("polynomial", [
    [0, 0, 0, 1],
    [Fraction(1, 2), -3, 0, 2],
    [-6, 11, -6, 1],
    [1, 1, 1],
])
def test_residue_agrees_with_basis_decomposition(bosons, n, polynomial):
    assert acts_alike(bosons, bosons.build_Y(n, polynomial), bosons.build_Y_by_basis(n, polynomial))


@pytest.mark.parametrize("n,polynomial,difference", [
    (1, [0, 0, 0, 1], [1, -3, 3]),
    (2, [0, -1, 1], [-2, 2]),
    (0, [0, 0, 1], [-1, 2]),
])
def test_y_builder_respects_current_commutator(bosons, n, polynomial, difference):
    # [x^{-1}, x^{-n}P(D)] = x^{-n-1}(P(D) - P(D-1))
    left = commutator(bosons.current(1), bosons.build_Y(n, polynomial))
    assert left == bosons.build_Y(n + 1, difference)


def test_build_y_rejects_bad_input(bosons):
    with pytest.raises(DomainException):
        bosons.build_Y(1, [0, 0, 0, 0, 1])
    with pytest.raises(DomainException):
        bosons.build_Y(-1, [1])
    with pytest.raises(DomainException):
        bosons.build_Y_by_basis(0, [0, 0, 0, 1])
    assert not bosons.build_Y(0, [0, 0, 0, 1]).is_zero()


def test_constraint_operators_closed_form(bosons):
    beta = Fraction(1, 7)
    assert bosons.build_R(1, 0) == bosons.current(1)
    assert bosons.build_R(1, beta) == bosons.current(1) - bosons.build_L(1).scale(beta)
    assert bosons.build_R(2, beta) == (bosons.current(2) - bosons.build_L(2).scale(2 * beta)
                                       + bosons.build_M(2).scale(beta * beta))
    with pytest.raises(DomainException):
        bosons.build_R(4, beta)


@pytest.mark.parametrize("beta", BETAS)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_tau_satisfies_constraints(bosons, beta, n):
    tau = bosons.build_tau_mm(beta, TIMES)
    report = bosons.verify_constraints(tau, n)
    assert report.ok, report.first_failure
    assert report.checked > 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_constraints_without_a_middle_time(bosons, n):
    tau = bosons.build_tau_mm(Fraction(1, 7), {1: Fraction(2, 3), 3: Fraction(-1, 5)})
    assert bosons.verify_constraints(tau, n).ok


def test_constraints_at_zero_beta(bosons):
    tau = bosons.build_tau_mm(0, TIMES)
    for n in (1, 2, 3):
        assert bosons.verify_constraints(tau, n).ok


def test_wrong_times_fail(bosons):
    tau = bosons.build_tau_mm(Fraction(1, 7), TIMES)
    tau.times = {1: Fraction(2), 2: Fraction(1, 2)}
    report = bosons.verify_constraints(tau, 1)
    assert not report.ok
    assert "monomial" in report.first_failure


def test_tau_has_unit_constant(bosons):
    tau = bosons.build_tau_mm(Fraction(1, 7), TIMES)
    assert tau.series.constant_term() == 1


def test_tau_pole():
    with pytest.raises(PoleException):
        BosonConstraints(6).build_tau_mm(Fraction(1, 5), {1: 1})


@pytest.mark.parametrize("hbar", [Fraction(1, 7), Fraction(-2, 9)])
def test_cut_and_join(bosons, hbar):
    report = bosons.verify_cut_and_join(hbar)
    assert report.ok, report.first_failure


def test_cut_and_join_needs_nonzero_hbar(bosons):
    with pytest.raises(PoleException):
        bosons.verify_cut_and_join(0)


@pytest.mark.parametrize("first,second", [(1, 2), (1, 3), (2, 3)])
def test_symbolic_commutators_vanish(first, second):
    bosons = BosonConstraints(4, RatFuncHbarRing())
    report = bosons.verify_commutator(first, second)
    assert report.ok, report.first_failure


def test_solution_space():
    bosons = BosonConstraints(4)
    two = bosons.constraint_solution_space([1, 2], 3, Fraction(1, 7), TIMES)
    assert two["dimension"] == 2
    assert two["contains_tau"]
    three = bosons.constraint_solution_space([1, 2, 3], 3, Fraction(1, 7), TIMES)
    assert three["dimension"] == 1
    assert three["contains_tau"]
    with pytest.raises(DomainException):
        bosons.constraint_solution_space([1], 5, Fraction(1, 7), TIMES)


def test_from_config():
    assert BosonConstraints.from_config({"constraints": {"default_truncation": 5}}).truncation == 5
    assert BosonConstraints.from_config({}, truncation=3).truncation == 3
    with pytest.raises(DomainException):
        BosonConstraints(0)


def test_build_LM_pair(bosons):
    L0, M0 = bosons.build_LM(0)
    assert L0 == bosons.build_L(0)
    assert M0 == bosons.build_M(0)
    assert L0.terms[(-1, 1)] == 1


def naive_action(bosons, word, mu):
    """Ĵ_k 依次作用（最右先作用）：k > 0 求导，k < 0 乘 |k|·t_|k|"""
    terms = {bosons.monomial(mu): Fraction(1)}
    for k in reversed(word):
        step = {}
        for exponents, value in terms.items():
            exponents = list(exponents)
            if k > 0:
                if not exponents[k - 1]:
                    continue
                value *= exponents[k - 1]
                exponents[k - 1] -= 1
            else:
                value *= -k
                exponents[-k - 1] += 1
            step[tuple(exponents)] = step.get(tuple(exponents), 0) + value
        terms = step
    return bosons.polynomial(terms)


@pytest.mark.parametrize("word", [
    (-1, -2), (-2, -1, -1), (-3, -1, -2),
    (1, 2), (2, 1, 1), (3, 1), (1, 1, 2),
])
def test_normal_ordering_matches_naive_composition(word):
    bosons = BosonConstraints(5)
    composed = bosons.current(word[0])
    for k in word[1:]:
        composed = composed * bosons.current(k)
    assert composed == BosonOperator(bosons.ring, {word: 1})
    for mu in bosons.basis(bosons.truncation):
        image, _ = bosons.apply(composed, bosons.polynomial({bosons.monomial(mu): 1}))
        assert image == naive_action(bosons, word, mu)
