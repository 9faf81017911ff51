import pytest

from hurwitzkit.core.exceptions import DomainException
from hurwitzkit.core.models import Partition
from hurwitzkit.services.acceptance import AcceptanceSuite, catalan, w_table


@pytest.fixture
def suite(engine, oracle, curves, config):
    return AcceptanceSuite(engine, oracle, curves, config, quick=True)


def test_catalan():
    assert [catalan(m) for m in range(5)] == [1, 1, 2, 5, 14]


def test_w_table_closed_form():
    table = w_table(5, 2)
    assert table.to_json() == {"3,1,1": "2", "2,2,1": "1", "1,1,1,1,1": "10"}
    assert w_table(3, 3).coefficient(Partition.of(2, 2, 2)) == 0
    with pytest.raises(DomainException):
        w_table(5, 4)


def test_runner_names(suite):
    assert list(suite.runners()) == [
        "jucys_correspondence", "w_table", "oracle_character", "block_identities", "hypergeometric",
        "quantum_curves", "constraints", "cut_and_join", "elsv", "lascoux_thibon",
    ]


@pytest.mark.parametrize("name", ["jucys_correspondence", "w_table", "block_identities", "lascoux_thibon"])
def test_quick_checks_pass(suite, name):
    [result] = suite.run([name])
    assert result.method == name
    assert result.agrees, result.value


def test_unknown_check(suite):
    with pytest.raises(DomainException):
        suite.run(["no_such_check"])


@pytest.mark.slow
def test_full_quick_suite(suite):
    failures = [result for result in suite.run() if not result.agrees]
    assert failures == []
