import random
import time

import pytest

from ogp.errors import PortfolioError
from ogp.fof import FofDocument, load_fof, parse_fof
from ogp.models import ProverStatus
from ogp.services import (
    DEFAULT_POLICY, PolicyTable, PortfolioPlan, extract_features, load_policy, select, split_budget,
)
from ogp.services.registry import build_registry

from .helpers import AXIOM_PATHS, FOF_DIR, stub_spec


def varignon():
    return load_fof(FOF_DIR / 'varignon.fof', AXIOM_PATHS)


def recorded(path):
    return path.read_text().splitlines() if path.exists() else []


class TestFeatures:
    def test_varignon(self):
        features = extract_features(varignon())
        assert features.hypothesis_count == 4
        assert features.dd_vocabulary_only
        assert features.predicate_multiset == {'midp': 4, 'para': 1}
        assert not features.has_quantifiers
        assert features.max_formula_depth == 1

    def test_empty_document(self):
        features = extract_features(FofDocument())
        assert features.hypothesis_count == 0
        assert features.predicate_multiset == {}
        assert features.dd_vocabulary_only
        assert features.max_formula_depth == 0

    def test_foreign_predicate(self):
        doc = parse_fof('fof(h1,hypothesis,between(a,b,c)). fof(goal,conjecture,coll(a,b,c)).')
        assert not extract_features(doc).dd_vocabulary_only

    def test_quantified_hypothesis(self):
        doc = parse_fof('fof(h1,hypothesis,![X]: (p(X) => q(X))). fof(goal,conjecture,q(a)).')
        features = extract_features(doc)
        assert features.has_quantifiers
        assert features.max_formula_depth == 3

    def test_order_insensitive(self):
        doc = varignon()
        hypotheses = list(doc.by_role('hypothesis'))
        rest = [f for f in doc.formulas if f.role != 'hypothesis']
        rng = random.Random(7)
        registry = build_registry([stub_spec('vampire', 'szs_stub.py')])
        expected = select(extract_features(doc), registry, DEFAULT_POLICY, 60000)
        for _ in range(10):
            rng.shuffle(hypotheses)
            shuffled = FofDocument((), tuple(rest[:-1] + hypotheses + rest[-1:]))
            assert extract_features(shuffled) == extract_features(doc)
            assert select(extract_features(shuffled), registry, DEFAULT_POLICY, 60000) == expected


class TestSelect:
    def test_dd_problem_prefers_ddfa(self):
        registry = build_registry([stub_spec('vampire', 'szs_stub.py')])
        plan = select(extract_features(varignon()), registry, DEFAULT_POLICY, 60000)
        assert plan.slots == (('ddfa', 36000), ('vampire', 24000))

    def test_externals_first_otherwise(self):
        registry = build_registry([stub_spec('vampire', 'szs_stub.py'), stub_spec('eprover', 'szs_stub.py')])
        doc = parse_fof('fof(h1,hypothesis,![X]: between(X,a,b)). fof(goal,conjecture,between(c,a,b)).')
        plan = select(extract_features(doc), registry, DEFAULT_POLICY, 10001)
        assert plan.provers() == ['vampire', 'eprover', 'ddfa']
        assert plan.slots[0][1] == 6000
        assert plan.total_ms == 10001

    def test_single_prover(self):
        doc = parse_fof('fof(h1,hypothesis,![X]: between(X,a,b)). fof(goal,conjecture,between(c,a,b)).')
        plan = select(extract_features(doc), build_registry([]), DEFAULT_POLICY, 60000)
        assert plan.slots == (('ddfa', 60000),)

    def test_no_registered_prover(self):
        policy = PolicyTable(default=['gclc', 'coqam'])
        with pytest.raises(PortfolioError):
            select(extract_features(varignon()), build_registry([]), policy, 60000)

    def test_budget_conservation(self):
        rng = random.Random(11)
        for _ in range(200):
            count = rng.randint(1, 6)
            timeout = rng.randint(count, 120000)
            budgets = split_budget(count, timeout)
            assert len(budgets) == count
            assert sum(budgets) <= timeout
            assert all(b > 0 for b in budgets)

    @pytest.mark.parametrize('timeout', [1, 2])
    def test_tiny_budget_keeps_preferred_prover(self, timeout):
        registry = build_registry([stub_spec('vampire', 'szs_stub.py')])
        plan = select(extract_features(varignon()), registry, DEFAULT_POLICY, timeout)
        assert plan.provers()[0] == 'ddfa'
        assert plan.slots[0][1] >= 1
        assert plan.total_ms <= timeout

    def test_policy_file(self, tmp_path):
        path = tmp_path / 'ogp-policy.json'
        path.write_text('{"rules": [{"when": [{"feature": "hypothesis_count", "op": ">", "value": 3}],'
                        ' "prefer": ["vampire"]}], "default": ["ddfa"]}')
        policy = load_policy(path)
        registry = build_registry([stub_spec('vampire', 'szs_stub.py')])
        assert select(extract_features(varignon()), registry, policy, 1000).slots == (('vampire', 1000),)

    def test_bad_policy_file(self, tmp_path):
        path = tmp_path / 'ogp-policy.json'
        path.write_text('{"rules": [], "default": []}')
        with pytest.raises(PortfolioError, match='default'):
            load_policy(path)


class TestExecute:
    def test_ddfa_alone(self, make_manager):
        manager = make_manager()
        plan = manager.portfolio.plan(varignon(), 60000)
        report = manager.portfolio.execute(plan, str(FOF_DIR / 'varignon.fof'), 'fof')
        assert report.status is ProverStatus.PROVED
        assert report.prover == 'ddfa'
        assert report.detail.startswith('won by ddfa')

    def test_stops_at_first_verdict(self, make_manager, tmp_path):
        record = tmp_path / 'calls.txt'
        manager = make_manager(stub_spec('first', 'szs_stub.py', '--record', str(record)),
                               stub_spec('second', 'szs_stub.py', '--record', str(record)))
        plan = PortfolioPlan((('first', 5000), ('second', 5000)))
        report = manager.portfolio.execute(plan, str(FOF_DIR / 'varignon.fof'), 'fof')
        assert report.prover == 'first'
        assert len(recorded(record)) == 1

    def test_sleeper_then_ddfa(self, make_manager, tmp_path):
        manager = make_manager(stub_spec('sleeper', 'sleeper.py', '--seconds', '10'))
        plan = PortfolioPlan((('sleeper', 1000), ('ddfa', 59000)))
        report = manager.portfolio.execute(plan, str(FOF_DIR / 'varignon.fof'), 'fof')
        assert report.status is ProverStatus.PROVED
        assert report.prover == 'ddfa'
        assert report.time_ms >= 1000
        assert 'sleeper=Timeout' in report.detail

    def test_all_stubs_undecided(self, make_manager):
        manager = make_manager(stub_spec('a', 'szs_stub.py', '--status', 'GaveUp'),
                               stub_spec('b', 'szs_stub.py', '--status', 'Unknown'))
        plan = PortfolioPlan((('a', 5000), ('b', 5000)))
        report = manager.portfolio.execute(plan, str(FOF_DIR / 'varignon.fof'), 'fof')
        assert report.status is ProverStatus.UNKNOWN
        assert report.prover == 'portfolio'
        assert 'a=Unknown' in report.detail
        assert 'b=Unknown' in report.detail

    def test_parallel_cancels_losers(self, make_manager):
        manager = make_manager(stub_spec('sleeper', 'sleeper.py', '--seconds', '10'))
        plan = PortfolioPlan((('sleeper', 5000), ('ddfa', 5000)))
        started = time.monotonic()
        report = manager.portfolio.execute(plan, str(FOF_DIR / 'varignon.fof'), 'fof', parallel=True)
        assert report.status is ProverStatus.PROVED
        assert report.prover == 'ddfa'
        assert 'sleeper=Timeout' in report.detail
        assert time.monotonic() - started < 3


def test_manager_wiring(make_manager):
    manager = make_manager(stub_spec('vampire', 'szs_stub.py'))
    assert manager.registry.names() == ['ddfa', 'vampire']
    assert manager.prover.registry is manager.registry
    assert manager.portfolio.prover_service is manager.prover
    assert set(manager.services) == {'registry', 'prover', 'portfolio'}
