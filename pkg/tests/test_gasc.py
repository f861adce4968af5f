import json
import random

import pytest

from ogp.errors import GascError
from ogp.gasc import cli as gasc_cli
from ogp.gasc.harness import (
    CompetitionConfig, ResultMatrix, emit, load_competition_config, resolve_problems, run_competition,
    score, scores_markdown,
)
from ogp.models import ProverStatus, RunReport

from .helpers import CONJECTURES, FOF_DIR, stub_spec

PROBLEMS = [str(CONJECTURES / 'varignon.gcl'), str(CONJECTURES / 'midline.jgex'),
            str(FOF_DIR / 'not_derivable.fof')]


def report(status, time_ms):
    return RunReport(prover='x', status=status, time_ms=time_ms)


def matrix_of(rows):
    """rows: {prover: [(status, time_ms), ...]} over problems p0, p1, ..."""
    provers = list(rows)
    width = len(next(iter(rows.values())))
    matrix = ResultMatrix(provers, [f'p{i}' for i in range(width)])
    for prover, cells in rows.items():
        for i, (status, time_ms) in enumerate(cells):
            matrix.cells[(prover, f'p{i}')] = report(status, time_ms)
    return matrix


def competition(tmp_path, provers, problems=PROBLEMS, **extra):
    return CompetitionConfig(provers=provers, problems=problems, per_problem_timeout=1000,
                             output_dir=str(tmp_path / 'out'), **extra)


class TestRun:
    def test_two_provers_three_problems(self, make_manager, tmp_path):
        manager = make_manager(stub_spec('sleeper', 'sleeper.py', '--seconds', '10'))
        config = competition(tmp_path, ['ddfa', 'sleeper'])
        matrix = run_competition(config, manager.registry, manager.prover)

        assert matrix.complete
        assert len(matrix.cells) == 6
        assert matrix.problems == ['varignon', 'midline', 'not_derivable']
        assert [matrix.cell('ddfa', q).status for q in matrix.problems] == [
            ProverStatus.PROVED, ProverStatus.PROVED, ProverStatus.UNKNOWN]
        assert all(matrix.cell('sleeper', q).status is ProverStatus.TIMEOUT for q in matrix.problems)
        assert len(list((tmp_path / 'out' / 'raw').iterdir())) == 6

        table = score(matrix)
        assert [(row.prover, row.solved, row.rank) for row in table] == [('ddfa', 2, 1), ('sleeper', 0, 2)]

    def test_statuses_are_repeatable(self, make_manager, tmp_path):
        manager = make_manager(stub_spec('vampire', 'szs_stub.py'))
        config = competition(tmp_path, ['ddfa', 'vampire'])
        first = run_competition(config, manager.registry, manager.prover)
        second = run_competition(config.model_copy(update={'jobs': 3}), manager.registry, manager.prover)
        assert {k: r.status for k, r in first.cells.items()} == {k: r.status for k, r in second.cells.items()}

    def test_unregistered_prover_fails_fast(self, make_manager, tmp_path):
        manager = make_manager()
        with pytest.raises(GascError, match='gclc'):
            run_competition(competition(tmp_path, ['ddfa', 'gclc']), manager.registry, manager.prover)
        assert not (tmp_path / 'out').exists()

    def test_repository_problem(self, make_manager, live_server, tmp_path):
        manager = make_manager()
        config = competition(tmp_path, ['ddfa'], problems=['GEO0002'])
        matrix = run_competition(config, manager.registry, manager.prover, live_server.endpoint)
        assert matrix.cell('ddfa', 'GEO0002').status is ProverStatus.PROVED
        assert (tmp_path / 'out' / 'problems' / 'GEO0002.fof').is_file()

    def test_unreadable_problem(self, tmp_path):
        with pytest.raises(GascError, match='neither'):
            resolve_problems(competition(tmp_path, ['ddfa'], problems=['nowhere.gcl']))

    def test_label_clash(self, tmp_path):
        other = tmp_path / 'varignon.fof'
        other.write_text((FOF_DIR / 'varignon.fof').read_text())
        with pytest.raises(GascError, match='varignon'):
            resolve_problems(competition(tmp_path, ['ddfa'], problems=[PROBLEMS[0], str(other)]))


def oracle_ranks(matrix):
    totals = {}
    for prover in matrix.provers:
        cells = [matrix.cell(prover, q) for q in matrix.problems]
        solved = [c for c in cells if c.status in (ProverStatus.PROVED, ProverStatus.DISPROVED)]
        totals[prover] = (len(solved), sum(c.time_ms for c in solved))
    ranks = {}
    for prover, (solved, time_ms) in totals.items():
        ranks[prover] = 1 + sum(1 for s, t in totals.values() if s > solved or (s == solved and t < time_ms))
    return totals, ranks


class TestScore:
    def test_fewer_ms_wins_tie_on_solved(self):
        matrix = matrix_of({
            'B': [(ProverStatus.PROVED, 600), (ProverStatus.PROVED, 600), (ProverStatus.UNKNOWN, 5)],
            'A': [(ProverStatus.PROVED, 450), (ProverStatus.PROVED, 450), (ProverStatus.TIMEOUT, 1000)],
        })
        table = score(matrix)
        assert [(row.prover, row.time_ms, row.rank) for row in table] == [('A', 900, 1), ('B', 1200, 2)]

    def test_unsolved_time_does_not_count(self):
        matrix = matrix_of({'A': [(ProverStatus.PROVED, 10), (ProverStatus.TIMEOUT, 60000)]})
        assert score(matrix)[0].time_ms == 10

    def test_disproved_counts_as_solved(self):
        matrix = matrix_of({'A': [(ProverStatus.DISPROVED, 10)], 'B': [(ProverStatus.ERROR, 1)]})
        assert [(row.prover, row.solved) for row in score(matrix)] == [('A', 1), ('B', 0)]

    def test_all_unknown_share_first_rank(self):
        matrix = matrix_of({name: [(ProverStatus.UNKNOWN, 3)] * 2 for name in ('c', 'a', 'b')})
        table = score(matrix)
        assert [row.rank for row in table] == [1, 1, 1]
        assert [row.prover for row in table] == ['a', 'b', 'c']

    def test_shared_rank_skips(self):
        matrix = matrix_of({
            'a': [(ProverStatus.PROVED, 5)],
            'b': [(ProverStatus.PROVED, 5)],
            'c': [(ProverStatus.UNKNOWN, 0)],
        })
        assert [row.rank for row in score(matrix)] == [1, 1, 3]

    def test_random_matrices(self):
        rng = random.Random(100)
        statuses = list(ProverStatus)
        for _ in range(100):
            provers = [f'p{i}' for i in range(rng.randint(1, 6))]
            width = rng.randint(1, 8)
            matrix = matrix_of({p: [(rng.choice(statuses), rng.choice([0, 5, 10, 250]))
                                    for _ in range(width)] for p in provers})
            totals, ranks = oracle_ranks(matrix)
            table = score(matrix)
            assert sorted(row.prover for row in table) == sorted(provers)
            for row in table:
                assert (row.solved, row.time_ms) == totals[row.prover]
                assert row.rank == ranks[row.prover]
            keys = [(-row.solved, row.time_ms) for row in table]
            assert keys == sorted(keys)


class TestEmit:
    @pytest.fixture
    def matrix(self):
        return matrix_of({
            'ddfa': [(ProverStatus.PROVED, 4), (ProverStatus.PROVED, 7), (ProverStatus.UNKNOWN, 2)],
            'sleeper': [(ProverStatus.TIMEOUT, 1003)] * 3,
        })

    def test_csv(self, matrix, tmp_path):
        written = emit(score(matrix), matrix, str(tmp_path))
        results, scores = (p.read_bytes() for p in written)
        lines = results.decode().splitlines()
        assert len(lines) == 7
        assert lines[0] == 'prover,problem,status,time_ms'
        assert lines[1] == 'ddfa,p0,Proved,4'
        assert lines[-1] == 'sleeper,p2,Timeout,1003'
        assert b'\r' not in results
        assert scores.decode().splitlines() == ['rank,prover,solved,time_ms', '1,ddfa,2,11', '2,sleeper,0,0']

        emit(score(matrix), matrix, str(tmp_path))
        assert [p.read_bytes() for p in written] == [results, scores]

    def test_markdown(self, matrix, tmp_path):
        written = emit(score(matrix), matrix, str(tmp_path), 'markdown')
        assert written[1].name == 'scores.md'
        text = written[1].read_text()
        assert text == scores_markdown(score(matrix), matrix)
        assert '| 1 | ddfa | 2 | 11 |' in text
        assert 'solved / 3' in text

    def test_unknown_format(self, matrix, tmp_path):
        with pytest.raises(GascError, match='format'):
            emit(score(matrix), matrix, str(tmp_path), 'html')


class TestConfig:
    def write(self, tmp_path, data):
        path = tmp_path / 'gasc.json'
        path.write_text(json.dumps(data))
        return str(path)

    def test_load(self, tmp_path):
        config = load_competition_config(self.write(tmp_path, {
            'provers': ['ddfa'], 'problems': PROBLEMS, 'per_problem_timeout': 5000,
            'output_dir': str(tmp_path / 'out')}))
        assert config.jobs == 1
        assert config.format == 'csv'

    @pytest.mark.parametrize('data, message', [
        ({'provers': [], 'problems': ['a.fof'], 'per_problem_timeout': 1, 'output_dir': 'o'}, 'provers'),
        ({'provers': ['ddfa', 'ddfa'], 'problems': ['a.fof'], 'per_problem_timeout': 1,
          'output_dir': 'o'}, 'listed twice'),
        ({'provers': ['ddfa'], 'problems': ['a.fof'], 'per_problem_timeout': 0, 'output_dir': 'o'},
         'per_problem_timeout'),
        ({'provers': ['ddfa'], 'problems': ['a.fof'], 'per_problem_timeout': 1}, 'output_dir'),
        ({'provers': ['ddfa'], 'problems': ['a.fof'], 'per_problem_timeout': 1, 'output_dir': 'o',
          'memory': 512}, 'memory'),
        ({'provers': ['ddfa'], 'problems': ['a.fof'], 'per_problem_timeout': 1, 'output_dir': 'o',
          'format': 'html'}, 'format'),
    ])
    def test_invalid(self, tmp_path, data, message):
        with pytest.raises(GascError, match=message):
            load_competition_config(self.write(tmp_path, data))

    def test_missing_file(self, tmp_path):
        with pytest.raises(GascError, match='cannot read'):
            load_competition_config(str(tmp_path / 'none.json'))


class TestCommand:
    def test_run(self, tmp_path, monkeypatch, capsys):
        monkeypatch.chdir(tmp_path)
        path = tmp_path / 'gasc.json'
        path.write_text(json.dumps({'provers': ['ddfa'], 'problems': PROBLEMS[:2],
                                    'per_problem_timeout': 10000, 'output_dir': 'out'}))
        assert gasc_cli.main([str(path), '--format', 'markdown']) == 0
        assert (tmp_path / 'out' / 'results.csv').is_file()
        assert '| 1 | ddfa | 2 |' in (tmp_path / 'out' / 'scores.md').read_text()
        assert 'ddfa' in capsys.readouterr().out

    def test_bad_jobs(self, tmp_path, capsys):
        path = tmp_path / 'gasc.json'
        path.write_text(json.dumps({'provers': ['ddfa'], 'problems': PROBLEMS[:1],
                                    'per_problem_timeout': 1000, 'output_dir': str(tmp_path / 'out')}))
        assert gasc_cli.main([str(path), '--jobs', '0']) == 1
        assert 'jobs' in capsys.readouterr().err

    def test_unregistered(self, tmp_path, monkeypatch, capsys):
        monkeypatch.chdir(tmp_path)
        path = tmp_path / 'gasc.json'
        path.write_text(json.dumps({'provers': ['vampire'], 'problems': PROBLEMS[:1],
                                    'per_problem_timeout': 1000, 'output_dir': 'out'}))
        assert gasc_cli.main([str(path)]) == 1
        assert 'vampire' in capsys.readouterr().err
