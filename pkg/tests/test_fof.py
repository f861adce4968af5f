import random

import pytest

from ogp.errors import FofSemanticError, FofSyntaxError, HornError, IncludeError
from ogp.fof import (
    And, AnnotatedFormula, Atom, Equality, Exists, FofDocument, Forall, Function, Iff, Implies,
    Not, Or, Variable, load_fof, parse_fof, print_fof, resolve_includes, to_horn_rules,
)
from ogp.fof.parser import tokenize
from ogp.fof.syntax import depth

from .helpers import AXIOM_PATHS, FOF_DIR, fof_corpus


def c(symbol):
    return Function(symbol)


class TestParse:
    def test_single_hypothesis(self):
        doc = parse_fof('fof(h1,hypothesis,midp(m,a,b)).')
        assert doc.includes == ()
        assert len(doc.formulas) == 1
        annotated = doc.formulas[0]
        assert annotated.role == 'hypothesis'
        assert annotated.formula == Atom('midp', (c('m'), c('a'), c('b')))
        assert annotated.formula.arity == 3

    def test_include_and_conjecture(self):
        doc = parse_fof("include('axioms/ddfa.ax'). fof(goal,conjecture,para(p,q,r,s)).")
        assert doc.includes == ('axioms/ddfa.ax',)
        assert doc.conjecture.name == 'goal'

    def test_quantified_implication(self):
        doc = parse_fof('fof(g,conjecture,![X]: (coll(X,a,b) => coll(X,b,a))).')
        formula = doc.formulas[0].formula
        assert isinstance(formula, Forall)
        assert formula.variables == ('X',)
        assert formula.body == Implies(Atom('coll', (Variable('X'), c('a'), c('b'))),
                                       Atom('coll', (Variable('X'), c('b'), c('a'))))

    def test_missing_terminator_reports_end_of_input(self):
        with pytest.raises(FofSyntaxError) as info:
            parse_fof('fof(h1,hypothesis,midp(m,a,b)')
        assert 'end of input' in str(info.value)
        assert info.value.line == 1

    def test_error_position_is_one_based(self):
        text = 'fof(h1,hypothesis,midp(m,a,b)).\nfof(h2 hypothesis,p).'
        with pytest.raises(FofSyntaxError) as info:
            parse_fof(text, source='bad.fof')
        assert (info.value.line, info.value.column) == (2, 8)
        assert str(info.value).startswith('bad.fof:2:8:')

    @pytest.mark.parametrize('path', fof_corpus(), ids=lambda p: p.name)
    def test_corrupted_token_is_located(self, path):
        text = path.read_text(encoding='utf-8')
        starts = [0]
        for line in text.split('\n'):
            starts.append(starts[-1] + len(line) + 1)
        tokens = [t for t in tokenize(text) if t.kind not in ('EOF', 'QUOTED')]
        rng = random.Random(path.name)
        for token in rng.sample(tokens, min(10, len(tokens))):
            offset = starts[token.line - 1] + token.column - 1 + rng.randrange(len(token.value))
            with pytest.raises(FofSyntaxError) as info:
                parse_fof(text[:offset] + '#' + text[offset + 1:])
            assert info.value.line == token.line
            assert token.column <= info.value.column < token.column + len(token.value)

    def test_precedence(self):
        formula = parse_fof('fof(f,axiom,a | b & ~c => d).').formulas[0].formula
        assert formula == Implies(Or((Atom('a'), And((Atom('b'), Not(Atom('c')))))), Atom('d'))

    def test_equalities(self):
        formula = parse_fof('fof(f,axiom,![X]: (X = a & f(X) != b)).').formulas[0].formula
        assert formula.body == And((Equality(Variable('X'), c('a')),
                                    Equality(Function('f', (Variable('X'),)), c('b'), negated=True)))

    def test_implications_do_not_chain(self):
        with pytest.raises(FofSyntaxError, match='without parentheses'):
            parse_fof('fof(f,axiom,a => b => c).')

    def test_duplicate_name(self):
        with pytest.raises(FofSemanticError, match='duplicate formula name'):
            parse_fof('fof(h,hypothesis,p). fof(h,hypothesis,q).')

    def test_two_conjectures(self):
        with pytest.raises(FofSemanticError, match='more than one conjecture'):
            parse_fof('fof(g1,conjecture,p). fof(g2,conjecture,q).')

    def test_unknown_role(self):
        with pytest.raises(FofSemanticError, match='unknown role'):
            parse_fof('fof(h,lemma,p).')

    def test_conjecture_rejected_in_axiom_files(self):
        with pytest.raises(FofSemanticError):
            parse_fof('fof(g,conjecture,p).', allow_conjecture=False)

    def test_absolute_include_rejected(self):
        with pytest.raises(FofSyntaxError, match='relative'):
            parse_fof("include('/etc/axioms.ax').")

    def test_bare_variable_is_not_a_formula(self):
        with pytest.raises(FofSyntaxError):
            parse_fof('fof(f,axiom,![X]: X).')


class TestPrint:
    def test_empty_document(self):
        assert print_fof(FofDocument()) == ''

    def test_include_first(self):
        doc = parse_fof("fof(h1,hypothesis,p(a)). include('axioms/ddfa.ax'). fof(goal,conjecture,q(a)).")
        lines = print_fof(doc).splitlines()
        assert lines == ["include('axioms/ddfa.ax').", 'fof(h1,hypothesis,p(a)).', 'fof(goal,conjecture,q(a)).']

    @pytest.mark.parametrize('path', fof_corpus(), ids=lambda p: p.name)
    def test_corpus_round_trip(self, path):
        doc = parse_fof(path.read_text(encoding='utf-8'))
        again = parse_fof(print_fof(doc))
        assert again == doc
        assert print_fof(again) == print_fof(doc)

    def test_nested_conjunction_keeps_its_shape(self):
        doc = FofDocument((), (AnnotatedFormula('f', 'axiom', And((And((Atom('a'), Atom('b'))), Atom('c')))),))
        assert parse_fof(print_fof(doc)) == doc


def random_term(rng, variables, level=0):
    roll = rng.random()
    if variables and roll < 0.35:
        return Variable(rng.choice(variables))
    if level < 2 and roll > 0.8:
        return Function(rng.choice(['f', 'g']), tuple(random_term(rng, variables, level + 1)
                                                     for _ in range(rng.randint(1, 2))))
    return Function(rng.choice(['a', 'b', 'c', 'm']))


def random_formula(rng, budget, variables):
    if budget <= 1 or rng.random() < 0.2:
        if rng.random() < 0.2:
            return Equality(random_term(rng, variables), random_term(rng, variables), rng.random() < 0.5)
        arity = rng.randint(0, 3)
        return Atom(rng.choice(['p', 'coll', 'para', 'q_1']),
                    tuple(random_term(rng, variables) for _ in range(arity)))
    kind = rng.choice(['not', 'and', 'or', 'implies', 'iff', 'forall', 'exists'])
    if kind == 'not':
        return Not(random_formula(rng, budget - 1, variables))
    if kind in ('and', 'or'):
        operands = tuple(random_formula(rng, budget - 1, variables) for _ in range(rng.randint(2, 3)))
        return And(operands) if kind == 'and' else Or(operands)
    if kind in ('implies', 'iff'):
        lhs = random_formula(rng, budget - 1, variables)
        rhs = random_formula(rng, budget - 1, variables)
        return Implies(lhs, rhs) if kind == 'implies' else Iff(lhs, rhs)
    names = tuple(rng.sample(['X', 'Y', 'Z', 'W1'], rng.randint(1, 2)))
    body = random_formula(rng, budget - 1, sorted(set(variables) | set(names)))
    return Forall(names, body) if kind == 'forall' else Exists(names, body)


def test_random_formulas_round_trip():
    rng = random.Random(20260118)
    for i in range(500):
        formula = random_formula(rng, 6, [])
        assert depth(formula) <= 6
        doc = FofDocument((), (AnnotatedFormula(f'f{i}', 'axiom', formula),))
        text = print_fof(doc)
        assert parse_fof(text) == doc, text


class TestIncludes:
    def test_flattens_bundled_axioms(self):
        doc = load_fof(FOF_DIR / 'parallel_chain.fof', AXIOM_PATHS)
        assert doc.includes == ()
        assert len(doc.formulas) == 16
        assert doc.names()[:12] == tuple(f'd{i}' for i in range(1, 13))
        assert doc.names()[12:] == ('h1', 'h2', 'h3', 'goal')

    def test_no_includes_is_identity(self):
        doc = parse_fof('fof(h,hypothesis,p).')
        assert resolve_includes(doc, AXIOM_PATHS) is doc

    def test_missing_include(self, tmp_path):
        doc = parse_fof("include('nowhere/missing.ax').")
        with pytest.raises(IncludeError, match='nowhere/missing.ax'):
            resolve_includes(doc, [tmp_path])

    def test_cycle(self, tmp_path):
        (tmp_path / 'a.ax').write_text("include('b.ax').\nfof(a1,axiom,p).\n")
        (tmp_path / 'b.ax').write_text("include('a.ax').\nfof(b1,axiom,q).\n")
        with pytest.raises(IncludeError, match='cycle'):
            load_fof(tmp_path / 'a.ax')

    def test_name_collision(self, tmp_path):
        (tmp_path / 'x.ax').write_text('fof(h1,axiom,p).\n')
        doc = parse_fof("include('x.ax'). fof(h1,hypothesis,q).")
        with pytest.raises(IncludeError, match='collision'):
            resolve_includes(doc, [tmp_path])

    def test_relative_to_including_file(self, tmp_path):
        (tmp_path / 'rules.ax').write_text('fof(r,axiom,p).\n')
        (tmp_path / 'problem.fof').write_text("include('rules.ax').\nfof(goal,conjecture,p).\n")
        assert load_fof(tmp_path / 'problem.fof').names() == ('r', 'goal')


class TestHorn:
    def test_rule_with_two_premises(self):
        doc = parse_fof('fof(r3,axiom,![M,N,A,B,C]: ((midp(M,A,B) & midp(N,A,C)) => para(M,N,B,C))).'
                        'fof(goal,conjecture,p).')
        problem = to_horn_rules(doc)
        assert len(problem.rules) == 1
        assert len(problem.rules[0].premises) == 2
        assert problem.rules[0].conclusion.predicate == 'para'

    def test_ground_fact(self):
        problem = to_horn_rules(parse_fof('fof(h,hypothesis,midp(m,a,b)). fof(goal,conjecture,p).'))
        assert [f.name for f in problem.facts] == ['h']
        assert problem.goal == Atom('p')

    def test_not_range_restricted(self):
        doc = parse_fof('fof(bad,axiom,![X,Y]: (coll(X,a,b) => para(X,Y,a,b))). fof(goal,conjecture,p).')
        with pytest.raises(HornError, match='Y') as info:
            to_horn_rules(doc)
        assert info.value.name == 'bad'

    def test_guards_are_not_premises(self):
        doc = load_fof(FOF_DIR / 'midline.fof', AXIOM_PATHS)
        d3 = next(rule for rule in to_horn_rules(doc).rules if rule.id == 'd3')
        assert [p.predicate for p in d3.premises] == ['midp', 'midp']
        assert d3.guards == ((Variable('B'), Variable('C')),)

    def test_equality_outside_fragment(self):
        with pytest.raises(HornError, match='equality'):
            to_horn_rules(parse_fof('fof(e,axiom,a = b). fof(goal,conjecture,p).'))

    def test_disjunction_outside_fragment(self):
        with pytest.raises(HornError):
            to_horn_rules(parse_fof('fof(r,axiom,![X]: (p(X) => q(X) | r(X))). fof(goal,conjecture,p).'))

    def test_unresolved_include(self):
        with pytest.raises(HornError, match='include'):
            to_horn_rules(parse_fof("include('axioms/ddfa.ax'). fof(goal,conjecture,p)."))

    def test_missing_conjecture(self):
        with pytest.raises(HornError, match='no conjecture'):
            to_horn_rules(parse_fof('fof(h,hypothesis,p).'))
