import pytest

from ogp.errors import (
    ConjectureSyntaxError, DuplicateGoalError, DuplicateLabelError, FrontendError, MissingGoalError,
    UndeclaredPointError, UnsupportedConstructError,
)
from ogp.frontends import (
    ConstructionStep, GoalStatement, StepKind, parse_conjecture, parse_conjecture_file, parse_gcl,
    parse_ggb_xml, parse_jgex,
)

from .helpers import CONJECTURES


def defined_before_use(conjecture):
    seen = set()
    for step in conjecture.steps:
        if not all(label in seen for label in step.inputs):
            return False
        seen.add(step.output)
    return all(label in seen for label in conjecture.goal.args)


class TestGcl:
    def test_midpoint(self):
        c = parse_gcl('point A\npoint B\nmidpoint M A B\nprove { midpoint M A B }')
        assert c.points == ('A', 'B', 'M')
        assert [s.kind for s in c.steps] == [StepKind.FREE_POINT, StepKind.FREE_POINT, StepKind.MIDPOINT]
        assert c.goal == GoalStatement('midpoint', ('M', 'A', 'B'))

    def test_varignon(self):
        c = parse_conjecture_file(CONJECTURES / 'varignon.gcl')
        assert c.name == 'varignon'
        assert len(c.steps) == 8
        assert c.steps[4] == ConstructionStep(StepKind.MIDPOINT, 'P', ('A', 'B'))
        assert c.goal == GoalStatement('parallel', ('P', 'Q', 'S', 'R'))
        assert defined_before_use(c)

    def test_undeclared_goal_point(self):
        with pytest.raises(UndeclaredPointError):
            parse_gcl('point B\npoint C\npoint D\nprove { parallel A B C D }')

    def test_undeclared_step_input(self):
        with pytest.raises(UndeclaredPointError) as info:
            parse_gcl('point A\nmidpoint M A B\nprove { collinear A M A }')
        assert info.value.line == 2

    def test_duplicate_label(self):
        with pytest.raises(DuplicateLabelError):
            parse_gcl('point A\npoint A\nprove { collinear A A A }')

    def test_missing_prove(self):
        with pytest.raises(MissingGoalError):
            parse_gcl('point A\npoint B\n')

    def test_second_prove(self):
        with pytest.raises(DuplicateGoalError):
            parse_gcl('point A\nprove { collinear A A A }\nprove { collinear A A A }')

    def test_bad_coordinate(self):
        with pytest.raises(ConjectureSyntaxError, match='number') as info:
            parse_gcl('point A 0 zero\nprove { collinear A A A }')
        assert str(info.value).startswith('line 1:')

    def test_wrong_arity(self):
        with pytest.raises(ConjectureSyntaxError):
            parse_gcl('point A\npoint B\nmidpoint M A\nprove { collinear A B M }')

    def test_drawing_commands_rejected(self):
        with pytest.raises(UnsupportedConstructError, match='drawsegment'):
            parse_gcl('point A\npoint B\ndrawsegment A B\nprove { collinear A B A }')

    def test_ratio_goal_unsupported(self):
        with pytest.raises(UnsupportedConstructError):
            parse_gcl('point A\npoint B\npoint C\nprove { ratio A B B C }')


class TestJgex:
    def test_degenerate_goal_is_accepted(self):
        c = parse_jgex('POINT A B C\nMIDPOINT M A B\nSHOW PARA M C A C')
        assert c.goal == GoalStatement('parallel', ('M', 'C', 'A', 'C'))

    def test_empty_show(self):
        with pytest.raises(MissingGoalError):
            parse_jgex('POINT A B C\nSHOW')

    def test_altitudes(self):
        c = parse_conjecture_file(CONJECTURES / 'altitudes.jgex')
        assert [s.kind for s in c.steps[3:]] == [
            StepKind.FOOT, StepKind.FOOT, StepKind.INTERSECT_LINES, StepKind.CIRCLE_CENTER3]
        assert c.steps[5] == ConstructionStep(StepKind.INTERSECT_LINES, 'H', ('A', 'D', 'B', 'E'))
        assert c.goal.predicate == 'perpendicular'
        assert defined_before_use(c)

    def test_unknown_show_predicate(self):
        with pytest.raises(UnsupportedConstructError, match='RATIO'):
            parse_jgex('POINT A B C D\nSHOW RATIO A B C D')


GGB_MIDPOINT = """<construction>
  <element type="point" label="A"/>
  <element type="point" label="B"/>
  <command name="Midpoint"><input a0="A" a1="B"/><output a0="M"/></command>
  <command name="Prove"><input a0="AreCollinear[A, M, B]"/></command>
</construction>"""


class TestGeoGebra:
    def test_midpoint(self):
        c = parse_ggb_xml(GGB_MIDPOINT)
        assert c.points == ('A', 'B', 'M')
        assert [s.kind for s in c.steps].count(StepKind.MIDPOINT) == 1
        assert c.goal == GoalStatement('collinear', ('A', 'M', 'B'))

    def test_missing_prove(self):
        text = GGB_MIDPOINT.replace('<command name="Prove"><input a0="AreCollinear[A, M, B]"/></command>', '')
        with pytest.raises(MissingGoalError):
            parse_ggb_xml(text)

    def test_unknown_command(self):
        text = GGB_MIDPOINT.replace('Midpoint', 'Reflect')
        with pytest.raises(UnsupportedConstructError, match='Reflect'):
            parse_ggb_xml(text)

    def test_malformed_xml(self):
        with pytest.raises(ConjectureSyntaxError, match='malformed XML'):
            parse_ggb_xml('<construction><element type="point" label="A">')

    def test_full_worksheet(self):
        c = parse_conjecture_file(CONJECTURES / 'varignon.ggb.xml')
        assert c.name == 'varignon'
        assert len(c.steps) == 8


@pytest.mark.parametrize('problem', ['varignon', 'midline'])
def test_dialects_agree(problem):
    gcl = parse_conjecture_file(CONJECTURES / f'{problem}.gcl')
    jgex = parse_conjecture_file(CONJECTURES / f'{problem}.jgex')
    ggb = parse_conjecture_file(CONJECTURES / f'{problem}.ggb.xml')
    assert gcl.same_construction(jgex)
    assert gcl.same_construction(ggb)


def test_dispatch_by_dialect():
    c = parse_conjecture('POINT A B\nMIDPOINT M A B\nSHOW MIDP M A B', 'jgex', name='m')
    assert c.name == 'm'
    with pytest.raises(FrontendError):
        parse_conjecture('', 'coqam')


def test_unknown_extension(tmp_path):
    path = tmp_path / 'problem.txt'
    path.write_text('point A\n')
    with pytest.raises(FrontendError):
        parse_conjecture_file(path)
