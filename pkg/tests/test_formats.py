'''
Model file grammar: parsing, canonical serialization and located errors.
'''

# native imports
from pathlib import Path

# pip imports
import pytest
from hypothesis import given
from hypothesis import settings
from hypothesis import strategies as st

# local imports
from hybridfg._interfaces._errors import DirectedCycle
from hybridfg._interfaces._errors import DuplicateName
from hybridfg._interfaces._errors import HybridFGError
from hybridfg._interfaces._errors import InvalidBayesNet
from hybridfg._interfaces._errors import NonDiscrete
from hybridfg._interfaces._errors import ParseError
from hybridfg._interfaces._errors import UnknownVariable
from hybridfg._shared.enums import ModelKind
from hybridfg.cli.commands import as_factor_graph
from hybridfg.cli.formats import parse_model
from hybridfg.cli.formats import serialize_model
from hybridfg.gallery import REFERENCE_MODELS
from hybridfg.inference.enumeration import joint_enumerate
from tests.conftest import GOLDEN_FILES
from tests.conftest import load_golden


GOLDEN_TWINS: list[tuple[str, str]] = [
  ('five_node.bn', 'five-node-bn'),
  ('five_node.mrf', 'five-node-mrf'),
  ('five_node_hybrid.fgx', 'five-node-hybrid'),
  ('mixture_of_experts.fgx', 'mixture-of-experts'),
  ('chain_component.fgx', 'chain-component'),
  ('factorized_conditional.fgx', 'factorized-conditional'),
  ('triangle.fgx', 'triangle'),
]
'''golden file -> gallery model describing the same distribution'''


def _error(text: str) -> HybridFGError:
  with pytest.raises(HybridFGError) as info:
    parse_model(text)
  return info.value


class TestGoldenFiles:
  @pytest.mark.parametrize('path', GOLDEN_FILES, ids=lambda p: p.name)
  def test_round_trip(self, path: Path) -> None:
    parsed = parse_model(path.read_text(encoding='utf-8'))
    canonical = serialize_model(parsed)
    again = parse_model(canonical)
    assert again.kind is parsed.kind
    assert again.body == parsed.body
    assert serialize_model(again) == canonical

  @pytest.mark.parametrize(('filename', 'name'), GOLDEN_TWINS)
  def test_matches_gallery(self, filename: str, name: str) -> None:
    from_file = joint_enumerate(as_factor_graph(load_golden(filename)))
    built = joint_enumerate(as_factor_graph(REFERENCE_MODELS[name](None)))
    assert from_file.table.allclose(built.table, 1e-12)

  def test_kinds(self) -> None:
    kinds = {path.name: parse_model(path.read_text()).kind for path in GOLDEN_FILES}
    assert kinds['five_node.bn'] is ModelKind.BN
    assert kinds['five_node.mrf'] is ModelKind.MRF
    assert kinds['triangle.fgx'] is ModelKind.FGX

  @pytest.mark.parametrize('name', sorted(REFERENCE_MODELS))
  def test_gallery_serializes(self, name: str) -> None:
    model = REFERENCE_MODELS[name](None)
    assert parse_model(serialize_model(model)).body == model


class TestGrammar:
  def test_comments_and_blank_lines(self) -> None:
    text = (
      '# leading comment\n\nfgx 1\nvar x 2  # binary\n'
      '\nfactor f\n  scope x\n  table 1 3\nend\n'
    )
    graph = parse_model(text).body
    assert graph.function_names() == ['f']
    assert graph.function('f').table.flat == (1.0, 3.0)

  def test_reals_keep_their_value(self) -> None:
    text = 'fgx 1\nvar x 2\nfactor f\n  scope x\n  table 0.1 1e-300\nend\n'
    assert 'table 0.1 1e-300' in serialize_model(parse_model(text))

  def test_missing_potentials(self) -> None:
    body = parse_model('mrf 1\nvar a 2\nvar b 2\nedge a b\n').body
    assert body.potentials is None


class TestErrors:
  @pytest.mark.parametrize(('text', 'line'), [
    ('', 1),
    ('fgx\n', 1),
    ('dag 1\n', 1),
    ('fgx 2\n', 1),
    ('fgx 1\nvar x\n', 2),
    ('fgx 1\nvar 1x 2\n', 2),
    ('fgx 1\nvar x 2\nwhat x\n', 3),
    ('fgx 1\nvar x 2\nfactor f\n  scope x\n  table 1 2 3\nend\n', 5),
    ('fgx 1\nvar x 2\nfactor f\n  scope x\n  table 1 a\nend\n', 5),
    ('fgx 1\nvar x 2\nfactor f\n  scope x\n  colour red\n  table 1 1\nend\n', 5),
    ('fgx 1\nvar x 2\nfactor f\n  scope x\n\n  table 1 1\n', 6),
    ('fgx 1\nvar x 2\nfactor f\n  scope x\nend\n', 3),
    ('bn 1\nvar x 2\ncpd x y\n  table 1 1\nend\n', 3),
  ])
  def test_parse_error_line(self, text: str, line: int) -> None:
    error = _error(text)
    assert isinstance(error, ParseError)
    assert error.line == line

  def test_located_message(self) -> None:
    error = _error('fgx 1\nvar x 2\nfactor f\n  scope x\n  table 1 2 3\nend\n')
    assert error.located('m.fgx').startswith('m.fgx:5: ')
    assert 'needs 2 values, got 3' in error.message

  def test_non_integer_cardinality(self) -> None:
    error = _error('fgx 1\nvar x 2.5\n')
    assert isinstance(error, NonDiscrete)
    assert error.line == 2

  def test_unknown_variable(self) -> None:
    error = _error('fgx 1\nvar x 2\nfactor f\n  scope x\n  parents w\n  table 1 1\nend\n')
    assert isinstance(error, UnknownVariable)
    assert error.line == 5

  def test_duplicate_name(self) -> None:
    error = _error('fgx 1\nvar x 2\nvar x 3\n')
    assert isinstance(error, DuplicateName)
    assert error.line == 3

  def test_validation_errors_surface(self) -> None:
    text = (
      'fgx 1\nvar x 2\nvar y 2\n'
      'factor f\n  scope x y\n  parents x\n  children y\n  table 1 1 1 1\nend\n'
      'factor g\n  scope y x\n  parents y\n  children x\n  table 1 1 1 1\nend\n'
    )
    error = _error(text)
    assert isinstance(error, DirectedCycle)
    assert error.line == 15

  def test_unnormalized_cpd(self) -> None:
    assert isinstance(_error('bn 1\nvar x 2\ncpd x\n  table 0.5 0.6\nend\n'), InvalidBayesNet)


NOISE_TOKENS: tuple[str, ...] = (
  'fgx', 'bn', 'mrf', '1', 'var', 'factor', 'cpd', 'edge', 'potential', 'end',
  'scope', 'parents', 'children', 'undirected', 'normalizes', 'table', '|', '#',
  'x', 'y', 'u', 'z', 'm', '0', '-1', '2', '2.5', '0.5', 'nan', 'inf', '1e999', '',
)


def _check_outcome(text: str) -> None:
  '''Malformed input ends in a located package error, never a crash.'''
  try:
    parse_model(text)
  except HybridFGError as e:
    assert e.line is not None, e
    assert 1 <= e.line <= max(1, len(text.splitlines())), e


@st.composite
def mutated_models(draw: st.DrawFn) -> str:
  '''A golden model file with a few lines dropped, repeated or retokenized.'''
  path: Path = draw(st.sampled_from(GOLDEN_FILES))
  lines: list[str] = path.read_text(encoding='utf-8').splitlines()
  for _ in range(draw(st.integers(1, 4))):
    index: int = draw(st.integers(0, len(lines) - 1))
    action: str = draw(st.sampled_from(['drop', 'repeat', 'token', 'swap']))
    if action == 'drop' and len(lines) > 1:
      del lines[index]
    elif action == 'repeat':
      lines.insert(index, lines[index])
    elif action == 'swap':
      other: int = draw(st.integers(0, len(lines) - 1))
      lines[index], lines[other] = lines[other], lines[index]
    else:
      tokens: list[str] = lines[index].split() or ['']
      position: int = draw(st.integers(0, len(tokens) - 1))
      tokens[position] = draw(st.sampled_from(NOISE_TOKENS))
      lines[index] = ' '.join(tokens)
  return '\n'.join(lines) + '\n'


class TestMalformedInput:
  @settings(max_examples=300, deadline=None)
  @given(mutated_models())
  def test_mutated_files(self, text: str) -> None:
    _check_outcome(text)

  @settings(max_examples=200, deadline=None)
  @given(
    st.sampled_from(['fgx 1\n', 'bn 1\n', 'mrf 1\n', '']),
    st.lists(st.sampled_from(NOISE_TOKENS), max_size=40),
    st.lists(st.integers(0, 39), max_size=8),
  )
  def test_token_soup(self, header: str, tokens: list[str], breaks: list[int]) -> None:
    words: list[str] = [
      f"{token}\n" if index in breaks else token for index, token in enumerate(tokens)
    ]
    _check_outcome(header + ' '.join(words))

  @settings(max_examples=200, deadline=None)
  @given(st.text(max_size=200))
  def test_arbitrary_text(self, text: str) -> None:
    _check_outcome(text)

  def test_grammar_errors_are_parse_errors(self) -> None:
    for text in ('fgx 1\nend\n', 'bn 1\ncpd\n', 'mrf 1\nedge x\n', 'fgx 1\nfactor\n'):
      assert isinstance(_error(text), ParseError)
