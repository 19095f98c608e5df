'''
Line oriented text formats for factor graphs (`fgx`), Bayesian networks
(`bn`) and Markov random fields (`mrf`).

Every file starts with a header `KIND VERSION`. `#` starts a comment, tokens
are separated by whitespace. Tables list their values row-major with the
last scope variable varying fastest.

    fgx 1
    var x 2
    factor f
      scope x
      children x
      table 0.3 0.7
    end
'''

from __future__ import annotations

# native imports
from collections.abc import Callable
from collections.abc import Iterator
from dataclasses import dataclass
from functools import partial
from math import prod
from typing import TypeVar

# internal imports
from .._interfaces._errors import DuplicateName
from .._interfaces._errors import HybridFGError
from .._interfaces._errors import NonDiscrete
from .._interfaces._errors import ParseError
from .._interfaces._errors import UnknownVariable
from .._shared.constants import COMMENT_CHAR
from .._shared.constants import FORMAT_VERSION
from .._shared.constants import NAME_PATTERN
from .._shared.enums import ModelKind
from .._shared.helpers_native import format_real
from ..convert.bayes_net import CPD
from ..convert.bayes_net import BayesNet
from ..convert.markov_net import MarkovNet
from ..convert.markov_net import Potential
from ..model.factor_graph import FactorGraph
from ..model.factor_graph import FunctionNode
from ..model.factor_graph import Variable
from ..model.factor_graph import build_and_validate
from ..tables.factor_table import FactorTable


Model = FactorGraph | BayesNet | MarkovNet

Line = tuple[int, list[str]]
'''(1-based line number, tokens)'''

_T = TypeVar("_T")

FACTOR_KEYWORDS: tuple[str, ...] = (
  'scope', 'parents', 'children', 'undirected', 'normalizes', 'table'
)


# ==================================================================================================
@dataclass(frozen=True)
class ModelFile:
  '''Parsed model file.'''
  kind: ModelKind
  version: int
  body: Model

  @classmethod
  def of(cls, body: Model) -> ModelFile:
    return cls(body.kind, FORMAT_VERSION, body)
# ==================================================================================================


# ==================================================================================================
class _Lines:
  '''
  Meaningful lines of a model file, comments and blank lines removed.
  '''
  _lines: list[Line]
  _position: int
  # ----------------------------------------------------------------------------

  def __init__(self, text: str) -> None:
    self._lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
      tokens: list[str] = raw.split(COMMENT_CHAR, 1)[0].split()
      if tokens:
        self._lines.append((number, tokens))
    self._position = 0
  # ----------------------------------------------------------------------------

  def __iter__(self) -> Iterator[Line]:
    return self
  # ----------------------------------------------------------------------------

  def __next__(self) -> Line:
    if self._position >= len(self._lines):
      raise StopIteration
    line: Line = self._lines[self._position]
    self._position += 1
    return line
  # ----------------------------------------------------------------------------

  @property
  def last_line(self) -> int:
    return self._lines[-1][0] if self._lines else 1
  # ----------------------------------------------------------------------------

  def block(self, opening: int) -> list[Line]:
    '''Lines up to (excluding) the next `end`.'''
    body: list[Line] = []
    for number, tokens in self:
      if tokens == ['end']:
        return body
      body.append((number, tokens))
    raise ParseError(
      f"Block opened on line {opening} is missing its 'end'",
      line=self.last_line
    )
# ==================================================================================================


# ------------------------------------------------------------------------------
def _located(line: int, action: Callable[[], _T]) -> _T:
  '''Run `action`, attaching `line` to any package error it raises.'''
  try:
    return action()
  except HybridFGError as e:
    if e.line is None:
      e.line = line
    raise
# ------------------------------------------------------------------------------


def _check_name(name: str, line: int) -> str:
  if not NAME_PATTERN.match(name):
    raise ParseError(f"Invalid name {name!r}", line=line)
  return name
# ------------------------------------------------------------------------------


def _parse_variable(tokens: list[str], line: int) -> Variable:
  if len(tokens) != 3:
    raise ParseError("Expected 'var NAME CARDINALITY'", line=line)
  name: str = _check_name(tokens[1], line)
  try:
    cardinality: int = int(tokens[2])
  except ValueError:
    try:
      float(tokens[2])
    except ValueError:
      raise ParseError(
        f"Cardinality of {name!r} is not an integer: {tokens[2]!r}", line=line
      ) from None
    raise NonDiscrete(
      f"Variable {name!r} needs an integer number of states, "
      f"got {tokens[2]!r}",
      line=line
    ) from None
  return _located(line, lambda: Variable(name, cardinality))
# ------------------------------------------------------------------------------


def _parse_values(tokens: list[str], line: int) -> list[float]:
  values: list[float] = []
  for token in tokens:
    try:
      values.append(float(token))
    except ValueError:
      raise ParseError(f"Invalid real number {token!r}", line=line) from None
  return values
# ------------------------------------------------------------------------------


def _make_table(
  scope: list[str],
  cards: dict[str, int],
  values: list[float],
  line: int
) -> FactorTable:
  for name in scope:
    if name not in cards:
      raise UnknownVariable(f"Unknown variable {name!r}", line=line)
  expected: int = prod(cards[name] for name in scope)
  if len(values) != expected:
    raise ParseError(
      f"Table over {scope} needs {expected} values, got {len(values)}",
      line=line
    )
  return _located(
    line, lambda: FactorTable([(name, cards[name]) for name in scope], values)
  )
# ------------------------------------------------------------------------------


def _register(name: str, names: dict[str, int], line: int) -> None:
  if name in names:
    raise DuplicateName(
      f"Name {name!r} is already used on line {names[name]}", line=line
    )
  names[name] = line
# ------------------------------------------------------------------------------


def _parse_factor(
  header: list[str],
  opening: int,
  body: list[Line],
  cards: dict[str, int]
) -> FunctionNode:
  if len(header) != 2:
    raise ParseError("Expected 'factor NAME'", line=opening)
  name: str = _check_name(header[1], opening)
  fields: dict[str, tuple[int, list[str]]] = {}
  for number, tokens in body:
    keyword: str = tokens[0]
    if keyword not in FACTOR_KEYWORDS:
      raise ParseError(f"Unknown factor keyword {keyword!r}", line=number)
    if keyword in fields:
      raise ParseError(f"Keyword {keyword!r} given twice", line=number)
    fields[keyword] = (number, tokens[1:])
  if 'table' not in fields:
    raise ParseError(f"Factor {name!r} has no table", line=opening)
  scope: list[str] = fields.get('scope', (opening, []))[1]
  for keyword in ('scope', 'parents', 'children', 'undirected', 'normalizes'):
    number, names = fields.get(keyword, (opening, []))
    for var in names:
      if var not in cards:
        raise UnknownVariable(f"Unknown variable {var!r}", line=number)
  table_line, table_tokens = fields['table']
  table: FactorTable = _make_table(
    scope, cards, _parse_values(table_tokens, table_line), table_line
  )
  undirected: list[str] | None = (
    fields['undirected'][1] if 'undirected' in fields else None
  )
  return _located(opening, lambda: FunctionNode.create(
    name,
    table,
    parents=fields.get('parents', (opening, []))[1],
    children=fields.get('children', (opening, []))[1],
    undirected=undirected,
    dashed=fields.get('normalizes', (opening, []))[1],
  ))
# ------------------------------------------------------------------------------


def _parse_fgx(lines: _Lines) -> FactorGraph:
  variables: list[Variable] = []
  functions: list[FunctionNode] = []
  cards: dict[str, int] = {}
  names: dict[str, int] = {}
  for number, tokens in lines:
    if tokens[0] == 'var':
      variable: Variable = _parse_variable(tokens, number)
      _register(variable.name, names, number)
      variables.append(variable)
      cards[variable.name] = variable.cardinality
    elif tokens[0] == 'factor':
      body: list[Line] = lines.block(number)
      function: FunctionNode = _parse_factor(tokens, number, body, cards)
      _register(function.name, names, number)
      functions.append(function)
    else:
      raise ParseError(f"Unexpected {tokens[0]!r} in fgx file", line=number)
  return _located(lines.last_line, lambda: build_and_validate(variables, functions))
# ------------------------------------------------------------------------------


def _parse_bn(lines: _Lines) -> BayesNet:
  variables: list[Variable] = []
  cpds: list[CPD] = []
  cards: dict[str, int] = {}
  names: dict[str, int] = {}
  for number, tokens in lines:
    if tokens[0] == 'var':
      variable: Variable = _parse_variable(tokens, number)
      _register(variable.name, names, number)
      variables.append(variable)
      cards[variable.name] = variable.cardinality
    elif tokens[0] == 'cpd':
      if len(tokens) < 2 or (len(tokens) > 2 and tokens[2] != '|'):
        raise ParseError("Expected 'cpd CHILD | PARENT...'", line=number)
      child: str = tokens[1]
      parents: list[str] = tokens[3:]
      body: list[Line] = lines.block(number)
      if len(body) != 1 or body[0][1][0] != 'table':
        raise ParseError(
          f"CPD of {child!r} must contain exactly one table line", line=number
        )
      table_line, table_tokens = body[0]
      table: FactorTable = _make_table(
        [*parents, child], cards, _parse_values(table_tokens[1:], table_line),
        table_line
      )
      cpds.append(_located(number, partial(CPD, child, tuple(parents), table)))
    else:
      raise ParseError(f"Unexpected {tokens[0]!r} in bn file", line=number)
  return _located(lines.last_line, lambda: BayesNet(variables, cpds))
# ------------------------------------------------------------------------------


def _parse_mrf(lines: _Lines) -> MarkovNet:
  variables: list[Variable] = []
  edges: list[tuple[str, str]] = []
  potentials: list[Potential] = []
  cards: dict[str, int] = {}
  names: dict[str, int] = {}
  last_edge_line: int = 1
  for number, tokens in lines:
    if tokens[0] == 'var':
      variable: Variable = _parse_variable(tokens, number)
      _register(variable.name, names, number)
      variables.append(variable)
      cards[variable.name] = variable.cardinality
    elif tokens[0] == 'edge':
      if len(tokens) != 3:
        raise ParseError("Expected 'edge A B'", line=number)
      for name in tokens[1:]:
        if name not in cards:
          raise UnknownVariable(f"Unknown variable {name!r}", line=number)
      edges.append((tokens[1], tokens[2]))
      last_edge_line = number
    elif tokens[0] == 'potential':
      clique: list[str] = tokens[1:]
      body: list[Line] = lines.block(number)
      if len(body) != 1 or body[0][1][0] != 'table':
        raise ParseError(
          "A potential must contain exactly one table line", line=number
        )
      table_line, table_tokens = body[0]
      table: FactorTable = _make_table(
        clique, cards, _parse_values(table_tokens[1:], table_line), table_line
      )
      potentials.append(Potential(tuple(clique), table))
    else:
      raise ParseError(f"Unexpected {tokens[0]!r} in mrf file", line=number)
  return _located(last_edge_line, lambda: MarkovNet(
    variables, edges, potentials if potentials else None
  ))
# ------------------------------------------------------------------------------


def parse_model(text: str) -> ModelFile:
  '''
  Parse a model file.

  Raise `ParseError` on grammar errors and the matching validation error for
  invalid models, both carrying a line number where one is known.
  '''
  lines = _Lines(text)
  try:
    number, header = next(lines)
  except StopIteration:
    raise ParseError("Empty model file, expected a header", line=1) from None
  if len(header) != 2:
    raise ParseError("Expected header 'KIND VERSION'", line=number)
  try:
    kind = ModelKind(header[0])
  except ValueError:
    raise ParseError(
      f"Unknown model kind {header[0]!r}, expected fgx, bn or mrf", line=number
    ) from None
  if header[1] != str(FORMAT_VERSION):
    raise ParseError(
      f"Unsupported format version {header[1]!r}, expected {FORMAT_VERSION}",
      line=number
    )
  body: Model
  if kind is ModelKind.FGX:
    body = _parse_fgx(lines)
  elif kind is ModelKind.BN:
    body = _parse_bn(lines)
  else:
    body = _parse_mrf(lines)
  return ModelFile(kind, FORMAT_VERSION, body)
# ------------------------------------------------------------------------------


def _table_line(table: FactorTable, indent: str = '  ') -> str:
  return ' '.join([f"{indent}table", *(format_real(v) for v in table.flat)])
# ------------------------------------------------------------------------------


def _serialize_fgx(graph: FactorGraph) -> list[str]:
  lines: list[str] = [f"var {v.name} {v.cardinality}" for v in graph.variables]
  for function in graph.functions:
    lines.append('')
    lines.append(f"factor {function.name}")
    lines.append(' '.join(['  scope', *function.scope]))
    for keyword, names in (
      ('parents', function.parent_vars),
      ('children', function.child_vars),
      ('undirected', function.undirected_vars),
      ('normalizes', function.dashed_targets),
    ):
      if names:
        lines.append(' '.join([f"  {keyword}", *names]))
    lines.append(_table_line(function.table))
    lines.append('end')
  return lines
# ------------------------------------------------------------------------------


def _serialize_bn(bn: BayesNet) -> list[str]:
  lines: list[str] = [f"var {v.name} {v.cardinality}" for v in bn.variables]
  for cpd in bn.cpds:
    lines.append('')
    if cpd.parents:
      lines.append(' '.join(['cpd', cpd.child, '|', *cpd.parents]))
    else:
      lines.append(f"cpd {cpd.child}")
    lines.append(_table_line(cpd.table))
    lines.append('end')
  return lines
# ------------------------------------------------------------------------------


def _serialize_mrf(mrf: MarkovNet) -> list[str]:
  lines: list[str] = [f"var {v.name} {v.cardinality}" for v in mrf.variables]
  lines.extend(f"edge {a} {b}" for a, b in mrf.edges)
  for potential in mrf.potentials or ():
    lines.append('')
    lines.append(' '.join(['potential', *potential.clique]))
    lines.append(_table_line(potential.table))
    lines.append('end')
  return lines
# ------------------------------------------------------------------------------


def serialize_model(model: ModelFile | Model) -> str:
  '''
  Canonical text of `model`: declaration order preserved, reals in their
  shortest exactly round-tripping decimal form.
  '''
  body: Model = model.body if isinstance(model, ModelFile) else model
  lines: list[str] = [f"{body.kind.value} {FORMAT_VERSION}"]
  if isinstance(body, FactorGraph):
    lines.extend(_serialize_fgx(body))
  elif isinstance(body, BayesNet):
    lines.extend(_serialize_bn(body))
  else:
    lines.extend(_serialize_mrf(body))
  return '\n'.join(lines) + '\n'
# ------------------------------------------------------------------------------
