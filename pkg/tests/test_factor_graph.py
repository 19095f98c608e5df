'''
Construction and validation of extended factor graphs.
'''

# pip imports
import numpy as np
import pytest

# local imports
from hybridfg._interfaces._errors import DashedOverlap
from hybridfg._interfaces._errors import DirectedCycle
from hybridfg._interfaces._errors import DuplicateName
from hybridfg._interfaces._errors import InvalidEvidence
from hybridfg._interfaces._errors import InvalidName
from hybridfg._interfaces._errors import PartitionViolation
from hybridfg._interfaces._errors import TableShapeMismatch
from hybridfg._interfaces._errors import UnknownNode
from hybridfg._interfaces._errors import UnknownVariable
from hybridfg._shared.enums import EdgeKind
from hybridfg.gallery import random_hybrid_graph
from hybridfg.model.factor_graph import Evidence
from hybridfg.model.factor_graph import FactorGraph
from hybridfg.model.factor_graph import FunctionNode
from hybridfg.model.factor_graph import GraphBuilder
from hybridfg.model.factor_graph import Variable
from hybridfg.model.factor_graph import children_of
from hybridfg.model.factor_graph import parents_of
from hybridfg.tables.factor_table import FactorTable


def _pair() -> GraphBuilder:
  builder = GraphBuilder()
  builder.add_variable('x', 2).add_variable('y', 2)
  return builder


class TestValidation:
  '''Every structural error is caught when the graph is built.'''

  def test_duplicate_node_name(self) -> None:
    builder = _pair()
    builder.add_function('x', builder.table(['x'], [1, 1]))
    with pytest.raises(DuplicateName):
      builder.build()

  def test_empty_names(self) -> None:
    with pytest.raises(InvalidName):
      Variable('', 2)
    with pytest.raises(InvalidName):
      FunctionNode.create('', FactorTable([('x', 2)], [1, 1]))

  def test_unknown_variable_in_dashed_edge(self) -> None:
    builder = _pair()
    table = builder.table(['x'], [1, 1])
    builder.add_function_node(FunctionNode.create('n', table, parents=['x'], dashed=['w']))
    with pytest.raises(UnknownVariable):
      builder.build()

  def test_scope_must_be_partitioned(self) -> None:
    table = FactorTable([('x', 2), ('y', 2)], [1] * 4)
    with pytest.raises(PartitionViolation):
      FunctionNode.create('f', table, parents=['x'], children=['x', 'y'])
    with pytest.raises(PartitionViolation):
      FunctionNode.create('f', table, parents=['x'], undirected=[])

  def test_dashed_edge_into_scope(self) -> None:
    table = FactorTable([('x', 2)], [1, 1])
    with pytest.raises(DashedOverlap):
      FunctionNode.create('n', table, parents=['x'], dashed=['x'])

  def test_table_cardinality_must_match(self) -> None:
    builder = _pair()
    builder.add_function('f', FactorTable([('x', 3)], [1, 1, 1]))
    with pytest.raises(TableShapeMismatch):
      builder.build()

  def test_directed_cycle(self) -> None:
    builder = _pair()
    builder.add_function('f', builder.table(['x', 'y'], [1] * 4), parents=['x'], children=['y'])
    builder.add_function('g', builder.table(['y', 'x'], [1] * 4), parents=['y'], children=['x'])
    with pytest.raises(DirectedCycle, match='->'):
      builder.build()

  def test_dashed_edges_close_cycles(self) -> None:
    builder = _pair()
    builder.add_function('f', builder.table(['x', 'y'], [1] * 4), parents=['x'], children=['y'])
    builder.add_function('n', builder.table(['y'], [1, 1]), parents=['y'], dashed=['x'])
    with pytest.raises(DirectedCycle):
      builder.build()

  def test_undirected_cycles_are_fine(self, undirected: FactorGraph) -> None:
    assert undirected.is_undirected()


def _reachable_downstream(graph: FactorGraph, start: str) -> set[str]:
  '''Nodes reachable from `start` over parent, child and dashed edges.'''
  def successors(node: str) -> list[str]:
    if graph.is_variable(node):
      return [f.name for f in graph.functions if node in f.parent_vars]
    function = graph.function(node)
    return [*function.child_vars, *function.dashed_targets]
  seen: set[str] = set()
  stack: list[str] = successors(start)
  while stack:
    node = stack.pop()
    if node not in seen:
      seen.add(node)
      stack.extend(successors(node))
  return seen


class TestQueries:
  def test_incident_edges(self, directed: FactorGraph) -> None:
    assert dict(directed.incident('p_z')) == {
      'x': EdgeKind.PARENT, 'y': EdgeKind.PARENT, 'z': EdgeKind.CHILD
    }
    assert dict(directed.incident('u')) == {
      'p_u': EdgeKind.CHILD, 'p_v': EdgeKind.PARENT, 'p_x': EdgeKind.PARENT
    }

  def test_descendants(self, directed: FactorGraph) -> None:
    assert directed.descendants('u') == {
      'p_v', 'v', 'p_x', 'x', 'p_y', 'y', 'p_z', 'z'
    }
    assert directed.descendants('z') == frozenset()

  def test_descendants_follow_dashed_edges(self, chain: FactorGraph) -> None:
    assert {'c', 'd'} <= chain.descendants('n')
    assert 'n' in chain.ancestors('c')

  @pytest.mark.parametrize('seed', range(10))
  def test_descendants_match_plain_reachability(self, seed: int) -> None:
    graph = random_hybrid_graph(np.random.default_rng(seed), n_variables=6)
    for node in [*graph.variable_names(), *graph.function_names()]:
      assert graph.descendants(node) == _reachable_downstream(graph, node)
    for function in graph.functions:
      for target in function.dashed_targets:
        assert target in graph.descendants(function.name)

  def test_unknown_node(self, directed: FactorGraph) -> None:
    with pytest.raises(UnknownNode):
      directed.descendants('w')

  def test_parents_and_children(self, chain: FactorGraph) -> None:
    assert parents_of(chain, 'n') == ['a', 'b']
    assert children_of(chain, 'n') == []
    assert parents_of(chain, 'c') == ['f']
    assert chain.normalizers_of('d') == ['n']

  def test_normalizer_flag(self, chain: FactorGraph) -> None:
    assert chain.function('n').is_normalizer()
    assert not chain.function('h').is_normalizer()

  def test_isolated_variables(self) -> None:
    builder = _pair()
    builder.add_function('f', builder.table(['x'], [1, 1]))
    assert builder.build().isolated_variables() == ['y']

  def test_builder_round_trip(self, chain: FactorGraph) -> None:
    assert chain.to_builder().build() == chain


class TestEvidence:
  def test_membership(self) -> None:
    evidence = Evidence({'x': 1})
    assert 'x' in evidence
    assert evidence
    assert not Evidence()

  def test_out_of_range_state(self, directed: FactorGraph) -> None:
    with pytest.raises(InvalidEvidence):
      Evidence({'x': 2}).validate(directed)

  def test_unknown_variable(self, directed: FactorGraph) -> None:
    with pytest.raises(UnknownVariable):
      Evidence({'w': 0}).validate(directed)
