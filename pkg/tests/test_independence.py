'''
Path blocking verdicts, Markov blankets and independence listings.
'''

# native imports
from collections.abc import Callable
from itertools import combinations

# pip imports
import networkx as nx
import numpy as np
import pytest
from numpy.random import Generator

# local imports
from hybridfg._interfaces._errors import NotUndirected
from hybridfg._interfaces._errors import OverlappingSets
from hybridfg._interfaces._errors import UnknownVariable
from hybridfg._shared.enums import Arrival
from hybridfg._shared.enums import EdgeKind
from hybridfg._shared.enums import Verdict
from hybridfg.convert.functions import bn_to_fg
from hybridfg.convert.functions import mrf_to_fg
from hybridfg.gallery import chain_component
from hybridfg.gallery import five_node_directed
from hybridfg.gallery import five_node_hybrid
from hybridfg.gallery import five_node_undirected
from hybridfg.gallery import mixture_of_experts
from hybridfg.gallery import random_bayes_net
from hybridfg.gallery import random_markov_net
from hybridfg.independence.bayes_ball import IndependenceQuery
from hybridfg.independence.bayes_ball import active_sections
from hybridfg.independence.bayes_ball import can_pass
from hybridfg.independence.bayes_ball import reachable_set
from hybridfg.independence.bayes_ball import separated
from hybridfg.independence.blanket import markov_blanket_undirected
from hybridfg.independence.statements import independencies
from hybridfg.inference.enumeration import ci_gap
from hybridfg.model.factor_graph import FactorGraph


S = Verdict.SEPARATED
NS = Verdict.NOT_SEPARATED


def queries(names: list[str], max_given: int = 2) -> list[tuple[str, str, tuple[str, ...]]]:
  '''Every (x, y, given) with single x and y and at most `max_given` others.'''
  result: list[tuple[str, str, tuple[str, ...]]] = []
  for x, y in combinations(names, 2):
    others: list[str] = [n for n in names if n not in (x, y)]
    for size in range(min(max_given, len(others)) + 1):
      result.extend((x, y, given) for given in combinations(others, size))
  return result


def arrival_at(graph: FactorGraph, node: str, neighbor: str) -> Arrival:
  '''Class of the edge between `node` and `neighbor`, seen from `node`.'''
  if graph.is_function(node):
    kind = graph.function(node).kind_of(neighbor)
    at_function = True
  else:
    kind = graph.function(neighbor).kind_of(node)
    at_function = False
  assert kind is not EdgeKind.DASHED
  if kind is EdgeKind.UNDIRECTED:
    return Arrival.LATERAL
  # parent edges point into the function, child edges out of it
  points_into_function: bool = kind is EdgeKind.PARENT
  return Arrival.HEAD if points_into_function == at_function else Arrival.TAIL


def is_open_walk(graph: FactorGraph, walk: tuple[str, ...], given: set[str]) -> bool:
  '''Check every interior passage of `walk` against the blocking rule.'''
  lateral = nx.Graph()
  lateral.add_nodes_from([*graph.variable_names(), *graph.function_names()])
  for function in graph.functions:
    lateral.add_edges_from((function.name, var) for var in function.undirected_vars)

  def active(node: str) -> bool:
    return any(
      other in given or graph.descendants(other) & given
      for other in nx.node_connected_component(lateral, node)
    )

  head_entry = False
  for before, node, after in zip(walk, walk[1:], walk[2:]):
    if node in given:
      return False
    first = arrival_at(graph, node, before)
    second = arrival_at(graph, node, after)
    if first is not Arrival.LATERAL:
      head_entry = first is Arrival.HEAD
    if second is Arrival.HEAD and head_entry and not active(node):
      return False
  return True


class TestReferenceVerdicts:
  @pytest.mark.parametrize(('factory', 'x', 'y', 'given', 'verdict'), [
    (chain_component, 'a', 'b', (), S),
    (chain_component, 'a', 'd', ('b', 'c'), S),
    (chain_component, 'b', 'c', ('a', 'd'), S),
    (chain_component, 'a', 'b', ('c',), NS),
    (chain_component, 'a', 'b', ('d',), NS),
    (chain_component, 'a', 'b', ('c', 'd'), NS),
    (mixture_of_experts, 'c1', 'c0', (), S),
    (mixture_of_experts, 'c1', 'c0', ('m',), S),
    (mixture_of_experts, 'c1', 'c0', ('m', 'z'), S),
    (mixture_of_experts, 'c1', 'c0', ('z',), NS),
    (five_node_directed, 'x', 'y', ('u', 'v'), S),
    (five_node_directed, 'x', 'y', ('u', 'v', 'z'), NS),
    (five_node_undirected, 'x', 'y', ('u', 'v'), NS),
    (five_node_hybrid, 'x', 'y', ('u', 'v'), S),
  ])
  def test_verdict(
    self,
    factory: Callable[[], FactorGraph],
    x: str,
    y: str,
    given: tuple[str, ...],
    verdict: Verdict
  ) -> None:
    graph = factory()
    result = separated(graph, IndependenceQuery.of([x], [y], given))
    assert result.verdict is verdict
    if verdict is NS:
      assert result.witness[0] == x
      assert result.witness[-1] == y
      assert is_open_walk(graph, result.witness, set(given))
    else:
      assert result.witness == ()

  def test_dependent_experts_given_output(self, experts: FactorGraph) -> None:
    reached = reachable_set(experts, ['c1'], ['z'])
    assert 'c0' in reached
    assert 'z' in reached
    assert 'c0' not in reachable_set(experts, ['c1'], [])


class TestQueryRules:
  def test_empty_sets_are_separated(self, directed: FactorGraph) -> None:
    assert separated(directed, IndependenceQuery.of([], ['x'])).is_separated
    assert separated(directed, IndependenceQuery.of(['x'], [])).is_separated

  def test_overlapping_sets(self) -> None:
    with pytest.raises(OverlappingSets):
      IndependenceQuery.of(['x'], ['y'], ['x'])

  def test_unknown_variable(self, directed: FactorGraph) -> None:
    with pytest.raises(UnknownVariable):
      separated(directed, IndependenceQuery.of(['x'], ['w']))

  def test_set_queries(self, chain: FactorGraph) -> None:
    assert separated(chain, IndependenceQuery.of(['a'], ['b', 'd'], ['c'])).verdict is NS
    assert separated(chain, IndependenceQuery.of(['a', 'c'], ['b'])).verdict is NS
    assert separated(chain, IndependenceQuery.of(['a', 'c'], ['b'], ['d'])).verdict is NS

  def test_collider_needs_head_entry_and_head_exit(self) -> None:
    nothing: set[str] = set()
    assert not can_pass('d', True, Arrival.HEAD, frozenset(), nothing)
    assert can_pass('d', True, Arrival.HEAD, frozenset(), {'d'})
    assert can_pass('d', True, Arrival.LATERAL, frozenset(), nothing)
    assert can_pass('d', False, Arrival.HEAD, frozenset(), nothing)
    assert not can_pass('d', False, Arrival.TAIL, frozenset({'d'}), nothing)

  def test_active_sections(self, chain: FactorGraph) -> None:
    assert active_sections(chain, frozenset()) == set()
    assert {'c', 'h', 'd', 'n', 'f'} <= active_sections(chain, frozenset({'c'}))
    assert 'g' not in active_sections(chain, frozenset({'a'}))


class TestOracles:
  '''Agreement with classical separation on plain directed and undirected models.'''

  def test_matches_d_separation(self, rng: Generator) -> None:
    for _ in range(50):
      bn = random_bayes_net(rng, n_variables=int(rng.integers(2, 7)), max_parents=3)
      graph = bn_to_fg(bn)
      dag = bn.dag()
      for x, y, given in queries(bn.variable_names(), max_given=6):
        expected = nx.is_d_separator(dag, {x}, {y}, set(given))
        result = separated(graph, IndependenceQuery.of([x], [y], given))
        assert result.is_separated == expected, (x, y, given)

  def test_matches_graph_separation(self, rng: Generator) -> None:
    for _ in range(50):
      mrf = random_markov_net(rng, n_variables=int(rng.integers(2, 7)))
      graph = mrf_to_fg(mrf)
      for x, y, given in queries(mrf.variable_names(), max_given=6):
        remaining = nx.restricted_view(mrf.graph(), given, [])
        expected = not nx.has_path(remaining, x, y)
        result = separated(graph, IndependenceQuery.of([x], [y], given))
        assert result.is_separated == expected, (x, y, given)

  def test_witnesses_are_open(self, rng: Generator) -> None:
    for _ in range(10):
      graph = bn_to_fg(random_bayes_net(rng, n_variables=6))
      for x, y, given in queries(graph.variable_names()):
        result = separated(graph, IndependenceQuery.of([x], [y], given))
        if not result.is_separated:
          assert is_open_walk(graph, result.witness, set(given))


class TestChainComponentSoundness:
  '''Separated verdicts on randomly parameterized chain components hold numerically.'''

  @pytest.mark.parametrize('seed', range(8))
  def test_separated_implies_independent(self, seed: int) -> None:
    graph = chain_component(np.random.default_rng(seed))
    for x, y, given in queries(graph.variable_names()):
      if separated(graph, IndependenceQuery.of([x], [y], given)).is_separated:
        assert ci_gap(graph, [x], [y], given) <= 1e-9, (x, y, given)

  @pytest.mark.parametrize(('x', 'y', 'given'), [
    ('a', 'd', ()),
    ('a', 'd', ('b',)),
    ('b', 'c', ()),
    ('b', 'c', ('a',)),
  ])
  def test_paths_into_the_undirected_part_stay_open(
    self,
    rng: Generator,
    x: str,
    y: str,
    given: tuple[str, ...]
  ) -> None:
    graph = chain_component(rng)
    result = separated(graph, IndependenceQuery.of([x], [y], given))
    assert result.verdict is NS
    assert is_open_walk(graph, result.witness, set(given))
    assert ci_gap(graph, [x], [y], given) > 1e-6


class TestBlanket:
  def test_five_node(self, undirected: FactorGraph) -> None:
    assert markov_blanket_undirected(undirected, 'y') == {'v', 'x', 'z'}
    assert markov_blanket_undirected(undirected, 'u') == {'v', 'x'}

  def test_directed_graph_refused(self, directed: FactorGraph) -> None:
    with pytest.raises(NotUndirected):
      markov_blanket_undirected(directed, 'y')

  def test_blanket_separates(self, undirected: FactorGraph) -> None:
    blanket = markov_blanket_undirected(undirected, 'u')
    for other in set(undirected.variable_names()) - blanket - {'u'}:
      query = IndependenceQuery.of(['u'], [other], blanket)
      assert separated(undirected, query).is_separated


class TestListing:
  def test_chain_component(self, chain: FactorGraph) -> None:
    listed = [str(s) for s in independencies(chain, max_given=1)]
    assert 'a _|_ b | {}' in listed
    assert 'a _|_ b | c' not in listed

  def test_every_statement_is_separated(self, experts: FactorGraph) -> None:
    for statement in independencies(experts):
      query = IndependenceQuery.of([statement.x], [statement.y], statement.given)
      assert separated(experts, query).is_separated
