'''
Path blocking on extended factor graphs.

Each path edge (parent, child or undirected, never dashed) is classified at
either end: HEAD if it points into the node, TAIL if it points away from it
and LATERAL if it is undirected.

The interior of a path splits into sections: maximal runs of nodes joined by
LATERAL edges (a node without lateral path edges is a section of its own).
A section is a collider when the path enters it through a HEAD and leaves it
through a HEAD. A path is blocked when
  1. it passes an observed variable, or
  2. it passes a collider section whose undirected component holds neither
     an observed variable nor a node with an observed descendant.

The search runs breadth first over (node, arrival class, head entry) states,
the way the Bayes-ball algorithm walks a Bayesian network, after one reverse
sweep that marks every node with an observed descendant.
'''

from __future__ import annotations

# native imports
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass
from dataclasses import field

# pip imports
import networkx as nx

# internal imports
from .._interfaces._errors import OverlappingSets
from .._shared.enums import Arrival
from .._shared.enums import EdgeKind
from .._shared.enums import Verdict
from ..model.factor_graph import FactorGraph


PathEdge = tuple[str, Arrival, Arrival]
'''(neighbor, class at this node, class at the neighbor)'''



# ==================================================================================================
@dataclass(frozen=True, slots=True)
class IndependenceQuery:
  '''Is every x in `x_set` separated from every y in `y_set` given `given_set`?'''
  x_set: frozenset[str]
  y_set: frozenset[str]
  given_set: frozenset[str] = field(default_factory=frozenset)

  def __post_init__(self) -> None:
    for name in ('x_set', 'y_set', 'given_set'):
      object.__setattr__(self, name, frozenset(getattr(self, name)))
    for first, second, label in (
      (self.x_set, self.y_set, 'x and y'),
      (self.x_set, self.given_set, 'x and given'),
      (self.y_set, self.given_set, 'y and given'),
    ):
      common: frozenset[str] = first & second
      if common:
        raise OverlappingSets(f"Sets {label} share {sorted(common)}")
  # ----------------------------------------------------------------------------

  @classmethod
  def of(
    cls,
    x: Iterable[str],
    y: Iterable[str],
    given: Iterable[str] = ()
  ) -> IndependenceQuery:
    return cls(frozenset(x), frozenset(y), frozenset(given))
  # ----------------------------------------------------------------------------

  def swapped(self) -> IndependenceQuery:
    return IndependenceQuery(self.y_set, self.x_set, self.given_set)
# ==================================================================================================


# ==================================================================================================
@dataclass(frozen=True, slots=True)
class SeparationResult:
  '''
  Answer of `separated()`.

  For NOT_SEPARATED verdicts `witness` is an unblocked walk from some x to
  some y, alternating variables and functions.
  '''
  verdict: Verdict
  witness: tuple[str, ...] = ()

  @property
  def is_separated(self) -> bool:
    return self.verdict is Verdict.SEPARATED
# ==================================================================================================


# ------------------------------------------------------------------------------
def path_edges(graph: FactorGraph, node: str) -> list[PathEdge]:
  '''
  Traversable edges at `node` with their arrival classes at both ends.
  '''
  edges: list[PathEdge] = []
  node_is_variable: bool = graph.is_variable(node)
  for neighbor, kind in graph.incident(node):
    if not kind.is_path_edge():
      continue
    if kind is EdgeKind.UNDIRECTED:
      edges.append((neighbor, Arrival.LATERAL, Arrival.LATERAL))
      continue
    # PARENT: variable -> function, CHILD: function -> variable
    points_to_function: bool = kind is EdgeKind.PARENT
    if node_is_variable == points_to_function:
      edges.append((neighbor, Arrival.TAIL, Arrival.HEAD))
    else:
      edges.append((neighbor, Arrival.HEAD, Arrival.TAIL))
  return edges
# ------------------------------------------------------------------------------


State = tuple[str, Arrival | None, bool]
'''(node, class of the edge it was entered through, section entered through a HEAD)'''
# ------------------------------------------------------------------------------


def observed_ancestry(graph: FactorGraph, observed: Iterable[str]) -> set[str]:
  '''
  Every node that has an observed strict descendant, found by one reverse
  sweep over parent, child and dashed edges.
  '''
  directed = graph.directed_graph()
  marked: set[str] = set()
  frontier: deque[str] = deque(observed)
  while frontier:
    node: str = frontier.popleft()
    for predecessor in directed.predecessors(node):
      if predecessor not in marked:
        marked.add(predecessor)
        frontier.append(predecessor)
  return marked
# ------------------------------------------------------------------------------


def active_sections(graph: FactorGraph, observed: frozenset[str]) -> set[str]:
  '''
  Nodes whose undirected component (the nodes reachable over undirected
  edges, the node alone if it has none) holds an observed variable or a node
  with an observed descendant. Collider sections through these nodes are open.
  '''
  lateral: nx.Graph = nx.Graph()
  lateral.add_nodes_from(graph.variable_names())
  lateral.add_nodes_from(graph.function_names())
  for function in graph.functions:
    lateral.add_edges_from((function.name, var) for var in function.undirected_vars)
  triggers: set[str] = observed_ancestry(graph, observed) | observed
  active: set[str] = set()
  for component in nx.connected_components(lateral):
    if not triggers.isdisjoint(component):
      active.update(component)
  return active
# ------------------------------------------------------------------------------


def can_pass(
  node: str,
  head_entry: bool,
  leave: Arrival,
  observed: frozenset[str],
  active: set[str]
) -> bool:
  '''
  Whether a path standing on `node`, inside a section entered through a HEAD
  when `head_entry` is set, may continue through an edge of class `leave`.

  A LATERAL edge stays in the section, any other edge closes it. Closing a
  section entered and left through a HEAD needs `node` to be active.
  '''
  if node in observed:
    return False
  if leave is Arrival.HEAD and head_entry:
    return node in active
  return True
# ------------------------------------------------------------------------------


def _search(
  graph: FactorGraph,
  sources: Iterable[str],
  observed: frozenset[str],
  targets: frozenset[str] = frozenset()
) -> tuple[set[str], tuple[str, ...]]:
  '''
  Breadth first search over (node, arrival, head entry) states.

  Return as tuple (reached nodes, witness), the witness being the walk to the
  first reached target (empty if no target was reached).
  '''
  active: set[str] = active_sections(graph, observed)
  parent: dict[State, State | None] = {}
  queue: deque[State] = deque()
  reached: set[str] = set()
  for source in sources:
    state: State = (source, None, False)
    if state not in parent:
      parent[state] = None
      reached.add(source)
      queue.append(state)
  while queue:
    current: State = queue.popleft()
    node, arrival, head_entry = current
    for neighbor, here, there in path_edges(graph, node):
      if arrival is not None and not can_pass(node, head_entry, here, observed, active):
        continue
      if there is Arrival.LATERAL:
        following: State = (neighbor, there, head_entry)
      else:
        following = (neighbor, there, there is Arrival.HEAD)
      if following in parent:
        continue
      parent[following] = current
      reached.add(neighbor)
      if neighbor in targets:
        return reached, _walk_back(parent, following)
      queue.append(following)
  return reached, ()
# ------------------------------------------------------------------------------


def _walk_back(parent: dict[State, State | None], last: State) -> tuple[str, ...]:
  walk: list[str] = []
  state: State | None = last
  while state is not None:
    walk.append(state[0])
    state = parent[state]
  return tuple(reversed(walk))
# ------------------------------------------------------------------------------


def _check_variables(graph: FactorGraph, names: Iterable[str]) -> None:
  for name in names:
    graph.variable(name)
# ------------------------------------------------------------------------------


def reachable_set(
  graph: FactorGraph,
  sources: Iterable[str],
  observed: Iterable[str]
) -> frozenset[str]:
  '''
  All nodes (variables and functions) reachable from `sources` through
  unblocked passages given `observed`. Sources themselves are included, as
  are observed variables on the frontier.
  '''
  sources = list(sources)
  observed = frozenset(observed)
  _check_variables(graph, [*sources, *observed])
  reached, _ = _search(graph, sources, observed)
  return frozenset(reached)
# ------------------------------------------------------------------------------


def separated(graph: FactorGraph, query: IndependenceQuery) -> SeparationResult:
  '''
  Separated iff no unblocked path joins `query.x_set` and `query.y_set`.

  NOT_SEPARATED means "may be dependent", it carries a witness walk.
  '''
  _check_variables(graph, [*query.x_set, *query.y_set, *query.given_set])
  if not query.x_set or not query.y_set:
    return SeparationResult(Verdict.SEPARATED)
  _, witness = _search(
    graph,
    sorted(query.x_set),
    query.given_set,
    query.y_set
  )
  if witness:
    return SeparationResult(Verdict.NOT_SEPARATED, witness)
  return SeparationResult(Verdict.SEPARATED)
# ------------------------------------------------------------------------------
