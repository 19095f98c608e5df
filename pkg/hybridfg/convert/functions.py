'''
The four conversions between factor graphs, Bayesian networks and Markov
random fields. All of them preserve the joint distribution.
'''

from __future__ import annotations

# native imports
from itertools import combinations

# pip imports
import networkx as nx

# internal imports
from .._interfaces._errors import DuplicatePotential
from .._interfaces._errors import MultiChildFunction
from .._interfaces._errors import NormalizationFailure
from .._interfaces._errors import OrphanVariable
from .._interfaces._errors import PotentialNotOnMaximalClique
from .._interfaces._errors import UndirectedEdgePresent
from .._shared.constants import NORMALIZATION_TOLERANCE
from .._shared.helpers_native import unique_name
from .._shared.primitive_types import tolerance
from ..model.factor_graph import FactorGraph
from ..model.factor_graph import FunctionNode
from ..model.factor_graph import GraphBuilder
from ..tables.factor_table import FactorTable
from ..tables.factor_table import is_normalized_over
from ..tables.factor_table import product
from .bayes_net import CPD
from .bayes_net import BayesNet
from .cliques import cliques_of
from .markov_net import MarkovNet
from .markov_net import Potential
from .markov_net import make_edge


# ------------------------------------------------------------------------------
def bn_to_fg(bn: BayesNet) -> FactorGraph:
  '''
  One function per variable holding its CPD: parent edges from the parents,
  a child edge to the variable. A BN with E edges and N variables yields a
  factor graph with E + N edges.
  '''
  builder = GraphBuilder()
  for variable in bn.variables:
    builder.add_variable(variable.name, variable.cardinality)
  taken: list[str] = bn.variable_names()
  for cpd in bn.cpds:
    name: str = unique_name(f"p_{cpd.child}", taken)
    taken.append(name)
    builder.add_function(
      name, cpd.table, parents=cpd.parents, children=[cpd.child]
    )
  return builder.build()
# ------------------------------------------------------------------------------


def fg_to_bn(
  graph: FactorGraph,
  tol: tolerance = NORMALIZATION_TOLERANCE
) -> BayesNet:
  '''
  Collapse every variable's incoming functions (and the normalization
  functions dashed into it) into its CPD.

  The parents of a variable are the other scope variables of those functions
  in order of first appearance.
  '''
  if graph.has_undirected_edges():
    raise UndirectedEdgePresent(
      "Only fully directed factor graphs convert to a Bayesian network"
    )
  for function in graph.functions:
    if len(function.child_vars) > 1:
      raise MultiChildFunction(
        f"Function {function.name!r} has children "
        f"{list(function.child_vars)}, no per-variable CPD exists"
      )
    if not function.child_vars:
      if not function.dashed_targets:
        raise NormalizationFailure(
          f"Function {function.name!r} has neither a child nor a dashed edge"
        )
      if len(function.dashed_targets) > 1:
        raise MultiChildFunction(
          f"Normalization function {function.name!r} spans "
          f"{list(function.dashed_targets)}, which no single CPD can absorb"
        )
  cpds: list[CPD] = []
  for variable in graph.variables:
    incoming: list[str] = graph.parent_functions(variable.name)
    if not incoming:
      raise OrphanVariable(
        f"Variable {variable.name!r} has no incoming directed edge"
      )
    absorbed: list[FunctionNode] = [
      graph.function(name)
      for name in incoming + graph.normalizers_of(variable.name)
    ]
    combined: FactorTable = product(function.table for function in absorbed)
    parents: tuple[str, ...] = tuple(
      name for name in combined.names if name != variable.name
    )
    table: FactorTable = combined.transpose([*parents, variable.name])
    passed, worst = is_normalized_over(table, [variable.name], tol)
    if not passed:
      raise NormalizationFailure(
        f"Conditional of {variable.name!r} built from "
        f"{[f.name for f in absorbed]} is not normalized "
        f"(worst deviation {worst:g})"
      )
    cpds.append(CPD(variable.name, parents, table))
  return BayesNet(graph.variables, cpds, tol)
# ------------------------------------------------------------------------------


def mrf_to_fg(mrf: MarkovNet) -> FactorGraph:
  '''
  One undirected function per maximal clique. Its table is the clique's
  potential, or all ones when the network carries no potential for it. A
  potential over the empty clique becomes a function without edges.
  '''
  cliques: list[list[str]] = cliques_of(mrf.graph())
  assigned: dict[frozenset[str], FactorTable] = {}
  clique_keys: set[frozenset[str]] = {frozenset(c) for c in cliques}
  for potential in mrf.potentials or ():
    key: frozenset[str] = frozenset(potential.clique)
    if key and key not in clique_keys:
      raise PotentialNotOnMaximalClique(
        f"Potential over {list(potential.clique)} is not on a maximal clique"
      )
    if key in assigned:
      raise DuplicatePotential(
        f"Maximal clique {sorted(key)} has more than one potential"
      )
    assigned[key] = potential.table
  builder = GraphBuilder()
  for variable in mrf.variables:
    builder.add_variable(variable.name, variable.cardinality)
  taken: list[str] = mrf.variable_names()
  for clique in cliques:
    name: str = unique_name(f"phi_{'_'.join(clique)}", taken)
    taken.append(name)
    table: FactorTable | None = assigned.get(frozenset(clique))
    if table is None:
      table = FactorTable.ones(mrf.axes(clique))
    builder.add_function(name, table, undirected=table.names)
  constant: FactorTable | None = assigned.get(frozenset())
  if constant is not None:
    builder.add_function(unique_name('phi', taken), constant)
  return builder.build()
# ------------------------------------------------------------------------------


def fg_to_mrf(graph: FactorGraph) -> MarkovNet:
  '''
  Clique on the neighbors (scope and dashed targets) of every function;
  each function is multiplied into the lexicographically first maximal
  clique containing its neighbors. Functions without neighbors land in the
  first clique, or in one potential over the empty clique when the graph has
  no variables.

  Potentials are sorted by clique, table axes by variable name.
  '''
  skeleton: nx.Graph = nx.Graph()
  skeleton.add_nodes_from(graph.variable_names())
  neighbor_sets: list[tuple[FunctionNode, set[str]]] = []
  for function in graph.functions:
    neighbors: set[str] = {*function.scope, *function.dashed_targets}
    skeleton.add_edges_from(combinations(sorted(neighbors), 2))
    neighbor_sets.append((function, neighbors))
  cliques: list[list[str]] = cliques_of(skeleton) or ([[]] if graph.functions else [])
  members: list[list[FactorTable]] = [[] for _ in cliques]
  for function, neighbors in neighbor_sets:
    index: int = next(
      i for i, clique in enumerate(cliques) if neighbors.issubset(clique)
    )
    members[index].append(function.table)
  potentials: list[Potential] = []
  for clique, tables in zip(cliques, members):
    table: FactorTable = product([FactorTable.ones(graph.axes(clique)), *tables])
    potentials.append(Potential(tuple(clique), table))
  edges: list[tuple[str, str]] = sorted(
    make_edge(str(a), str(b)) for a, b in skeleton.edges
  )
  return MarkovNet(graph.variables, edges, potentials)
# ------------------------------------------------------------------------------
