'''
Reference models built in code.

Every builder accepts an optional numpy `Generator`. Without one the fixed
default parameters are used, with one all tables are drawn at random
(conditionals from a Dirichlet distribution, potentials uniformly from
[0.1, 1)). Normalization functions are always computed from the tables they
normalize.
'''

from __future__ import annotations

# native imports
from collections.abc import Callable
from collections.abc import Sequence
from itertools import combinations

# pip imports
import networkx as nx
import numpy as np
from numpy.random import Generator
from numpy.typing import ArrayLike
from numpy.typing import NDArray

# internal imports
from .convert.bayes_net import CPD
from .convert.bayes_net import BayesNet
from .convert.cliques import cliques_of
from .convert.functions import bn_to_fg
from .convert.markov_net import MarkovNet
from .convert.markov_net import Potential
from .model.factor_graph import FactorGraph
from .model.factor_graph import GraphBuilder
from .model.factor_graph import Variable
from .tables.factor_table import FactorTable
from .tables.factor_table import normalizer


Reference = FactorGraph | BayesNet | MarkovNet


def _conditional(
  rng: Generator | None,
  shape: Sequence[int],
  default: ArrayLike
) -> NDArray[np.float64]:
  '''Default table, or a random one normalized over its last axis.'''
  if rng is None:
    return np.asarray(default, dtype=np.float64).reshape(shape)
  *parents, card = shape
  return rng.dirichlet(np.ones(card), size=tuple(parents) or None)
# ------------------------------------------------------------------------------


def _positive(
  rng: Generator | None,
  shape: Sequence[int],
  default: ArrayLike
) -> NDArray[np.float64]:
  '''Default table, or random values in [0.1, 1).'''
  if rng is None:
    return np.asarray(default, dtype=np.float64).reshape(shape)
  return rng.uniform(0.1, 1.0, size=tuple(shape))
# ------------------------------------------------------------------------------


# ##############################################################################
# ##### Five variables u, v, x, y, z ###########################################
# ##############################################################################
FIVE_NODE_PARENTS: dict[str, tuple[str, ...]] = {
  'u': (),
  'v': ('u',),
  'x': ('u',),
  'y': ('v',),
  'z': ('x', 'y'),
}
_FIVE_NODE_DEFAULTS: dict[str, list[float]] = {
  'u': [0.4, 0.6],
  'v': [0.7, 0.3, 0.2, 0.8],
  'x': [0.9, 0.1, 0.5, 0.5],
  'y': [0.6, 0.4, 0.1, 0.9],
  'z': [0.99, 0.01, 0.3, 0.7, 0.6, 0.4, 0.05, 0.95],
}


def five_node_bn(rng: Generator | None = None) -> BayesNet:
  '''P(u) P(v|u) P(x|u) P(y|v) P(z|x,y), all binary.'''
  variables: list[Variable] = [Variable(name, 2) for name in FIVE_NODE_PARENTS]
  cpds: list[CPD] = []
  for child, parents in FIVE_NODE_PARENTS.items():
    axes: list[tuple[str, int]] = [(name, 2) for name in (*parents, child)]
    values = _conditional(rng, [2] * len(axes), _FIVE_NODE_DEFAULTS[child])
    cpds.append(CPD(child, parents, FactorTable(axes, values)))
  return BayesNet(variables, cpds)
# ------------------------------------------------------------------------------


def five_node_directed(rng: Generator | None = None) -> FactorGraph:
  '''One directed function per conditional of `five_node_bn()`.'''
  return bn_to_fg(five_node_bn(rng))
# ------------------------------------------------------------------------------


def five_node_plain(rng: Generator | None = None) -> FactorGraph:
  '''Same functions as `five_node_directed()` with every edge undirected.'''
  builder = GraphBuilder()
  for name in FIVE_NODE_PARENTS:
    builder.add_variable(name, 2)
  for function in five_node_directed(rng).functions:
    builder.add_function(function.name, function.table)
  return builder.build()
# ------------------------------------------------------------------------------


def five_node_hybrid(rng: Generator | None = None) -> FactorGraph:
  '''u and v share one undirected function P(u, v), the rest is directed.'''
  bn: BayesNet = five_node_bn(rng)
  builder = GraphBuilder()
  for name in FIVE_NODE_PARENTS:
    builder.add_variable(name, 2)
  joint_uv = FactorTable(
    [('u', 2), ('v', 2)],
    bn.cpd('u').table.values[:, None] * bn.cpd('v').table.values
  )
  builder.add_function('p_uv', joint_uv)
  for child in ('x', 'y', 'z'):
    cpd: CPD = bn.cpd(child)
    builder.add_function(
      f"p_{child}", cpd.table, parents=cpd.parents, children=[child]
    )
  return builder.build()
# ------------------------------------------------------------------------------


FIVE_NODE_CLIQUES: tuple[tuple[str, ...], ...] = (
  ('u', 'v'), ('u', 'x'), ('v', 'y'), ('x', 'y', 'z')
)
_FIVE_NODE_POTENTIALS: tuple[list[float], ...] = (
  [1.0, 0.5, 0.5, 2.0],
  [3.0, 1.0, 1.0, 1.0],
  [1.0, 2.0, 0.25, 1.0],
  [1.0, 0.5, 0.5, 0.5, 2.0, 1.0, 1.0, 4.0],
)


def five_node_mrf(rng: Generator | None = None) -> MarkovNet:
  '''Markov random field with the four maximal cliques of the moral graph.'''
  variables: list[Variable] = [Variable(name, 2) for name in FIVE_NODE_PARENTS]
  edges: list[tuple[str, str]] = [
    ('u', 'v'), ('u', 'x'), ('v', 'y'), ('x', 'y'), ('x', 'z'), ('y', 'z')
  ]
  potentials: list[Potential] = [
    Potential(clique, FactorTable(
      [(name, 2) for name in clique],
      _positive(rng, [2] * len(clique), default)
    ))
    for clique, default in zip(FIVE_NODE_CLIQUES, _FIVE_NODE_POTENTIALS)
  ]
  return MarkovNet(variables, edges, potentials)
# ------------------------------------------------------------------------------


def five_node_undirected(rng: Generator | None = None) -> FactorGraph:
  '''One undirected function per maximal clique of `five_node_mrf()`.'''
  builder = GraphBuilder()
  for name in FIVE_NODE_PARENTS:
    builder.add_variable(name, 2)
  for potential in five_node_mrf(rng).potentials or ():
    builder.add_function(f"phi_{'_'.join(potential.clique)}", potential.table)
  return builder.build()
# ------------------------------------------------------------------------------


# ##############################################################################
# ##### Multi-child and factorized conditionals ################################
# ##############################################################################
def joint_children(rng: Generator | None = None) -> FactorGraph:
  '''P(x) and one function with parent x and the two children y and z.'''
  builder = GraphBuilder()
  for name in ('x', 'y', 'z'):
    builder.add_variable(name, 2)
  builder.add_function(
    'p_x', builder.table(['x'], _conditional(rng, [2], [0.3, 0.7])),
    children=['x']
  )
  # normalized over the (y, z) pair for each x
  yz = _conditional(rng, [2, 4], [0.1, 0.2, 0.3, 0.4, 0.25, 0.25, 0.4, 0.1])
  builder.add_function(
    'p_yz', builder.table(['x', 'y', 'z'], yz.reshape(2, 2, 2)),
    parents=['x'], children=['y', 'z']
  )
  return builder.build()
# ------------------------------------------------------------------------------


def factorized_conditional(rng: Generator | None = None) -> FactorGraph:
  '''
  P(z | x, y) written as f(x, z) g(y, z) n(x, y), where n is the
  normalization function with a dashed edge to z.
  '''
  builder = GraphBuilder()
  for name in ('x', 'y', 'z'):
    builder.add_variable(name, 2)
  p_x = builder.table(['x'], _conditional(rng, [2], [0.5, 0.5]))
  p_y = builder.table(['y'], _conditional(rng, [2], [0.25, 0.75]))
  f = builder.table(['x', 'z'], _positive(rng, [2, 2], [1.0, 1.0, 1.0, 3.0]))
  g = builder.table(['y', 'z'], _positive(rng, [2, 2], [1.0, 1.0, 2.0, 2.0]))
  n: FactorTable = normalizer([f, g], over=['z'])
  builder.add_function('p_x', p_x, children=['x'])
  builder.add_function('p_y', p_y, children=['y'])
  builder.add_function('f', f, parents=['x'], children=['z'])
  builder.add_function('g', g, parents=['y'], children=['z'])
  builder.add_function('n', n, parents=['x', 'y'], dashed=['z'])
  return builder.build()
# ------------------------------------------------------------------------------


def triangle(rng: Generator | None = None) -> FactorGraph:
  '''Three pairwise undirected functions f(x, y), g(y, z), h(x, z).'''
  builder = GraphBuilder()
  for name in ('x', 'y', 'z'):
    builder.add_variable(name, 2)
  for name, scope, default in (
    ('f', ['x', 'y'], [2.0, 1.0, 1.0, 2.0]),
    ('g', ['y', 'z'], [1.0, 3.0, 3.0, 1.0]),
    ('h', ['x', 'z'], [1.0, 1.0, 1.0, 4.0]),
  ):
    builder.add_function(
      name, builder.table(scope, _positive(rng, [2, 2], default))
    )
  return builder.build()
# ------------------------------------------------------------------------------


# ##############################################################################
# ##### Mixture of experts #####################################################
# ##############################################################################
def mixture_of_experts(rng: Generator | None = None) -> FactorGraph:
  '''
  Output z is drawn from expert c1 when m = 1 and from expert c0 when m = 0:

    P(c1) P(c0) P(m) P(z|c1)^m P(z|c0)^(1-m)

  The two powered conditionals form one directed component with child z.
  '''
  builder = GraphBuilder()
  for name in ('c1', 'c0', 'm', 'z'):
    builder.add_variable(name, 2)
  builder.add_function(
    'p_c1', builder.table(['c1'], _conditional(rng, [2], [0.6, 0.4])),
    children=['c1']
  )
  builder.add_function(
    'p_c0', builder.table(['c0'], _conditional(rng, [2], [0.3, 0.7])),
    children=['c0']
  )
  builder.add_function(
    'p_m', builder.table(['m'], _conditional(rng, [2], [0.2, 0.8])),
    children=['m']
  )
  z_given_c1 = _conditional(rng, [2, 2], [0.9, 0.1, 0.2, 0.8])
  z_given_c0 = _conditional(rng, [2, 2], [0.7, 0.3, 0.4, 0.6])
  # axes (expert, m, z)
  expert_1 = np.ones((2, 2, 2))
  expert_1[:, 1, :] = z_given_c1
  expert_0 = np.ones((2, 2, 2))
  expert_0[:, 0, :] = z_given_c0
  builder.add_function(
    'f1', builder.table(['c1', 'm', 'z'], expert_1),
    parents=['c1', 'm'], children=['z']
  )
  builder.add_function(
    'f0', builder.table(['c0', 'm', 'z'], expert_0),
    parents=['c0', 'm'], children=['z']
  )
  return builder.build()
# ------------------------------------------------------------------------------


# ##############################################################################
# ##### Chain component a -> c - d <- b ########################################
# ##############################################################################
def chain_component(rng: Generator | None = None) -> FactorGraph:
  '''
  P(a) P(b) P(c, d | a, b) with P(c, d | a, b) = f(a, c) g(b, d) h(c, d)
  n(a, b). The normalization function n has dashed edges to c and d.
  '''
  builder = GraphBuilder()
  for name in ('a', 'b', 'c', 'd'):
    builder.add_variable(name, 2)
  p_a = builder.table(['a'], _conditional(rng, [2], [0.6, 0.4]))
  p_b = builder.table(['b'], _conditional(rng, [2], [0.3, 0.7]))
  f = builder.table(['a', 'c'], _positive(rng, [2, 2], [1.0, 1.0, 1.0, 2.0]))
  g = builder.table(['b', 'd'], _positive(rng, [2, 2], [1.0, 1.0, 2.0, 2.0]))
  h = builder.table(['c', 'd'], _positive(rng, [2, 2], [1.0, 1.0, 1.0, 2.0]))
  n: FactorTable = normalizer([f, g, h], over=['c', 'd'])
  builder.add_function('p_a', p_a, children=['a'])
  builder.add_function('p_b', p_b, children=['b'])
  builder.add_function('f', f, parents=['a'], children=['c'])
  builder.add_function('g', g, parents=['b'], children=['d'])
  builder.add_function('h', h)
  builder.add_function('n', n, parents=['a', 'b'], dashed=['c', 'd'])
  return builder.build()
# ------------------------------------------------------------------------------


# ##############################################################################
# ##### Random models ##########################################################
# ##############################################################################
def _random_variables(
  rng: Generator,
  n_variables: int,
  max_cardinality: int
) -> list[Variable]:
  return [
    Variable(f"v{i}", int(rng.integers(2, max_cardinality + 1)))
    for i in range(n_variables)
  ]
# ------------------------------------------------------------------------------


def random_bayes_net(
  rng: Generator,
  n_variables: int = 5,
  max_parents: int = 2,
  max_cardinality: int = 3
) -> BayesNet:
  '''
  Random DAG over v0, v1, ... where parents are drawn from earlier
  variables, with Dirichlet conditionals.
  '''
  variables: list[Variable] = _random_variables(rng, n_variables, max_cardinality)
  cpds: list[CPD] = []
  for i, child in enumerate(variables):
    n_parents = int(rng.integers(0, min(i, max_parents) + 1))
    picked = sorted(rng.choice(i, size=n_parents, replace=False)) if n_parents else []
    parents: list[Variable] = [variables[j] for j in picked]
    axes: list[tuple[str, int]] = [(v.name, v.cardinality) for v in (*parents, child)]
    values = rng.dirichlet(
      np.ones(child.cardinality), size=tuple(v.cardinality for v in parents) or None
    )
    cpds.append(CPD(child.name, tuple(v.name for v in parents), FactorTable(axes, values)))
  return BayesNet(variables, cpds)
# ------------------------------------------------------------------------------


def random_markov_net(
  rng: Generator,
  n_variables: int = 5,
  edge_probability: float = 0.4,
  max_cardinality: int = 3
) -> MarkovNet:
  '''Random undirected graph with one positive potential per maximal clique.'''
  variables: list[Variable] = _random_variables(rng, n_variables, max_cardinality)
  cards: dict[str, int] = {v.name: v.cardinality for v in variables}
  graph: nx.Graph = nx.Graph()
  graph.add_nodes_from(cards)
  for a, b in combinations(cards, 2):
    if rng.random() < edge_probability:
      graph.add_edge(a, b)
  potentials: list[Potential] = []
  for clique in cliques_of(graph):
    axes: list[tuple[str, int]] = [(name, cards[name]) for name in clique]
    values = rng.uniform(0.1, 1.0, size=tuple(card for _, card in axes))
    potentials.append(Potential(tuple(clique), FactorTable(axes, values)))
  return MarkovNet(variables, sorted(graph.edges()), potentials)
# ------------------------------------------------------------------------------


def fully_connected_mrf(n_variables: int = 6, rng: Generator | None = None) -> MarkovNet:
  '''Complete graph, so the only maximal clique holds every variable.'''
  variables: list[Variable] = [Variable(f"v{i}", 2) for i in range(n_variables)]
  names: list[str] = [v.name for v in variables]
  values = _positive(rng, [2] * n_variables, np.ones(2 ** n_variables))
  return MarkovNet(
    variables,
    list(combinations(names, 2)),
    [Potential(tuple(names), FactorTable([(name, 2) for name in names], values))]
  )
# ------------------------------------------------------------------------------


def random_tree_graph(
  rng: Generator,
  n_variables: int = 6,
  max_cardinality: int = 3
) -> FactorGraph:
  '''
  Undirected factor graph whose skeleton is a tree: one unary function per
  variable plus one pairwise function joining each variable to an earlier one.
  '''
  builder = GraphBuilder()
  variables: list[Variable] = _random_variables(rng, n_variables, max_cardinality)
  for variable in variables:
    builder.add_variable(variable.name, variable.cardinality)
  for variable in variables:
    builder.add_function(f"u_{variable.name}", builder.table(
      [variable.name], rng.uniform(0.1, 1.0, size=variable.cardinality)
    ))
  for i, variable in enumerate(variables[1:], start=1):
    other: Variable = variables[int(rng.integers(0, i))]
    builder.add_function(f"e_{other.name}_{variable.name}", builder.table(
      [other.name, variable.name],
      rng.uniform(0.1, 1.0, size=(other.cardinality, variable.cardinality))
    ))
  return builder.build()
# ------------------------------------------------------------------------------


def _random_tree(
  builder: GraphBuilder,
  rng: Generator,
  block: Sequence[str],
  cards: dict[str, int],
  prefix: str
) -> list[FactorTable]:
  '''Positive undirected pairwise functions along a random spanning tree of `block`.'''
  tables: list[FactorTable] = []
  for i, name in enumerate(block[1:], start=1):
    other: str = block[int(rng.integers(0, i))]
    table: FactorTable = builder.table(
      [other, name], rng.uniform(0.1, 1.0, size=(cards[other], cards[name]))
    )
    builder.add_function(f"{prefix}_{other}_{name}", table)
    tables.append(table)
  return tables
# ------------------------------------------------------------------------------


def random_hybrid_graph(
  rng: Generator,
  n_variables: int = 5,
  max_block: int = 3,
  max_parents: int = 2,
  max_cardinality: int = 3
) -> FactorGraph:
  '''
  Chain graph over v0, v1, ... cut into consecutive blocks of at most
  `max_block` variables.

  The first block is undirected (pairwise functions along a random tree and
  one unary function per variable). Every later block draws 1 to
  `max_parents` parents from the earlier variables. A single variable gets a
  Dirichlet conditional. A larger block gets one function f(parents, child)
  per variable over a random subset of the parents, undirected pairwise
  functions along a random tree and the normalizer n(parents) with dashed
  edges to the block.
  '''
  variables: list[Variable] = _random_variables(rng, n_variables, max_cardinality)
  cards: dict[str, int] = {v.name: v.cardinality for v in variables}
  builder = GraphBuilder()
  for variable in variables:
    builder.add_variable(variable.name, variable.cardinality)
  names: list[str] = list(cards)
  blocks: list[list[str]] = []
  while len(names) > sum(map(len, blocks)):
    start: int = sum(map(len, blocks))
    blocks.append(names[start:start + int(rng.integers(1, max_block + 1))])
  first, *rest = blocks
  _random_tree(builder, rng, first, cards, 'phi')
  for name in first:
    builder.add_function(
      f"phi_{name}", builder.table([name], rng.uniform(0.1, 1.0, size=cards[name]))
    )
  earlier: list[str] = list(first)
  for block in rest:
    n_parents = int(rng.integers(1, min(len(earlier), max_parents) + 1))
    parents: list[str] = [
      earlier[j] for j in sorted(rng.choice(len(earlier), size=n_parents, replace=False))
    ]
    if len(block) == 1:
      child: str = block[0]
      values = rng.dirichlet(np.ones(cards[child]), size=tuple(cards[p] for p in parents))
      builder.add_function(
        f"p_{child}", builder.table([*parents, child], values),
        parents=parents, children=[child]
      )
    else:
      tables: list[FactorTable] = []
      for child in block:
        chosen: list[str] = [p for p in parents if rng.random() < 0.5]
        scope: list[str] = [*chosen, child]
        table: FactorTable = builder.table(
          scope, rng.uniform(0.1, 1.0, size=tuple(cards[n] for n in scope))
        )
        builder.add_function(f"f_{child}", table, parents=chosen, children=[child])
        tables.append(table)
      tables.extend(_random_tree(builder, rng, block, cards, 'h'))
      parent_axes = FactorTable.ones((p, cards[p]) for p in parents)
      builder.add_function(
        f"n_{'_'.join(block)}", normalizer([parent_axes, *tables], over=block),
        parents=parents, dashed=block
      )
    earlier.extend(block)
  return builder.build()
# ------------------------------------------------------------------------------


REFERENCE_MODELS: dict[str, Callable[[Generator | None], Reference]] = {
  'five-node-bn': five_node_bn,
  'five-node-plain': five_node_plain,
  'five-node-directed': five_node_directed,
  'five-node-hybrid': five_node_hybrid,
  'five-node-mrf': five_node_mrf,
  'five-node-undirected': five_node_undirected,
  'joint-children': joint_children,
  'factorized-conditional': factorized_conditional,
  'triangle': triangle,
  'mixture-of-experts': mixture_of_experts,
  'chain-component': chain_component,
}
'''name -> builder, used by the `gallery` command'''
