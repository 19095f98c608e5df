'''
Sum-product message passing over the factor graph skeleton.

Messages flow along scope edges only: edge directions are ignored and
dashed edges carry no table dependency. Evidence enters as unary indicator
factors at the observed variables, functions with an empty scope are
skipped (they only rescale the joint).

The tree schedule is exact on forests (one collect and one distribute pass
per connected component). The loopy schedule floods all messages in
parallel with damping and is approximate.
'''

from __future__ import annotations

# native imports
from collections.abc import Mapping
from dataclasses import dataclass
from dataclasses import field
from types import MappingProxyType
from typing import Any

# pip imports
import networkx as nx
import numpy as np
from numpy.typing import NDArray

# internal imports
from .._interfaces._errors import InvalidParameter
from .._interfaces._errors import NotATree
from .._interfaces._errors import ZeroMass
from .._shared.constants import CONVERGENCE_THRESHOLD
from .._shared.constants import LOOPY_DAMPING
from .._shared.constants import LOOPY_MAX_ITERS
from .._shared.enums import Schedule
from .._shared.primitive_types import tolerance
from ..model.factor_graph import Evidence
from ..model.factor_graph import FactorGraph
from ..model.factor_graph import FunctionNode


Vector = NDArray[np.float64]
Message = tuple[str, str]
'''(sender, receiver)'''


# ==================================================================================================
@dataclass(frozen=True)
class MarginalSet:
  '''
  Per variable probability vectors.

  Loopy results are marked `approximate` and carry their convergence state.
  '''
  beliefs: Mapping[str, Vector]
  converged: bool = True
  iterations: int = 0
  approximate: bool = False
  max_change: float = field(default=0.0)

  def __getitem__(self, name: str) -> Vector:
    return self.beliefs[name]

  def as_dict(self) -> dict[str, Any]:
    return {
      'marginals': {
        name: [float(p) for p in vector] for name, vector in self.beliefs.items()
      },
      'approximate': self.approximate,
      'converged': self.converged,
      'iterations': self.iterations,
    }
# ==================================================================================================


def _normalize(vector: Vector, what: str) -> Vector:
  total: float = float(vector.sum())
  if total <= 0.0:
    raise ZeroMass(f"{what} has zero mass, the evidence is impossible")
  return vector / total
# ------------------------------------------------------------------------------


# ==================================================================================================
class MessagePassing:
  '''
  Message store of one sum-product run.

  Only used from within `sum_product()`, state is local to a call.
  '''
  graph: FactorGraph
  skeleton: nx.Graph
  '''variables plus functions with nonempty scope, scope edges'''
  local: dict[str, Vector]
  '''unary evidence factor per variable (all ones if unobserved)'''
  messages: dict[Message, Vector]
  # ----------------------------------------------------------------------------

  def __init__(self, graph: FactorGraph, evidence: Evidence) -> None:
    self.graph = graph
    self.skeleton = nx.Graph()
    self.skeleton.add_nodes_from(graph.variable_names())
    for function in graph.functions:
      if function.scope:
        self.skeleton.add_edges_from((function.name, var) for var in function.scope)
    self.local = {}
    for variable in graph.variables:
      vector: Vector = np.ones(variable.cardinality)
      if variable.name in evidence.assignments:
        vector = np.zeros(variable.cardinality)
        vector[evidence.assignments[variable.name]] = 1.0
      self.local[variable.name] = vector
    self.messages = {}
    for a, b in self.skeleton.edges:
      for sender, receiver in ((a, b), (b, a)):
        var: str = sender if graph.is_variable(sender) else receiver
        card: int = graph.cardinality(var)
        self.messages[(sender, receiver)] = np.full(card, 1.0 / card)
  # ----------------------------------------------------------------------------

  def compute(self, sender: str, receiver: str) -> Vector:
    '''Fresh message from the current incoming messages of `sender`.'''
    if self.graph.is_variable(sender):
      vector: Vector = self.local[sender].copy()
      for neighbor in self.skeleton.neighbors(sender):
        if neighbor != receiver:
          vector = vector * self.messages[(neighbor, sender)]
      return _normalize(vector, f"Message {sender} -> {receiver}")
    function: FunctionNode = self.graph.function(sender)
    values: Vector = function.table.values
    for axis, var in enumerate(function.scope):
      if var == receiver:
        continue
      shape: list[int] = [1] * len(function.scope)
      shape[axis] = values.shape[axis]
      values = values * self.messages[(var, sender)].reshape(shape)
    target: int = function.scope.index(receiver)
    other_axes: tuple[int, ...] = tuple(
      i for i in range(len(function.scope)) if i != target
    )
    return _normalize(values.sum(axis=other_axes), f"Message {sender} -> {receiver}")
  # ----------------------------------------------------------------------------

  def beliefs(self) -> dict[str, Vector]:
    result: dict[str, Vector] = {}
    for variable in self.graph.variables:
      vector: Vector = self.local[variable.name].copy()
      for neighbor in self.skeleton.neighbors(variable.name):
        vector = vector * self.messages[(neighbor, variable.name)]
      result[variable.name] = _normalize(vector, f"Belief of {variable.name!r}")
    return result
  # ----------------------------------------------------------------------------

  def run_tree(self) -> None:
    '''Collect towards and distribute from one root per component.'''
    if not nx.is_forest(self.skeleton):
      raise NotATree(
        "The factor graph skeleton has a cycle, use the loopy schedule"
      )
    order: dict[str, int] = {
      name: i for i, name in enumerate(self.graph.variable_names())
    }
    for component in nx.connected_components(self.skeleton):
      variables: list[str] = [n for n in component if n in order]
      root: str = min(variables, key=order.__getitem__)
      tree_edges: list[tuple[str, str]] = list(nx.bfs_edges(self.skeleton, root))
      for parent, child in reversed(tree_edges):
        self.messages[(child, parent)] = self.compute(child, parent)
      for parent, child in tree_edges:
        self.messages[(parent, child)] = self.compute(parent, child)
  # ----------------------------------------------------------------------------

  def run_loopy(
    self,
    max_iters: int,
    damping: float,
    threshold: tolerance
  ) -> tuple[bool, int, float]:
    '''
    Synchronous flooding with damping.

    Return as tuple (converged, iterations, last max message change)
    '''
    change: float = 0.0
    for iteration in range(1, max_iters + 1):
      updated: dict[Message, Vector] = {}
      change = 0.0
      for key, old in self.messages.items():
        fresh: Vector = self.compute(*key)
        new: Vector = damping * old + (1.0 - damping) * fresh
        change = max(change, float(np.max(np.abs(new - old))))
        updated[key] = new
      self.messages = updated
      if change < threshold:
        return True, iteration, change
    return False, max_iters, change
# ==================================================================================================


def sum_product(
  graph: FactorGraph,
  evidence: Evidence | None = None,
  schedule: Schedule = Schedule.TREE,
  max_iters: int = LOOPY_MAX_ITERS,
  damping: float = LOOPY_DAMPING,
  threshold: tolerance = CONVERGENCE_THRESHOLD
) -> MarginalSet:
  '''
  Per variable beliefs P(v | evidence).

  Raise `NotATree` for the tree schedule on a cyclic skeleton. A loopy run
  that hits `max_iters` is not an error, see `MarginalSet.converged`.
  '''
  evidence = evidence or Evidence()
  evidence.validate(graph)
  if not 0.0 <= damping < 1.0:
    raise InvalidParameter(f"Damping must lie in [0, 1), got {damping}")
  state = MessagePassing(graph, evidence)
  if schedule is Schedule.TREE:
    state.run_tree()
    return MarginalSet(MappingProxyType(state.beliefs()))
  converged, iterations, change = state.run_loopy(max_iters, damping, threshold)
  return MarginalSet(
    MappingProxyType(state.beliefs()),
    converged=converged,
    iterations=iterations,
    approximate=True,
    max_change=change,
  )
# ------------------------------------------------------------------------------
