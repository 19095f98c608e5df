'''
Markov random field endpoint of the conversions.
'''

from __future__ import annotations

# native imports
from collections.abc import Iterable
from dataclasses import dataclass
from itertools import combinations
from typing import Any
from typing import ClassVar

# pip imports
import networkx as nx

# internal imports
from .._interfaces._errors import DuplicateName
from .._interfaces._errors import InvalidMarkovNet
from .._interfaces._errors import TableShapeMismatch
from .._interfaces._errors import UnknownVariable
from .._interfaces._model import AbstractModel
from .._shared.enums import ModelKind
from ..model.factor_graph import Variable
from ..tables.factor_table import FactorTable


Edge = tuple[str, str]
'''unordered variable pair, stored with the smaller name first'''


def make_edge(a: str, b: str) -> Edge:
  return (a, b) if a <= b else (b, a)
# ------------------------------------------------------------------------------


# ==================================================================================================
@dataclass(frozen=True, slots=True)
class Potential:
  '''phi over a clique, table axes in `clique` order.'''
  clique: tuple[str, ...]
  table: FactorTable

  def __post_init__(self) -> None:
    if self.table.names != self.clique:
      raise TableShapeMismatch(
        f"Potential over {list(self.clique)} has table axes "
        f"{list(self.table.names)}"
      )
# ==================================================================================================


# ==================================================================================================
class MarkovNet(AbstractModel):
  '''
  Validated Markov random field: undirected edges plus optional potentials,
  each defined on a clique of the edge set.

  Equality ignores edge order, potential order and table axis order.
  '''
  kind: ClassVar[ModelKind] = ModelKind.MRF
  # Instance variables:
  _variables: tuple[Variable, ...]
  _edges: tuple[Edge, ...]
  _potentials: tuple[Potential, ...] | None
  _graph: nx.Graph
  # ----------------------------------------------------------------------------

  def __init__(
    self,
    variables: Iterable[Variable],
    edges: Iterable[tuple[str, str]],
    potentials: Iterable[Potential] | None = None,
  ) -> None:
    self._variables = tuple(variables)
    cards: dict[str, int] = {}
    for variable in self._variables:
      if variable.name in cards:
        raise DuplicateName(f"Variable {variable.name!r} is declared twice")
      cards[variable.name] = variable.cardinality
    graph: nx.Graph = nx.Graph()
    graph.add_nodes_from(cards)
    ordered: list[Edge] = []
    for a, b in edges:
      for name in (a, b):
        if name not in cards:
          raise UnknownVariable(f"Edge refers to unknown variable {name!r}")
      if a == b:
        raise InvalidMarkovNet(f"Self-loop on {a!r}")
      if graph.has_edge(a, b):
        raise InvalidMarkovNet(f"Edge {a} - {b} is listed twice")
      graph.add_edge(a, b)
      ordered.append(make_edge(a, b))
    self._edges = tuple(ordered)
    self._graph = nx.freeze(graph)
    if potentials is not None:
      potentials = tuple(potentials)
      for potential in potentials:
        self._check_potential(potential, cards)
    self._potentials = potentials
  # ----------------------------------------------------------------------------

  def _check_potential(self, potential: Potential, cards: dict[str, int]) -> None:
    for name, card in potential.table.axes:
      if name not in cards:
        raise UnknownVariable(
          f"Potential refers to unknown variable {name!r}"
        )
      if cards[name] != card:
        raise TableShapeMismatch(
          f"Potential over {list(potential.clique)}: axis {name!r} has "
          f"{card} states, the variable has {cards[name]}"
        )
    for a, b in combinations(potential.clique, 2):
      if not self._graph.has_edge(a, b):
        raise InvalidMarkovNet(
          f"Potential over {list(potential.clique)} is no clique, "
          f"edge {a} - {b} is missing"
        )
  # ----------------------------------------------------------------------------

  def variable_names(self) -> list[str]:
    return [v.name for v in self._variables]
  # ----------------------------------------------------------------------------

  def cardinality(self, name: str) -> int:
    for variable in self._variables:
      if variable.name == name:
        return variable.cardinality
    raise UnknownVariable(f"Markov network has no variable {name!r}")
  # ----------------------------------------------------------------------------

  @property
  def variables(self) -> tuple[Variable, ...]:
    return self._variables
  # ----------------------------------------------------------------------------

  @property
  def edges(self) -> tuple[Edge, ...]:
    return self._edges
  # ----------------------------------------------------------------------------

  @property
  def potentials(self) -> tuple[Potential, ...] | None:
    return self._potentials
  # ----------------------------------------------------------------------------

  def graph(self) -> nx.Graph:
    '''Frozen networkx view of the undirected structure.'''
    return self._graph
  # ----------------------------------------------------------------------------

  def neighbors(self, name: str) -> set[str]:
    if name not in self._graph:
      raise UnknownVariable(f"Markov network has no variable {name!r}")
    return set(self._graph.neighbors(name))
  # ----------------------------------------------------------------------------

  def _canonical_potentials(self) -> dict[frozenset[str], FactorTable] | None:
    if self._potentials is None:
      return None
    canonical: dict[frozenset[str], FactorTable] = {}
    for potential in self._potentials:
      canonical[frozenset(potential.clique)] = potential.table.transpose(
        sorted(potential.clique)
      )
    return canonical
  # ----------------------------------------------------------------------------

  def __eq__(self, other: Any) -> bool:
    if not isinstance(other, MarkovNet):
      return NotImplemented
    if self._variables != other._variables:
      return False
    if set(self._edges) != set(other._edges):
      return False
    if (self._potentials is None) != (other._potentials is None):
      return False
    if self._potentials is not None and other._potentials is not None:
      if len(self._potentials) != len(other._potentials):
        return False
    return self._canonical_potentials() == other._canonical_potentials()

  __hash__ = None  # type: ignore[assignment]
  # ----------------------------------------------------------------------------

  def __repr__(self) -> str:
    return (
      f"MarkovNet(variables={self.variable_names()}, "
      f"edges={list(self._edges)})"
    )
# ==================================================================================================
