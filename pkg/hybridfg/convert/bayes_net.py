'''
Bayesian network endpoint of the conversions.
'''

from __future__ import annotations

# native imports
from collections.abc import Iterable
from collections.abc import Mapping
from dataclasses import dataclass
from types import MappingProxyType
from typing import Any
from typing import ClassVar

# pip imports
import networkx as nx

# internal imports
from .._interfaces._errors import DirectedCycle
from .._interfaces._errors import DuplicateName
from .._interfaces._errors import InvalidBayesNet
from .._interfaces._errors import TableShapeMismatch
from .._interfaces._errors import UnknownVariable
from .._interfaces._model import AbstractModel
from .._shared.constants import NORMALIZATION_TOLERANCE
from .._shared.enums import ModelKind
from ..model.factor_graph import Variable
from ..tables.factor_table import FactorTable
from ..tables.factor_table import is_normalized_over


# ==================================================================================================
@dataclass(frozen=True, slots=True)
class CPD:
  '''P(child | parents), table axes are the parents in order, child last.'''
  child: str
  parents: tuple[str, ...]
  table: FactorTable

  def __post_init__(self) -> None:
    expected: tuple[str, ...] = (*self.parents, self.child)
    if self.table.names != expected:
      raise TableShapeMismatch(
        f"CPD of {self.child!r}: table axes {list(self.table.names)} should "
        f"be {list(expected)}"
      )
# ==================================================================================================


# ==================================================================================================
class BayesNet(AbstractModel):
  '''
  Validated Bayesian network: one CPD per variable, acyclic parent relation,
  every CPD normalized over its child.

  CPDs are kept in variable declaration order.
  '''
  kind: ClassVar[ModelKind] = ModelKind.BN
  # Instance variables:
  _variables: tuple[Variable, ...]
  _cpds: Mapping[str, CPD]
  # ----------------------------------------------------------------------------

  def __init__(
    self,
    variables: Iterable[Variable],
    cpds: Iterable[CPD],
    tol: float = NORMALIZATION_TOLERANCE
  ) -> None:
    self._variables = tuple(variables)
    cards: dict[str, int] = {}
    for variable in self._variables:
      if variable.name in cards:
        raise DuplicateName(f"Variable {variable.name!r} is declared twice")
      cards[variable.name] = variable.cardinality
    by_child: dict[str, CPD] = {}
    for cpd in cpds:
      if cpd.child in by_child:
        raise InvalidBayesNet(f"Variable {cpd.child!r} has more than one CPD")
      for name, card in cpd.table.axes:
        if name not in cards:
          raise UnknownVariable(
            f"CPD of {cpd.child!r} refers to unknown variable {name!r}"
          )
        if cards[name] != card:
          raise TableShapeMismatch(
            f"CPD of {cpd.child!r}: axis {name!r} has {card} states, "
            f"the variable has {cards[name]}"
          )
      by_child[cpd.child] = cpd
    missing: list[str] = [name for name in cards if name not in by_child]
    if missing:
      raise InvalidBayesNet(f"Variables without a CPD: {missing}")
    self._cpds = MappingProxyType({name: by_child[name] for name in cards})
    self._check_acyclic()
    for cpd in self._cpds.values():
      passed, worst = is_normalized_over(cpd.table, [cpd.child], tol)
      if not passed:
        raise InvalidBayesNet(
          f"CPD of {cpd.child!r} is not normalized over its child "
          f"(worst deviation {worst:g})"
        )
  # ----------------------------------------------------------------------------

  def _check_acyclic(self) -> None:
    dag: nx.DiGraph = self.dag()
    try:
      cycle: list[tuple[Any, ...]] = nx.find_cycle(dag)
    except nx.NetworkXNoCycle:
      return
    nodes: list[str] = [str(edge[0]) for edge in cycle] + [str(cycle[0][0])]
    raise DirectedCycle(f"Directed cycle {' -> '.join(nodes)}")
  # ----------------------------------------------------------------------------

  def variable_names(self) -> list[str]:
    return [v.name for v in self._variables]
  # ----------------------------------------------------------------------------

  def cardinality(self, name: str) -> int:
    for variable in self._variables:
      if variable.name == name:
        return variable.cardinality
    raise UnknownVariable(f"Bayesian network has no variable {name!r}")
  # ----------------------------------------------------------------------------

  @property
  def variables(self) -> tuple[Variable, ...]:
    return self._variables
  # ----------------------------------------------------------------------------

  @property
  def cpds(self) -> tuple[CPD, ...]:
    return tuple(self._cpds.values())
  # ----------------------------------------------------------------------------

  def cpd(self, child: str) -> CPD:
    try:
      return self._cpds[child]
    except KeyError:
      raise UnknownVariable(f"Bayesian network has no variable {child!r}") from None
  # ----------------------------------------------------------------------------

  def parents(self, child: str) -> tuple[str, ...]:
    return self.cpd(child).parents
  # ----------------------------------------------------------------------------

  def edge_count(self) -> int:
    return sum(len(cpd.parents) for cpd in self._cpds.values())
  # ----------------------------------------------------------------------------

  def dag(self) -> nx.DiGraph:
    '''Parent relation as networkx DiGraph (parent -> child).'''
    dag: nx.DiGraph = nx.DiGraph()
    dag.add_nodes_from(self.variable_names())
    for cpd in self._cpds.values():
      dag.add_edges_from((parent, cpd.child) for parent in cpd.parents)
    return dag
  # ----------------------------------------------------------------------------

  def __eq__(self, other: Any) -> bool:
    if not isinstance(other, BayesNet):
      return NotImplemented
    return (
      self._variables == other._variables
      and self.cpds == other.cpds
    )

  __hash__ = None  # type: ignore[assignment]
  # ----------------------------------------------------------------------------

  def __repr__(self) -> str:
    edges: list[str] = [
      f"{parent}->{cpd.child}"
      for cpd in self._cpds.values() for parent in cpd.parents
    ]
    return f"BayesNet(variables={self.variable_names()}, edges={edges})"
# ==================================================================================================
