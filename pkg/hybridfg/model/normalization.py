'''
Local normalization condition.

Every maximal set of functions and variables joined by edges that point from
functions to variables (child edges and dashed normalization edges) forms a
directed component. Undirected functions living entirely on the component's
variables belong to it as well (the coupling term of a chain component).
The product of the component's functions must sum to one over its variables
for every configuration of the remaining (parent) variables.
'''

from __future__ import annotations

# native imports
from dataclasses import dataclass
from dataclasses import field

# pip imports
import networkx as nx

# internal imports
from .._shared.constants import NORMALIZATION_TOLERANCE
from .._shared.primitive_types import tolerance
from ..tables.factor_table import FactorTable
from ..tables.factor_table import is_normalized_over
from ..tables.factor_table import product
from .factor_graph import FactorGraph


# ==================================================================================================
@dataclass(frozen=True, slots=True)
class DirectedComponent:
  functions: tuple[str, ...]
  '''member functions in declaration order'''
  children: tuple[str, ...]
  '''variables the component is normalized over, declaration order'''
  normalizers: tuple[str, ...]
  '''members that only normalize (no child edges, dashed edges)'''
# ==================================================================================================


# ==================================================================================================
@dataclass(frozen=True, slots=True)
class ComponentReport:
  '''Result for one directed component.'''
  component: DirectedComponent
  passed: bool
  worst_deviation: float
# ==================================================================================================


# ==================================================================================================
@dataclass(frozen=True, slots=True)
class NormalizationReport:
  '''Per component verdicts plus structural warnings.'''
  components: tuple[ComponentReport, ...]
  tol: tolerance
  warnings: tuple[str, ...] = field(default=())

  @property
  def passed(self) -> bool:
    return all(report.passed for report in self.components)

  @property
  def worst_deviation(self) -> float:
    return max(
      (report.worst_deviation for report in self.components),
      default=0.0
    )

  @property
  def failures(self) -> tuple[ComponentReport, ...]:
    return tuple(report for report in self.components if not report.passed)
# ==================================================================================================


# ------------------------------------------------------------------------------
def directed_components(graph: FactorGraph) -> list[DirectedComponent]:
  '''
  Directed components of `graph`, sorted by their first function.
  '''
  skeleton: nx.Graph = nx.Graph()
  for function in graph.functions:
    for var in (*function.child_vars, *function.dashed_targets):
      skeleton.add_edge(function.name, var)
  targets: set[str] = {
    node for node in skeleton.nodes if graph.is_variable(node)
  }
  for function in graph.functions:
    if function.child_vars or not function.undirected_vars:
      continue
    if all(var in targets for var in function.undirected_vars):
      for var in function.undirected_vars:
        skeleton.add_edge(function.name, var)
  function_order: dict[str, int] = {
    name: i for i, name in enumerate(graph.function_names())
  }
  variable_order: dict[str, int] = {
    name: i for i, name in enumerate(graph.variable_names())
  }
  components: list[DirectedComponent] = []
  for nodes in nx.connected_components(skeleton):
    functions: list[str] = sorted(
      (n for n in nodes if n in function_order), key=function_order.__getitem__
    )
    children: list[str] = sorted(
      (n for n in nodes if n in variable_order), key=variable_order.__getitem__
    )
    components.append(DirectedComponent(
      functions=tuple(functions),
      children=tuple(children),
      normalizers=tuple(
        name for name in functions if graph.function(name).is_normalizer()
      ),
    ))
  components.sort(key=lambda c: function_order[c.functions[0]])
  return components
# ------------------------------------------------------------------------------


def check_local_normalization(
  graph: FactorGraph,
  tol: tolerance = NORMALIZATION_TOLERANCE
) -> NormalizationReport:
  '''
  Check every directed component of `graph` for normalization over its
  children. Failures are reported, not raised.

  Variables without any function are listed as warnings.
  '''
  reports: list[ComponentReport] = []
  for component in directed_components(graph):
    combined: FactorTable = product(
      graph.function(name).table for name in component.functions
    )
    passed, worst = is_normalized_over(combined, component.children, tol)
    reports.append(ComponentReport(component, passed, worst))
  warnings: list[str] = [
    f"Variable {name!r} has no function attached, it is treated as uniform"
    for name in graph.isolated_variables()
  ]
  return NormalizationReport(tuple(reports), tol, tuple(warnings))
# ------------------------------------------------------------------------------
