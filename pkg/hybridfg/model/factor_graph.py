'''
The extended factor graph: variables, function nodes and typed edges.

A function node connects to the variables in its scope with one of three
edge kinds (parent, child, undirected) and may carry additional dashed
normalization edges to variables outside its scope. Graphs are validated
once by `build_and_validate()` / `GraphBuilder.build()` and are immutable
afterwards.
'''

from __future__ import annotations

# native imports
from collections.abc import Iterable
from collections.abc import Iterator
from collections.abc import Mapping
from dataclasses import dataclass
from dataclasses import field
from types import MappingProxyType
from typing import Any
from typing import ClassVar

# pip imports
import networkx as nx

# internal imports
from .._interfaces._errors import DashedOverlap
from .._interfaces._errors import DirectedCycle
from .._interfaces._errors import DuplicateName
from .._interfaces._errors import InvalidCardinality
from .._interfaces._errors import InvalidEvidence
from .._interfaces._errors import InvalidName
from .._interfaces._errors import PartitionViolation
from .._interfaces._errors import TableShapeMismatch
from .._interfaces._errors import UnknownNode
from .._interfaces._errors import UnknownVariable
from .._interfaces._model import AbstractModel
from .._shared.enums import EdgeKind
from .._shared.enums import ModelKind
from .._shared.primitive_types import state_index
from ..tables.factor_table import FactorTable


# ==================================================================================================
@dataclass(frozen=True, slots=True)
class Variable:
  '''Discrete variable with `cardinality` states.'''
  name: str
  cardinality: int

  def __post_init__(self) -> None:
    if not self.name:
      raise InvalidName("Variable names must be nonempty")
    if self.cardinality < 1:
      raise InvalidCardinality(
        f"Variable {self.name!r} needs at least one state, "
        f"got {self.cardinality}"
      )
# ==================================================================================================


# ==================================================================================================
@dataclass(frozen=True, slots=True, eq=True)
class FunctionNode:
  '''
  Function node g_k of the factor graph.

  `parent_vars`, `child_vars` and `undirected_vars` partition `scope`,
  `dashed_targets` lie outside of it. The table is indexed by `scope` in
  declaration order.
  '''
  name: str
  scope: tuple[str, ...]
  parent_vars: tuple[str, ...]
  child_vars: tuple[str, ...]
  undirected_vars: tuple[str, ...]
  dashed_targets: tuple[str, ...]
  table: FactorTable = field(compare=True)

  def __post_init__(self) -> None:
    if not self.name:
      raise InvalidName("Function names must be nonempty")
    if len(set(self.scope)) != len(self.scope):
      raise DuplicateName(
        f"Function {self.name!r} lists a scope variable twice: "
        f"{list(self.scope)}"
      )
    groups: list[tuple[str, ...]] = [
      self.parent_vars, self.child_vars, self.undirected_vars
    ]
    listed: list[str] = [name for group in groups for name in group]
    if len(listed) != len(set(listed)) or set(listed) != set(self.scope):
      raise PartitionViolation(
        f"Function {self.name!r}: parents {list(self.parent_vars)}, "
        f"children {list(self.child_vars)} and undirected "
        f"{list(self.undirected_vars)} do not partition the scope "
        f"{list(self.scope)}"
      )
    if len(set(self.dashed_targets)) != len(self.dashed_targets):
      raise DuplicateName(
        f"Function {self.name!r} lists a dashed target twice"
      )
    overlap: set[str] = set(self.dashed_targets) & set(self.scope)
    if overlap:
      raise DashedOverlap(
        f"Function {self.name!r} has dashed edges into its own scope: "
        f"{sorted(overlap)}"
      )
    if self.table.names != self.scope:
      raise TableShapeMismatch(
        f"Function {self.name!r}: table axes {list(self.table.names)} "
        f"differ from scope {list(self.scope)}"
      )
  # ----------------------------------------------------------------------------

  @classmethod
  def create(
    cls,
    name: str,
    table: FactorTable,
    *,
    parents: Iterable[str] = (),
    children: Iterable[str] = (),
    undirected: Iterable[str] | None = None,
    dashed: Iterable[str] = (),
  ) -> FunctionNode:
    '''
    Build a function node whose scope is the table's axis order.

    Scope variables that are neither parents nor children default to
    undirected edges.
    '''
    parent_vars: tuple[str, ...] = tuple(parents)
    child_vars: tuple[str, ...] = tuple(children)
    undirected_vars: tuple[str, ...]
    if undirected is None:
      undirected_vars = tuple(
        v for v in table.names if v not in parent_vars and v not in child_vars
      )
    else:
      undirected_vars = tuple(undirected)
    return cls(
      name=name,
      scope=table.names,
      parent_vars=parent_vars,
      child_vars=child_vars,
      undirected_vars=undirected_vars,
      dashed_targets=tuple(dashed),
      table=table,
    )
  # ----------------------------------------------------------------------------

  def edges(self) -> Iterator[tuple[str, EdgeKind]]:
    '''All edges of this function as (variable, kind), dashed ones last.'''
    for var in self.scope:
      yield var, self.kind_of(var)
    for var in self.dashed_targets:
      yield var, EdgeKind.DASHED
  # ----------------------------------------------------------------------------

  def kind_of(self, var: str) -> EdgeKind:
    if var in self.parent_vars:
      return EdgeKind.PARENT
    if var in self.child_vars:
      return EdgeKind.CHILD
    if var in self.undirected_vars:
      return EdgeKind.UNDIRECTED
    if var in self.dashed_targets:
      return EdgeKind.DASHED
    raise UnknownVariable(f"Function {self.name!r} has no edge to {var!r}")
  # ----------------------------------------------------------------------------

  def is_normalizer(self) -> bool:
    '''
    Normalization function: no children, no undirected edges and at least
    one dashed edge.
    '''
    return (
      not self.child_vars
      and not self.undirected_vars
      and bool(self.dashed_targets)
    )
# ==================================================================================================


# ==================================================================================================
@dataclass(frozen=True)
class Evidence:
  '''Partial assignment of observed variables to state indices.'''
  assignments: Mapping[str, state_index] = field(
    default_factory=lambda: MappingProxyType({})
  )

  def __post_init__(self) -> None:
    object.__setattr__(
      self, 'assignments', MappingProxyType(dict(self.assignments))
    )
  # ----------------------------------------------------------------------------

  def validate(self, model: AbstractModel) -> None:
    '''
    Raise `UnknownVariable` / `InvalidEvidence` unless every observed state
    exists in `model`.
    '''
    for name, state in self.assignments.items():
      card: int = model.cardinality(name)
      if not 0 <= state < card:
        raise InvalidEvidence(
          f"Evidence {name}={state} is out of range, {name!r} has "
          f"{card} states"
        )
  # ----------------------------------------------------------------------------

  def __bool__(self) -> bool:
    return bool(self.assignments)
  # ----------------------------------------------------------------------------

  def __contains__(self, name: object) -> bool:
    return name in self.assignments
# ==================================================================================================


# ==================================================================================================
class FactorGraph(AbstractModel):
  '''
  Validated, immutable extended factor graph.

  Don't construct directly, use `build_and_validate()` or `GraphBuilder`.
  '''
  kind: ClassVar[ModelKind] = ModelKind.FGX
  # Instance variables:
  _variables: tuple[Variable, ...]
  _functions: tuple[FunctionNode, ...]
  _variable_lookup: Mapping[str, Variable]
  _function_lookup: Mapping[str, FunctionNode]
  _incident: Mapping[str, tuple[tuple[str, EdgeKind], ...]]
  '''per node: (neighbor, edge kind) in declaration order'''
  _directed: nx.DiGraph
  '''parent, child and dashed edges as a frozen networkx DiGraph'''
  # ----------------------------------------------------------------------------

  def __init__(
    self,
    variables: tuple[Variable, ...],
    functions: tuple[FunctionNode, ...],
  ) -> None:
    self._variables = variables
    self._functions = functions
    self._variable_lookup = MappingProxyType({v.name: v for v in variables})
    self._function_lookup = MappingProxyType({f.name: f for f in functions})
    incident: dict[str, list[tuple[str, EdgeKind]]] = {
      name: [] for name in [*self._variable_lookup, *self._function_lookup]
    }
    directed: nx.DiGraph = nx.DiGraph()
    directed.add_nodes_from(incident)
    for function in functions:
      for var, kind in function.edges():
        incident[function.name].append((var, kind))
        incident[var].append((function.name, kind))
        if kind is EdgeKind.PARENT:
          directed.add_edge(var, function.name)
        elif kind in (EdgeKind.CHILD, EdgeKind.DASHED):
          directed.add_edge(function.name, var)
    self._incident = MappingProxyType({
      name: tuple(edges) for name, edges in incident.items()
    })
    self._directed = nx.freeze(directed)
  # ----------------------------------------------------------------------------

  # ----- AbstractModel -----
  def variable_names(self) -> list[str]:
    return [v.name for v in self._variables]
  # ----------------------------------------------------------------------------

  def cardinality(self, name: str) -> int:
    return self.variable(name).cardinality
  # ----------------------------------------------------------------------------

  # ----- lookups -----
  @property
  def variables(self) -> tuple[Variable, ...]:
    return self._variables
  # ----------------------------------------------------------------------------

  @property
  def functions(self) -> tuple[FunctionNode, ...]:
    return self._functions
  # ----------------------------------------------------------------------------

  def function_names(self) -> list[str]:
    return [f.name for f in self._functions]
  # ----------------------------------------------------------------------------

  def variable(self, name: str) -> Variable:
    try:
      return self._variable_lookup[name]
    except KeyError:
      raise UnknownVariable(f"Graph has no variable {name!r}") from None
  # ----------------------------------------------------------------------------

  def function(self, name: str) -> FunctionNode:
    try:
      return self._function_lookup[name]
    except KeyError:
      raise UnknownNode(f"Graph has no function {name!r}") from None
  # ----------------------------------------------------------------------------

  def is_variable(self, name: str) -> bool:
    return name in self._variable_lookup
  # ----------------------------------------------------------------------------

  def is_function(self, name: str) -> bool:
    return name in self._function_lookup
  # ----------------------------------------------------------------------------

  # ----- adjacency -----
  def incident(self, node: str) -> tuple[tuple[str, EdgeKind], ...]:
    '''
    Edges at `node` as (neighbor, edge kind). The kind is always named from
    the function's point of view (PARENT means variable -> function).
    '''
    try:
      return self._incident[node]
    except KeyError:
      raise UnknownNode(f"Graph has no node {node!r}") from None
  # ----------------------------------------------------------------------------

  def parent_functions(self, var: str) -> list[str]:
    '''Functions with a child edge into `var`.'''
    self.variable(var)
    return [
      fn for fn, kind in self._incident[var] if kind is EdgeKind.CHILD
    ]
  # ----------------------------------------------------------------------------

  def child_functions(self, var: str) -> list[str]:
    '''Functions that have `var` as a parent.'''
    self.variable(var)
    return [
      fn for fn, kind in self._incident[var] if kind is EdgeKind.PARENT
    ]
  # ----------------------------------------------------------------------------

  def normalizers_of(self, var: str) -> list[str]:
    '''Functions with a dashed edge into `var`.'''
    self.variable(var)
    return [
      fn for fn, kind in self._incident[var] if kind is EdgeKind.DASHED
    ]
  # ----------------------------------------------------------------------------

  def descendants(self, node: str) -> frozenset[str]:
    '''
    Transitive closure over directed edges leaving `node`: parent edges from
    variables to functions, child and dashed edges from functions to
    variables.
    '''
    if node not in self._incident:
      raise UnknownNode(f"Graph has no node {node!r}")
    return frozenset(nx.descendants(self._directed, node))
  # ----------------------------------------------------------------------------

  def ancestors(self, node: str) -> frozenset[str]:
    '''Reverse of `descendants()`.'''
    if node not in self._incident:
      raise UnknownNode(f"Graph has no node {node!r}")
    return frozenset(nx.ancestors(self._directed, node))
  # ----------------------------------------------------------------------------

  def directed_graph(self) -> nx.DiGraph:
    '''Frozen DiGraph of all parent, child and dashed edges.'''
    return self._directed
  # ----------------------------------------------------------------------------

  def is_undirected(self) -> bool:
    '''True if every edge is a plain undirected edge.'''
    return all(
      kind is EdgeKind.UNDIRECTED
      for function in self._functions
      for _, kind in function.edges()
    )
  # ----------------------------------------------------------------------------

  def has_undirected_edges(self) -> bool:
    return any(function.undirected_vars for function in self._functions)
  # ----------------------------------------------------------------------------

  def isolated_variables(self) -> list[str]:
    '''Variables that no function depends on.'''
    in_scope: set[str] = {
      var for function in self._functions for var in function.scope
    }
    return [v.name for v in self._variables if v.name not in in_scope]
  # ----------------------------------------------------------------------------

  def to_builder(self) -> GraphBuilder:
    '''Builder pre-filled with this graph, the way to derive edited graphs.'''
    builder = GraphBuilder()
    for variable in self._variables:
      builder.add_variable(variable.name, variable.cardinality)
    for function in self._functions:
      builder.add_function_node(function)
    return builder
  # ----------------------------------------------------------------------------

  def __eq__(self, other: Any) -> bool:
    if not isinstance(other, FactorGraph):
      return NotImplemented
    return (
      self._variables == other._variables
      and self._functions == other._functions
    )

  __hash__ = None  # type: ignore[assignment]
  # ----------------------------------------------------------------------------

  def __repr__(self) -> str:
    return (
      f"FactorGraph(variables={self.variable_names()}, "
      f"functions={self.function_names()})"
    )
# ==================================================================================================


# ==================================================================================================
class GraphBuilder:
  '''
  Single-threaded collector of variables and functions; `build()` validates
  and returns the immutable `FactorGraph`.
  '''
  variables: list[Variable]
  functions: list[FunctionNode]
  # ----------------------------------------------------------------------------

  def __init__(self) -> None:
    self.variables = []
    self.functions = []
  # ----------------------------------------------------------------------------

  def add_variable(self, name: str, cardinality: int) -> GraphBuilder:
    self.variables.append(Variable(name, cardinality))
    return self
  # ----------------------------------------------------------------------------

  def add_function_node(self, function: FunctionNode) -> GraphBuilder:
    self.functions.append(function)
    return self
  # ----------------------------------------------------------------------------

  def add_function(
    self,
    name: str,
    table: FactorTable,
    *,
    parents: Iterable[str] = (),
    children: Iterable[str] = (),
    undirected: Iterable[str] | None = None,
    dashed: Iterable[str] = (),
  ) -> GraphBuilder:
    '''Add a function whose scope is the table's axis order.'''
    return self.add_function_node(FunctionNode.create(
      name,
      table,
      parents=parents,
      children=children,
      undirected=undirected,
      dashed=dashed,
    ))
  # ----------------------------------------------------------------------------

  def table(self, scope: Iterable[str], values: Any) -> FactorTable:
    '''Table over already added variables, cardinalities looked up by name.'''
    cards: dict[str, int] = {v.name: v.cardinality for v in self.variables}
    axes: list[tuple[str, int]] = []
    for name in scope:
      if name not in cards:
        raise UnknownVariable(f"Unknown variable {name!r} in table scope")
      axes.append((name, cards[name]))
    return FactorTable(axes, values)
  # ----------------------------------------------------------------------------

  def build(self) -> FactorGraph:
    return build_and_validate(self.variables, self.functions)
# ==================================================================================================


# ------------------------------------------------------------------------------
def build_and_validate(
  variables: Iterable[Variable],
  functions: Iterable[FunctionNode],
) -> FactorGraph:
  '''
  Check the graph-level invariants and return the immutable `FactorGraph`.

  Per-node invariants (scope partition, dashed overlap, table axes) are
  checked when `Variable` / `FunctionNode` objects are created.
  '''
  variables = tuple(variables)
  functions = tuple(functions)
  # ----- names -----
  seen: set[str] = set()
  for node_name in [v.name for v in variables] + [f.name for f in functions]:
    if node_name in seen:
      raise DuplicateName(f"Node name {node_name!r} is used more than once")
    seen.add(node_name)
  cards: dict[str, int] = {v.name: v.cardinality for v in variables}
  # ----- references and shapes -----
  for function in functions:
    for var in (*function.scope, *function.dashed_targets):
      if var not in cards:
        raise UnknownVariable(
          f"Function {function.name!r} refers to unknown variable {var!r}"
        )
    for axis_name, axis_card in function.table.axes:
      if cards[axis_name] != axis_card:
        raise TableShapeMismatch(
          f"Function {function.name!r}: axis {axis_name!r} has {axis_card} "
          f"states, the variable has {cards[axis_name]}"
        )
  graph = FactorGraph(variables, functions)
  # ----- directed cycles (dashed edges included) -----
  try:
    cycle: list[tuple[Any, ...]] = nx.find_cycle(graph.directed_graph())
  except nx.NetworkXNoCycle:
    return graph
  nodes: list[str] = [str(edge[0]) for edge in cycle] + [str(cycle[0][0])]
  raise DirectedCycle(f"Directed cycle {' -> '.join(nodes)}")
# ------------------------------------------------------------------------------


def descendants(graph: FactorGraph, node: str) -> frozenset[str]:
  '''Module level alias of `FactorGraph.descendants()`.'''
  return graph.descendants(node)
# ------------------------------------------------------------------------------


def incident(graph: FactorGraph, node: str) -> tuple[tuple[str, EdgeKind], ...]:
  '''Module level alias of `FactorGraph.incident()`.'''
  return graph.incident(node)
# ------------------------------------------------------------------------------


def parents_of(graph: FactorGraph, node: str) -> list[str]:
  '''
  Directed predecessors of `node`: the parent variables of a function, or the
  functions with a child edge into a variable.
  '''
  if graph.is_function(node):
    return list(graph.function(node).parent_vars)
  return graph.parent_functions(node)
# ------------------------------------------------------------------------------


def children_of(graph: FactorGraph, node: str) -> list[str]:
  '''
  Directed successors of `node` without dashed edges: the child variables of
  a function, or the functions a variable is a parent of.
  '''
  if graph.is_function(node):
    return list(graph.function(node).child_vars)
  return graph.child_functions(node)
# ------------------------------------------------------------------------------
