'''
Structural statistics of a factor graph.
'''

from __future__ import annotations

# native imports
from collections import Counter
from dataclasses import dataclass
from typing import Any

# internal imports
from .._shared.enums import EdgeKind
from .factor_graph import FactorGraph


# ==================================================================================================
@dataclass(frozen=True, slots=True)
class StructureStats:
  n_variables: int
  n_functions: int
  edges_by_kind: dict[EdgeKind, int]
  scope_histogram: dict[int, int]
  '''scope size -> number of functions'''
  isolated_variables: tuple[str, ...]

  @property
  def n_edges(self) -> int:
    '''Number of scope edges, dashed edges excluded.'''
    return sum(
      count for kind, count in self.edges_by_kind.items()
      if kind is not EdgeKind.DASHED
    )

  def as_dict(self) -> dict[str, Any]:
    '''JSON ready representation.'''
    return {
      'variables': self.n_variables,
      'functions': self.n_functions,
      'edges': self.n_edges,
      'edges_by_kind': {
        kind.value: self.edges_by_kind[kind] for kind in EdgeKind
      },
      'scope_histogram': {
        str(size): count for size, count in sorted(self.scope_histogram.items())
      },
      'isolated_variables': list(self.isolated_variables),
    }
# ==================================================================================================


def structure_stats(graph: FactorGraph) -> StructureStats:
  '''Count variables, functions, edges per kind and scope sizes.'''
  kinds: Counter[EdgeKind] = Counter(
    kind for function in graph.functions for _, kind in function.edges()
  )
  return StructureStats(
    n_variables=len(graph.variables),
    n_functions=len(graph.functions),
    edges_by_kind={kind: kinds.get(kind, 0) for kind in EdgeKind},
    scope_histogram=dict(Counter(len(f.scope) for f in graph.functions)),
    isolated_variables=tuple(graph.isolated_variables()),
  )
# ------------------------------------------------------------------------------
