'''
Markov blankets of undirected factor graphs.
'''

# internal imports
from .._interfaces._errors import NotUndirected
from ..model.factor_graph import FactorGraph


def markov_blanket_undirected(graph: FactorGraph, var: str) -> frozenset[str]:
  '''
  Second neighbors of `var`: every variable sharing a function with it.

  Only defined for graphs whose edges are all undirected.
  '''
  graph.variable(var)
  if not graph.is_undirected():
    raise NotUndirected(
      "Markov blankets are only defined for purely undirected factor graphs"
    )
  blanket: set[str] = set()
  for function_name, _ in graph.incident(var):
    blanket.update(graph.function(function_name).scope)
  blanket.discard(var)
  return frozenset(blanket)
# ------------------------------------------------------------------------------
