'''
Listing of the conditional independencies a factor graph expresses.
'''

from __future__ import annotations

# native imports
from dataclasses import dataclass
from itertools import combinations

# internal imports
from ..model.factor_graph import FactorGraph
from .bayes_ball import IndependenceQuery
from .bayes_ball import separated


# ==================================================================================================
@dataclass(frozen=True, slots=True)
class IndependenceStatement:
  '''x is separated from y given `given`.'''
  x: str
  y: str
  given: tuple[str, ...]

  def __str__(self) -> str:
    given: str = ', '.join(self.given) if self.given else '{}'
    return f"{self.x} _|_ {self.y} | {given}"
# ==================================================================================================


def independencies(graph: FactorGraph, max_given: int = 2) -> list[IndependenceStatement]:
  '''
  Every separation statement between two single variables with a given set
  of at most `max_given` other variables.

  Pairs and given sets follow variable declaration order.
  '''
  names: list[str] = graph.variable_names()
  statements: list[IndependenceStatement] = []
  for x, y in combinations(names, 2):
    others: list[str] = [name for name in names if name not in (x, y)]
    for size in range(min(max_given, len(others)) + 1):
      for given in combinations(others, size):
        query = IndependenceQuery.of([x], [y], given)
        if separated(graph, query).is_separated:
          statements.append(IndependenceStatement(x, y, given))
  return statements
# ------------------------------------------------------------------------------
