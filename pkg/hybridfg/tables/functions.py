'''
Table functions that need a whole factor graph.
'''

from __future__ import annotations

# native imports
from math import prod
from typing import TYPE_CHECKING

# internal imports
from .._interfaces._errors import EnumerationLimitExceeded
from .._interfaces._errors import ZeroMass
from .._shared.constants import ENUMERATION_LIMIT
from .factor_table import FactorTable
from .factor_table import product


if TYPE_CHECKING:
  from ..model.factor_graph import FactorGraph


# ------------------------------------------------------------------------------
def check_enumeration_size(graph: FactorGraph, limit: int = ENUMERATION_LIMIT) -> int:
  '''
  Number of joint configurations of `graph`.

  Raise `EnumerationLimitExceeded` above `limit`.
  '''
  size: int = prod(v.cardinality for v in graph.variables)
  if size > limit:
    raise EnumerationLimitExceeded(
      f"Model has {size} joint configurations, enumeration is capped at {limit}"
    )
  return size
# ------------------------------------------------------------------------------


def unnormalized_joint(
  graph: FactorGraph,
  limit: int = ENUMERATION_LIMIT
) -> FactorTable:
  '''
  Product of all function tables over every variable of `graph`, axes in
  variable declaration order.

  Variables without any function enter through an implicit all-ones factor.
  '''
  check_enumeration_size(graph, limit)
  joint: FactorTable = product([
    FactorTable.ones(graph.axes()),
    *(function.table for function in graph.functions),
  ])
  return joint.transpose(graph.variable_names())
# ------------------------------------------------------------------------------


def normalization_constant(
  graph: FactorGraph,
  limit: int = ENUMERATION_LIMIT
) -> float:
  '''
  The global constant g0 = 1 / sum over all configurations of prod_k g_k.

  Raise `ZeroMass` if the product has no mass at all.
  '''
  mass: float = unnormalized_joint(graph, limit).total()
  if mass <= 0.0:
    raise ZeroMass("The product of all functions has zero total mass")
  return 1.0 / mass
# ------------------------------------------------------------------------------
