'''
Brute-force oracles: the normalized joint, marginals and numeric
conditional independence, all by enumerating every configuration.
'''

from __future__ import annotations

# native imports
from collections.abc import Iterable
from collections.abc import Mapping
from dataclasses import dataclass

# pip imports
import numpy as np
from numpy.typing import NDArray

# internal imports
from .._interfaces._errors import OverlappingSets
from .._interfaces._errors import UnknownAxis
from .._interfaces._errors import ZeroMass
from .._shared.constants import CI_TOLERANCE
from .._shared.constants import CONVERGENCE_THRESHOLD
from .._shared.constants import ENUMERATION_LIMIT
from .._shared.constants import LOOPY_DAMPING
from .._shared.constants import LOOPY_MAX_ITERS
from .._shared.constants import ZERO_PROBABILITY_THRESHOLD
from .._shared.enums import MarginalMethod
from .._shared.enums import Schedule
from .._shared.primitive_types import state_index
from .._shared.primitive_types import tolerance
from ..model.factor_graph import Evidence
from ..model.factor_graph import FactorGraph
from ..tables.factor_table import FactorTable
from ..tables.factor_table import marginalize
from ..tables.factor_table import product
from ..tables.functions import unnormalized_joint
from .sum_product import MarginalSet
from .sum_product import sum_product


# ==================================================================================================
@dataclass(frozen=True, slots=True)
class JointTable:
  '''Normalized joint over every variable of a graph, declaration order.'''
  table: FactorTable

  def __post_init__(self) -> None:
    if abs(self.table.total() - 1.0) > 1e-9:
      raise ZeroMass(
        f"Joint table has total mass {self.table.total()!r} instead of 1"
      )
  # ----------------------------------------------------------------------------

  @property
  def names(self) -> tuple[str, ...]:
    return self.table.names
  # ----------------------------------------------------------------------------

  def marginal(self, variables: Iterable[str]) -> FactorTable:
    '''Joint of `variables`, axes in the requested order.'''
    variables = list(variables)
    unknown: list[str] = [v for v in variables if v not in self.table.names]
    if unknown:
      raise UnknownAxis(f"Joint has no variables {unknown}")
    summed: FactorTable = marginalize(
      self.table, [name for name in self.table.names if name not in variables]
    )
    return summed.transpose(variables)
  # ----------------------------------------------------------------------------

  def probability(self, assignment: Mapping[str, state_index]) -> float:
    '''Probability of a partial assignment.'''
    return self.marginal(list(assignment)).value_at(assignment)
# ==================================================================================================


# ------------------------------------------------------------------------------
def joint_enumerate(
  graph: FactorGraph,
  evidence: Evidence | None = None,
  limit: int = ENUMERATION_LIMIT
) -> JointTable:
  '''
  prod_k g_k over every configuration, clamped to `evidence` and rescaled by
  the normalization constant. Observed variables keep their axes as point
  masses.
  '''
  evidence = evidence or Evidence()
  evidence.validate(graph)
  joint: FactorTable = unnormalized_joint(graph, limit)
  if evidence:
    joint = product([joint, *(
      FactorTable.indicator(name, graph.cardinality(name), state)
      for name, state in evidence.assignments.items()
    )])
  if joint.total() <= 0.0:
    raise ZeroMass(
      "The model assigns zero mass to the evidence"
      if evidence else "The product of all functions has zero total mass"
    )
  return JointTable(joint.normalized())
# ------------------------------------------------------------------------------


def marginal(
  graph: FactorGraph,
  var: str,
  evidence: Evidence | None = None,
  method: MarginalMethod = MarginalMethod.ENUM,
  *,
  schedule: Schedule = Schedule.TREE,
  max_iters: int = LOOPY_MAX_ITERS,
  damping: float = LOOPY_DAMPING,
  threshold: tolerance = CONVERGENCE_THRESHOLD,
  limit: int = ENUMERATION_LIMIT
) -> NDArray[np.float64]:
  '''P(var | evidence) as a normalized vector.'''
  graph.variable(var)
  if method is MarginalMethod.SUMPRODUCT:
    result: MarginalSet = sum_product(
      graph, evidence, schedule, max_iters, damping, threshold
    )
    return result[var]
  return joint_enumerate(graph, evidence, limit).marginal([var]).values.copy()
# ------------------------------------------------------------------------------


def _check_disjoint(
  graph: FactorGraph,
  x: list[str],
  y: list[str],
  given: list[str]
) -> None:
  for name in [*x, *y, *given]:
    graph.variable(name)
  for first, second in ((x, y), (x, given), (y, given)):
    common: set[str] = set(first) & set(second)
    if common:
      raise OverlappingSets(f"Variable sets share {sorted(common)}")
  if len(set(x)) != len(x) or len(set(y)) != len(y) or len(set(given)) != len(given):
    raise OverlappingSets("A variable is listed twice in the same set")
# ------------------------------------------------------------------------------


def ci_gap(
  graph: FactorGraph,
  x: Iterable[str],
  y: Iterable[str],
  given: Iterable[str] = (),
  limit: int = ENUMERATION_LIMIT
) -> float:
  '''
  max |P(x, y | g) - P(x | g) P(y | g)| over all configurations, skipping
  conditioning configurations g with P(g) <= 1e-12.
  '''
  x, y, given = list(x), list(y), list(given)
  _check_disjoint(graph, x, y, given)
  if not x or not y:
    return 0.0
  joint: JointTable = joint_enumerate(graph, None, limit)
  block: FactorTable = joint.marginal([*given, *x, *y])
  g_size: int = int(np.prod([graph.cardinality(v) for v in given], dtype=np.int64))
  x_size: int = int(np.prod([graph.cardinality(v) for v in x], dtype=np.int64))
  y_size: int = int(np.prod([graph.cardinality(v) for v in y], dtype=np.int64))
  cube: NDArray[np.float64] = block.values.reshape(g_size, x_size, y_size)
  p_given: NDArray[np.float64] = cube.sum(axis=(1, 2))
  relevant: NDArray[np.bool_] = p_given > ZERO_PROBABILITY_THRESHOLD
  if not np.any(relevant):
    return 0.0
  conditional: NDArray[np.float64] = (
    cube[relevant] / p_given[relevant][:, None, None]
  )
  p_x: NDArray[np.float64] = conditional.sum(axis=2)
  p_y: NDArray[np.float64] = conditional.sum(axis=1)
  independent: NDArray[np.float64] = p_x[:, :, None] * p_y[:, None, :]
  return float(np.max(np.abs(conditional - independent)))
# ------------------------------------------------------------------------------


def numeric_ci(
  graph: FactorGraph,
  x: Iterable[str],
  y: Iterable[str],
  given: Iterable[str] = (),
  tol: tolerance = CI_TOLERANCE,
  limit: int = ENUMERATION_LIMIT
) -> bool:
  '''True iff `ci_gap()` stays within `tol`.'''
  return ci_gap(graph, x, y, given, limit) <= tol
# ------------------------------------------------------------------------------
