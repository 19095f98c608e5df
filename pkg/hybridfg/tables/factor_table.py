'''
Dense discrete factor tables and their algebra.

Values are stored row-major with the LAST axis varying fastest, the single
layout used by files, memory and examples alike. Summation is delegated to
numpy, whose reductions use pairwise accumulation.
'''

from __future__ import annotations

# native imports
from collections.abc import Iterable
from collections.abc import Mapping
from collections.abc import Sequence
from functools import reduce
from math import prod
from typing import Any

# pip imports
import numpy as np
from numpy.typing import ArrayLike
from numpy.typing import NDArray

# internal imports
from .._interfaces._errors import CardinalityMismatch
from .._interfaces._errors import DuplicateName
from .._interfaces._errors import InvalidCardinality
from .._interfaces._errors import NegativeOrNonFiniteValue
from .._interfaces._errors import TableShapeMismatch
from .._interfaces._errors import UnknownAxis
from .._interfaces._errors import ZeroMass
from .._shared.primitive_types import state_index
from .._shared.primitive_types import tolerance


Axis = tuple[str, int]
'''(variable name, cardinality)'''


# ==================================================================================================
class FactorTable:
  '''
  Non-negative finite table over an ordered scope of discrete variables.

  Instances are immutable, the underlying array is flagged read-only.
  '''
  __slots__ = ('_axes', '_values')
  _axes: tuple[Axis, ...]
  _values: NDArray[np.float64]
  # ----------------------------------------------------------------------------

  def __init__(self, axes: Iterable[Axis], values: ArrayLike) -> None:
    axes = tuple((str(name), int(card)) for name, card in axes)
    names: list[str] = [name for name, _ in axes]
    if len(set(names)) != len(names):
      raise DuplicateName(f"Table axes repeat a variable: {names}")
    for name, card in axes:
      if card < 1:
        raise InvalidCardinality(
          f"Axis {name!r} needs at least one state, got {card}"
        )
    shape: tuple[int, ...] = tuple(card for _, card in axes)
    array: NDArray[np.float64] = np.array(values, dtype=np.float64)
    if array.shape != shape:
      if array.size != prod(shape):
        raise TableShapeMismatch(
          f"Table over {names} needs {prod(shape)} values, got {array.size}"
        )
      array = array.reshape(shape)
    if not np.all(np.isfinite(array)) or np.any(array < 0):
      raise NegativeOrNonFiniteValue(
        f"Table over {names} holds negative or non-finite values"
      )
    array.setflags(write=False)
    self._axes = axes
    self._values = array
  # ----------------------------------------------------------------------------

  # ----- constructors -----
  @classmethod
  def scalar(cls, value: float = 1.0) -> FactorTable:
    '''Table without axes.'''
    return cls((), np.array(value, dtype=np.float64))
  # ----------------------------------------------------------------------------

  @classmethod
  def ones(cls, axes: Iterable[Axis]) -> FactorTable:
    '''All-ones table, the multiplicative identity over `axes`.'''
    axes = tuple(axes)
    return cls(axes, np.ones(tuple(card for _, card in axes)))
  # ----------------------------------------------------------------------------

  @classmethod
  def indicator(cls, name: str, cardinality: int, state: state_index) -> FactorTable:
    '''Point mass on `state` of a single variable (evidence clamp).'''
    if not 0 <= state < cardinality:
      raise UnknownAxis(
        f"State {state} out of range for {name!r} with {cardinality} states"
      )
    values: NDArray[np.float64] = np.zeros(cardinality)
    values[state] = 1.0
    return cls(((name, cardinality),), values)
  # ----------------------------------------------------------------------------

  # ----- accessors -----
  @property
  def axes(self) -> tuple[Axis, ...]:
    return self._axes
  # ----------------------------------------------------------------------------

  @property
  def names(self) -> tuple[str, ...]:
    return tuple(name for name, _ in self._axes)
  # ----------------------------------------------------------------------------

  @property
  def shape(self) -> tuple[int, ...]:
    return tuple(card for _, card in self._axes)
  # ----------------------------------------------------------------------------

  @property
  def values(self) -> NDArray[np.float64]:
    '''Read-only array with one dimension per axis.'''
    return self._values
  # ----------------------------------------------------------------------------

  @property
  def flat(self) -> tuple[float, ...]:
    '''Values in canonical order (last axis fastest).'''
    return tuple(float(v) for v in self._values.ravel())
  # ----------------------------------------------------------------------------

  def cardinality(self, name: str) -> int:
    for axis_name, card in self._axes:
      if axis_name == name:
        return card
    raise UnknownAxis(f"Table has no axis {name!r}")
  # ----------------------------------------------------------------------------

  def value_at(self, assignment: Mapping[str, state_index]) -> float:
    '''
    Evaluate the table at a (super-)assignment of its axes.
    '''
    try:
      index: tuple[int, ...] = tuple(assignment[name] for name in self.names)
    except KeyError as e:
      raise UnknownAxis(f"Assignment misses axis {e.args[0]!r}") from None
    return float(self._values[index])
  # ----------------------------------------------------------------------------

  def total(self) -> float:
    '''Total mass.'''
    return float(self._values.sum())
  # ----------------------------------------------------------------------------

  def transpose(self, order: Sequence[str]) -> FactorTable:
    '''
    Same table with its axes rearranged into `order`
    (a permutation of the axis names).
    '''
    if sorted(order) != sorted(self.names):
      raise UnknownAxis(
        f"Axis order {list(order)} is no permutation of {list(self.names)}"
      )
    if tuple(order) == self.names:
      return self
    permutation: list[int] = [self.names.index(name) for name in order]
    return FactorTable(
      [self._axes[i] for i in permutation],
      np.transpose(self._values, permutation)
    )
  # ----------------------------------------------------------------------------

  def normalized(self) -> FactorTable:
    '''Table divided by its total mass.'''
    mass: float = self.total()
    if mass <= 0.0:
      raise ZeroMass(f"Table over {list(self.names)} has zero mass")
    return FactorTable(self._axes, self._values / mass)
  # ----------------------------------------------------------------------------

  def allclose(self, other: FactorTable, tol: tolerance = 1e-12) -> bool:
    '''
    Pointwise comparison after aligning axis order.
    '''
    if sorted(self._axes) != sorted(other.axes):
      return False
    aligned: FactorTable = other.transpose(self.names)
    return bool(np.all(np.abs(self._values - aligned.values) <= tol))
  # ----------------------------------------------------------------------------

  def __eq__(self, other: Any) -> bool:
    '''Exact equality, axis order included.'''
    if not isinstance(other, FactorTable):
      return NotImplemented
    return (
      self._axes == other._axes
      and bool(np.array_equal(self._values, other._values))
    )

  __hash__ = None  # type: ignore[assignment]
  # ----------------------------------------------------------------------------

  def __repr__(self) -> str:
    return f"FactorTable(axes={list(self._axes)}, values={list(self.flat)})"
# ==================================================================================================


# ------------------------------------------------------------------------------
def _union_axes(tables: Sequence[FactorTable]) -> list[Axis]:
  '''
  Union of all axes in order of first appearance, checking that equal names
  agree on their cardinality.
  '''
  union: dict[str, int] = {}
  for table in tables:
    for name, card in table.axes:
      known: int | None = union.get(name)
      if known is None:
        union[name] = card
      elif known != card:
        raise CardinalityMismatch(
          f"Variable {name!r} appears with {known} and {card} states"
        )
  return list(union.items())
# ------------------------------------------------------------------------------


def _broadcast(table: FactorTable, axes: Sequence[Axis]) -> NDArray[np.float64]:
  '''
  View of `table` transposed and reshaped to broadcast against `axes`.
  '''
  union_names: list[str] = [name for name, _ in axes]
  ordered: list[str] = sorted(table.names, key=union_names.index)
  array: NDArray[np.float64] = table.transpose(ordered).values
  shape: tuple[int, ...] = tuple(
    card if name in table.names else 1 for name, card in axes
  )
  return array.reshape(shape)
# ------------------------------------------------------------------------------


def product(tables: Iterable[FactorTable]) -> FactorTable:
  '''
  Pointwise product over the union of all axes (first-appearance order).

  The empty product is the scalar table 1.
  '''
  tables = list(tables)
  axes: list[Axis] = _union_axes(tables)
  shape: tuple[int, ...] = tuple(card for _, card in axes)
  result: NDArray[np.float64] = reduce(
    np.multiply,
    (_broadcast(table, axes) for table in tables),
    np.ones(shape, dtype=np.float64)
  )
  return FactorTable(axes, result)
# ------------------------------------------------------------------------------


def marginalize(table: FactorTable, out_vars: Iterable[str]) -> FactorTable:
  '''
  Sum `out_vars` out of `table`, the remaining axes keep their relative order.
  '''
  out: set[str] = set(out_vars)
  unknown: set[str] = out - set(table.names)
  if unknown:
    raise UnknownAxis(
      f"Cannot sum over {sorted(unknown)}, table axes are {list(table.names)}"
    )
  if not out:
    return table
  summed: tuple[int, ...] = tuple(
    i for i, name in enumerate(table.names) if name in out
  )
  kept: list[Axis] = [axis for axis in table.axes if axis[0] not in out]
  return FactorTable(kept, table.values.sum(axis=summed))
# ------------------------------------------------------------------------------


def is_normalized_over(
  table: FactorTable,
  variables: Iterable[str],
  tol: tolerance
) -> tuple[bool, float]:
  '''
  Check that summing `variables` out leaves 1 for every configuration of the
  remaining axes.

  Return as tuple (passed, worst_absolute_deviation)
  '''
  sums: FactorTable = marginalize(table, variables)
  worst: float = float(np.max(np.abs(sums.values - 1.0)))
  return worst <= tol, worst
# ------------------------------------------------------------------------------


def normalizer(tables: Iterable[FactorTable], over: Iterable[str]) -> FactorTable:
  '''
  Normalizing function n = 1 / sum_over prod(tables), a table over the axes
  that are not summed.

  Raise `ZeroMass` if any configuration of the remaining axes has zero mass.
  '''
  mass: FactorTable = marginalize(product(tables), over)
  if np.any(mass.values <= 0.0):
    raise ZeroMass(
      f"Normalizer over {list(mass.names)} hits a zero-mass configuration"
    )
  return FactorTable(mass.axes, 1.0 / mass.values)
# ------------------------------------------------------------------------------
