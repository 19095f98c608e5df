'''
Model Interface
Provide an Abstract Base Class as reference for other modules.
'''

# native imports
from abc import ABC
from abc import abstractmethod
from collections.abc import Iterable
from typing import ClassVar

# internal imports
from .._shared.enums import ModelKind


# ==================================================================================================
class AbstractModel(ABC):
  '''Interface class for the three model kinds (factor graph, BN, MRF)'''
  # Class variables:
  kind: ClassVar[ModelKind]
  # ----------------------------------------------------------------------------

  @abstractmethod
  def variable_names(self) -> list[str]:
    '''
    Names of all variables in declaration order.
    '''
    raise NotImplementedError  # pragma: no cover
  # ----------------------------------------------------------------------------

  @abstractmethod
  def cardinality(self, name: str) -> int:
    '''
    Number of states of variable `name`.

    Raise `UnknownVariable` if the model has no such variable.
    '''
    raise NotImplementedError  # pragma: no cover
  # ----------------------------------------------------------------------------

  def axes(self, names: Iterable[str] | None = None) -> list[tuple[str, int]]:
    '''(name, cardinality) pairs, all variables if `names` is omitted.'''
    if names is None:
      names = self.variable_names()
    return [(name, self.cardinality(name)) for name in names]
# ==================================================================================================
