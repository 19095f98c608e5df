'''
This module containts enums that used in multiple other modules inside this
package.
'''

# native imports
from enum import Enum
from enum import auto


class EdgeKind(Enum):
  '''
  Kind of an edge between a function node and a variable node.
  '''
  PARENT = 'parent'
  '''variable -> function, the variable is a parent of the function'''
  CHILD = 'child'
  '''function -> variable, the variable is a child of the function'''
  UNDIRECTED = 'undirected'
  '''plain edge without direction'''
  DASHED = 'dashed'
  '''function ⇢ variable, the function normalizes a conditional over it'''

  def is_path_edge(self) -> bool:
    '''Dashed edges never carry a path in independence queries.'''
    return self is not EdgeKind.DASHED
# ------------------------------------------------------------------------------


class Arrival(Enum):
  '''
  Class of a path edge as seen from one of its end nodes.
  '''
  HEAD = auto()
  '''edge is directed into the node'''
  TAIL = auto()
  '''edge is directed out of the node'''
  LATERAL = auto()
  '''edge is undirected'''
# ------------------------------------------------------------------------------


class Verdict(Enum):
  '''
  Answer of the path-blocking rule.

  `NOT_SEPARATED` means "may be dependent", not "proven dependent".
  '''
  SEPARATED = 'separated'
  NOT_SEPARATED = 'not-separated'
# ------------------------------------------------------------------------------


class ModelKind(Enum):
  '''Header keyword of a model file.'''
  FGX = 'fgx'
  BN = 'bn'
  MRF = 'mrf'
# ------------------------------------------------------------------------------


class Schedule(Enum):
  '''Message schedule of the sum-product algorithm.'''
  TREE = 'tree'
  LOOPY = 'loopy'
# ------------------------------------------------------------------------------


class MarginalMethod(Enum):
  '''How `marginal()` computes its answer.'''
  ENUM = 'enum'
  SUMPRODUCT = 'sumproduct'
