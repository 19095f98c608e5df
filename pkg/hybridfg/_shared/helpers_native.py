'''
Helper functions for the rest of the package.
Internal imports to other parts of the package and 3rd party modules
are not allowed!
'''

# native imports
from collections.abc import Iterable


def format_real(value: float) -> str:
  '''
  Shortest decimal text of `value` that parses back to the identical float.

  Integral values keep their `.0` suffix so tables stay visibly real-valued.
  '''
  return repr(float(value))
# ------------------------------------------------------------------------------


def split_names(text: str) -> list[str]:
  '''
  Split a comma separated command line list (`a,b,c`) into names,
  dropping empty entries.
  '''
  return [name.strip() for name in text.split(',') if name.strip()]
# ------------------------------------------------------------------------------


def unique_name(base: str, taken: Iterable[str]) -> str:
  '''
  Return `base`, or `base_2`, `base_3`, ... whichever is not in `taken` first.
  '''
  taken_set: set[str] = set(taken)
  if base not in taken_set:
    return base
  counter: int = 2
  while f"{base}_{counter}" in taken_set:
    counter += 1
  return f"{base}_{counter}"
# ------------------------------------------------------------------------------
