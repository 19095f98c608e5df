'''
Console output helpers for the command line interface.
Internal imports to other parts of the package are not allowed!

Answers go to stdout, diagnostics to stderr.
'''

# native imports
import sys
from threading import Lock
from typing import Any


__print_lock: Lock = Lock()


def console_print(*args: Any, **kwargs: Any) -> None:
  '''thread safe print function (stdout)'''
  with __print_lock:
    print(*args, **kwargs)
# ------------------------------------------------------------------------------


def console_error(*args: Any, **kwargs: Any) -> None:
  '''thread safe print function for diagnostics (stderr)'''
  with __print_lock:
    print(*args, **{**kwargs, 'file': sys.stderr})
# ------------------------------------------------------------------------------

