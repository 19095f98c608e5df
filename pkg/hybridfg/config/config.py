'''
This module turns the JSON settings file into the `Settings` used by the
command line interface.
'''

# native imports
from dataclasses import dataclass
from dataclasses import replace
from json import JSONDecodeError
from pathlib import Path
from typing import Any

# pip imports
from jsonschema import ValidationError

# internal imports
from .._shared.constants import CI_TOLERANCE
from .._shared.constants import CONVERGENCE_THRESHOLD
from .._shared.constants import DEFAULT_INDENT_LEVEL
from .._shared.constants import DEFAULT_SETTINGS_FILE
from .._shared.constants import ENUMERATION_LIMIT
from .._shared.constants import LOOPY_DAMPING
from .._shared.constants import LOOPY_MAX_ITERS
from .._shared.constants import NORMALIZATION_TOLERANCE
from .._shared.primitive_types import tolerance
from .._shared.types import CheckSettingsDict
from .._shared.types import IndependenceSettingsDict
from .._shared.types import InferenceSettingsDict
from .._shared.types import OutputSettingsDict
from .._shared.types import SettingsDict
from .json_utils import read_settings_file


# ==================================================================================================
@dataclass(frozen=True)
class Settings:
  '''
  Dataclass for storing all tunable numeric and output settings
  '''
  tolerance: tolerance = NORMALIZATION_TOLERANCE
  ci_tolerance: tolerance = CI_TOLERANCE
  max_given: int = 2
  enumeration_limit: int = ENUMERATION_LIMIT
  max_iters: int = LOOPY_MAX_ITERS
  damping: float = LOOPY_DAMPING
  convergence_threshold: tolerance = CONVERGENCE_THRESHOLD
  color: bool = True
  json_indent: int = DEFAULT_INDENT_LEVEL
  # ----------------------------------------------------------------------------

  def override(self, **changes: Any) -> 'Settings':
    '''Copy with every change that is not None applied.'''
    return replace(self, **{k: v for k, v in changes.items() if v is not None})
# ==================================================================================================


def extract_settings(settings: SettingsDict) -> Settings:
  '''
  Create a new Settings instance and set relevant data from the settings file.
  '''
  check_dict: CheckSettingsDict = settings.get('check', {})
  independence_dict: IndependenceSettingsDict = settings.get('independence', {})
  inference_dict: InferenceSettingsDict = settings.get('inference', {})
  output_dict: OutputSettingsDict = settings.get('output', {})
  return Settings(
    tolerance=float(check_dict.get('tolerance', NORMALIZATION_TOLERANCE)),
    ci_tolerance=float(independence_dict.get('ci_tolerance', CI_TOLERANCE)),
    max_given=int(independence_dict.get('max_given', 2)),
    enumeration_limit=int(
      inference_dict.get('enumeration_limit', ENUMERATION_LIMIT)
    ),
    max_iters=int(inference_dict.get('max_iters', LOOPY_MAX_ITERS)),
    damping=float(inference_dict.get('damping', LOOPY_DAMPING)),
    convergence_threshold=float(
      inference_dict.get('convergence_threshold', CONVERGENCE_THRESHOLD)
    ),
    color=bool(output_dict.get('color', True)),
    json_indent=int(output_dict.get('json_indent', DEFAULT_INDENT_LEVEL)),
  )
# ------------------------------------------------------------------------------


class SettingsError(Exception):
  '''
  Raised when a settings file can't be read or fails validation.
  The reason has already been printed.
  '''
  pass


def load_settings(settings_arg: str | None = None) -> Settings:
  '''
  Read settings from `settings_arg`, or from the default settings file if
  it exists. Without any file the built-in defaults apply.
  '''
  path: Path
  if settings_arg:
    path = Path(settings_arg)
  elif DEFAULT_SETTINGS_FILE.is_file():
    path = DEFAULT_SETTINGS_FILE
  else:
    return Settings()
  try:
    settings_dict: SettingsDict = read_settings_file(path)
  except (OSError, JSONDecodeError, ValidationError) as e:
    # printed in subroutine
    raise SettingsError(str(path)) from e
  return extract_settings(settings_dict)
# ------------------------------------------------------------------------------
