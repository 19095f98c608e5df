'''
Collection of objects used for type hinting
'''

# native imports
import sys
from collections.abc import Mapping
from typing import Any
from typing import TypeAlias
from typing import TypedDict

if sys.version_info >= (3, 11):
  from typing import NotRequired
else:
  from typing_extensions import NotRequired

# internal imports
from .primitive_types import tolerance


SCHEMA_MAPPING: TypeAlias = Mapping[str, Any]
'''TypeAlias for JSON schema files'''

JSON_OBJECT: TypeAlias = dict[str, Any]
'''TypeAlias for `--json` command output'''
# ------------------------------------------------------------------------------


# ===== TypedDicts for JSON settings file ==========================================================
class CheckSettingsDict(TypedDict):
  '''JSON contents of JSON settings file: `/check/`'''
  tolerance:              NotRequired[tolerance]
  '''Tolerance of the local normalization check'''


class IndependenceSettingsDict(TypedDict):
  '''JSON contents of JSON settings file: `/independence/`'''
  ci_tolerance:           NotRequired[tolerance]
  '''Tolerance of the numeric conditional independence test'''
  max_given:              NotRequired[int]
  '''Largest given set listed by the `independencies` command'''


class InferenceSettingsDict(TypedDict):
  '''JSON contents of JSON settings file: `/inference/`'''
  enumeration_limit:      NotRequired[int]
  '''Maximum number of joint configurations to enumerate'''
  max_iters:              NotRequired[int]
  '''Iteration cap of loopy sum-product'''
  damping:                NotRequired[float]
  '''Share of the previous message kept per loopy update'''
  convergence_threshold:  NotRequired[tolerance]
  '''Loopy sum-product stops below this message change'''


class OutputSettingsDict(TypedDict):
  '''JSON contents of JSON settings file: `/output/`'''
  color:                  NotRequired[bool]
  '''Color diagnostics on stderr'''
  json_indent:            NotRequired[int]
  '''Indentation of `--json` output, 0 for a single line'''


class SettingsDict(TypedDict):
  '''JSON contents of JSON settings file: `/`'''
  settings_name:          NotRequired[str]
  '''Human readable name of these settings'''
  check:                  NotRequired[CheckSettingsDict]
  independence:           NotRequired[IndependenceSettingsDict]
  inference:              NotRequired[InferenceSettingsDict]
  output:                 NotRequired[OutputSettingsDict]
# ==================================================================================================
