'''
This module contains all application constants.

Imports from other modules of this package are NOT allowed!
(except primitive_types)
'''

# native imports
from enum import IntEnum
from pathlib import Path
from re import Pattern
from re import compile
from typing import Final

# internal imports
from .primitive_types import tolerance


# ##############################################################################
# ##### Exit Codes #############################################################
# ##############################################################################
class ExitCode(IntEnum):
  '''
  Exit codes for the command line interface.
  '''
  SUCCESS = 0
  '''
  Command finished and its answer was printed.
  '''
  FAILURE = 1
  '''
  Validation or semantic failure.
  (Invalid model, failed normalization check, impossible evidence, ...)
  '''
  USAGE = 2
  '''
  Parse or usage error.
  (Unreadable file, syntax error in a model file, unknown flag, bad settings)
  '''


# ##############################################################################
# ##### Numeric Constants ######################################################
# ##############################################################################
NORMALIZATION_TOLERANCE: Final[tolerance] = 1e-9
'''
Constant `1e-9`

Default tolerance of the local normalization check, relative to 1.0.
'''

CI_TOLERANCE: Final[tolerance] = 1e-9
'''
Constant `1e-9`

Default tolerance of the numeric conditional independence test.
'''

ZERO_PROBABILITY_THRESHOLD: Final[float] = 1e-12
'''
Constant `1e-12`

Conditioning configurations with probability at or below this value are
skipped by the numeric conditional independence test.
'''

ENUMERATION_LIMIT: Final[int] = 10 ** 7
'''
Constant `10_000_000`

Maximum number of joint configurations brute-force enumeration will touch.
'''

LOOPY_MAX_ITERS: Final[int] = 200
'''
Constant `200`

Default iteration cap of the loopy sum-product schedule.
'''

LOOPY_DAMPING: Final[float] = 0.5
'''
Constant `0.5`

Default damping of the loopy sum-product schedule.
(share of the previous message kept in each update)
'''

CONVERGENCE_THRESHOLD: Final[tolerance] = 1e-10
'''
Constant `1e-10`

Loopy sum-product stops once no message changes by more than this value.
'''


# ##############################################################################
# ##### Format Constants #######################################################
# ##############################################################################
FORMAT_VERSION: Final[int] = 1
'''
Constant `1`

Version number written into (and required in) model file headers.
'''

JSON_SCHEMA_VERSION: Final[int] = 1
'''
Constant `1`

Value of the `"schema"` key in every `--json` output object.
'''

DEFAULT_INDENT_LEVEL: Final = 2
'''
Constant: `2`

How many spaces JSON indentation should use.
'''

NAME_PATTERN: Final[Pattern[str]] = compile(r'^[A-Za-z_][A-Za-z0-9_.\-]*$')
'''
Identifiers of variables and functions in model files.
(no whitespace, no `|`, no `#`, no `=`, no `,`)
'''

COMMENT_CHAR: Final = '#'
'''Everything after this character on a model file line is ignored.'''


# ##############################################################################
# ##### Path Constants #########################################################
# ##############################################################################
REPO_FOLDER: Final[Path] = Path(__file__).absolute().parents[2]
'''Constant Path object pointing to the repository root.'''
DATA_FOLDER: Final[Path] = REPO_FOLDER / 'data'
'''Constant Path object pointing to the data folder.'''
SCHEMA_FOLDER: Final[Path] = DATA_FOLDER / 'schema'
'''Constant Path object pointing to the schema folder.'''
CONFIG_FOLDER: Final[Path] = DATA_FOLDER / 'config'
'''Constant Path object pointing to the config folder.'''
MODELS_FOLDER: Final[Path] = DATA_FOLDER / 'models'
'''Constant Path object pointing to the golden model folder.'''

SETTINGS_SCHEMA_FILE: Final[Path] = SCHEMA_FOLDER / 'settings_schema.json'
'''Constant Path object pointing to the JSON schema for settings files.'''

DEFAULT_SETTINGS_FILE: Final[Path] = CONFIG_FOLDER / 'default.json'
'''Constant Path object pointing to the default settings file.'''
