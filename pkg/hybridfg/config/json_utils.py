'''
This module handles reading and validating JSON settings files.
Validation failures are reported with the position of the offending key in
the settings file, taken from a source map of the raw text.
'''

# native imports
import json
from json import JSONDecodeError
from pathlib import Path
from typing import Any

# pip imports
from json_source_map import calculate
from json_source_map.types import Entry
from json_source_map.types import Location
from json_source_map.types import TSourceMap
from jsonschema import Draft7Validator
from jsonschema import ValidationError
from jsonschema.exceptions import best_match

# internal imports
from .._shared.constants import DEFAULT_SETTINGS_FILE
from .._shared.constants import SETTINGS_SCHEMA_FILE
from .._shared.helpers_color import ColorText
from .._shared.helpers_print import console_error
from .._shared.types import SCHEMA_MAPPING
from .._shared.types import SettingsDict


_NOWHERE: Entry = Entry(Location(0, 0, 0), Location(0, 0, 0))


def read_json_file(filename: str | Path, file_descriptor: str) -> tuple[Any, str]:
  '''
  Open and read JSON file.

  Return as tuple (parsed_json_data, raw_file_contents)
  '''
  path = Path(filename)
  try:
    raw: str = path.read_text(encoding='utf-8')
  except OSError:
    console_error(ColorText.error(
      f"Failed to open {file_descriptor} file {path.absolute()}"
    ))
    raise
  try:
    return json.loads(raw), raw
  except JSONDecodeError as e:
    console_error(ColorText.error(
      f"Failed to decode JSON file {path.absolute()}\n"
      f"Reason: {e.msg} (line {e.lineno}, column {e.colno})"
    ))
    raise
# ------------------------------------------------------------------------------


def json_pointer(error: ValidationError) -> str:
  '''JSON pointer of the value `error` complains about ('/' for the root).'''
  return '/' + '/'.join(str(part) for part in error.absolute_path)
# ------------------------------------------------------------------------------


def validation_report(error: ValidationError, json_str: str) -> list[str]:
  '''
  Lines describing where and why `error` occurred.

  The span starts at the key when the value has one (object members) and at
  the value otherwise (array items, the document root).
  '''
  pointer: str = json_pointer(error)
  source_map: TSourceMap = calculate(json_str)
  entry: Entry = source_map.get('' if pointer == '/' else pointer, _NOWHERE)
  start: Location = entry.key_start or entry.value_start
  end: Location = entry.value_end
  lines: list[str] = [
    f"-- From line {start.line + 1}, column {start.column + 1} "
    f"to line {end.line + 1}, column {end.column + 1}",
    f"Key: {pointer}",
    f"Reason: {error.message}",
  ]
  schema: Any = error.schema
  description: Any = schema.get('description') if isinstance(schema, dict) else None
  if description:
    lines.append(f"Description: {description}")
  return lines
# ------------------------------------------------------------------------------


def read_settings_file(filename: str | Path = DEFAULT_SETTINGS_FILE) -> SettingsDict:
  '''
  Read and validate JSON settings file.

  When the file breaks several schema rules only the most relevant one is
  reported before the ValidationError is raised again.
  '''
  json_data: SettingsDict
  json_str: str
  json_data, json_str = read_json_file(filename, 'settings')
  schema: SCHEMA_MAPPING
  schema, _ = read_json_file(SETTINGS_SCHEMA_FILE, 'settings schema')
  error: ValidationError | None = best_match(
    Draft7Validator(schema).iter_errors(json_data)
  )
  if error is not None:
    console_error(ColorText.error(f"Validation error in {Path(filename).absolute()}"))
    for line in validation_report(error, json_str):
      console_error(ColorText.error(line))
    raise error
  return json_data
# ------------------------------------------------------------------------------
