'''
hybridfg package entry point
'''


# ------------------------------------------------------------------------------
required_packages: list[tuple[str, str]] = [
  ('colorama', 'colorama'),
  ('json-source-map', 'json_source_map'),
  ('jsonschema', 'jsonschema'),
  ('networkx', 'networkx'),
  ('numpy', 'numpy'),
]
'''Format: [(pypi_name, package_name), ...]'''
# ------------------------------------------------------------------------------


def check_pip_packages() -> None:
  '''
  This function is only supposed to called when python is executing the package
  with -m, before the rest of the package make any imports!

  Every missing package is reported at once, together with the single pip
  command that installs all of them.
  '''
  # native imports
  import sys
  from importlib.util import find_spec

  missing: list[str] = [
    pypi_name for pypi_name, package_name in required_packages
    if package_name not in sys.modules and find_spec(package_name) is None
  ]
  if missing:
    raise ImportError(
      f"Missing packages {', '.join(missing)}. Use command\n"
      f"pip install {' '.join(missing)}"
    )
# ------------------------------------------------------------------------------


# ===== PACKAGE ENTRY POINT ========================================================================
if __name__ == '__main__':
  check_pip_packages()
  # native imports
  import sys

  # internal imports
  from .main import main
  sys.exit(main())
# ==================================================================================================
