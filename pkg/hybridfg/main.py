'''
hybridfg package entry point (actual code)
'''

# native imports
import sys
from argparse import SUPPRESS
from argparse import ArgumentParser
from argparse import Namespace
from collections.abc import Sequence

# internal imports
from ._interfaces._errors import HybridFGError
from ._interfaces._errors import ParseError
from ._shared.constants import ExitCode
from ._shared.enums import MarginalMethod
from ._shared.helpers_color import ColorText
from ._shared.helpers_print import console_error
from .cli.commands import damping_arg
from .cli.commands import evidence_arg
from .cli.commands import get_all_commands
from .cli.commands import get_command
from .cli.commands import names_arg
from .config.config import Settings
from .config.config import SettingsError
from .config.config import load_settings
from .gallery import REFERENCE_MODELS
from .model.factor_graph import Evidence


def _global_options() -> ArgumentParser:
  '''
  Options accepted before and after the command name.
  Defaults are suppressed so a later occurrence never resets an earlier one.
  '''
  options = ArgumentParser(add_help=False)
  options.add_argument(
    '--settings', metavar='FILE', default=SUPPRESS,
    help='JSON settings file (default: data/config/default.json)'
  )
  options.add_argument(
    '--no-color', action='store_true', default=SUPPRESS,
    help='plain diagnostics on stderr'
  )
  options.add_argument(
    '--json', action='store_true', default=SUPPRESS,
    help='print one JSON object instead of plain text'
  )
  return options
# ------------------------------------------------------------------------------


COMMAND_HELP: dict[str, str] = {
  'check':            'validate and check local normalization',
  'stats':            'count variables, functions and edges',
  'indep':            'path blocking verdict for X and Y given Z',
  'convert':          'convert between fg, bn and mrf',
  'joint':            'normalized joint distribution by enumeration',
  'marginal':         'distribution of one variable',
  'blanket':          'Markov blanket in an undirected factor graph',
  'independencies':   'list separation statements',
  'gallery':          'print a reference model',
}
'''
Help line of every command; the registry in `cli.commands` decides which
commands exist.
'''

COMMANDS_WITHOUT_FILE: frozenset[str] = frozenset({'gallery'})


def _numeric_options(sub: ArgumentParser) -> None:
  sub.add_argument(
    '--numeric', action='store_true',
    help='also check independence on the enumerated joint'
  )
  sub.add_argument(
    '--ci-tol', type=float, default=None, metavar='R',
    help='largest gap still counted as independent'
  )
# ------------------------------------------------------------------------------


def build_parser() -> ArgumentParser:
  options: ArgumentParser = _global_options()
  parser = ArgumentParser(
    prog='hybridfg',
    description='Directed, undirected and hybrid factor graphs',
    parents=[options],
  )
  commands = parser.add_subparsers(dest='command', metavar='COMMAND', required=True)
  subs: dict[str, ArgumentParser] = {}
  for name in get_all_commands():
    sub: ArgumentParser = commands.add_parser(
      name, help=COMMAND_HELP.get(name), parents=[options]
    )
    if name not in COMMANDS_WITHOUT_FILE:
      sub.add_argument('file', metavar='FILE', help='fgx, bn or mrf model file, - for stdin')
    subs[name] = sub

  subs['check'].add_argument('--tol', type=float, default=None, help='normalization tolerance')

  indep: ArgumentParser = subs['indep']
  indep.add_argument('--x', type=names_arg, required=True, metavar='A[,B...]')
  indep.add_argument('--y', type=names_arg, required=True, metavar='C[,D...]')
  indep.add_argument('--given', type=names_arg, default=[], metavar='E[,F...]')
  _numeric_options(indep)

  convert: ArgumentParser = subs['convert']
  convert.add_argument('--to', choices=('fg', 'bn', 'mrf'), required=True)
  convert.add_argument('-o', '--output', metavar='OUT', default=None)

  subs['joint'].add_argument(
    '--evidence', type=evidence_arg, default=Evidence(), metavar='v=k,...'
  )

  single: ArgumentParser = subs['marginal']
  single.add_argument('var', metavar='VAR')
  single.add_argument('--evidence', type=evidence_arg, default=Evidence(), metavar='v=k,...')
  single.add_argument(
    '--method', choices=[m.value for m in MarginalMethod], default=MarginalMethod.ENUM.value
  )
  single.add_argument('--loopy', action='store_true', help='loopy sum-product schedule')
  single.add_argument('--max-iters', type=int, default=None, metavar='N')
  single.add_argument('--damping', type=damping_arg, default=None, metavar='R')

  subs['blanket'].add_argument('var', metavar='VAR')

  listing: ArgumentParser = subs['independencies']
  listing.add_argument('--max-given', type=int, default=None, metavar='K')
  _numeric_options(listing)

  gallery: ArgumentParser = subs['gallery']
  gallery.add_argument('name', choices=sorted(REFERENCE_MODELS), metavar='NAME')
  gallery.add_argument('--seed', type=int, default=None, help='draw random tables')
  return parser
# ------------------------------------------------------------------------------


def _settings_for(args: Namespace) -> Settings:
  settings: Settings = load_settings(getattr(args, 'settings', None))
  return settings.override(
    tolerance=getattr(args, 'tol', None),
    ci_tolerance=getattr(args, 'ci_tol', None),
    max_iters=getattr(args, 'max_iters', None),
    damping=getattr(args, 'damping', None),
    color=False if getattr(args, 'no_color', False) else None,
  )
# ------------------------------------------------------------------------------


def main(argv: Sequence[str] | None = None) -> int:
  '''
  Run one command and return its exit code:
  0 success, 1 validation or semantic failure, 2 parse or usage error.
  '''
  try:
    args: Namespace = build_parser().parse_args(argv)
  except SystemExit as e:
    # argparse exits with 2 on usage errors and with 0 after --help
    return e.code if isinstance(e.code, int) else ExitCode.USAGE
  ColorText.init(not getattr(args, 'no_color', False))
  try:
    settings: Settings = _settings_for(args)
  except SettingsError:
    # printed in subroutine
    return ExitCode.USAGE
  ColorText.init(settings.color)
  source: str = getattr(args, 'file', '') or ''
  try:
    return get_command(args.command)(args, settings)
  except ParseError as e:
    console_error(ColorText.error(e.located(source)))
    return ExitCode.USAGE
  except HybridFGError as e:
    console_error(ColorText.error(
      f"{type(e).__name__}: {e.located(source)}"
    ))
    return ExitCode.FAILURE
  except OSError as e:
    console_error(ColorText.error(f"Failed to access {e.filename or source}: {e.strerror}"))
    return ExitCode.USAGE
  except UnicodeDecodeError:
    console_error(ColorText.error(f"{source} is not valid UTF-8 text"))
    return ExitCode.USAGE
# ------------------------------------------------------------------------------


if __name__ == '__main__':
  sys.exit(main())
