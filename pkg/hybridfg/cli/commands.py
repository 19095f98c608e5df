'''
This module handles the command line commands.

Every `cmd_*` function is a thin wrapper around one library call: it loads
the model, calls the library and prints the answer. Plain text goes to
stdout, or one JSON object when `--json` is given. Diagnostics go to stderr.
'''

# native imports
import json
import sys
from argparse import ArgumentTypeError
from argparse import Namespace
from collections.abc import Callable
from collections.abc import Iterable
from pathlib import Path

# pip imports
import numpy as np
from numpy.random import default_rng
from numpy.typing import NDArray

# internal imports
from .._shared.constants import JSON_SCHEMA_VERSION
from .._shared.constants import ExitCode
from .._shared.enums import MarginalMethod
from .._shared.enums import Schedule
from .._shared.helpers_color import ColorText
from .._shared.helpers_native import format_real
from .._shared.helpers_native import split_names
from .._shared.helpers_print import console_error
from .._shared.helpers_print import console_print
from .._shared.types import JSON_OBJECT
from ..config.config import Settings
from ..convert.bayes_net import BayesNet
from ..convert.functions import bn_to_fg
from ..convert.functions import fg_to_bn
from ..convert.functions import fg_to_mrf
from ..convert.functions import mrf_to_fg
from ..gallery import REFERENCE_MODELS
from ..independence.bayes_ball import IndependenceQuery
from ..independence.bayes_ball import SeparationResult
from ..independence.bayes_ball import separated
from ..independence.blanket import markov_blanket_undirected
from ..independence.statements import IndependenceStatement
from ..independence.statements import independencies
from ..inference.enumeration import JointTable
from ..inference.enumeration import ci_gap
from ..inference.enumeration import joint_enumerate
from ..inference.enumeration import marginal
from ..inference.sum_product import MarginalSet
from ..inference.sum_product import sum_product
from ..model.factor_graph import Evidence
from ..model.factor_graph import FactorGraph
from ..model.normalization import NormalizationReport
from ..model.normalization import check_local_normalization
from ..model.stats import StructureStats
from ..model.stats import structure_stats
from .formats import Model
from .formats import parse_model
from .formats import serialize_model


Handler = Callable[[Namespace, Settings], ExitCode]


# ********** argument types ************************************************************************
def evidence_arg(text: str) -> Evidence:
  '''
  argparse type for `v=k,w=j` evidence lists.
  '''
  assignments: dict[str, int] = {}
  for item in split_names(text):
    name, sep, state = (part.strip() for part in item.partition('='))
    if not sep or not name or not state.isdigit():
      raise ArgumentTypeError(f"expected NAME=STATE, got {item!r}")
    if name in assignments:
      raise ArgumentTypeError(f"variable {name!r} observed twice")
    assignments[name] = int(state)
  return Evidence(assignments)
# ------------------------------------------------------------------------------


def names_arg(text: str) -> list[str]:
  '''argparse type for `a,b,c` variable lists.'''
  return split_names(text)
# ------------------------------------------------------------------------------


def damping_arg(text: str) -> float:
  '''argparse type for a damping ratio in [0, 1).'''
  try:
    value = float(text)
  except ValueError:
    raise ArgumentTypeError(f"invalid damping {text!r}") from None
  if not 0.0 <= value < 1.0:
    raise ArgumentTypeError(f"damping must lie in [0, 1), got {text}")
  return value
# **************************************************************************************************


# ********** helper functions **********************************************************************
def read_source(filename: str) -> str:
  '''Model text from `filename`, `-` reads stdin.'''
  if filename == '-':
    return sys.stdin.read()
  return Path(filename).read_text(encoding='utf-8')
# ------------------------------------------------------------------------------


def load_model(filename: str) -> Model:
  '''Parse the model stored in `filename`.'''
  return parse_model(read_source(filename)).body
# ------------------------------------------------------------------------------


def as_factor_graph(model: Model) -> FactorGraph:
  '''Factor graph of any model kind, converted where necessary.'''
  if isinstance(model, FactorGraph):
    return model
  if isinstance(model, BayesNet):
    return bn_to_fg(model)
  return mrf_to_fg(model)
# ------------------------------------------------------------------------------


def emit(args: Namespace, settings: Settings, payload: JSON_OBJECT, text: list[str]) -> None:
  '''
  Print `text` line by line, or `payload` as versioned JSON with `--json`.
  '''
  if getattr(args, 'json', False):
    document: JSON_OBJECT = {
      'schema': JSON_SCHEMA_VERSION, 'command': args.command, **payload
    }
    console_print(json.dumps(document, indent=settings.json_indent or None))
    return
  for line in text:
    console_print(line)
# ------------------------------------------------------------------------------


def _state_lines(name: str, vector: NDArray[np.float64]) -> list[str]:
  return [f"{name}={k} {format_real(p)}" for k, p in enumerate(vector)]
# ------------------------------------------------------------------------------


def numeric_gap(
  graph: FactorGraph,
  x: Iterable[str],
  y: Iterable[str],
  given: Iterable[str],
  settings: Settings
) -> tuple[bool, float]:
  '''
  Return as tuple (independent within `settings.ci_tolerance`, gap) for the
  enumerated joint of `graph`.
  '''
  gap: float = ci_gap(graph, x, y, given, settings.enumeration_limit)
  return gap <= settings.ci_tolerance, gap
# ------------------------------------------------------------------------------


def _report_unsound(count: int, settings: Settings) -> None:
  console_error(ColorText.error(
    f"{count} separated statement(s) are numerically dependent beyond "
    f"{settings.ci_tolerance:g}, run 'check' on the model"
  ))
# **************************************************************************************************


# ========== Command: check ========================================================================
def cmd_check(args: Namespace, settings: Settings) -> ExitCode:
  '''
  `check FILE [--tol R]`: validate and run the local normalization check.
  '''
  graph: FactorGraph = as_factor_graph(load_model(args.file))
  report: NormalizationReport = check_local_normalization(
    graph, settings.tolerance
  )
  for warning in report.warnings:
    console_error(ColorText.warning(f"Warning: {warning}"))
  components: list[JSON_OBJECT] = []
  text: list[str] = []
  for result in report.components:
    component = result.component
    components.append({
      'functions': list(component.functions),
      'children': list(component.children),
      'normalizers': list(component.normalizers),
      'passed': result.passed,
      'worst_deviation': result.worst_deviation,
    })
    text.append(
      f"{'ok' if result.passed else 'FAILED'} "
      f"{','.join(component.functions)} over {','.join(component.children)} "
      f"(deviation {result.worst_deviation:.3g})"
    )
  text.append('normalized' if report.passed else 'not-normalized')
  emit(args, settings, {
    'passed': report.passed,
    'tolerance': report.tol,
    'worst_deviation': report.worst_deviation,
    'components': components,
    'warnings': list(report.warnings),
  }, text)
  if not report.passed:
    console_error(ColorText.error(
      f"{len(report.failures)} directed component(s) are not normalized "
      f"within {report.tol:g}"
    ))
    return ExitCode.FAILURE
  return ExitCode.SUCCESS
# ==================================================================================================


# ========== Command: stats ========================================================================
def cmd_stats(args: Namespace, settings: Settings) -> ExitCode:
  '''
  `stats FILE`: structure statistics of the model's factor graph.
  '''
  stats: StructureStats = structure_stats(as_factor_graph(load_model(args.file)))
  data: JSON_OBJECT = stats.as_dict()
  text: list[str] = [
    f"variables {stats.n_variables}",
    f"functions {stats.n_functions}",
    f"edges {stats.n_edges}",
  ]
  text.extend(f"edges.{kind} {count}" for kind, count in data['edges_by_kind'].items())
  text.extend(
    f"scope.{size} {count}" for size, count in data['scope_histogram'].items()
  )
  if stats.isolated_variables:
    text.append(f"isolated {' '.join(stats.isolated_variables)}")
  emit(args, settings, data, text)
  return ExitCode.SUCCESS
# ==================================================================================================


# ========== Command: indep ========================================================================
def cmd_indep(args: Namespace, settings: Settings) -> ExitCode:
  '''
  `indep FILE --x A,B --y C [--given D,E] [--numeric [--ci-tol R]]`: path
  blocking verdict, with a witness walk on a second line when not separated.
  `--numeric` adds the gap measured on the enumerated joint.
  '''
  graph: FactorGraph = as_factor_graph(load_model(args.file))
  query = IndependenceQuery.of(args.x, args.y, args.given)
  result: SeparationResult = separated(graph, query)
  text: list[str] = [result.verdict.value]
  if result.witness:
    text.append(' '.join(result.witness))
  payload: JSON_OBJECT = {
    'x': sorted(query.x_set),
    'y': sorted(query.y_set),
    'given': sorted(query.given_set),
    'verdict': result.verdict.value,
    'witness': list(result.witness),
  }
  if not getattr(args, 'numeric', False):
    emit(args, settings, payload, text)
    return ExitCode.SUCCESS
  independent, gap = numeric_gap(
    graph, query.x_set, query.y_set, query.given_set, settings
  )
  text.append(f"numeric {'independent' if independent else 'dependent'} gap {gap:.3g}")
  payload['numeric'] = {
    'independent': independent, 'gap': gap, 'tolerance': settings.ci_tolerance
  }
  emit(args, settings, payload, text)
  if result.is_separated and not independent:
    _report_unsound(1, settings)
    return ExitCode.FAILURE
  return ExitCode.SUCCESS
# ==================================================================================================


# ========== Command: convert ======================================================================
def cmd_convert(args: Namespace, settings: Settings) -> ExitCode:
  '''
  `convert FILE --to fg|bn|mrf [-o OUT]`: print or write the converted model.
  '''
  graph: FactorGraph = as_factor_graph(load_model(args.file))
  converted: Model
  match args.to:
    case 'fg':
      converted = graph
    case 'bn':
      converted = fg_to_bn(graph, settings.tolerance)
    case _:
      converted = fg_to_mrf(graph)
  text: str = serialize_model(converted)
  if args.output:
    Path(args.output).write_text(text, encoding='utf-8')
    console_error(ColorText.good(f"Wrote {args.to} model to {args.output}"))
  if getattr(args, 'json', False):
    emit(args, settings, {
      'kind': converted.kind.value, 'model': text, 'output': args.output
    }, [])
  elif not args.output:
    console_print(text, end='')
  return ExitCode.SUCCESS
# ==================================================================================================


# ========== Command: joint ========================================================================
def cmd_joint(args: Namespace, settings: Settings) -> ExitCode:
  '''
  `joint FILE [--evidence v=k,...]`: the normalized joint, one configuration
  per line.
  '''
  graph: FactorGraph = as_factor_graph(load_model(args.file))
  joint: JointTable = joint_enumerate(
    graph, args.evidence, settings.enumeration_limit
  )
  values: NDArray[np.float64] = joint.table.values
  text: list[str] = [' '.join(joint.names)]
  for index in np.ndindex(*joint.table.shape):
    states: str = ' '.join(str(k) for k in index)
    text.append(f"{states} {format_real(values[index])}")
  emit(args, settings, {
    'variables': list(joint.names),
    'cardinalities': list(joint.table.shape),
    'evidence': dict(args.evidence.assignments),
    'table': list(joint.table.flat),
  }, text)
  return ExitCode.SUCCESS
# ==================================================================================================


# ========== Command: marginal =====================================================================
def cmd_marginal(args: Namespace, settings: Settings) -> ExitCode:
  '''
  `marginal FILE VAR [--evidence ...] [--method enum|sumproduct] [--loopy]`
  '''
  graph: FactorGraph = as_factor_graph(load_model(args.file))
  method = MarginalMethod(args.method)
  payload: JSON_OBJECT = {
    'variable': args.var,
    'method': method.value,
    'evidence': dict(args.evidence.assignments),
  }
  vector: NDArray[np.float64]
  if method is MarginalMethod.SUMPRODUCT:
    graph.variable(args.var)
    result: MarginalSet = sum_product(
      graph,
      args.evidence,
      Schedule.LOOPY if args.loopy else Schedule.TREE,
      settings.max_iters,
      settings.damping,
      settings.convergence_threshold,
    )
    vector = result[args.var]
    payload.update({
      'approximate': result.approximate,
      'converged': result.converged,
      'iterations': result.iterations,
    })
    if not result.converged:
      console_error(ColorText.warning(
        f"Warning: loopy sum-product did not converge in {result.iterations} "
        f"iterations (last change {result.max_change:.3g})"
      ))
  else:
    vector = marginal(
      graph, args.var, args.evidence, limit=settings.enumeration_limit
    )
  payload['distribution'] = [float(p) for p in vector]
  emit(args, settings, payload, _state_lines(args.var, vector))
  return ExitCode.SUCCESS
# ==================================================================================================


# ========== Command: blanket ======================================================================
def cmd_blanket(args: Namespace, settings: Settings) -> ExitCode:
  '''
  `blanket FILE VAR`: Markov blanket in an undirected factor graph.
  '''
  graph: FactorGraph = as_factor_graph(load_model(args.file))
  blanket: frozenset[str] = markov_blanket_undirected(graph, args.var)
  ordered: list[str] = [name for name in graph.variable_names() if name in blanket]
  emit(args, settings, {'variable': args.var, 'blanket': ordered}, [' '.join(ordered)])
  return ExitCode.SUCCESS
# ==================================================================================================


# ========== Command: independencies ===============================================================
def cmd_independencies(args: Namespace, settings: Settings) -> ExitCode:
  '''
  `independencies FILE [--max-given K] [--numeric [--ci-tol R]]`: every
  separated pair of single variables with given sets of at most K variables.
  `--numeric` appends the gap of each statement on the enumerated joint.
  '''
  graph: FactorGraph = as_factor_graph(load_model(args.file))
  max_given: int = args.max_given if args.max_given is not None else settings.max_given
  statements: list[IndependenceStatement] = independencies(graph, max_given)
  entries: list[JSON_OBJECT] = [
    {'x': s.x, 'y': s.y, 'given': list(s.given)} for s in statements
  ]
  text: list[str] = [str(s) for s in statements]
  unsound: int = 0
  if getattr(args, 'numeric', False):
    for index, statement in enumerate(statements):
      independent, gap = numeric_gap(
        graph, [statement.x], [statement.y], statement.given, settings
      )
      entries[index].update({'independent': independent, 'gap': gap})
      text[index] = f"{text[index]} gap {gap:.3g}"
      unsound += not independent
  emit(args, settings, {'max_given': max_given, 'statements': entries}, text)
  if unsound:
    _report_unsound(unsound, settings)
    return ExitCode.FAILURE
  return ExitCode.SUCCESS
# ==================================================================================================


# ========== Command: gallery ======================================================================
def cmd_gallery(args: Namespace, settings: Settings) -> ExitCode:
  '''
  `gallery NAME [--seed N]`: print a reference model, random tables when a
  seed is given.
  '''
  rng = default_rng(args.seed) if args.seed is not None else None
  text: str = serialize_model(REFERENCE_MODELS[args.name](rng))
  if getattr(args, 'json', False):
    emit(args, settings, {'name': args.name, 'model': text}, [])
  else:
    console_print(text, end='')
  return ExitCode.SUCCESS
# ==================================================================================================


def get_all_commands() -> list[str]:
  '''Get a list of all available commands.'''
  return list(_cmd2func_lookup_dict.keys())
# ------------------------------------------------------------------------------


def get_command(name: str) -> Handler:
  return _cmd2func_lookup_dict[name]
# ------------------------------------------------------------------------------


_cmd2func_lookup_dict: dict[str, Handler] = {
  'check':            cmd_check,
  'stats':            cmd_stats,
  'indep':            cmd_indep,
  'convert':          cmd_convert,
  'joint':            cmd_joint,
  'marginal':         cmd_marginal,
  'blanket':          cmd_blanket,
  'independencies':   cmd_independencies,
  'gallery':          cmd_gallery,
}
'''
Dictionary for translating the command name to a callable function.
'''
