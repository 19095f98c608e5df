'''
Command line interface, driven through `main(argv)`.
'''

# native imports
import io
import json
from collections.abc import Callable
from pathlib import Path

# pip imports
import pytest

# local imports
from hybridfg._shared.constants import JSON_SCHEMA_VERSION
from hybridfg._shared.constants import ExitCode
from hybridfg._shared.enums import ModelKind
from hybridfg.cli.commands import get_all_commands
from hybridfg.cli.formats import parse_model
from hybridfg.convert.bayes_net import BayesNet
from hybridfg.gallery import triangle
from hybridfg.main import COMMAND_HELP
from hybridfg.main import build_parser
from hybridfg.main import main
from tests.conftest import golden


Capture = pytest.CaptureFixture[str]

UNNORMALIZED = 'fgx 1\nvar x 2\nfactor p\n  scope x\n  children x\n  table 0.5 0.6\nend\n'
TOO_SHORT = 'fgx 1\nvar x 2\nfactor p\n  scope x\n  children x\n  table 0.5\nend\n'
SKEWED_COLLIDER = (
  'fgx 1\nvar x 2\nvar y 2\nvar z 2\n'
  'factor p_x\n  scope x\n  children x\n  table 0.5 0.5\nend\n'
  'factor p_y\n  scope y\n  children y\n  table 0.5 0.5\nend\n'
  'factor k\n  scope x y z\n  parents x y\n  children z\n  table 1 1 1 1 1 1 5 5\nend\n'
)
'''x and y are separated at k, whose table is not normalized over z'''


def run(capsys: Capture, *argv: str) -> tuple[int, list[str], str]:
  '''Exit code, stdout lines and stderr of one invocation.'''
  code = main(['--no-color', *argv])
  out, err = capsys.readouterr()
  return code, out.splitlines(), err


class TestIndep:
  def test_separated(self, capsys: Capture) -> None:
    code, out, _ = run(
      capsys, 'indep', golden('mixture_of_experts.fgx'), '--x', 'c1', '--y', 'c0',
      '--given', 'm,z'
    )
    assert code == ExitCode.SUCCESS
    assert out == ['separated']

  def test_not_separated_with_witness(self, capsys: Capture) -> None:
    code, out, _ = run(
      capsys, 'indep', golden('mixture_of_experts.fgx'), '--x', 'c1', '--y', 'c0',
      '--given', 'z'
    )
    assert code == ExitCode.SUCCESS
    assert out[0] == 'not-separated'
    walk = out[1].split()
    assert walk[0] == 'c1'
    assert walk[-1] == 'c0'

  def test_overlapping_sets_fail(self, capsys: Capture) -> None:
    code, _, err = run(
      capsys, 'indep', golden('triangle.fgx'), '--x', 'x', '--y', 'x'
    )
    assert code == ExitCode.FAILURE
    assert 'OverlappingSets' in err

  def test_json(self, capsys: Capture) -> None:
    code, out, _ = run(
      capsys, '--json', 'indep', golden('chain_component.fgx'), '--x', 'a', '--y', 'b',
      '--given', 'c'
    )
    document = json.loads('\n'.join(out))
    assert code == ExitCode.SUCCESS
    assert document['schema'] == JSON_SCHEMA_VERSION
    assert document['command'] == 'indep'
    assert document['verdict'] == 'not-separated'
    assert document['given'] == ['c']

  def test_numeric_agrees(self, capsys: Capture) -> None:
    code, out, _ = run(
      capsys, 'indep', golden('mixture_of_experts.fgx'), '--x', 'c1', '--y', 'c0',
      '--given', 'm,z', '--numeric'
    )
    assert code == ExitCode.SUCCESS
    assert out[0] == 'separated'
    assert out[1].startswith('numeric independent gap ')

  def test_numeric_json_reports_tolerance(self, capsys: Capture) -> None:
    code, out, _ = run(
      capsys, '--json', 'indep', golden('mixture_of_experts.fgx'), '--x', 'c1', '--y', 'c0',
      '--numeric', '--ci-tol', '1e-6'
    )
    document = json.loads('\n'.join(out))
    assert code == ExitCode.SUCCESS
    assert document['numeric']['tolerance'] == 1e-6
    assert document['numeric']['independent']
    assert document['numeric']['gap'] <= 1e-6

  def test_numeric_flags_unnormalized_collider(
    self,
    capsys: Capture,
    model_file: Callable[..., str]
  ) -> None:
    path = model_file(SKEWED_COLLIDER)
    code, out, err = run(capsys, 'indep', path, '--x', 'x', '--y', 'y', '--numeric')
    assert code == ExitCode.FAILURE
    assert out[0] == 'separated'
    assert out[1] == 'numeric dependent gap 0.0625'
    assert 'numerically dependent beyond 1e-09' in err

  def test_ci_tolerance_from_settings(
    self,
    capsys: Capture,
    model_file: Callable[..., str],
    tmp_path: Path
  ) -> None:
    settings = tmp_path / 'settings.json'
    settings.write_text('{"independence": {"ci_tolerance": 0.1}}', encoding='utf-8')
    code, out, _ = run(
      capsys, '--settings', str(settings), 'indep', model_file(SKEWED_COLLIDER),
      '--x', 'x', '--y', 'y', '--numeric'
    )
    assert code == ExitCode.SUCCESS
    assert out[1] == 'numeric independent gap 0.0625'
    code, _, _ = run(
      capsys, '--settings', str(settings), 'indep', model_file(SKEWED_COLLIDER),
      '--x', 'x', '--y', 'y', '--numeric', '--ci-tol', '0.01'
    )
    assert code == ExitCode.FAILURE


class TestCheck:
  def test_normalized(self, capsys: Capture) -> None:
    code, out, _ = run(capsys, 'check', golden('chain_component.fgx'))
    assert code == ExitCode.SUCCESS
    assert out[-1] == 'normalized'
    assert out[-2].startswith('ok f,g,h,n over c,d')

  def test_not_normalized(self, capsys: Capture, model_file: Callable[..., str]) -> None:
    code, out, err = run(capsys, 'check', model_file(UNNORMALIZED))
    assert code == ExitCode.FAILURE
    assert out[-1] == 'not-normalized'
    assert out[0].startswith('FAILED p over x')
    assert 'not normalized' in err

  def test_tolerance_flag(self, capsys: Capture, model_file: Callable[..., str]) -> None:
    code, _, _ = run(capsys, 'check', model_file(UNNORMALIZED), '--tol', '0.2')
    assert code == ExitCode.SUCCESS

  def test_bn_input(self, capsys: Capture) -> None:
    code, out, _ = run(capsys, 'check', golden('five_node.bn'))
    assert code == ExitCode.SUCCESS
    assert len(out) == 6

  def test_parse_error_is_usage_error(
    self,
    capsys: Capture,
    model_file: Callable[..., str]
  ) -> None:
    path = model_file(TOO_SHORT)
    code, out, err = run(capsys, 'check', path)
    assert code == ExitCode.USAGE
    assert out == []
    assert f"{path}:6:" in err


class TestOtherCommands:
  def test_stats_json(self, capsys: Capture) -> None:
    code, out, _ = run(capsys, 'stats', golden('five_node.bn'), '--json')
    document = json.loads('\n'.join(out))
    assert code == ExitCode.SUCCESS
    assert document['command'] == 'stats'
    assert document['variables'] == 5
    assert document['edges'] == 10
    assert document['edges_by_kind']['child'] == 5

  def test_stats_text(self, capsys: Capture) -> None:
    _, out, _ = run(capsys, 'stats', golden('five_node.mrf'))
    assert out[:3] == ['variables 5', 'functions 4', 'edges 9']

  def test_convert_to_bn(self, capsys: Capture) -> None:
    code, out, _ = run(capsys, 'convert', golden('factorized_conditional.fgx'), '--to', 'bn')
    assert code == ExitCode.SUCCESS
    model = parse_model('\n'.join(out))
    assert isinstance(model.body, BayesNet)
    assert model.body.parents('z') == ('x', 'y')

  def test_convert_refused(self, capsys: Capture) -> None:
    code, _, err = run(capsys, 'convert', golden('triangle.fgx'), '--to', 'bn')
    assert code == ExitCode.FAILURE
    assert 'UndirectedEdgePresent' in err

  def test_convert_to_file(self, capsys: Capture, tmp_path: Path) -> None:
    target = tmp_path / 'out.mrf'
    code, out, err = run(
      capsys, 'convert', golden('five_node_hybrid.fgx'), '--to', 'mrf', '-o', str(target)
    )
    assert code == ExitCode.SUCCESS
    assert out == []
    assert str(target) in err
    assert parse_model(target.read_text()).kind is ModelKind.MRF

  def test_joint(self, capsys: Capture) -> None:
    code, out, _ = run(capsys, 'joint', golden('triangle.fgx'))
    assert code == ExitCode.SUCCESS
    assert out[0] == 'x y z'
    assert len(out) == 9
    assert float(out[1].split()[-1]) == pytest.approx(2 / 39)

  def test_joint_with_evidence(self, capsys: Capture) -> None:
    _, out, _ = run(capsys, 'joint', golden('triangle.fgx'), '--evidence', 'x=1')
    assert float(out[1].split()[-1]) == 0.0

  def test_marginal_enum(self, capsys: Capture) -> None:
    code, out, _ = run(capsys, 'marginal', golden('mixture_of_experts.fgx'), 'z')
    assert code == ExitCode.SUCCESS
    assert [line.split()[0] for line in out] == ['z=0', 'z=1']
    assert float(out[0].split()[1]) == pytest.approx(0.594)

  def test_marginal_tree_needs_forest(self, capsys: Capture) -> None:
    code, _, err = run(
      capsys, 'marginal', golden('mixture_of_experts.fgx'), 'z', '--method', 'sumproduct'
    )
    assert code == ExitCode.FAILURE
    assert 'NotATree' in err

  def test_marginal_loopy_json(self, capsys: Capture) -> None:
    code, out, _ = run(
      capsys, '--json', 'marginal', golden('triangle.fgx'), 'y', '--method', 'sumproduct',
      '--loopy', '--damping', '0.3'
    )
    document = json.loads('\n'.join(out))
    assert code == ExitCode.SUCCESS
    assert document['approximate'] is True
    assert sum(document['distribution']) == pytest.approx(1.0)

  def test_blanket(self, capsys: Capture) -> None:
    code, out, _ = run(capsys, 'blanket', golden('five_node.mrf'), 'y')
    assert code == ExitCode.SUCCESS
    assert out == ['v x z']

  def test_independencies(self, capsys: Capture) -> None:
    code, out, _ = run(
      capsys, 'independencies', golden('chain_component.fgx'), '--max-given', '0'
    )
    assert code == ExitCode.SUCCESS
    assert 'a _|_ b | {}' in out

  def test_independencies_numeric(self, capsys: Capture) -> None:
    code, out, _ = run(
      capsys, 'independencies', golden('chain_component.fgx'), '--max-given', '1', '--numeric'
    )
    assert code == ExitCode.SUCCESS
    assert out
    assert all(' gap ' in line for line in out)
    assert any(line.startswith('a _|_ b | {} gap ') for line in out)

  def test_independencies_numeric_failure(
    self,
    capsys: Capture,
    model_file: Callable[..., str]
  ) -> None:
    code, out, err = run(
      capsys, '--json', 'independencies', model_file(SKEWED_COLLIDER), '--max-given', '0',
      '--numeric'
    )
    document = json.loads('\n'.join(out))
    assert code == ExitCode.FAILURE
    assert {'x': 'x', 'y': 'y', 'given': [], 'independent': False, 'gap': 0.0625} in (
      document['statements']
    )
    assert '1 separated statement(s)' in err

  def test_gallery(self, capsys: Capture) -> None:
    code, out, _ = run(capsys, 'gallery', 'triangle')
    assert code == ExitCode.SUCCESS
    assert parse_model('\n'.join(out)).body == triangle()

  def test_gallery_seeded(self, capsys: Capture) -> None:
    _, first, _ = run(capsys, 'gallery', 'triangle', '--seed', '3')
    _, second, _ = run(capsys, 'gallery', 'triangle', '--seed', '3')
    assert first == second
    assert parse_model('\n'.join(first)).body != triangle()

  def test_stdin(self, capsys: Capture, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr('sys.stdin', io.StringIO(Path(golden('triangle.fgx')).read_text()))
    code, out, _ = run(capsys, 'stats', '-')
    assert code == ExitCode.SUCCESS
    assert out[0] == 'variables 3'


class TestUsage:
  def test_unknown_command(self, capsys: Capture) -> None:
    code, _, _ = run(capsys, 'frobnicate')
    assert code == ExitCode.USAGE

  def test_bad_evidence(self, capsys: Capture) -> None:
    code, _, err = run(capsys, 'joint', golden('triangle.fgx'), '--evidence', 'x:1')
    assert code == ExitCode.USAGE
    assert 'NAME=STATE' in err

  def test_bad_damping(self, capsys: Capture) -> None:
    code, _, _ = run(capsys, 'marginal', golden('triangle.fgx'), 'x', '--damping', '1')
    assert code == ExitCode.USAGE

  def test_missing_file(self, capsys: Capture, tmp_path: Path) -> None:
    code, _, err = run(capsys, 'stats', str(tmp_path / 'absent.fgx'))
    assert code == ExitCode.USAGE
    assert 'Failed to access' in err

  def test_invalid_settings(self, capsys: Capture, tmp_path: Path) -> None:
    path = tmp_path / 'settings.json'
    path.write_text('{"output": {"color": "yes"}}', encoding='utf-8')
    code, _, err = run(capsys, '--settings', str(path), 'stats', golden('triangle.fgx'))
    assert code == ExitCode.USAGE
    assert 'Validation error' in err

  def test_help(self, capsys: Capture) -> None:
    code, out, _ = run(capsys, '--help')
    assert code == ExitCode.SUCCESS
    assert any('gallery' in line for line in out)

  def test_every_command_has_a_parser(self) -> None:
    samples: dict[str, list[str]] = {
      'check': ['f'],
      'stats': ['f'],
      'indep': ['f', '--x', 'a', '--y', 'b'],
      'convert': ['f', '--to', 'fg'],
      'joint': ['f'],
      'marginal': ['f', 'v'],
      'blanket': ['f', 'v'],
      'independencies': ['f'],
      'gallery': ['triangle'],
    }
    parser = build_parser()
    assert sorted(get_all_commands()) == sorted(samples)
    for command, rest in samples.items():
      assert parser.parse_args([command, *rest]).command == command

  def test_parser_follows_command_registry(self, monkeypatch: pytest.MonkeyPatch) -> None:
    assert sorted(COMMAND_HELP) == sorted(get_all_commands())
    monkeypatch.setattr(
      'hybridfg.main.get_all_commands', lambda: [*get_all_commands(), 'extra']
    )
    args = build_parser().parse_args(['extra', 'model.fgx'])
    assert args.command == 'extra'
    assert args.file == 'model.fgx'
