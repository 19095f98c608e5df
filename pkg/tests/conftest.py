'''
Shared fixtures and helpers of the test suite.
'''

# native imports
from collections.abc import Callable
from pathlib import Path

# pip imports
import numpy as np
import pytest
from numpy.random import Generator

# local imports
from hybridfg._shared.constants import MODELS_FOLDER
from hybridfg._shared.helpers_color import ColorText
from hybridfg.cli.formats import parse_model
from hybridfg.gallery import chain_component
from hybridfg.gallery import five_node_directed
from hybridfg.gallery import five_node_undirected
from hybridfg.gallery import mixture_of_experts
from hybridfg.model.factor_graph import FactorGraph


GOLDEN_FILES: list[Path] = sorted(
  path for path in MODELS_FOLDER.iterdir() if path.suffix in ('.fgx', '.bn', '.mrf')
)
'''every model file shipped in data/models'''


@pytest.fixture(autouse=True)
def plain_colors() -> None:
  '''Keep captured output free of escape codes.'''
  ColorText.enabled = False


@pytest.fixture
def rng() -> Generator:
  return np.random.default_rng(20240611)


@pytest.fixture
def directed() -> FactorGraph:
  return five_node_directed()


@pytest.fixture
def undirected() -> FactorGraph:
  return five_node_undirected()


@pytest.fixture
def experts() -> FactorGraph:
  return mixture_of_experts()


@pytest.fixture
def chain() -> FactorGraph:
  return chain_component()


@pytest.fixture
def model_file(tmp_path: Path) -> Callable[[str], str]:
  '''Write model text to a temporary file and return its path.'''
  counter: list[int] = [0]

  def write(text: str, suffix: str = '.fgx') -> str:
    counter[0] += 1
    path: Path = tmp_path / f"model_{counter[0]}{suffix}"
    path.write_text(text, encoding='utf-8')
    return str(path)
  return write


def golden(name: str) -> str:
  '''Path of a golden model file as string.'''
  return str(MODELS_FOLDER / name)


def load_golden(name: str) -> object:
  return parse_model((MODELS_FOLDER / name).read_text(encoding='utf-8')).body
