'''
Maximal clique enumeration.
'''

# pip imports
import networkx as nx

# internal imports
from .markov_net import MarkovNet


def cliques_of(graph: nx.Graph) -> list[list[str]]:
  '''
  Maximal cliques of `graph` (Bron-Kerbosch with pivoting through
  `networkx.find_cliques`), each sorted, the list sorted lexicographically.

  Isolated vertices are singleton cliques.
  '''
  return sorted(sorted(str(v) for v in clique) for clique in nx.find_cliques(graph))
# ------------------------------------------------------------------------------


def maximal_cliques(mrf: MarkovNet) -> list[list[str]]:
  '''Deterministic list of the maximal cliques of `mrf`.'''
  return cliques_of(mrf.graph())
# ------------------------------------------------------------------------------
