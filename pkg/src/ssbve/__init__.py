"""Solver-and-certificate toolkit for Minimum k-Union / Small Set Bipartite
Vertex Expansion."""

__version__ = "0.1.0"

from .graph import (BipartiteGraph, Hypergraph, Solution, SsbveInstance,
                    UndirectedGraph, expansion, mku_to_ssbve, neighborhood,
                    ssbve_to_mku, ssbve_to_ssveu, ssveu_to_ssbve)

__all__ = [
    "BipartiteGraph", "Hypergraph", "Solution", "SsbveInstance",
    "UndirectedGraph", "expansion", "neighborhood", "mku_to_ssbve",
    "ssbve_to_mku", "ssbve_to_ssveu", "ssveu_to_ssbve", "__version__",
]
