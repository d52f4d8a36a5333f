"""khoform: extreme Khovanov homotopy types of closed 4-braid diagrams.

The library computes, in polynomial time, the homotopy type (a wedge of
spheres, or contractible) of the independence complex of the Lando graph
of a closed braid diagram on 4 strands, translates it into the extreme
Khovanov homology row, and can verify any answer against a brute-force
integer simplicial-homology oracle.
"""

from .braid import BraidLetter, BraidWord, parse, transform, positive_part, writhe
from .homotopy import CONTRACTIBLE, HomotopyType, sphere, wedge_of

__all__ = [
    "BraidLetter",
    "BraidWord",
    "parse",
    "transform",
    "positive_part",
    "writhe",
    "CONTRACTIBLE",
    "HomotopyType",
    "sphere",
    "wedge_of",
]

__version__ = "0.1.0"
