"""sfkit: exact combinatorics of marked Heegaard diagrams and suture algebras."""

from .diagram import HeegaardDiagram, Generator, ComplementComponent, ALPHA, BETA

__all__ = [
    "HeegaardDiagram",
    "Generator",
    "ComplementComponent",
    "ALPHA",
    "BETA",
]

__version__ = "0.1.0"
