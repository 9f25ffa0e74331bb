"""Enumeration and combinatorial counting of Maslov-index-1 disk classes.

Inside the box provided by the finiteness certificate, all positive classes
of index one with surviving tilde-monomial are enumerated exactly.  A class
is assigned a count only when its shape forces the holomorphic count: an
embedded empty bigon or an embedded empty rectangle contributes one point
(mod 2).  Every other class is reported UNSUPPORTED and taints whatever
complex is built from the enumeration; the taint is waived ring-by-ring when
the class's weight dies under the coefficient homomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .admissibility import finiteness_certificate
from .algebra import AlgebraSpec
from .diagram import Generator, HeegaardDiagram
from .domains import (
    DomainCalculator,
    euler_measure,
    generator_measure,
    marked_multiplicities,
    maslov_index,
)
from . import linprog

EMPTY_BIGON = "EMPTY_BIGON"
EMPTY_RECTANGLE = "EMPTY_RECTANGLE"
UNSUPPORTED = "UNSUPPORTED"


@dataclass
class DiskClass:
    domain: tuple
    source: Generator
    target: Generator
    mu: int
    n_z: tuple
    classification: str
    count: int | None  # mod-2 count when supported, None otherwise

    @property
    def supported(self) -> bool:
        return self.classification != UNSUPPORTED


def _moved_coordinates(x: Generator, y: Generator) -> int:
    return sum(1 for a, b in zip(x.points, y.points) if a != b)


def classify(d: HeegaardDiagram, D, x: Generator, y: Generator) -> tuple:
    """Shape classification of a positive index-1 class."""
    if any(c not in (0, 1) for c in D):
        return UNSUPPORTED, None
    e = euler_measure(d, D)
    corners = generator_measure(d, D, x) + generator_measure(d, D, y)
    moved = _moved_coordinates(x, y)
    if e == Fraction(1, 2) and corners == Fraction(1, 2) and moved == 1:
        return EMPTY_BIGON, 1
    if e == 0 and corners == 1 and moved == 2:
        return EMPTY_RECTANGLE, 1
    return UNSUPPORTED, None


def enumerate_mu1_classes(d: HeegaardDiagram, x: Generator, y: Generator,
                          tilde: AlgebraSpec, calc: DomainCalculator | None = None,
                          index: int = 1) -> list:
    """All positive classes from x to y with mu = index and surviving
    tilde-monomial, in deterministic order."""
    calc = calc or DomainCalculator(d)
    cert = finiteness_certificate(d, x, y, index, calc)
    if not cert.exists:
        return []
    con = calc.connecting(x, y)
    phi0 = con.particular
    basis = calc.periodic_basis
    rank = len(basis)
    bound = cert.bound if cert.bound is not None else max(max(phi0, default=0), 0)

    candidates = []
    if rank == 0:
        candidates.append(tuple(phi0))
    else:
        nregions = len(d.regions)
        ineqs = []
        for r in range(nregions):
            coeffs = [basis[b][r] for b in range(rank)]
            ineqs.append((coeffs, -phi0[r]))
            ineqs.append(([-c for c in coeffs], phi0[r] - bound))
        ranges = []
        empty = False
        for b in range(rank):
            obj = [1 if i == b else 0 for i in range(rank)]
            rng = linprog.linear_range(ineqs, rank, obj)
            if rng is None:
                empty = True
                break
            lo, hi = rng
            if lo is None or hi is None:
                raise RuntimeError("certificate box is unbounded")
            import math

            ranges.append(range(math.ceil(lo), math.floor(hi) + 1))
        if not empty:
            for t in product(*ranges):
                D = list(phi0)
                for c, vec in zip(t, basis):
                    if c:
                        for i in range(len(D)):
                            D[i] += c * vec[i]
                candidates.append(tuple(D))

    out = []
    seen = set()
    for D in sorted(candidates):
        if D in seen:
            continue
        seen.add(D)
        if any(c < 0 for c in D):
            continue
        mu = maslov_index(d, list(D), x, y, calc)
        if mu != index:
            continue
        nz = marked_multiplicities(d, list(D))
        if not tilde.nf_monomial(tuple(nz)):
            continue
        cls, count = classify(d, list(D), x, y)
        out.append(
            DiskClass(
                domain=D, source=x, target=y, mu=mu, n_z=tuple(nz),
                classification=cls, count=count,
            )
        )
    return out


def enumerate_block_classes(d: HeegaardDiagram, generators, tilde: AlgebraSpec,
                            calc: DomainCalculator | None = None) -> list:
    """All index-1 classes between ordered pairs of the given generators."""
    calc = calc or DomainCalculator(d)
    out = []
    for x in generators:
        for y in generators:
            out.extend(enumerate_mu1_classes(d, x, y, tilde, calc))
    return out


@dataclass
class NicenessReport:
    region_shapes: list
    total_classes: int
    unsupported: list
    hat_countable: bool
    minus_countable: bool


def region_shape(d: HeegaardDiagram, ri: int) -> str:
    chi = d.region_chi[ri]
    corners = d.region_corner_count[ri]
    if chi == 1 and corners == 2:
        return "bigon"
    if chi == 1 and corners == 4:
        return "square"
    return "other"


def niceness_report(d: HeegaardDiagram, tilde: AlgebraSpec,
                    calc: DomainCalculator | None = None) -> NicenessReport:
    calc = calc or DomainCalculator(d)
    shapes = []
    for ri, region in enumerate(d.regions):
        shapes.append(
            {
                "region": ri,
                "shape": region_shape(d, ri),
                "marked": bool(region.marks),
            }
        )
    gens = d.generators()
    classes = enumerate_block_classes(d, gens, tilde, calc)
    unsupported = [c for c in classes if not c.supported]
    hat_ok = all(c.supported for c in classes if all(v == 0 for v in c.n_z))
    return NicenessReport(
        region_shapes=shapes,
        total_classes=len(classes),
        unsupported=unsupported,
        hat_countable=hat_ok,
        minus_countable=not unsupported,
    )
