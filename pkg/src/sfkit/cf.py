"""Assembling the chain complex of an admissible diagram.

The differential entry from x to y is the sum, over supported index-1
classes, of count * lambda^{n_z(class)}; unsupported classes do not abort
the build but taint the complex with their weight monomial, so downstream
homology refuses coefficient rings in which that weight survives.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import algebra as alg
from .admissibility import check_s_admissible
from .complexes import FilteredComplex, TaintRecord
from .diagram import HeegaardDiagram
from .diskcount import enumerate_mu1_classes
from .domains import DomainCalculator
from .homology1 import h1_presentation
from .spinc import grading_data, spinc_partition


class NotAdmissible(RuntimeError):
    pass


@dataclass
class DiagramData:
    """Shared exact data for one diagram: lattice, partition, gradings."""

    diagram: HeegaardDiagram
    calc: DomainCalculator
    homology: object
    partition: object

    @staticmethod
    def build(d: HeegaardDiagram) -> "DiagramData":
        calc = DomainCalculator(d)
        hom = h1_presentation(d)
        part = spinc_partition(d, calc, hom)
        return DiagramData(diagram=d, calc=calc, homology=hom, partition=part)


def build_cf(d: HeegaardDiagram, block_index: int = 0, variant=alg.PLAIN,
             data: DiagramData | None = None, require_admissible=True,
             signs=None) -> FilteredComplex:
    """The filtered complex of one Spin^c block of the diagram."""
    data = data or DiagramData.build(d)
    if require_admissible:
        rep = check_s_admissible(d, data.partition,
                                 block_index if data.partition.blocks else None,
                                 data.calc)
        if not rep.admissible:
            raise NotAdmissible(f"diagram is not s-admissible: witness {rep.witness}")

    spec = alg.diagram_algebra(d, variant=variant, homology=data.homology)
    tilde = (
        spec
        if variant == alg.TILDE
        else alg.diagram_algebra(d, variant=alg.TILDE, homology=data.homology)
    )

    if not data.partition.blocks:
        return FilteredComplex(
            algebra=spec, gen_names=[], cosets=[], gradings=[], entries={}
        )

    block = data.partition.blocks[block_index]
    gens = data.partition.generators
    gd = grading_data(d, data.partition, block_index, data.calc)
    spec = alg.diagram_algebra(
        d, variant=variant, homology=data.homology,
        gr_weights=gd.weights, gr_modulus=gd.d_of_s,
    )

    base = block[0]
    names = [gens[i].label() for i in block]
    cosets = [data.partition.diffs[(i, base)] for i in block]
    gradings = [gd.gr[i] for i in block]

    entries = {}
    taints = []
    pos = {g: k for k, g in enumerate(block)}
    for j in block:
        for i in block:
            classes = enumerate_mu1_classes(
                d, gens[j], gens[i], tilde, data.calc
            )
            acc = {}
            for c in classes:
                if not c.supported:
                    taints.append(
                        TaintRecord(
                            source=pos[j], target=pos[i], weight=c.n_z,
                            note=f"unsupported class {c.domain}",
                        )
                    )
                    continue
                count = c.count
                if signs is not None:
                    count *= signs.get(tuple(c.domain), 1)
                acc = alg.poly_add(acc, {tuple(c.n_z): count})
            nf = spec.normal_form(acc)
            if nf:
                entries[(pos[i], pos[j])] = nf

    cx = FilteredComplex(
        algebra=spec,
        gen_names=names,
        cosets=cosets,
        gradings=gradings,
        entries=entries,
        taints=taints,
    )
    cx.verify_filtration()
    cx.verify_grading_drop()
    return cx
