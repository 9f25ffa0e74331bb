"""First homology of the punctured surface and of the sutured manifold.

Builds a CW model of Sigma minus open disks around the marked points: the
1-skeleton is the union of the curve arcs, one small circle around each
marked point, and auxiliary tether/handle loops inside each region; every
region contributes one 2-cell.  From that we present

    H1(X; Z) = H1(Sigma - z; Z) / <[alpha_i], [beta_j]>

in Smith normal form together with the classes PD[gamma_i] of the puncture
circles, which drive both the H-filtration of the suture algebra and the
relative Spin^c difference table.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import snf
from .diagram import ALPHA, BETA, HeegaardDiagram, _arc_entry


@dataclass
class ChainModel:
    edge_index: dict  # edge id -> position
    boundary1: list  # rows = vertices, cols = edges
    cell_columns: list  # one column per region (over edges)
    curve_cycles: dict  # (side, curve index) -> edge-coefficient vector
    puncture_cycles: list  # mark index -> edge vector


def build_chain_model(d: HeegaardDiagram) -> ChainModel:
    vertices = {}
    edges = []
    edge_index = {}

    def vertex(vid):
        if vid not in vertices:
            vertices[vid] = len(vertices)
        return vertices[vid]

    def edge(eid, tail, head):
        if eid not in edge_index:
            edge_index[eid] = len(edges)
            edges.append((tail, head))
        return edge_index[eid]

    for name, ends in d.arcs:
        if ends is None:
            aux = vertex(f"v@{name}")
            edge(name, aux, aux)
        else:
            edge(name, vertex(ends[0]), vertex(ends[1]))
    for k in range(d.num_marks):
        w = vertex(f"w{k}")
        edge(f"g{k}", w, w)

    cell_columns = []
    for ri, region in enumerate(d.regions):
        col = {}

        def bump(eid, sign):
            col[eid] = col.get(eid, 0) + sign

        base = None
        for ci, cycle in enumerate(region.cycles):
            if len(cycle) == 1:
                arc, reversed_ = _arc_entry(cycle[0])
                bump(arc, -1 if reversed_ else 1)
                cbase = f"v@{arc}"
            else:
                cbase = cycle[0]
                k = len(cycle)
                for pos in range(1, k, 2):
                    arc, reversed_ = _arc_entry(cycle[pos])
                    bump(arc, -1 if reversed_ else 1)
            if base is None:
                base = cbase
            else:
                # tether to the extra boundary cycle: cancels in homology but
                # keeps the 1-skeleton connected for vertex bookkeeping
                edge(f"t@r{ri}.{ci}", vertex(base), vertex(cbase))
        if base is None:
            base = f"v@r{ri}"
            vertex(base)
        for j in range(region.genus):
            edge(f"u@r{ri}.{j}", vertex(base), vertex(base))
            edge(f"v@r{ri}.{j}", vertex(base), vertex(base))
        for m in region.marks:
            edge(f"t@r{ri}.z{m}", vertex(base), vertex(f"w{m}"))
            bump(f"g{m}", 1)
        cell_columns.append(col)

    n_edges = len(edges)
    boundary1 = [[0] * n_edges for _ in range(len(vertices))]
    for eid, pos in edge_index.items():
        tail, head = edges[pos]
        boundary1[head][pos] += 1
        boundary1[tail][pos] -= 1

    def col_vector(col):
        v = [0] * n_edges
        for eid, c in col.items():
            v[edge_index[eid]] = c
        return v

    cells = [col_vector(c) for c in cell_columns]

    curve_cycles = {}
    for side, curves in ((ALPHA, d.alpha), (BETA, d.beta)):
        for ci, curve in enumerate(curves):
            v = [0] * n_edges
            for arc in curve:
                v[edge_index[arc]] += 1
            curve_cycles[(side, ci)] = v

    punctures = []
    for k in range(d.num_marks):
        v = [0] * n_edges
        v[edge_index[f"g{k}"]] = 1
        punctures.append(v)

    return ChainModel(
        edge_index=edge_index,
        boundary1=boundary1,
        cell_columns=cells,
        curve_cycles=curve_cycles,
        puncture_cycles=punctures,
    )


def _kernel_coordinates(model: ChainModel):
    """Basis K of ker(boundary1) and a solver expressing cycles in K."""
    kernel = snf.kernel_basis(model.boundary1)
    # columns of K as a matrix over edges
    n_edges = len(model.boundary1[0]) if model.boundary1 else 0
    K = [[kernel[b][e] for b in range(len(kernel))] for e in range(n_edges)]

    def express(cycle):
        sol = snf.solve_integer(K, cycle) if kernel else []
        if sol is None:
            raise ValueError("vector is not a 1-cycle")
        return sol

    return kernel, express


def surface_h1(d: HeegaardDiagram):
    """H1(Sigma - z) with the curve and puncture classes in its coordinates."""
    model = build_chain_model(d)
    kernel, express = _kernel_coordinates(model)
    relations = [express(c) for c in model.cell_columns]
    group = snf.cokernel(relations, len(kernel))
    curve_classes = {
        key: group.project(express(v)) for key, v in model.curve_cycles.items()
    }
    puncture_classes = [group.project(express(v)) for v in model.puncture_cycles]
    return group, curve_classes, puncture_classes


def curves_independent(d: HeegaardDiagram, side) -> bool:
    """Are the classes of the ``side`` curves linearly independent in
    H1(Sigma - z; Z)?"""
    model = build_chain_model(d)
    kernel, express = _kernel_coordinates(model)
    relations = [express(c) for c in model.cell_columns]
    group = snf.cokernel(relations, len(kernel))
    curves = d.alpha if side == ALPHA else d.beta
    if not curves:
        return True
    # independence is checked rationally: torsion coordinates are dropped
    free_cols = [i for i, m in enumerate(group.moduli) if m == 0]
    if not free_cols:
        return False
    mat = []
    for ci in range(len(curves)):
        full = group.project(express(model.curve_cycles[(side, ci)]))
        mat.append([full[i] for i in free_cols])
    return snf.rank_over_field(mat) == len(curves)


@dataclass
class HomologyPresentation:
    """H = H1(X; Z) = H2(X, dX; Z) with the suture classes PD[gamma_i]."""

    group: snf.AbelianGroup
    pd_classes: list  # mark index -> element of the group

    def chi_of_exponents(self, exponents):
        acc = self.group.zero()
        for k, a in enumerate(exponents):
            if a:
                acc = self.group.add(acc, self.group.scale(a, self.pd_classes[k]))
        return acc

    def free_image(self, exponents):
        """Image of sum a_i [gamma_i] in H1(X)/Tors (tuple over free coords)."""
        full = self.chi_of_exponents(exponents)
        return tuple(
            full[i] for i, m in enumerate(self.group.moduli) if m == 0
        )

    @property
    def torsion(self):
        return self.group.torsion

    def describe(self):
        return self.group.describe()


def h1_presentation(d: HeegaardDiagram) -> HomologyPresentation:
    model = build_chain_model(d)
    kernel, express = _kernel_coordinates(model)
    relations = [express(c) for c in model.cell_columns]
    relations += [express(v) for v in model.curve_cycles.values()]
    group = snf.cokernel(relations, len(kernel))
    pd = [group.project(express(v)) for v in model.puncture_cycles]
    return HomologyPresentation(group=group, pd_classes=pd)
