"""Relative Spin^c classes of generators and the associated gradings.

Generators are grouped by the equivalence "some domain connects x to y"
(classes of Spin^c structures on the filled manifold).  Within a class the
difference s(x) - s(y) in H = H^2(X, dX; Z) is the image of the marked-point
multiplicity vector of any connecting domain; the relative Maslov grading is
defined modulo d(s), the gcd of mu over the periodic domains missing all
marked points.

Grading weights d_i of the suture variables are pinned by the requirement
that mu(P) + sum_i d_i n_{z_i}(P) vanish mod d(s) for every periodic domain P
(the filtered-complex axiom "the differential drops the grading by one",
applied to the lattice).  When the lattice leaves some d_i underdetermined,
the reported value is a canonical solution and is flagged as conventional.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import snf
from .diagram import Generator, HeegaardDiagram
from .domains import (
    DomainCalculator,
    marked_multiplicities,
    maslov_index,
    maslov_of_periodic,
)
from .homology1 import HomologyPresentation, h1_presentation


class NoConnectingDomain(ValueError):
    pass


@dataclass
class SpincPartition:
    diagram: HeegaardDiagram
    homology: HomologyPresentation
    blocks: list  # list of lists of generator indices
    generators: tuple
    diffs: dict  # (i, j) -> element of H, for i, j in one block

    def block_of(self, gen_index: int) -> int:
        for bi, block in enumerate(self.blocks):
            if gen_index in block:
                return bi
        raise KeyError(gen_index)

    def diff(self, i: int, j: int):
        if (i, j) not in self.diffs:
            raise NoConnectingDomain(f"generators {i} and {j} are in different classes")
        return self.diffs[(i, j)]


def spinc_partition(d: HeegaardDiagram, calc: DomainCalculator | None = None,
                    homology: HomologyPresentation | None = None) -> SpincPartition:
    calc = calc or DomainCalculator(d)
    hom = homology or h1_presentation(d)
    gens = d.generators()
    n = len(gens)

    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    connect = {}
    for i in range(n):
        for j in range(i + 1, n):
            con = calc.connecting(gens[i], gens[j])
            if con.exists:
                connect[(i, j)] = con.particular
                ra, rb = find(i), find(j)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)

    blocks_map = {}
    for i in range(n):
        blocks_map.setdefault(find(i), []).append(i)
    blocks = [sorted(v) for _, v in sorted(blocks_map.items())]

    # the H-difference is independent of the connecting domain because the
    # n_z vector of a periodic domain maps to 0 in H; assert that on the basis
    for basis_vec in calc.periodic_basis:
        nz = marked_multiplicities(d, basis_vec)
        if hom.chi_of_exponents(nz) != hom.group.zero():
            raise AssertionError("periodic domain with nonzero H-image of n_z")

    diffs = {}
    for i in range(n):
        diffs[(i, i)] = hom.group.zero()
    for (i, j), D in connect.items():
        val = hom.chi_of_exponents(marked_multiplicities(d, D))
        diffs[(i, j)] = val
        diffs[(j, i)] = hom.group.neg(val)
    # close transitively inside blocks
    for block in blocks:
        for i in block:
            for j in block:
                if (i, j) in diffs:
                    continue
                for k in block:
                    if (i, k) in diffs and (k, j) in diffs:
                        diffs[(i, j)] = hom.group.add(diffs[(i, k)], diffs[(k, j)])
                        break
    return SpincPartition(
        diagram=d, homology=hom, blocks=blocks, generators=gens, diffs=diffs
    )


@dataclass
class GradingData:
    d_of_s: int
    weights: list  # kappa entries: int or None (UNDEFINED)
    pinned: list  # per weight: True if forced by the lattice
    gr: dict  # generator index -> relative grading (int, mod d_of_s), or None
    block: list

    def weight_of_monomial(self, exponents):
        acc = 0
        for w, a in zip(self.weights, exponents):
            if a and w is None:
                return None
            acc += (w or 0) * a
        return self._reduce(acc)

    def _reduce(self, v):
        return v % self.d_of_s if self.d_of_s else v

    def rel(self, i: int, j: int):
        if self.gr.get(i) is None or self.gr.get(j) is None:
            return None
        return self._reduce(self.gr[i] - self.gr[j])


def grading_data(d: HeegaardDiagram, partition: SpincPartition, block_index: int,
                 calc: DomainCalculator | None = None) -> GradingData:
    calc = calc or DomainCalculator(d)
    block = partition.blocks[block_index]
    gens = partition.generators
    at = gens[block[0]]

    basis = calc.periodic_basis
    mu_vals = [maslov_of_periodic(d, P, at) for P in basis]
    nz_rows = [list(marked_multiplicities(d, P)) for P in basis]

    # d(s): gcd of mu over the sublattice with n_z == 0
    sub = _kernel_sublattice(nz_rows)
    d_of_s = 0
    for coeffs in sub:
        val = sum(c * m for c, m in zip(coeffs, mu_vals))
        d_of_s = _gcd(d_of_s, val)
    d_of_s = abs(d_of_s)

    weights, pinned = _solve_weights(nz_rows, mu_vals, d.num_marks, d_of_s)

    gr = {}
    if weights is not None:
        base = block[0]
        gr[base] = 0
        ok = True
        for i in block[1:]:
            D = _connecting_domain(partition, calc, gens, i, base)
            mu = maslov_index(d, D, gens[i], gens[base], calc)
            w = _apply_weights(weights, marked_multiplicities(d, D))
            if w is None:
                ok = False
                break
            gr[i] = (mu + w) % d_of_s if d_of_s else mu + w
        if not ok:
            gr = {i: None for i in block}
    else:
        weights = [None] * d.num_marks
        pinned = [False] * d.num_marks
        gr = {i: None for i in block}

    return GradingData(d_of_s=d_of_s, weights=weights, pinned=pinned, gr=gr, block=list(block))


def _connecting_domain(partition, calc, gens, i, j):
    con = calc.connecting(gens[i], gens[j])
    if not con.exists:
        raise NoConnectingDomain(f"generators {i}, {j} not connected")
    return con.particular


def _apply_weights(weights, exponents):
    acc = 0
    for w, a in zip(weights, exponents):
        if a:
            if w is None:
                return None
            acc += w * a
    return acc


def _gcd(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def _kernel_sublattice(nz_rows):
    """Coefficient vectors t with sum_b t_b n_z(P_b) = 0."""
    if not nz_rows:
        return []
    cols = len(nz_rows)
    mat = [[nz_rows[b][k] for b in range(cols)] for k in range(len(nz_rows[0]))]
    return snf.kernel_basis(mat)


def _solve_weights(nz_rows, mu_vals, kappa, d_of_s):
    """Solve n_z(P_b) . d = -mu(P_b)  (mod d_of_s) for the weight vector d.

    Returns (weights, pinned) or (None, None) when the system has no
    solution over the integers mod d_of_s.
    """
    if not nz_rows:
        return [0] * kappa, [False] * kappa
    rows = []
    rhs = []
    for nz, mu in zip(nz_rows, mu_vals):
        rows.append(list(nz))
        rhs.append(-mu)
    ncols = kappa
    if d_of_s:
        # allow adding multiples of d_of_s on each equation
        for r in range(len(rows)):
            extra = [0] * len(rows)
            extra[r] = d_of_s
            rows[r] = rows[r] + extra
        ncols = kappa + len(rhs)
    sol = snf.solve_integer(rows, rhs)
    if sol is None:
        return None, None
    weights = sol[:kappa]
    kernel = snf.kernel_basis(rows)
    kernel_d = [vec[:kappa] for vec in kernel]
    kernel_d = [v for v in kernel_d if any(v)]

    # canonical representative: sweep trailing coordinates to zero where the
    # kernel permits (reproduces the classical one-variable-per-pair look)
    reduced = _reverse_echelon(kernel_d)
    for piv, vec in reduced:
        q = weights[piv] // vec[piv]
        if q:
            weights = [w - q * v for w, v in zip(weights, vec)]
    if d_of_s:
        weights = [w % d_of_s for w in weights]

    pinned = [True] * kappa
    for vec in kernel_d:
        for k in range(kappa):
            if d_of_s:
                if vec[k] % d_of_s != 0:
                    pinned[k] = False
            elif vec[k] != 0:
                pinned[k] = False
    return weights, pinned


def _reverse_echelon(vectors):
    """Integer echelon with pivots chosen from the last coordinate down.

    Returns a list of (pivot index, vector) with strictly decreasing pivots.
    """
    vecs = [list(v) for v in vectors]
    out = []
    if not vecs:
        return out
    n = len(vecs[0])
    for col in range(n - 1, -1, -1):
        cands = [v for v in vecs if v[col] != 0]
        if not cands:
            continue
        piv = min(cands, key=lambda v: abs(v[col]))
        # reduce the others against the pivot (not a full HNF; enough for
        # a deterministic canonical representative)
        rest = []
        for v in vecs:
            if v is piv:
                continue
            if v[col] != 0:
                q = v[col] // piv[col]
                v = [a - q * b for a, b in zip(v, piv)]
            if any(v):
                rest.append(v)
        if piv[col] < 0:
            piv = [-a for a in piv]
        out.append((col, piv))
        vecs = rest
    return out
