"""The mapping-cone comparison machinery for 3-periodic systems.

Given complexes A_1, A_2, A_3, ... (cyclic mod 3), chain maps
f_i: A_i -> A_{i+1} and homotopies H_i: A_i -> A_{i+2} with

    (1)  f_{i+1} f_i = H_i d_i + d_{i+2} H_i,
    (2)  phi_i := f_{i+2} H_i - H_{i+1} f_i   a homology equivalence,

the comparison maps

    alpha_i(a_i, a_{i+1}) = f_{i+1}(a_{i+1}) - H_i(a_i)
    beta_i(a_i)           = (f_i(a_i), H_i(a_i))

exhibit M(f_i) as homology-equivalent to A_{i+2} over every coefficient
homomorphism under which the phi_i are equivalences.  All identities are
verified as exact matrix computations; maps are allowed to be chain maps up
to a global sign (the phi_i anticommute with the differentials over Z),
with mapping cones twisted accordingly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import algebra as alg
from .complexes import (
    ChainMap,
    ComplexError,
    FilteredComplex,
    map_compose,
    mapping_cone,
    quasi_iso_over,
)


class HypothesisFailed(RuntimeError):
    def __init__(self, identity, detail=""):
        super().__init__(f"HYPOTHESIS_FAILED: {identity}" + (f" ({detail})" if detail else ""))
        self.identity = identity


@dataclass
class TriangleSystem:
    complexes: list  # [A0, A1, A2]
    maps: list  # entry dicts: maps[i]: A_i -> A_{i+1}
    homotopies: list  # entry dicts: homotopies[i]: A_i -> A_{i+2}

    def complex(self, i):
        return self.complexes[i % 3]

    def map_entries(self, i):
        return self.maps[i % 3]

    def homotopy_entries(self, i):
        return self.homotopies[i % 3]


@dataclass
class TriangleResult:
    alphas: list  # ChainMap M(f_i) -> A_{i+2}
    betas: list  # entry dicts A_i -> M(f_{i+1})
    phi_parity: list
    alpha_quasi_iso: list
    notes: list = field(default_factory=list)


def _entries_equal(spec, a, b, sign=1):
    keys = set(a) | set(b)
    for k in keys:
        if not spec.equal(a.get(k, {}), alg.poly_scale(b.get(k, {}), sign)):
            return False
    return True


def _compose(spec, f, g, src, mid, tgt):
    """f o g with g: src -> mid, f: mid -> tgt (ranks of FilteredComplex)."""
    return map_compose(spec, f, g, tgt.rank, src.rank, mid.rank)


def _d_of(c: FilteredComplex):
    return dict(c.entries)


def triangle_machine(system: TriangleSystem, homs) -> TriangleResult:
    spec = system.complexes[0].algebra
    for i in range(3):
        A, B = system.complex(i), system.complex(i + 1)
        f = ChainMap(source=A, target=B, entries=system.map_entries(i))
        if f.chain_parity() != 1:
            raise HypothesisFailed(f"f_{i} is not a chain map")

    # (1) f_{i+1} f_i = H_i d_i + d_{i+2} H_i
    for i in range(3):
        A, B, C = system.complex(i), system.complex(i + 1), system.complex(i + 2)
        ff = _compose(spec, system.map_entries(i + 1), system.map_entries(i), A, B, C)
        Hd = _compose(spec, system.homotopy_entries(i), _d_of(A), A, A, C)
        dH = _compose(spec, _d_of(C), system.homotopy_entries(i), A, C, C)
        rhs = {}
        for k in set(Hd) | set(dH):
            rhs[k] = spec.add(Hd.get(k, {}), dH.get(k, {}))
        if not _entries_equal(spec, ff, rhs):
            raise HypothesisFailed(
                f"null-homotopy identity f_{(i + 1) % 3} f_{i} = H_{i} d + d H_{i}"
            )

    # phi_i = f_{i+2} H_i - H_{i+1} f_i, chain up to sign, equivalence over homs
    phis = []
    phi_parity = []
    for i in range(3):
        A, C, D = system.complex(i), system.complex(i + 2), system.complex(i + 3)
        fH = _compose(spec, system.map_entries(i + 2), system.homotopy_entries(i), A, C, D)
        Hf = _compose(
            spec, system.homotopy_entries(i + 1), system.map_entries(i),
            A, system.complex(i + 1), D,
        )
        phi = {}
        for k in set(fH) | set(Hf):
            phi[k] = spec.add(fH.get(k, {}), alg.poly_scale(Hf.get(k, {}), -1))
        phi_map = ChainMap(source=A, target=D, entries=phi)
        parity = phi_map.chain_parity()
        if parity is None:
            raise HypothesisFailed(f"phi_{i} is not a chain map up to sign")
        if not quasi_iso_over(phi_map, homs):
            raise HypothesisFailed(f"phi_{i} is not a homology equivalence")
        phis.append(phi_map)
        phi_parity.append(parity)

    alphas = []
    betas = []
    alpha_qis = []
    for i in range(3):
        A, B, C = system.complex(i), system.complex(i + 1), system.complex(i + 2)
        fmap = ChainMap(source=A, target=B, entries=system.map_entries(i))
        cone = mapping_cone(fmap)
        # alpha_i(a_i, a_{i+1}) = f_{i+1}(a_{i+1}) - H_i(a_i)
        entries = {}
        for (t, j), e in system.homotopy_entries(i).items():
            entries[(t, j)] = spec.normal_form(alg.poly_scale(e, -1))
        for (t, j), e in system.map_entries(i + 1).items():
            entries[(t, A.rank + j)] = e
        alpha = ChainMap(source=cone, target=C, entries=entries)
        if alpha.chain_parity() is None:
            raise HypothesisFailed(f"alpha_{i} is not a chain map up to sign")
        alphas.append(alpha)
        alpha_qis.append(quasi_iso_over(alpha, homs))

        # beta_i: A_i -> M(f_{i+1}) = A_{i+1} + A_{i+2}
        b_entries = {}
        for (t, j), e in system.map_entries(i).items():
            b_entries[(t, j)] = e
        for (t, j), e in system.homotopy_entries(i).items():
            b_entries[(B.rank + t, j)] = e
        betas.append(b_entries)

    # alpha_{i+1} o beta_i = +- phi_i
    for i in range(3):
        A = system.complex(i)
        B, C, D = system.complex(i + 1), system.complex(i + 2), system.complex(i + 3)
        cone_next = alphas[(i + 1) % 3].source
        comp = map_compose(
            spec, alphas[(i + 1) % 3].entries, betas[i],
            D.rank, A.rank, cone_next.rank,
        )
        if not (
            _entries_equal(spec, comp, phis[i].entries, 1)
            or _entries_equal(spec, comp, phis[i].entries, -1)
        ):
            raise HypothesisFailed(f"alpha_{(i + 1) % 3} beta_{i} != +-phi_{i}")

    if not all(alpha_qis):
        raise HypothesisFailed("alpha not a homology equivalence despite hypotheses")
    return TriangleResult(
        alphas=alphas, betas=betas, phi_parity=phi_parity, alpha_quasi_iso=alpha_qis
    )


def verify_filtered_system(system: TriangleSystem):
    """chi-homogeneity of all complexes, maps and homotopies (constant shift)."""
    for i in range(3):
        system.complex(i).verify_filtration()
    for i in range(3):
        _assert_constant_shift(system.complex(i), system.complex(i + 1), system.map_entries(i), f"f_{i}")
        _assert_constant_shift(system.complex(i), system.complex(i + 2), system.homotopy_entries(i), f"H_{i}")
    return True


def _assert_constant_shift(src, tgt, entries, label):
    spec = src.algebra
    group = spec.chi_group
    if group is None:
        return
    if any(c is None for c in src.cosets + tgt.cosets):
        return
    shifts = set()
    for (i, j), e in entries.items():
        for m in e:
            shifts.add(
                group.add(src.cosets[j], group.neg(group.add(tgt.cosets[i], spec.chi(m))))
            )
    if len(shifts) > 1:
        raise ComplexError("FILTRATION", f"{label} has inhomogeneous chi-shift {shifts}")
