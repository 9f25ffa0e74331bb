"""Surgery-ring scaffolding: the rings R-hat, R, B and Ring_m.

From the boundary algebra of a sutured manifold carrying two distinguished
parallel sutures (variables zeta_1, zeta_2, appearing in relations only
through the product zeta_1 zeta_2), the surgery construction replaces the
product by lambda_0 lambda_1 lambda_2 and adjoins the triangle-region
variable lambda_p.  With surgery multiplicities (m_0, m_1, m_2):

    R  = R-hat / < lambda_p - lambda_0^{m_0-1} lambda_1^{m_1-1} lambda_2^{m_2-1} >
    B  = R[xi_p] / < 1 - lambda_p xi_p >
    Ring_m = R-hat / < lambda_p - lambda_0^{m-1}, lambda_0^m - 1 >

together with the three embeddings iota^i of the base ring and the
filtration extension chi(lambda_p) = -(chi_0 + chi_1 + chi_2).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import algebra as alg
from . import snf
from .testrings import AlgebraTarget, TestRingHom, algebra_hom


class BadMultiplicityError(ValueError):
    pass


@dataclass
class SurgeryRings:
    base: alg.AlgebraSpec  # the ring shared by all three surgered manifolds
    rhat: alg.AlgebraSpec  # lambda_p free
    r: alg.AlgebraSpec  # lambda_p identified with the multiplicity monomial
    b: alg.AlgebraSpec  # xi_p adjoined, xi_p lambda_p = 1
    multiplicities: tuple
    iotas: list  # three TestRingHom base -> B
    chi_relation_cols: list  # presentation of H used for the filtration

    def ring_m(self, m: int) -> alg.AlgebraSpec:
        """R-hat / <lambda_p - lambda_0^{m-1}, lambda_0^m - 1>, filtered by
        H / <m chi_0>."""
        if m < 1:
            raise BadMultiplicityError(f"m = {m}")
        nv = self.rhat.nvars
        kappa = nv - 2
        lam_p = _unit_vector(nv, 0)
        lam_0 = _unit_vector(nv, 1)
        rel1 = alg.poly_sub({lam_p: 1}, {_scale_vec(lam_0, m - 1): 1})
        rel2 = alg.poly_sub({_scale_vec(lam_0, m): 1}, {alg.one(nv): 1})
        relations = tuple(
            tuple(sorted(rel.items())) for rel in (rel1, rel2) if rel
        )
        extra = [0] * (kappa + 1)
        extra[0] = m
        cols = [list(c) for c in self.chi_relation_cols] + [extra]
        group = snf.cokernel(cols, kappa + 1)
        classes = [
            group.project([1 if i == k else 0 for i in range(kappa + 1)])
            for k in range(kappa + 1)
        ]
        chi_p = group.neg(group.add(classes[0], group.add(classes[1], classes[2])))
        return alg.AlgebraSpec(
            names=self.rhat.names,
            variant="RING_M",
            kill=self.rhat.kill,
            relations=self.rhat.relations + relations,
            chi_group=group,
            chi_classes=tuple([chi_p] + classes),
        )


def _unit_vector(n, i):
    return tuple(1 if k == i else 0 for k in range(n))


def _scale_vec(v, c):
    return tuple(c * x for x in v)


def _substituted_ideal(components, kappa):
    """Kill monomials and the plus-minus relation of the base, with
    zeta_1 zeta_2 -> lambda_0 lambda_1 lambda_2 and zeta_j -> lambda_j.

    Base variables are 1-indexed sutures 1..kappa (marks 0..kappa-1); the
    new exponent order is (lambda_p, lambda_0, lambda_1, ..., lambda_kappa).
    """
    nv = kappa + 2  # lambda_p, lambda_0 .. lambda_kappa

    def substitute(marks):
        uses_pair = 0 in marks and 1 in marks
        if (0 in marks) != (1 in marks):
            raise ValueError(
                "component uses exactly one of the distinguished sutures"
            )
        m = [0] * nv
        if uses_pair:
            # zeta_1 zeta_2 -> lambda_p lambda_0 lambda_1 lambda_2, matching
            # iota^i(zeta_1 zeta_2); the m = (1,1,1) case collapses lambda_p
            m[0] += 1  # lambda_p
            m[1] += 1  # lambda_0
            m[2] += 1  # lambda_1
            m[3] += 1  # lambda_2
        for k in marks:
            if k >= 2:
                m[2 + k] += 1  # lambda_k for k >= 2 (0-indexed mark k)
        return tuple(m)

    kill = []
    minus, plus = {}, {}
    for side, genus, marks in components:
        mono = substitute(tuple(marks))
        target = minus if side == "alpha" else plus
        target[mono] = target.get(mono, 0) + 1
        if genus > 0:
            kill.append(mono)
    relations = []
    rel = alg.poly_sub(plus, minus)
    if rel:
        relations.append(tuple(sorted(rel.items())))
    return tuple(sorted(set(kill), key=alg.mono_key)), tuple(relations)


def _surgery_chi(kappa, m0, m1, m2, extra_relations=()):
    """H generated by chi_0..chi_kappa modulo m0 chi0 + m1 chi1 + m2 chi2
    and the component-boundary relations; classes for (lambda_p, lambda_0,
    ..., lambda_kappa)."""
    ngens = kappa + 1
    cols = [[0] * ngens]
    cols[0][0] = m0
    cols[0][1] = m1
    cols[0][2] = m2
    for rel in extra_relations:
        cols.append(list(rel))
    group = snf.cokernel(cols, ngens)
    classes = [group.project([1 if i == k else 0 for i in range(ngens)]) for k in range(ngens)]
    chi_p = group.neg(
        group.add(classes[0], group.add(classes[1], classes[2]))
    )
    return group, tuple([chi_p] + classes), cols


def _component_chi_relations(components, kappa):
    # the pair-substituted monomial lambda_p l0 l1 l2 has trivial chi by the
    # definition chi(lambda_p) = -(chi_0+chi_1+chi_2), so only the remaining
    # suture classes enter the boundary relation of a pair component
    out = []
    for side, genus, marks in components:
        row = [0] * (kappa + 1)
        for k in marks:
            if k >= 2:
                row[k + 1] += 1
        out.append(tuple(row))
    return out


def build_surgery_rings(base_components, kappa, m0, m1, m2,
                        base_names=None) -> SurgeryRings:
    """Assemble the surgery rings from base component data.

    ``base_components``: (side, genus, marks) for the sutured manifold
    whose sutures gamma_1, gamma_2 (marks 0, 1) are the parallel pair being
    resolved; every component must contain both or neither.
    """
    for m in (m0, m1, m2):
        if m < 1:
            raise BadMultiplicityError(f"multiplicity {m} < 1")

    base = alg.build_algebra(
        base_components, kappa,
        names=base_names or tuple(f"ζ{i + 1}" for i in range(kappa)),
    )

    nv = kappa + 2
    names = ("λp",) + tuple(f"λ{i}" for i in range(kappa + 1))
    kill, relations = _substituted_ideal(base_components, kappa)
    chi_group, chi_classes, chi_cols = _surgery_chi(
        kappa, m0, m1, m2, _component_chi_relations(base_components, kappa)
    )

    rhat = alg.AlgebraSpec(
        names=names, variant="SURGERY_RHAT", kill=kill, relations=relations,
        chi_group=chi_group, chi_classes=chi_classes,
    )
    rhat.assert_homogeneous_relations()

    lam_p = _unit_vector(nv, 0)
    mult_mono = tuple(
        [0] + [m0 - 1, m1 - 1, m2 - 1] + [0] * (kappa - 2)
    )
    r_rel = alg.poly_sub({lam_p: 1}, {mult_mono: 1})
    r = alg.AlgebraSpec(
        names=names, variant="SURGERY_R", kill=kill,
        relations=relations + (tuple(sorted(r_rel.items())),),
        chi_group=chi_group, chi_classes=chi_classes,
    )
    r.assert_homogeneous_relations()

    b_names = ("ξp",) + names
    b_kill = tuple((0,) + k for k in kill)
    b_relations = tuple(
        tuple((tuple([0] + list(m)), c) for m, c in rel) for rel in r.relations
    )
    xi_lam_p = tuple([1, 1] + [0] * kappa + [0])  # xi_p * lambda_p
    xi_rel = alg.poly_sub({xi_lam_p: 1}, {alg.one(nv + 1): 1})
    b_chi_classes = None
    if chi_group is not None:
        b_chi_classes = (chi_group.neg(chi_classes[0]),) + chi_classes
    b = alg.AlgebraSpec(
        names=b_names, variant="SURGERY_B", kill=b_kill,
        relations=b_relations + (tuple(sorted(xi_rel.items())),),
        chi_group=chi_group, chi_classes=b_chi_classes,
    )
    b.assert_homogeneous_relations()

    # B variable positions: 0 = xi_p, 1 = lambda_p, 2 + t = lambda_t
    iotas = []
    for i in range(3):
        images = []
        for j in range(kappa):
            m = [0] * (nv + 1)
            if j == 0:  # zeta_1 -> lambda_i
                m[2 + i] = 1
            elif j == 1:  # zeta_2 -> lambda_p lambda_0 lambda_1 lambda_2 / lambda_i
                m[1] = 1
                for t in range(3):
                    if t != i:
                        m[2 + t] = 1
            else:  # zeta_{j+1} -> lambda_{j+1}
                m[2 + j + 1] = 1
            images.append({tuple(m): 1})
        iotas.append(
            algebra_hom(base, b, images, name=f"iota^{i}")
        )

    return SurgeryRings(
        base=base, rhat=rhat, r=r, b=b, multiplicities=(m0, m1, m2),
        iotas=iotas, chi_relation_cols=chi_cols,
    )
