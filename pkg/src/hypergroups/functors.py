"""The three embedding functors and the inverse of the field functor.

Groups embed as hypergroups over the trivial group (xi = the group
table, everything else forced). Vector spaces over a finite field k
embed with H = k*, phi = scalar action, xi = vector addition, psi and
lam trivial. Fields are the one-dimensional case.

reconstruct_field inverts the field functor: it re-derives the scalar
field from the structural tables alone, as the set of endomorphisms
t(alpha) = phi(., alpha) plus the zero endomorphism zeta, under
pointwise xi-addition and composition.

The zero endomorphism is written zeta here, not theta: theta already
names o^{-1} in the neutral-element decomposition, and reusing it in
witness messages would conflate the two.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import HypergroupOverGroup, hypergroup_from_tables
from .errors import (
    AlgebraError,
    InternalInconsistencyError,
    ShapeMismatchError,
    SizeLimitExceededError,
)
from .fields import (
    FiniteField,
    check_field_tables,
    field_isomorphism,
    make_field,
    multiplicative_group,
)
from .groups import FiniteGroup, group_from_cayley_table, trivial_group
from .morphisms import HgMorphism

VS_SIZE_BOUND = 512


def functor_group(m_group: FiniteGroup) -> HypergroupOverGroup:
    """A group as a hypergroup over the trivial group E."""
    n = m_group.order
    return hypergroup_from_tables(
        m_size=n,
        h=trivial_group(),
        phi=[[a] for a in range(n)],
        psi=[[0] for _ in range(n)],
        xi=[row[:] for row in m_group.table],
        lam=[[0] * n for _ in range(n)],
        o=m_group.identity,
    )


def functor_group_on_hom(
    src: FiniteGroup, dst: FiniteGroup, f1: list[int]
) -> HgMorphism:
    """Lift a group homomorphism f1: src -> dst to a morphism of the
    functor images (f0 is forced: both H are trivial)."""
    if len(f1) != src.order:
        raise ShapeMismatchError(f"f1 has length {len(f1)}, expected {src.order}")
    return HgMorphism(
        source=functor_group(src),
        target=functor_group(dst),
        f0=[0],
        f1=list(f1),
    )


def _vector_index(components: tuple[int, ...], q: int) -> int:
    n = 0
    for c in components:
        n = n * q + c
    return n


def functor_vector_space(k: FiniteField, dim: int) -> HypergroupOverGroup:
    """k^dim as a hypergroup over H = k*.

    M enumerates dim-tuples lexicographically (first component most
    significant); H-index al is the field element al + 1.
    """
    if dim < 1:
        raise SizeLimitExceededError(f"dimension {dim} must be >= 1")
    size = k.q ** dim
    if size > VS_SIZE_BOUND:
        raise SizeLimitExceededError(
            f"|k|^dim = {size} exceeds bound {VS_SIZE_BOUND}"
        )
    h = multiplicative_group(k)
    vectors = list(itertools.product(range(k.q), repeat=dim))
    phi = [
        [_vector_index(tuple(k.mul[c][al + 1] for c in v), k.q) for al in range(h.order)]
        for v in vectors
    ]
    psi = [list(range(h.order)) for _ in vectors]
    xi = [
        [
            _vector_index(tuple(k.add[c][d] for c, d in zip(u, v)), k.q)
            for v in vectors
        ]
        for u in vectors
    ]
    lam = [[h.identity] * size for _ in vectors]
    return hypergroup_from_tables(
        m_size=size, h=h, phi=phi, psi=psi, xi=xi, lam=lam, o=0
    )


def functor_vector_space_on_map(
    k: FiniteField, matrix: list[list[int]], src_dim: int, dst_dim: int
) -> HgMorphism:
    """Lift the linear map v -> matrix . v (entries are field indices,
    shape dst_dim x src_dim) to a morphism of the functor images; f0 is
    the identity on k*."""
    if len(matrix) != dst_dim or any(len(r) != src_dim for r in matrix):
        raise ShapeMismatchError(
            f"matrix must be {dst_dim}x{src_dim}"
        )
    src = functor_vector_space(k, src_dim)
    dst = functor_vector_space(k, dst_dim)
    f1 = []
    for v in itertools.product(range(k.q), repeat=src_dim):
        w = []
        for row in matrix:
            acc = k.zero
            for coef, comp in zip(row, v):
                acc = k.add[acc][k.mul[coef][comp]]
            w.append(acc)
        f1.append(_vector_index(tuple(w), k.q))
    return HgMorphism(
        source=src, target=dst, f0=list(range(src.h.order)), f1=f1
    )


def functor_field(f: FiniteField) -> HypergroupOverGroup:
    """A field as a hypergroup over its multiplicative group."""
    h = multiplicative_group(f)
    q = f.q
    phi = [[f.mul[a][al + 1] for al in range(q - 1)] for a in range(q)]
    psi = [list(range(q - 1)) for _ in range(q)]
    xi = [row[:] for row in f.add]
    lam = [[h.identity] * q for _ in range(q)]
    return hypergroup_from_tables(
        m_size=q, h=h, phi=phi, psi=psi, xi=xi, lam=lam, o=f.zero
    )


def frobenius(f: FiniteField) -> list[int]:
    """The map x -> x^p as a field-index table."""
    out = []
    for a in range(f.q):
        y = f.one
        for _ in range(f.p):
            y = f.mul[y][a]
        out.append(y)
    return out


def functor_field_on_hom(
    src: FiniteField, dst: FiniteField, f_map: list[int]
) -> HgMorphism:
    """Lift a field homomorphism (index map) to a morphism of the functor
    images; f0 is the restriction to the nonzero elements."""
    if len(f_map) != src.q:
        raise ShapeMismatchError(f"map has length {len(f_map)}, expected {src.q}")
    if any(v == dst.zero for i, v in enumerate(f_map) if i != src.zero):
        raise ShapeMismatchError("a nonzero element maps to zero")
    f0 = [f_map[al + 1] - 1 for al in range(src.q - 1)]
    return HgMorphism(
        source=functor_field(src),
        target=functor_field(dst),
        f0=f0,
        f1=list(f_map),
    )


RECONSTRUCTION_DIAGNOSTICS = (
    "PsiNotTrivial",
    "LamNotTrivial",
    "XiNotAbelianGroup",
    "HNotAbelian",
    "PhiNotEndomorphism",
    "TNotInjective",
    "NotAdditivelyClosed",
    "NotAField",
)


@dataclass
class FieldReconstruction:
    status: str                      # "ok" or a diagnostic name
    witness: tuple | None = None
    detail: str = ""
    field: FiniteField | None = None
    # candidate field elements as endomorphism arrays: index 0 is zeta,
    # index 1 + alpha is t(alpha)
    k_endomorphisms: list[list[int]] | None = None
    add_table: list[list[int]] | None = None
    mul_table: list[list[int]] | None = None
    iso_to_canonical: list[int] | None = None
    is_field_hypergroup: bool | None = None
    unit_witness: int | None = None  # an a with eval_a: k -> M bijective

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "witness": list(self.witness) if self.witness else None,
            "detail": self.detail,
            "field": self.field.name if self.field else None,
            "is_field_hypergroup": self.is_field_hypergroup,
        }


def reconstruct_field(
    hg: HypergroupOverGroup, require_abelian_h: bool = True
) -> FieldReconstruction:
    """Invert the field functor, checking each required condition in
    order and reporting the first failure.

    With require_abelian_h off, the final axiom check tests a division
    ring instead of a field (finite ones are fields anyway, so over this
    package's inputs the toggle only relabels the diagnostic).
    """
    m = hg.m_size
    hn = hg.h.order
    ht = hg.h.table
    eps = hg.h.identity

    for a in range(m):
        for al in range(hn):
            if hg.psi[a][al] != al:
                return FieldReconstruction(
                    status="PsiNotTrivial",
                    witness=(a, al),
                    detail=f"psi[{a}][{al}] = {hg.psi[a][al]} != {al}",
                )
    for a in range(m):
        for b in range(m):
            if hg.lam[a][b] != eps:
                return FieldReconstruction(
                    status="LamNotTrivial",
                    witness=(a, b),
                    detail=f"lam[{a}][{b}] = {hg.lam[a][b]} != {eps}",
                )

    try:
        xi_group = group_from_cayley_table(hg.xi)
    except AlgebraError as exc:
        return FieldReconstruction(
            status="XiNotAbelianGroup",
            witness=getattr(exc, "witness", None),
            detail=f"(M, xi) is not a group: {exc}",
        )
    for a in range(m):
        for b in range(a + 1, m):
            if hg.xi[a][b] != hg.xi[b][a]:
                return FieldReconstruction(
                    status="XiNotAbelianGroup",
                    witness=(a, b),
                    detail=f"xi[{a}][{b}] != xi[{b}][{a}]",
                )
    if xi_group.identity != hg.o:
        return FieldReconstruction(
            status="XiNotAbelianGroup",
            witness=(xi_group.identity,),
            detail="the xi neutral element differs from o",
        )

    if require_abelian_h:
        for al in range(hn):
            for be in range(al + 1, hn):
                if ht[al][be] != ht[be][al]:
                    return FieldReconstruction(
                        status="HNotAbelian",
                        witness=(al, be),
                        detail=f"H product at ({al}, {be}) is not commutative",
                    )

    # t(alpha) = phi(., alpha) must be an endomorphism of (M, xi)
    for al in range(hn):
        for a in range(m):
            for b in range(m):
                lhs = hg.phi[hg.xi[a][b]][al]
                rhs = hg.xi[hg.phi[a][al]][hg.phi[b][al]]
                if lhs != rhs:
                    return FieldReconstruction(
                        status="PhiNotEndomorphism",
                        witness=(al, a, b),
                        detail=(
                            f"phi(., {al}) does not preserve xi at ({a}, {b})"
                        ),
                    )
    t = [[hg.phi[a][al] for a in range(m)] for al in range(hn)]
    for al in range(hn):
        for be in range(al + 1, hn):
            if t[al] == t[be]:
                return FieldReconstruction(
                    status="TNotInjective",
                    witness=(al, be),
                    detail=f"phi(., {al}) and phi(., {be}) coincide",
                )

    zeta = [hg.o] * m
    if zeta in t:
        return FieldReconstruction(
            status="NotAField",
            witness=(t.index(zeta),),
            detail="the zero endomorphism equals some t(alpha)",
        )
    # k ordering: zeta first, then t(alpha) in H order
    k_endos = [zeta] + t
    index_of = {tuple(e): i for i, e in enumerate(k_endos)}

    nk = len(k_endos)
    add_table = [[0] * nk for _ in range(nk)]
    for i in range(nk):
        for j in range(nk):
            s = tuple(hg.xi[k_endos[i][a]][k_endos[j][a]] for a in range(m))
            idx = index_of.get(s)
            if idx is None:
                return FieldReconstruction(
                    status="NotAdditivelyClosed",
                    witness=(i, j),
                    detail=(
                        f"k[{i}] + k[{j}] is the endomorphism {list(s)}, "
                        f"not in k"
                    ),
                    k_endomorphisms=k_endos,
                )
            add_table[i][j] = idx
    mul_table = [[0] * nk for _ in range(nk)]
    for i in range(1, nk):
        for j in range(1, nk):
            mul_table[i][j] = 1 + ht[i - 1][j - 1]

    one = 1 + eps
    ok, what, witness = check_field_tables(
        add_table, mul_table, 0, one,
        require_commutative_mul=require_abelian_h,
    )
    if not ok:
        return FieldReconstruction(
            status="NotAField",
            witness=witness,
            detail=f"field axiom {what} fails on k at {witness}",
            k_endomorphisms=k_endos,
            add_table=add_table,
            mul_table=mul_table,
        )

    try:
        canonical = make_field(nk)
    except AlgebraError:
        return FieldReconstruction(
            status="NotAField",
            witness=(nk,),
            detail=f"|k| = {nk} is not a prime power",
            k_endomorphisms=k_endos,
            add_table=add_table,
            mul_table=mul_table,
        )
    candidate = FiniteField(
        p=canonical.p, m=canonical.m, modulus=canonical.modulus, q=nk,
        add=add_table, mul=mul_table, zero=0, one=one,
        name=f"k({nk})",
    )
    iso = field_isomorphism(candidate, canonical)
    if iso is None:
        raise InternalInconsistencyError(
            f"a field of order {nk} admits no isomorphism onto {canonical.name}"
        )

    unit_witness = None
    for a in range(m):
        values = {e[a] for e in k_endos}
        if len(values) == nk and nk == m:
            unit_witness = a
            break
    return FieldReconstruction(
        status="ok",
        field=canonical,
        k_endomorphisms=k_endos,
        add_table=add_table,
        mul_table=mul_table,
        iso_to_canonical=iso,
        is_field_hypergroup=unit_witness is not None,
        unit_witness=unit_witness,
    )
