"""Enumeration and isomorphism classification of small hypergroups.

Two sources feed the same catalog type: sweep_standard runs the
standard construction over builtin groups, subgroups and transversals;
enumerate_abstract searches the defining axioms directly over tables
at tiny sizes. Entries are deduplicated by isomorphism with stored
certificates, so "same class" claims stay machine-checkable.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass, field
from pathlib import Path

from ._util import canonical_dumps
from .core import (
    HypergroupOverGroup,
    hypergroup_from_tables,
    hypergroup_to_json,
    is_group_quasigroup,
    standard_construction,
    verify_axioms,
)
from .errors import InternalInconsistencyError, SizeLimitExceededError
from .groups import FiniteGroup, builtin_groups, element_orders, enumerate_subgroups
from .morphisms import HgMorphism, _element_keys, find_isomorphism
from .transversals import DEFAULT_SAMPLE_CAP, sample_transversals

MAX_SWEEP_ORDER = 24
MAX_ABSTRACT_M = 3
MAX_ABSTRACT_H = 3


@dataclass
class CatalogEntry:
    hypergroup: HypergroupOverGroup
    provenance: str
    class_id: int
    iso_to_rep: HgMorphism | None  # None for the representative itself


@dataclass
class Catalog:
    entries: list[CatalogEntry] = field(default_factory=list)
    class_reps: list[HypergroupOverGroup] = field(default_factory=list)
    _buckets: dict = field(default_factory=dict, repr=False)

    def insert(self, hg: HypergroupOverGroup, provenance: str) -> CatalogEntry:
        key = _invariant_key(hg)
        bucket = self._buckets.setdefault(key, [])
        for class_id in bucket:
            iso = find_isomorphism(hg, self.class_reps[class_id])
            if iso is not None:
                entry = CatalogEntry(hg, provenance, class_id, iso)
                self.entries.append(entry)
                return entry
        class_id = len(self.class_reps)
        self.class_reps.append(hg)
        bucket.append(class_id)
        entry = CatalogEntry(hg, provenance, class_id, None)
        self.entries.append(entry)
        return entry

    def stats(self) -> dict[tuple, int]:
        """Entry counts keyed by (|M|, |H|, xi is a group, xi commutative)."""
        out: dict[tuple, int] = {}
        for entry in self.entries:
            hg = entry.hypergroup
            k = (
                hg.m_size,
                hg.h.order,
                is_group_quasigroup(hg),
                _xi_commutative(hg),
            )
            out[k] = out.get(k, 0) + 1
        return out

    @property
    def n_classes(self) -> int:
        return len(self.class_reps)


def _xi_commutative(hg: HypergroupOverGroup) -> bool:
    return all(
        hg.xi[a][b] == hg.xi[b][a]
        for a in range(hg.m_size)
        for b in range(a + 1, hg.m_size)
    )


def _psi_trivial(hg: HypergroupOverGroup) -> bool:
    return all(
        hg.psi[a][al] == al
        for a in range(hg.m_size)
        for al in range(hg.h.order)
    )


def _lam_trivial(hg: HypergroupOverGroup) -> bool:
    eps = hg.h.identity
    return all(v == eps for row in hg.lam for v in row)


def _invariant_key(hg: HypergroupOverGroup) -> tuple:
    """Isomorphism-invariant bucket key for dedup."""
    return (
        hg.m_size,
        hg.h.order,
        tuple(sorted(element_orders(hg.h))),
        is_group_quasigroup(hg),
        _xi_commutative(hg),
        tuple(sorted(_element_keys(hg))),
        _psi_trivial(hg),
        _lam_trivial(hg),
    )


def sweep_standard(
    max_group_order: int,
    transversal_cap: int = DEFAULT_SAMPLE_CAP,
    seed: int = 0,
) -> Catalog:
    """Construct and classify every (builtin G, subgroup, transversal)
    triple up to the order bound, sampling transversals past the cap."""
    if max_group_order > MAX_SWEEP_ORDER:
        raise SizeLimitExceededError(
            f"standard sweep capped at order {MAX_SWEEP_ORDER}"
        )
    catalog = Catalog()
    for group in builtin_groups(max_group_order):
        for h in enumerate_subgroups(group):
            for t in sample_transversals(group, h, cap=transversal_cap, seed=seed):
                hg = standard_construction(group, h, t)
                report = verify_axioms(hg)
                if not report.overall:
                    raise InternalInconsistencyError(
                        f"standard construction failed axioms "
                        f"{report.failing()} for G={group.name}, "
                        f"H={list(h.elements)}, M={list(t.reps)}"
                    )
                provenance = "standard:%s:H=%s:M=%s" % (
                    group.name,
                    ",".join(map(str, h.elements)),
                    ",".join(map(str, t.reps)),
                )
                catalog.insert(hg, provenance)
    return catalog


def _xi_candidates(m: int):
    """All xi tables with left neutral 0 and permutation columns: choose
    per column a a permutation of M sending 0 to a."""
    perms = list(itertools.permutations(range(m)))
    per_column = [
        [p for p in perms if p[0] == a] for a in range(m)
    ]
    for combo in itertools.product(*per_column):
        yield [[combo[a][x] for a in range(m)] for x in range(m)]


def _phi_candidates(h: FiniteGroup, m: int):
    """All right actions of H on M as tables: maps al -> sigma_al into
    Sym(M) with sigma_eps = id and sigma_(al*be) = sigma_al then sigma_be."""
    perms = list(itertools.permutations(range(m)))
    idp = tuple(range(m))
    hn = h.order
    others = [al for al in range(hn) if al != h.identity]
    for assignment in itertools.product(perms, repeat=len(others)):
        sigma = {h.identity: idp}
        for al, p in zip(others, assignment):
            sigma[al] = p
        ok = all(
            tuple(sigma[be][sigma[al][x]] for x in range(m)) == sigma[h.table[al][be]]
            for al in range(hn)
            for be in range(hn)
        )
        if ok:
            yield [[sigma[al][a] for al in range(hn)] for a in range(m)]


def _cyclic_generator_of(h: FiniteGroup) -> int:
    orders = element_orders(h)
    for al in range(h.order):
        if orders[al] == h.order:
            return al
    raise SizeLimitExceededError(
        "abstract enumeration requires a cyclic H (all groups of order "
        "<= 3 are cyclic)"
    )


def _psi_candidates(h: FiniteGroup, phi: list[list[int]], m: int):
    """Psi tables satisfying A1 and P3.

    psi[a][eps] = eps is forced (set al = be = eps in A1 and cancel),
    and the rest of each row follows from the generator column via
    A1: psi[a][g^(k+1)] = psi[a][g^k] * psi[phi[a][g^k]][g]. Free
    choices are the m generator-column values; the full table is then
    filtered by the complete A1 relation and by P3.
    """
    hn = h.order
    ht = h.table
    eps = h.identity
    if hn == 1:
        yield [[eps] for _ in range(m)]
        return
    gamma = _cyclic_generator_of(h)
    # powers[k] = gamma^(k+1); covers all of H minus eps
    powers = [gamma]
    while ht[powers[-1]][gamma] != eps:
        powers.append(ht[powers[-1]][gamma])
    for column in itertools.product(range(hn), repeat=m):
        psi = [[-1] * hn for _ in range(m)]
        for a in range(m):
            psi[a][eps] = eps
            psi[a][gamma] = column[a]
        for k in range(len(powers) - 1):
            g_k, g_next = powers[k], powers[k + 1]
            for a in range(m):
                psi[a][g_next] = ht[psi[a][g_k]][psi[phi[a][g_k]][gamma]]
        ok = all(
            psi[a][ht[al][be]] == ht[psi[a][al]][psi[phi[a][al]][be]]
            for a in range(m)
            for al in range(hn)
            for be in range(hn)
        )
        if ok and set(psi[0]) == set(range(hn)):  # P3 at o = 0
            yield psi


def _lambda_candidates(
    h: FiniteGroup, xi: list[list[int]], phi: list[list[int]],
    psi: list[list[int]], m: int
):
    """All lam tables consistent with A3 and A5, by DFS over cells with
    A3-forced propagation and an A5 check on completed tables.

    Each A3 instance (a, b, al) links cells (a, b) and
    (phi[a][psi[b][al]], phi[b][al]) by an invertible relation in H, so
    assigning one cell forces the other; free cells only appear when a
    new component starts.
    """
    hn = h.order
    ht = h.table
    hinv = h.inverse
    links: dict[tuple[int, int], list[tuple]] = {}
    for a in range(m):
        for b in range(m):
            for al in range(hn):
                t = psi[xi[a][b]][al]
                s = psi[a][psi[b][al]]
                c1 = (a, b)
                c2 = (phi[a][psi[b][al]], phi[b][al])
                # relation: lam[c1] * t = s * lam[c2]
                links.setdefault(c1, []).append((c1, c2, t, s))
                links.setdefault(c2, []).append((c1, c2, t, s))
    lam = [[-1] * m for _ in range(m)]
    cells = [(a, b) for a in range(m) for b in range(m)]

    def force(cell, value, trail):
        lam[cell[0]][cell[1]] = value
        trail.append(cell)
        queue = [cell]
        while queue:
            c = queue.pop()
            for (c1, c2, t, s) in links.get(c, ()):
                v1 = lam[c1[0]][c1[1]]
                v2 = lam[c2[0]][c2[1]]
                if v1 >= 0 and v2 >= 0:
                    if ht[v1][t] != ht[s][v2]:
                        return False
                elif v1 >= 0:
                    forced = ht[hinv[s]][ht[v1][t]]
                    lam[c2[0]][c2[1]] = forced
                    trail.append(c2)
                    queue.append(c2)
                elif v2 >= 0:
                    forced = ht[ht[s][v2]][hinv[t]]
                    lam[c1[0]][c1[1]] = forced
                    trail.append(c1)
                    queue.append(c1)
        return True

    def a5_holds():
        for a in range(m):
            for b in range(m):
                for c in range(m):
                    lhs = ht[lam[a][b]][lam[xi[a][b]][c]]
                    rhs = ht[psi[a][lam[b][c]]][
                        lam[phi[a][lam[b][c]]][xi[b][c]]
                    ]
                    if lhs != rhs:
                        return False
        return True

    def undo(trail):
        for (a, b) in trail:
            lam[a][b] = -1

    def search(pos):
        while pos < len(cells) and lam[cells[pos][0]][cells[pos][1]] >= 0:
            pos += 1
        if pos == len(cells):
            if a5_holds():
                yield [row[:] for row in lam]
            return
        cell = cells[pos]
        for value in range(hn):
            trail: list[tuple[int, int]] = []
            if force(cell, value, trail):
                yield from search(pos + 1)
            undo(trail)

    yield from search(0)


def enumerate_abstract(m_size: int, h: FiniteGroup) -> Catalog:
    """All hypergroups with |M| = m_size over H, up to isomorphism.

    o is fixed at 0: every hypergroup is isomorphic to one with o = 0
    (transport the structure along the transposition swapping 0 and o),
    so the restriction loses no classes. Candidates are generated
    axiom-by-axiom and a final verify_axioms pass is the authority on
    what enters the catalog.
    """
    if m_size > MAX_ABSTRACT_M or m_size < 1:
        raise SizeLimitExceededError(
            f"abstract enumeration capped at |M| <= {MAX_ABSTRACT_M}"
        )
    if h.order > MAX_ABSTRACT_H:
        raise SizeLimitExceededError(
            f"abstract enumeration capped at |H| <= {MAX_ABSTRACT_H}"
        )
    catalog = Catalog()
    count = 0
    for xi in _xi_candidates(m_size):
        for phi in _phi_candidates(h, m_size):
            for psi in _psi_candidates(h, phi, m_size):
                for lam in _lambda_candidates(h, xi, phi, psi, m_size):
                    hg = hypergroup_from_tables(
                        m_size, h, phi, psi, xi, lam, 0
                    )
                    if not verify_axioms(hg).overall:
                        continue
                    provenance = f"abstract:m{m_size}:H={h.name}:#{count}"
                    count += 1
                    catalog.insert(hg, provenance)
    return catalog


@dataclass
class UniversalityReport:
    matches: list[dict]

    @property
    def all_matched(self) -> bool:
        return all(m["matched"] for m in self.matches)

    def unmatched(self) -> list[int]:
        return [m["abstract_class"] for m in self.matches if not m["matched"]]

    def to_dict(self) -> dict:
        return {"all_matched": self.all_matched, "matches": self.matches}


def universality_probe(
    catalog_abstract: Catalog, catalog_standard: Catalog
) -> UniversalityReport:
    """For each abstract class, report whether some standard-constructed
    class is isomorphic to it. Unmatched classes are listed, not treated
    as errors."""
    matches = []
    for abstract_id, rep in enumerate(catalog_abstract.class_reps):
        found = None
        for std_id, std_rep in enumerate(catalog_standard.class_reps):
            if (
                std_rep.m_size == rep.m_size
                and std_rep.h.order == rep.h.order
                and find_isomorphism(rep, std_rep) is not None
            ):
                found = std_id
                break
        matches.append(
            {
                "abstract_class": abstract_id,
                "matched": found is not None,
                "standard_class": found,
            }
        )
    return UniversalityReport(matches=matches)


def catalog_csv(catalog: Catalog) -> str:
    """The summary table as CSV text (one row per entry)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["class_id", "m_size", "h_order", "xi_is_group", "xi_commutative",
         "provenance"]
    )
    for entry in catalog.entries:
        hg = entry.hypergroup
        writer.writerow(
            [
                entry.class_id,
                hg.m_size,
                hg.h.order,
                str(is_group_quasigroup(hg)).lower(),
                str(_xi_commutative(hg)).lower(),
                entry.provenance,
            ]
        )
    return buf.getvalue()


def export_catalog(catalog: Catalog, directory) -> list[str]:
    """Write class representative JSON files and entries.csv; returns the
    file names written, for logging."""
    path = Path(directory)
    path.mkdir(parents=True, exist_ok=True)
    written = []
    for class_id, rep in enumerate(catalog.class_reps):
        fname = f"class_{class_id:04d}.json"
        (path / fname).write_text(canonical_dumps(hypergroup_to_json(rep)))
        written.append(fname)
    (path / "entries.csv").write_text(catalog_csv(catalog))
    written.append("entries.csv")
    return written
