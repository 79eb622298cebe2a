"""Equivariant vector bundles over finite G-sets and their decomposition.

A bundle over a finite G-set is its isomorphism-class data: one stabilizer
character per orbit.  The decomposition into induced isotypic pieces along
the orbits of G on Irr(A) is then an identity of exact characters, verified
fiberwise with cyclotomic arithmetic and no tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .characters import ClassFunction, character_table, inner_product
from .cyclotomic import Cyclotomic
from .errors import NotATrivial
from .groups import FiniteGroup, Subgroup
from .orbits import IrrOrbitRecord, orbit_decomposition


class GSet:
    """A finite G-set given by its full action table (element x point)."""

    def __init__(self, group: FiniteGroup, action: Sequence[Sequence[int]]):
        self.group = group
        self.action = tuple(tuple(int(x) for x in row) for row in action)
        if len(self.action) != group.order:
            raise ValueError("action table needs one row per group element")
        self.size = len(self.action[0]) if self.action else 0
        for row in self.action:
            if len(row) != self.size or any(x < 0 or x >= self.size for x in row):
                raise ValueError("action table rows must map into the point set")
        if self.action[0] != tuple(range(self.size)):
            raise ValueError("identity must act trivially")
        for g in group.elements():
            for h in group.elements():
                gh = group.mul(g, h)
                for x in range(self.size):
                    if self.action[g][self.action[h][x]] != self.action[gh][x]:
                        raise ValueError("action table is not a group action")
        self._orbits: Optional[list[tuple[int, ...]]] = None

    def act(self, g: int, x: int) -> int:
        return self.action[g][x]

    def orbits(self) -> list[tuple[int, ...]]:
        """Orbits as sorted point tuples, ordered by minimal point."""
        if self._orbits is None:
            seen = set()
            orbits = []
            for x in range(self.size):
                if x in seen:
                    continue
                orb = sorted({self.act(g, x) for g in self.group.elements()})
                seen.update(orb)
                orbits.append(tuple(orb))
            orbits.sort(key=lambda o: o[0])
            self._orbits = orbits
        return self._orbits

    def orbit_of(self, x: int) -> tuple[int, ...]:
        for orb in self.orbits():
            if x in orb:
                return orb
        raise ValueError("point %d outside the G-set" % x)

    def stabilizer(self, x: int) -> Subgroup:
        members = tuple(g for g in self.group.elements() if self.act(g, x) == x)
        from .groups import minimal_generators
        return Subgroup(self.group, members, minimal_generators(self.group, members),
                        name="Stab(%d)" % x)

    def transporter(self, x: int) -> int:
        """The minimal group element t with t . rep = x (rep = orbit minimum)."""
        return self.transporter_from(self.orbit_of(x)[0], x)

    def transporter_from(self, src: int, dst: int) -> int:
        """The minimal group element t with t . src = dst (same orbit)."""
        for g in self.group.elements():
            if self.act(g, src) == dst:
                return g
        raise ValueError("points %d and %d are not in the same orbit" % (src, dst))

    def is_trivial_for(self, A: Subgroup) -> bool:
        return all(self.act(a, x) == x for a in A.members for x in range(self.size))

    @staticmethod
    def cosets(G: FiniteGroup, H: Subgroup) -> "GSet":
        """The left coset space G/H with its translation action."""
        hmem = list(H.members)
        coset_of: dict[int, int] = {}
        reps: list[int] = []
        for g in G.elements():
            if g in coset_of:
                continue
            cs = sorted(G.mul(g, h) for h in hmem)
            i = len(reps)
            reps.append(cs[0])
            for y in cs:
                coset_of[y] = i
        action = [[coset_of[G.mul(g, reps[x])] for x in range(len(reps))]
                  for g in G.elements()]
        return GSet(G, action)

    @staticmethod
    def disjoint_union(parts: Sequence["GSet"]) -> "GSet":
        if not parts:
            raise ValueError("need at least one part")
        G = parts[0].group
        if any(p.group is not G for p in parts):
            raise ValueError("all parts must share the same group")
        action = []
        for g in G.elements():
            row: list[int] = []
            offset = 0
            for p in parts:
                row.extend(offset + y for y in p.action[g])
                offset += p.size
            action.append(row)
        return GSet(G, action)

    @staticmethod
    def point(G: FiniteGroup) -> "GSet":
        return GSet(G, [[0]] * G.order)


class EquivariantBundle:
    """Isomorphism-class data of a G-equivariant bundle over a finite G-set.

    fibers maps points (at least one per orbit, usually the orbit
    representatives) to the character of the stabilizer representation on
    the fiber there; characters must decompose with nonnegative integer
    multiplicities, which is validated on construction.  Data stored at
    several points of one orbit is deliberately redundant: the decomposition
    check compares it for mutual consistency.  All values are promoted to
    the exponent of the ambient group so the downstream character identities
    live in one cyclotomic field.
    """

    def __init__(self, base: GSet, fibers: dict):
        self.base = base
        G = base.group
        eG = G.exponent
        self.fibers = {}
        self.multiplicities = {}
        for x, chi in sorted(fibers.items()):
            stab = base.stabilizer(x)
            sgrp, _ = stab.as_group()
            if chi.group is not sgrp:
                raise ValueError("fiber character at %d must live on its stabilizer" % x)
            self.multiplicities[x] = _character_multiplicities(chi)
            self.fibers[x] = ClassFunction(sgrp, [v.promote(eG) if v.e != eG else v
                                                  for v in chi.values])
        self._anchor = {}
        for orb in base.orbits():
            stored = [x for x in orb if x in self.fibers]
            if not stored:
                raise ValueError("missing fiber character for the orbit of %d" % orb[0])
            for x in orb:
                self._anchor[x] = x if x in self.fibers else stored[0]

    def anchor(self, x: int) -> int:
        """The stored point whose data describes the fiber at x."""
        return self._anchor[x]

    def rank(self, x: int) -> int:
        return int(self.fibers[self.anchor(x)].degree().integer())

    @staticmethod
    def from_multiplicities(base: GSet, mults: dict) -> "EquivariantBundle":
        fibers = {}
        for rep, ms in mults.items():
            stab = base.stabilizer(rep)
            sgrp, _ = stab.as_group()
            table = character_table(sgrp)
            if len(ms) != len(table.rows):
                raise ValueError("expected %d multiplicities for orbit %d"
                                 % (len(table.rows), rep))
            e = sgrp.exponent
            acc = ClassFunction(sgrp, [Cyclotomic.zero(e)] * len(sgrp.conjugacy_classes()))
            for m, row in zip(ms, table.rows):
                if m:
                    acc = acc + m * row
            fibers[rep] = acc
        return EquivariantBundle(base, fibers)

    @staticmethod
    def trivial(base: GSet, chi: ClassFunction) -> "EquivariantBundle":
        """The product bundle with fiber a fixed representation of G."""
        from .characters import restrict
        fibers = {}
        for orb in base.orbits():
            rep = orb[0]
            fibers[rep] = restrict(chi, base.stabilizer(rep))
        return EquivariantBundle(base, fibers)

    @staticmethod
    def induced(G: FiniteGroup, H: Subgroup, chi: ClassFunction) -> "EquivariantBundle":
        """The bundle G x_H V over G/H determined by an H-representation."""
        base = GSet.cosets(G, H)
        sgrp, _ = H.as_group()
        if chi.group is not sgrp:
            raise ValueError("character must live on the inducing subgroup")
        return EquivariantBundle(base, {0: chi})


def _character_multiplicities(chi: ClassFunction) -> tuple[int, ...]:
    table = character_table(chi.group)
    out = []
    for row in table.rows:
        val = inner_product(chi, row)
        r = val.rational()
        if r.denominator != 1 or r < 0:
            raise ValueError("fiber character is not a genuine character "
                             "(multiplicity %s)" % r)
        out.append(int(r))
    return tuple(out)


def _require_a_trivial(base: GSet, A: Subgroup) -> None:
    if not base.is_trivial_for(A):
        raise NotATrivial("the distinguished normal subgroup moves a base point")


def fiber_character(E: EquivariantBundle, x: int) -> ClassFunction:
    """Character of the stabilizer representation on the fiber at x.

    At points without stored data the value is conjugate-transported from
    the orbit's anchor point along the minimal transporter.
    """
    base = E.base
    src = E.anchor(x)
    chi = E.fibers[src]
    if x == src:
        return chi
    G = base.group
    t = base.transporter_from(src, x)
    tinv = G.inv(t)
    stab_r = base.stabilizer(src)
    stab_x = base.stabilizer(x)
    sxg, xembed = stab_x.as_group()
    srg, _ = stab_r.as_group()
    vals = []
    for cls in sxg.conjugacy_classes():
        k = xembed[cls[0]]
        y = G.mul(G.mul(tinv, k), t)
        vals.append(chi.values[srg.class_index(stab_r.retract(y))])
    return ClassFunction(sxg, vals)


def isotypic_rank(E: EquivariantBundle, A: Subgroup, rho: int, x: int) -> int:
    """Multiplicity of the A-irreducible rho in the fiber at x."""
    _require_a_trivial(E.base, A)
    val = _isotypic_inner(fiber_character(E, x), E.base.stabilizer(x), A, rho)
    if val.denominator != 1 or val < 0:
        raise AssertionError("isotypic multiplicity is not a nonnegative integer")
    return int(val)


def _isotypic_inner(chi: ClassFunction, stab: Subgroup, A: Subgroup, rho: int) -> Fraction:
    """<Res_A chi, rho> for chi on the materialized stabilizer, A inside it."""
    Agrp, aembed = A.as_group()
    table_a = character_table(Agrp)
    rho_row = table_a.rows[rho]
    sgrp, _ = stab.as_group()
    e = chi.values[0].e
    total = Cyclotomic.zero(e)
    for cls, rval in zip(Agrp.conjugacy_classes(), rho_row.values):
        a = aembed[cls[0]]
        fval = chi.values[sgrp.class_index(stab.retract(a))]
        total = total + len(cls) * (fval * rval.conjugate())
    return (total * Fraction(1, Agrp.order)).rational()


def induction_piece_character(E: EquivariantBundle, A: Subgroup,
                              orbit: IrrOrbitRecord, x: int) -> ClassFunction:
    """Character at x of the induced isotypic piece attached to one orbit.

    The fiber is the sum over cosets g G_rho of the rho-isotypic part of the
    fiber of E at g^-1 x; an element k of Stab(x) permutes the cosets and the
    value at k collects the fixed cosets, where g^-1 k g acts on the summand.
    """
    _require_a_trivial(E.base, A)
    G = E.base.group
    eG = G.exponent
    Agrp, aembed = A.as_group()
    table_a = character_table(Agrp)
    rho_row = table_a.rows[orbit.representative]
    d_rho = table_a.degrees[orbit.representative]
    stab_members = set(orbit.stabilizer.members)

    # transversal of G_rho in G, cosets keyed by minimal member
    coset_of: dict[int, int] = {}
    transversal: list[int] = []
    for g in G.elements():
        if g in coset_of:
            continue
        cs = sorted(G.mul(g, h) for h in orbit.stabilizer.members)
        i = len(transversal)
        transversal.append(cs[0])
        for y in cs:
            coset_of[y] = i

    stab_x = E.base.stabilizer(x)
    sxg, xembed = stab_x.as_group()
    values = []
    for cls in sxg.conjugacy_classes():
        k = xembed[cls[0]]
        total = Cyclotomic.zero(eG)
        for g in transversal:
            h = G.mul(G.mul(G.inv(g), k), g)
            if h not in stab_members:
                continue  # coset not fixed by k
            y = E.base.act(G.inv(g), x)
            fib_y = fiber_character(E, y)
            stab_y = E.base.stabilizer(y)
            syg, _ = stab_y.as_group()
            acc = Cyclotomic.zero(eG)
            for acls, rval in zip(Agrp.conjugacy_classes(), rho_row.values):
                cval = rval.conjugate()
                for aa in acls:
                    a = aembed[aa]
                    ha = G.mul(h, a)
                    acc = acc + cval * fib_y.values[syg.class_index(stab_y.retract(ha))]
            total = total + acc * Fraction(d_rho, Agrp.order)
        values.append(total)
    return ClassFunction(sxg, values)


@dataclass
class DecompositionCheck:
    """Outcome of the fiberwise comparison of E with its decomposition."""

    ok: bool
    per_point: dict  # representative point -> list of mismatching class indices

    def to_jsonable(self) -> dict:
        return {"ok": self.ok,
                "per_point": {str(k): v for k, v in sorted(self.per_point.items())}}


def verify_decomposition(E: EquivariantBundle, A: Subgroup,
                         records: Optional[list] = None,
                         check_all_points: bool = False) -> DecompositionCheck:
    """Exact fiberwise verification that the isotypic pieces sum to E.

    For every orbit representative x (or every point when check_all_points),
    the sum over orbit records of the induced piece characters must equal the
    fiber character of E at x, exactly as class functions.
    """
    _require_a_trivial(E.base, A)
    G = E.base.group
    if records is None:
        records = orbit_decomposition(G, A)
    points = range(E.base.size) if check_all_points else [o[0] for o in E.base.orbits()]
    per_point = {}
    for x in points:
        fib = fiber_character(E, x)
        sxg = fib.group
        e = fib.values[0].e
        total = ClassFunction(sxg, [Cyclotomic.zero(e)] * len(sxg.conjugacy_classes()))
        for rec in records:
            total = total + induction_piece_character(E, A, rec, x)
        bad = [i for i, (a, b) in enumerate(zip(total.values, fib.values))
               if not a.equals_value(b)]
        per_point[x] = bad
    ok = all(not bad for bad in per_point.values())
    return DecompositionCheck(ok=ok, per_point=per_point)
