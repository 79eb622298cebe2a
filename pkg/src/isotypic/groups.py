"""Finite groups as dense multiplication tables; subgroups, quotients, normalizers.

Conventions used throughout the package:
  * elements are indices 0..order-1 and element 0 is the identity,
  * subgroup member lists are sorted (deterministic iteration order),
  * conjugacy classes are sorted by their minimal element, so the class of
    the identity always comes first.
"""

from __future__ import annotations

import random
from math import lcm
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import CapExceeded, ClosureOverflow, InvalidPermutation, NotNormal

DEFAULT_ORDER_CAP = 10000

# Full associativity is O(n^3); above this order we spot-check random triples.
_ASSOC_FULL_LIMIT = 512
_ASSOC_SAMPLES = 20000


class FiniteGroup:
    """A finite group given by its full multiplication table.

    Immutable after construction; any number of readers may share an
    instance.  Derived data (classes, exponent, character table) is cached
    lazily on the instance.
    """

    def __init__(self, table: Sequence[Sequence[int]], name: str = "G",
                 perms: Optional[Sequence[tuple[int, ...]]] = None,
                 check: bool = True):
        tbl = np.asarray(table, dtype=np.int64)
        if tbl.ndim != 2 or tbl.shape[0] != tbl.shape[1]:
            raise ValueError("multiplication table must be square")
        self.order = int(tbl.shape[0])
        self.name = name
        self._table = tbl
        self._table.setflags(write=False)
        self._perms = tuple(tuple(p) for p in perms) if perms is not None else None
        self._inv = self._compute_inverses()
        if check:
            self._check_axioms()
        self._exponent: Optional[int] = None
        self._classes: Optional[list[tuple[int, ...]]] = None
        self._class_of: Optional[list[int]] = None
        self._subgroup_cache: dict[tuple[int, ...], tuple["FiniteGroup", tuple[int, ...]]] = {}
        self._char_table = None  # set by characters.character_table

    # -- construction checks ------------------------------------------------

    def _compute_inverses(self) -> np.ndarray:
        n = self.order
        inv = np.full(n, -1, dtype=np.int64)
        rows, cols = np.nonzero(self._table == 0)
        inv[rows] = cols
        if np.any(inv < 0):
            raise ValueError("multiplication table has an element with no inverse")
        return inv

    def _check_axioms(self) -> None:
        n = self.order
        tbl = self._table
        if np.any(tbl < 0) or np.any(tbl >= n):
            raise ValueError("table entries out of range")
        if not np.array_equal(tbl[0], np.arange(n)) or not np.array_equal(tbl[:, 0], np.arange(n)):
            raise ValueError("element 0 is not the identity")
        # each row and column must be a permutation (cancellation laws)
        ar = np.arange(n)
        for a in range(n):
            if not np.array_equal(np.sort(tbl[a]), ar) or not np.array_equal(np.sort(tbl[:, a]), ar):
                raise ValueError("table row/column is not a permutation")
        if n <= _ASSOC_FULL_LIMIT:
            for a in range(n):
                # (a*b)*c vs a*(b*c), vectorized over (b, c)
                if not np.array_equal(tbl[tbl[a], :], tbl[a][tbl]):
                    raise ValueError("multiplication table is not associative")
        else:
            rng = random.Random(0)
            for _ in range(_ASSOC_SAMPLES):
                a = rng.randrange(n)
                b = rng.randrange(n)
                c = rng.randrange(n)
                if tbl[tbl[a, b], c] != tbl[a, tbl[b, c]]:
                    raise ValueError("multiplication table is not associative")

    # -- basic operations ----------------------------------------------------

    @property
    def identity(self) -> int:
        return 0

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return int(self._table[a, b])

    def inv(self, a: int) -> int:
        return int(self._inv[a])

    def conj(self, g: int, a: int) -> int:
        """g a g^-1."""
        return self.mul(self.mul(g, a), self.inv(g))

    def power(self, g: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(g), -k)
        out = 0
        for _ in range(k):
            out = self.mul(out, g)
        return out

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.mul(x, g)
            k += 1
        return k

    @property
    def exponent(self) -> int:
        if self._exponent is None:
            e = 1
            for g in self.elements():
                e = lcm(e, self.element_order(g))
            self._exponent = e
        return self._exponent

    @property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self._table, self._table.T))

    def permutation_of(self, g: int) -> Optional[tuple[int, ...]]:
        """Underlying permutation when the group came from generators."""
        return None if self._perms is None else self._perms[g]

    def perm_index(self, p) -> int:
        """Element index of a permutation (groups built from generators only)."""
        if self._perms is None:
            raise ValueError("group was not built from permutations")
        lut = getattr(self, "_perm_lut", None)
        if lut is None:
            lut = {perm: i for i, perm in enumerate(self._perms)}
            self._perm_lut = lut
        return lut[tuple(p)]

    # -- conjugacy classes ----------------------------------------------------

    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        """Partition of the elements into conjugacy classes.

        Classes are sorted tuples, ordered by minimal element; the class of
        the identity is first.
        """
        if self._classes is None:
            seen = [False] * self.order
            classes = []
            for g in self.elements():
                if seen[g]:
                    continue
                orbit = {self.conj(x, g) for x in self.elements()}
                for h in orbit:
                    seen[h] = True
                classes.append(tuple(sorted(orbit)))
            classes.sort(key=lambda c: c[0])
            self._classes = classes
            class_of = [0] * self.order
            for i, cls in enumerate(classes):
                for h in cls:
                    class_of[h] = i
            self._class_of = class_of
        return self._classes

    def class_index(self, g: int) -> int:
        self.conjugacy_classes()
        assert self._class_of is not None
        return self._class_of[g]

    # -- subgroups -------------------------------------------------------------

    def subgroup(self, generators: Iterable[int], name: Optional[str] = None) -> "Subgroup":
        gens = tuple(dict.fromkeys(int(g) for g in generators))
        members = closure(self, gens)
        return Subgroup(self, members, gens, name=name)

    def subgroup_from_members(self, members: Iterable[int], name: Optional[str] = None) -> "Subgroup":
        mem = tuple(sorted(set(int(m) for m in members)))
        gens = minimal_generators(self, mem)
        sub = Subgroup(self, mem, gens, name=name)
        return sub

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, (0,), (), name="1")

    def full_subgroup(self) -> "Subgroup":
        return Subgroup(self, tuple(self.elements()), minimal_generators(self, tuple(self.elements())),
                        name=self.name)

    def center(self) -> "Subgroup":
        members = tuple(g for g in self.elements()
                        if all(self.mul(g, h) == self.mul(h, g) for h in self.elements()))
        return Subgroup(self, members, minimal_generators(self, members), name="Z(%s)" % self.name)

    def is_normal(self, H: "Subgroup") -> bool:
        mem = set(H.members)
        return all(self.conj(g, h) in mem for g in self.elements() for h in H.members)

    def normalizer(self, H: "Subgroup") -> "Subgroup":
        """Largest subgroup N with nHn^-1 = H; always contains H."""
        mem = set(H.members)
        keep = tuple(n for n in self.elements()
                     if all(self.conj(n, h) in mem for h in H.members))
        return Subgroup(self, keep, minimal_generators(self, keep),
                        name="N(%s)" % (H.name or "H"))

    def quotient(self, A: "Subgroup") -> "QuotientGroup":
        """Quotient by a normal subgroup; raises NotNormal otherwise."""
        if A.parent is not self:
            raise NotNormal("subgroup does not live in this group")
        if not self.is_normal(A):
            raise NotNormal("subgroup is not normal")
        amem = list(A.members)
        coset_of: dict[int, int] = {}
        cosets: list[tuple[int, ...]] = []
        for g in self.elements():
            if g in coset_of:
                continue
            cs = tuple(sorted(self.mul(g, a) for a in amem))
            idx = len(cosets)
            cosets.append(cs)
            for h in cs:
                coset_of[h] = idx
        # reorder so cosets are sorted by minimal element (identity coset first)
        order = sorted(range(len(cosets)), key=lambda i: cosets[i][0])
        relabel = {old: new for new, old in enumerate(order)}
        cosets = [cosets[i] for i in order]
        projection = tuple(relabel[coset_of[g]] for g in self.elements())
        section = tuple(cs[0] for cs in cosets)
        m = len(cosets)
        table = [[projection[self.mul(section[i], section[j])] for j in range(m)]
                 for i in range(m)]
        qname = "%s/%s" % (self.name, A.name or "A")
        qgrp = FiniteGroup(table, name=qname)
        return QuotientGroup(qgrp, projection, section, A, self)

    def all_subgroups(self, limit: int = 20000) -> list["Subgroup"]:
        """Every subgroup, found by closing cyclic subgroups under extension."""
        found: dict[tuple[int, ...], tuple[int, ...]] = {(0,): ()}
        frontier = [(0,)]
        for g in self.elements():
            mem = closure(self, (g,))
            if mem not in found:
                found[mem] = (g,)
                frontier.append(mem)
        while frontier:
            mem = frontier.pop()
            gens = found[mem]
            if len(mem) == self.order:
                continue
            inside = set(mem)
            for g in self.elements():
                if g in inside:
                    continue
                bigger = closure(self, gens + (g,))
                if bigger not in found:
                    if len(found) > limit:
                        raise CapExceeded("subgroup enumeration exceeded limit")
                    found[bigger] = gens + (g,)
                    frontier.append(bigger)
        subs = [Subgroup(self, mem, minimal_generators(self, mem)) for mem in found]
        subs.sort(key=lambda s: (s.order, s.members))
        return subs

    def subgroup_conjugacy_classes(self) -> list[list["Subgroup"]]:
        """Conjugacy classes of subgroups, each class sorted, classes sorted
        by (order, members of the minimal representative)."""
        subs = self.all_subgroups()
        by_members = {s.members: s for s in subs}
        seen: set[tuple[int, ...]] = set()
        classes: list[list[Subgroup]] = []
        for s in subs:
            if s.members in seen:
                continue
            orbit = set()
            for g in self.elements():
                orbit.add(tuple(sorted(self.conj(g, h) for h in s.members)))
            cls = sorted(orbit)
            seen.update(cls)
            classes.append([by_members[m] for m in cls])
        classes.sort(key=lambda c: (c[0].order, c[0].members))
        return classes

    def __repr__(self) -> str:
        return "FiniteGroup(%s, order=%d)" % (self.name, self.order)


class Subgroup:
    """A subgroup of a FiniteGroup, stored as a sorted member-index set."""

    def __init__(self, parent: FiniteGroup, members: tuple[int, ...],
                 generators: tuple[int, ...], name: Optional[str] = None):
        self.parent = parent
        self.members = tuple(sorted(members))
        self.generators = tuple(generators)
        self.name = name
        if self.members[0] != 0:
            raise ValueError("subgroup must contain the identity")
        if parent.order % len(self.members) != 0:
            raise ValueError("subgroup order does not divide group order")

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, g: int) -> bool:
        return g in self._member_set

    @property
    def _member_set(self) -> frozenset:
        ms = getattr(self, "_ms", None)
        if ms is None:
            ms = frozenset(self.members)
            self._ms = ms
        return ms

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subgroup) and other.parent is self.parent
                and other.members == self.members)

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    def conjugate(self, g: int) -> "Subgroup":
        G = self.parent
        mem = tuple(sorted(G.conj(g, h) for h in self.members))
        gens = tuple(G.conj(g, h) for h in self.generators)
        return Subgroup(G, mem, gens, name=self.name)

    def as_group(self) -> tuple[FiniteGroup, tuple[int, ...]]:
        """Materialize as a standalone FiniteGroup.

        Returns (H, embed) where embed maps H-indices to parent indices.
        Cached on the parent so equal subgroups share the same object (and
        hence the same cached character table).
        """
        cached = self.parent._subgroup_cache.get(self.members)
        if cached is not None:
            return cached
        if len(self.members) == self.parent.order:
            out = (self.parent, tuple(self.parent.elements()))
        else:
            embed = self.members
            retract = {g: i for i, g in enumerate(embed)}
            n = len(embed)
            table = [[retract[self.parent.mul(embed[i], embed[j])] for j in range(n)]
                     for i in range(n)]
            name = self.name or ("%s<%s" % (self.parent.name, ",".join(map(str, self.generators))))
            out = (FiniteGroup(table, name=name), embed)
        self.parent._subgroup_cache[self.members] = out
        return out

    def retract(self, g: int) -> int:
        """Parent index -> index in the materialized group."""
        _, embed = self.as_group()
        lut = getattr(self, "_retract", None)
        if lut is None:
            lut = {e: i for i, e in enumerate(embed)}
            self._retract = lut
        return lut[g]

    def __repr__(self) -> str:
        return "Subgroup(order=%d of %s)" % (self.order, self.parent.name)


class QuotientGroup:
    """A quotient G/A with a projection map and a section of coset reps."""

    def __init__(self, group: FiniteGroup, projection: tuple[int, ...],
                 section: tuple[int, ...], kernel: Subgroup, parent: FiniteGroup):
        self.group = group
        self.projection = projection
        self.section = section
        self.kernel = kernel
        self.parent = parent

    @property
    def order(self) -> int:
        return self.group.order

    def project(self, g: int) -> int:
        return self.projection[g]

    def lift(self, q: int) -> int:
        return self.section[q]

    def __repr__(self) -> str:
        return "QuotientGroup(%s, order=%d)" % (self.group.name, self.order)


# -- free functions ------------------------------------------------------------


def closure(G: FiniteGroup, generators: Sequence[int]) -> tuple[int, ...]:
    """Members of the subgroup generated by the given element indices."""
    seen = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g in generators:
            y = G.mul(x, g)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return tuple(sorted(seen))


def minimal_generators(G: FiniteGroup, members: Sequence[int]) -> tuple[int, ...]:
    """A short generating list for a known member set (greedy)."""
    gens: tuple[int, ...] = ()
    have = {0}
    for m in members:
        if m not in have:
            gens = gens + (m,)
            have = set(closure(G, gens))
            if len(have) == len(members):
                break
    return gens


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """(p o q)(i) = p(q(i)); matches left actions on points."""
    return tuple(p[q[i]] for i in range(len(q)))


def group_from_generators(degree: int, generators: Sequence[Sequence[int]],
                          name: str = "G", cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Close a set of permutations of {0..degree-1} into a full group table.

    Element 0 is the identity; the remaining elements are indexed in
    breadth-first discovery order, which is deterministic.
    """
    gens = []
    for p in generators:
        pt = tuple(int(x) for x in p)
        if sorted(pt) != list(range(degree)):
            raise InvalidPermutation("generator %r is not a permutation of 0..%d" % (p, degree - 1))
        gens.append(pt)
    ident = tuple(range(degree))
    elems: list[tuple[int, ...]] = [ident]
    index = {ident: 0}
    queue = [ident]
    while queue:
        x = queue.pop(0)
        for g in gens:
            y = _compose(x, g)
            if y not in index:
                if len(elems) >= cap:
                    raise ClosureOverflow("closure exceeded cap %d" % cap)
                index[y] = len(elems)
                elems.append(y)
                queue.append(y)
    n = len(elems)
    table = [[index[_compose(elems[i], elems[j])] for j in range(n)] for i in range(n)]
    return FiniteGroup(table, name=name, perms=elems)
