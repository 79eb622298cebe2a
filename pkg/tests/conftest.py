"""Shared fixtures and independent brute-force oracles for the test suite."""

from __future__ import annotations

import itertools

import pytest

from isotypic.catalog import build_catalog_group, catalog_pairs
from isotypic.groups import FiniteGroup, group_from_generators


@pytest.fixture(scope="session")
def d8():
    return build_catalog_group("D8")


@pytest.fixture(scope="session")
def q8():
    return build_catalog_group("Q8")


@pytest.fixture(scope="session")
def z4():
    return build_catalog_group("Z4")


@pytest.fixture(scope="session")
def pairs():
    return catalog_pairs()


def dihedral(p: int) -> FiniteGroup:
    rot = [(i + 1) % p for i in range(p)]
    ref = [(p - i) % p for i in range(p)]
    return group_from_generators(p, [rot, ref], name="D%d" % (2 * p))


# -- independent oracles -------------------------------------------------------


def brute_conjugacy_classes(table):
    """Conjugacy classes straight from a multiplication table (no library)."""
    n = len(table)
    inv = [row.index(0) for row in [list(r) for r in table]]
    seen = set()
    classes = []
    for g in range(n):
        if g in seen:
            continue
        cls = {table[table[x][g]][inv[x]] for x in range(n)}
        seen |= cls
        classes.append(tuple(sorted(cls)))
    return sorted(classes, key=lambda c: c[0])


def brute_partitions(n: int, max_parts: int = None):
    """All partitions of n (optionally with a bounded number of parts)."""
    out = []

    def rec(remaining, cap, prefix):
        if remaining == 0:
            if max_parts is None or len(prefix) <= max_parts:
                out.append(tuple(prefix))
            return
        if max_parts is not None and len(prefix) >= max_parts:
            return
        for part in range(min(cap, remaining), 0, -1):
            rec(remaining - part, part, prefix + [part])

    rec(n, n, [])
    return out


def brute_label_orbit_counts(dims, perms, max_degree):
    """Orbit counts of (array, partition tuple) labels per degree, by explicit
    enumeration and canonical-form deduplication; checks Burnside externally."""
    labels_by_degree = {n: set() for n in range(max_degree + 1)}
    arrays = _arrays_up_to(dims, max_degree // 2)
    for arr in arrays:
        k = sum(n * d for n, d in zip(arr, dims))
        budget = (max_degree - 2 * k) // 2
        if budget < 0:
            continue
        for sizes in _compositions(budget, len(arr)):
            choices = [brute_partitions(s, m) for s, m in zip(sizes, arr)]
            if any(not c for c in choices):
                continue
            for combo in itertools.product(*choices):
                degree = 2 * k + 2 * sum(sum(lam) for lam in combo)
                canon = min(_apply_label(arr, combo, perm) for perm in perms)
                labels_by_degree[degree].add(canon)
    return [len(labels_by_degree[n]) for n in range(max_degree + 1)]


def _apply_label(arr, partitions, perm):
    new_arr = [0] * len(arr)
    new_parts = [()] * len(arr)
    for i, j in enumerate(perm):
        new_arr[j] = arr[i]
        new_parts[j] = partitions[i]
    return tuple(new_arr), tuple(new_parts)


def _arrays_up_to(dims, kmax):
    out = []

    def rec(i, budget, prefix):
        if i == len(dims):
            out.append(tuple(prefix))
            return
        for n in range(budget // dims[i] + 1):
            rec(i + 1, budget - n * dims[i], prefix + [n])

    if not dims:
        return [()]
    rec(0, kmax, [])
    return out


def _compositions(total_max, length):
    """All tuples of nonnegative ints of given length with sum <= total_max."""
    if length == 0:
        yield ()
        return
    for first in range(total_max + 1):
        for rest in _compositions(total_max - first, length - 1):
            yield (first,) + rest


def brute_automorphisms(G: FiniteGroup, limit: int = 200000):
    """All automorphisms of a small group by generator-image search."""
    from isotypic.groups import minimal_generators
    gens = minimal_generators(G, tuple(G.elements()))
    orders = [G.element_order(g) for g in gens]
    autos = []
    candidates = [[h for h in G.elements() if G.element_order(h) == o] for o in orders]
    for images in itertools.product(*candidates):
        phi = _extend_hom(G, gens, images)
        if phi is not None and len(set(phi)) == G.order:
            autos.append(tuple(phi))
        if len(autos) > limit:
            break
    return autos


def _extend_hom(G, gens, images):
    """Extend generator images to a homomorphism by BFS on words, or None."""
    phi = {0: 0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g, img in zip(gens, images):
            y = G.mul(x, g)
            fy = G.mul(phi[x], img)
            if y in phi:
                if phi[y] != fy:
                    return None
            else:
                phi[y] = fy
                frontier.append(y)
    if len(phi) != G.order:
        return None
    out = [phi[x] for x in range(G.order)]
    # full homomorphism check
    for a in range(G.order):
        for b in range(G.order):
            if out[G.mul(a, b)] != G.mul(out[a], out[b]):
                return None
    return out
