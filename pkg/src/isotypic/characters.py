"""Exact irreducible character tables and class-function arithmetic.

Tables are computed with the Dixon-Schneider method: the class matrices are
simultaneously diagonalized over a prime field F_q with q = 1 (mod exponent)
and q > 2*sqrt(|G|), and the resulting mod-q character values are lifted to
exact cyclotomics by recovering the eigenvalue multiplicities of each class
representative through a discrete Fourier inversion mod q.  No floating
point is involved anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

import numpy as np

from .cyclotomic import Cyclotomic
from .errors import CapExceeded, GroupMismatch, NotSubgroup
from .groups import FiniteGroup, Subgroup

DEFAULT_CHARTABLE_CAP = 256


# -- class functions ------------------------------------------------------------


class ClassFunction:
    """A class function on a finite group: one exact value per conjugacy class."""

    __slots__ = ("group", "values")

    def __init__(self, group: FiniteGroup, values: Sequence[Cyclotomic]):
        if len(values) != len(group.conjugacy_classes()):
            raise ValueError("value count does not match class count")
        self.group = group
        self.values = tuple(values)

    def __call__(self, g: int) -> Cyclotomic:
        return self.values[self.group.class_index(g)]

    def degree(self) -> Cyclotomic:
        return self.values[self.group.class_index(0)]

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        self._check(other)
        return ClassFunction(self.group, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        self._check(other)
        return ClassFunction(self.group, [a - b for a, b in zip(self.values, other.values)])

    def __mul__(self, other) -> "ClassFunction":
        if isinstance(other, ClassFunction):
            self._check(other)
            return ClassFunction(self.group, [a * b for a, b in zip(self.values, other.values)])
        return ClassFunction(self.group, [v * other for v in self.values])

    __rmul__ = __mul__

    def conjugate(self) -> "ClassFunction":
        return ClassFunction(self.group, [v.conjugate() for v in self.values])

    def _check(self, other: "ClassFunction") -> None:
        if other.group is not self.group:
            raise GroupMismatch("class functions live on different groups")

    def __eq__(self, other) -> bool:
        return (isinstance(other, ClassFunction) and other.group is self.group
                and other.values == self.values)

    def __hash__(self) -> int:
        return hash((id(self.group), self.values))

    def sort_key(self):
        return tuple(v.sort_key() for v in self.values)

    def __repr__(self) -> str:
        return "ClassFunction(%s, %s)" % (self.group.name, list(self.values))


class CharacterTable:
    """All irreducible characters of a group, in a deterministic row order."""

    def __init__(self, group: FiniteGroup, rows: Sequence[ClassFunction]):
        self.group = group
        self.rows = tuple(rows)
        self.degrees = tuple(int(r.degree().integer()) for r in self.rows)
        self.classes = group.conjugacy_classes()
        self.class_reps = tuple(c[0] for c in self.classes)
        self.class_sizes = tuple(len(c) for c in self.classes)
        self._row_lookup = {r.values: i for i, r in enumerate(self.rows)}

    def __len__(self) -> int:
        return len(self.rows)

    def row_index(self, values: Sequence[Cyclotomic]) -> int:
        """Index of the row with exactly these values; KeyError if absent."""
        return self._row_lookup[tuple(values)]

    def trivial_index(self) -> int:
        one = Cyclotomic.one(self.rows[0].values[0].e)
        return self.row_index([one] * len(self.classes))

    def to_jsonable(self) -> dict:
        return {
            "group": self.group.name,
            "order": self.group.order,
            "exponent": self.group.exponent,
            "classes": [{"representative": int(r), "size": int(s)}
                        for r, s in zip(self.class_reps, self.class_sizes)],
            "rows": [{"degree": d, "values": [cyclotomic_to_jsonable(v) for v in row.values]}
                     for d, row in zip(self.degrees, self.rows)],
        }


def cyclotomic_to_jsonable(v: Cyclotomic) -> dict:
    return {"e": v.e, "coeffs": {str(k): [c.numerator, c.denominator]
                                 for k, c in sorted(v.coeffs.items())}}


def cyclotomic_from_jsonable(obj: dict) -> Cyclotomic:
    return Cyclotomic(int(obj["e"]),
                      {int(k): Fraction(c[0], c[1]) for k, c in obj["coeffs"].items()})


# -- class function operations --------------------------------------------------


def inner_product(x1: ClassFunction, x2: ClassFunction) -> Cyclotomic:
    """(1/|G|) sum_g x1(g) conj(x2(g)), computed classwise."""
    if x1.group is not x2.group:
        raise GroupMismatch("inner product needs class functions on the same group")
    G = x1.group
    sizes = [len(c) for c in G.conjugacy_classes()]
    e = x1.values[0].e
    total = Cyclotomic.zero(e)
    for sz, a, b in zip(sizes, x1.values, x2.values):
        total = total + (a * b.conjugate()) * sz
    return total * Fraction(1, G.order)


def restrict(chi: ClassFunction, H: Subgroup) -> ClassFunction:
    """Restriction to a subgroup, as a class function on H.as_group()[0].

    Values keep the parent's cyclotomic order.
    """
    if chi.group is not H.parent:
        raise NotSubgroup("class function does not live on the subgroup's parent")
    Hgrp, embed = H.as_group()
    vals = [chi.values[chi.group.class_index(embed[c[0]])]
            for c in Hgrp.conjugacy_classes()]
    return ClassFunction(Hgrp, vals)


def induce(chi: ClassFunction, H: Subgroup) -> ClassFunction:
    """Induction to the parent group by the Frobenius formula."""
    Hgrp, embed = H.as_group()
    if chi.group is not Hgrp:
        raise NotSubgroup("class function does not live on the given subgroup")
    G = H.parent
    eG = G.exponent
    member = set(H.members)
    lut = {g: i for i, g in enumerate(embed)}
    vals = []
    for cls in G.conjugacy_classes():
        g = cls[0]
        acc = Cyclotomic.zero(eG)
        for x in G.elements():
            y = G.mul(G.mul(G.inv(x), g), x)
            if y in member:
                acc = acc + chi.values[Hgrp.class_index(lut[y])].promote(eG)
        vals.append(acc * Fraction(1, H.order))
    return ClassFunction(G, vals)


def eigenvalue_multiplicities(chi: ClassFunction, g: int) -> list[int]:
    """Multiplicities (c_0..c_{m-1}) with chi(g) = sum_j c_j zeta_m^j, m = ord(g).

    Exact Fourier inversion on the cyclic group generated by g; valid for any
    virtual character (the c_j are then integers, possibly negative).
    """
    G = chi.group
    m = G.element_order(g)
    e = chi.values[0].e
    ee = lcm(e, m)
    powers = []
    x = 0
    for _ in range(m):
        powers.append(chi.values[G.class_index(x)].promote(ee))
        x = G.mul(x, g)
    out = []
    for j in range(m):
        acc = Cyclotomic.zero(ee)
        for t in range(m):
            acc = acc + powers[t] * Cyclotomic.root_of_unity(ee, (-j * t * (ee // m)) % ee)
        c = (acc * Fraction(1, m)).rational()
        if c.denominator != 1:
            raise ValueError("eigenvalue multiplicity is not an integer")
        out.append(int(c))
    return out


def determinant_character_value(chi: ClassFunction, g: int) -> tuple[int, int]:
    """det of a representation with character chi at g, as (k, m): zeta_m^k."""
    G = chi.group
    m = G.element_order(g)
    mult = eigenvalue_multiplicities(chi, g)
    k = sum(j * c for j, c in enumerate(mult)) % m
    if k == 0:
        return 0, 1
    d = gcd(k, m)
    return k // d, m // d


# -- modular linear algebra -------------------------------------------------------


def _mm(A: np.ndarray, B: np.ndarray, q: int) -> np.ndarray:
    return (A @ B) % q


def _rref(M: np.ndarray, q: int) -> tuple[np.ndarray, list[int]]:
    R = M.copy() % q
    rows, cols = R.shape
    pivots = []
    rr = 0
    for c in range(cols):
        piv = None
        for i in range(rr, rows):
            if R[i, c] % q:
                piv = i
                break
        if piv is None:
            continue
        if piv != rr:
            R[[rr, piv]] = R[[piv, rr]]
        R[rr] = (R[rr] * pow(int(R[rr, c]), -1, q)) % q
        for i in range(rows):
            if i != rr and R[i, c]:
                R[i] = (R[i] - R[i, c] * R[rr]) % q
        pivots.append(c)
        rr += 1
        if rr == rows:
            break
    return R, pivots


def _solve(B: np.ndarray, C: np.ndarray, q: int) -> np.ndarray:
    """Solve B X = C mod q for B with full column rank."""
    m = B.shape[1]
    R, pivots = _rref(np.concatenate([B, C], axis=1), q)
    if pivots[:m] != list(range(m)):
        raise ValueError("basis matrix is column-rank deficient mod %d" % q)
    if any(p < m for p in pivots[m:]):
        raise AssertionError("unreachable")
    for i in range(m, R.shape[0]):
        if np.any(R[i, m:] % q):
            raise ValueError("inconsistent system: subspace not invariant")
    return R[:m, m:] % q


def _kernel(M: np.ndarray, q: int) -> np.ndarray:
    """Columns spanning ker(M) mod q."""
    n = M.shape[1]
    R, pivots = _rref(M, q)
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((n, len(free)), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[fc, k] = 1
        for i, pc in enumerate(pivots):
            basis[pc, k] = (-int(R[i, fc])) % q
    return basis


def _hessenberg(S: np.ndarray, q: int) -> np.ndarray:
    H = S.copy() % q
    m = H.shape[0]
    for k in range(m - 2):
        piv = None
        for i in range(k + 1, m):
            if H[i, k] % q:
                piv = i
                break
        if piv is None:
            continue
        if piv != k + 1:
            H[[k + 1, piv]] = H[[piv, k + 1]]
            H[:, [k + 1, piv]] = H[:, [piv, k + 1]]
        inv = pow(int(H[k + 1, k]), -1, q)
        for i in range(k + 2, m):
            f = int(H[i, k]) * inv % q
            if f:
                H[i] = (H[i] - f * H[k + 1]) % q
                H[:, k + 1] = (H[:, k + 1] + f * H[:, i]) % q
    return H


def _charpoly(H: np.ndarray, q: int) -> list[int]:
    """Characteristic polynomial of an upper Hessenberg matrix mod q.

    Returned as coefficient list, constant term first.
    """
    m = H.shape[0]
    polys: list[list[int]] = [[1]]
    for k in range(1, m + 1):
        # (lambda - H[k-1,k-1]) * p_{k-1}
        prev = polys[k - 1]
        diag = int(H[k - 1, k - 1])
        cur = [0] * (len(prev) + 1)
        for i, c in enumerate(prev):
            cur[i + 1] = (cur[i + 1] + c) % q
            cur[i] = (cur[i] - diag * c) % q
        # subdiagonal correction terms
        prod = 1
        for i in range(1, k):
            prod = prod * int(H[k - i, k - i - 1]) % q
            if prod == 0:
                break
            coefv = prod * int(H[k - 1 - i, k - 1]) % q
            if coefv:
                pi = polys[k - 1 - i]
                for t, c in enumerate(pi):
                    cur[t] = (cur[t] - coefv * c) % q
        polys.append([c % q for c in cur])
    return polys[m]


def _poly_roots(coeffs: list[int], q: int) -> list[int]:
    lam = np.arange(q, dtype=np.int64)
    acc = np.zeros(q, dtype=np.int64)
    for c in reversed(coeffs):
        acc = (acc * lam + c) % q
    return [int(x) for x in np.nonzero(acc == 0)[0]]


# -- Dixon-Schneider ------------------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def dixon_prime(order: int, exponent: int) -> int:
    """Smallest prime q with q = 1 (mod exponent) and q > 2*sqrt(order)."""
    q = exponent + 1
    while True:
        if q * q > 4 * order and _is_prime(q):
            return q
        q += exponent


def _primitive_root(q: int) -> int:
    fac = []
    n = q - 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            fac.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        fac.append(n)
    for g in range(2, q):
        if all(pow(g, (q - 1) // p, q) != 1 for p in fac):
            return g
    raise AssertionError("no primitive root found")


def _class_matrix(G: FiniteGroup, classes, i: int) -> np.ndarray:
    """(A_i)[j][k] = #{x in C_i : x^-1 z_k in C_j} for a fixed z_k in C_k."""
    r = len(classes)
    A = np.zeros((r, r), dtype=np.int64)
    for k in range(r):
        z = classes[k][0]
        for x in classes[i]:
            j = G.class_index(G.mul(G.inv(x), z))
            A[j, k] += 1
    return A


def character_table(G: FiniteGroup, cap: int = DEFAULT_CHARTABLE_CAP) -> CharacterTable:
    """All irreducible characters of G with exact cyclotomic values.

    Rows are sorted by (degree, lexicographic value order); the result is
    cached on the group instance.
    """
    if G._char_table is not None:
        return G._char_table
    if G.order > cap:
        raise CapExceeded("group order %d exceeds character table cap %d" % (G.order, cap))
    classes = G.conjugacy_classes()
    r = len(classes)
    n = G.order
    e = G.exponent
    q = dixon_prime(n, e)

    # simultaneous eigenspaces of the class matrices over F_q
    subspaces = [np.eye(r, dtype=np.int64)]
    for i in range(1, r):
        if all(B.shape[1] == 1 for B in subspaces):
            break
        A = _class_matrix(G, classes, i)
        refined = []
        for B in subspaces:
            m = B.shape[1]
            if m == 1:
                refined.append(B)
                continue
            S = _solve(B, _mm(A, B, q), q)
            roots = _poly_roots(_charpoly(_hessenberg(S, q), q), q)
            for lam in roots:
                K = _kernel((S - lam * np.eye(m, dtype=np.int64)) % q, q)
                if K.shape[1]:
                    refined.append(_mm(B, K, q))
        subspaces = refined
    if any(B.shape[1] != 1 for B in subspaces) or len(subspaces) != r:
        raise AssertionError("class algebra failed to split into %d lines" % r)

    sizes = [len(c) for c in classes]
    inv_class = [G.class_index(G.inv(c[0])) for c in classes]
    w = pow(_primitive_root(q), (q - 1) // e, q)

    # power maps, needed for the cyclotomic lift
    orders = [G.element_order(c[0]) for c in classes]
    power_classes = []
    for c in classes:
        g = c[0]
        pcs = []
        x = 0
        for _ in range(orders[G.class_index(g)]):
            pcs.append(G.class_index(x))
            x = G.mul(x, g)
        power_classes.append(pcs)

    rows = []
    for B in subspaces:
        v = B[:, 0] % q
        if v[0] == 0:
            raise AssertionError("eigenvector has zero identity coordinate")
        v = (v * pow(int(v[0]), -1, q)) % q
        s = 0
        for i in range(r):
            s = (s + int(v[i]) * int(v[inv_class[i]]) * pow(sizes[i], -1, q)) % q
        d2 = n * pow(s, -1, q) % q
        d = None
        for x in range(1, (q - 1) // 2 + 1):
            if x * x % q == d2:
                d = x
                break
        if d is None:
            raise AssertionError("degree is not a square mod q")
        chi_q = [(d * int(v[i]) * pow(sizes[i], -1, q)) % q for i in range(r)]

        values = []
        for i in range(r):
            m = orders[i]
            z = pow(w, e // m, q)
            zp = [pow(z, t, q) for t in range(m)]
            minv = pow(m, -1, q)
            coeffs = {}
            for j in range(m):
                acc = 0
                for t in range(m):
                    acc = (acc + chi_q[power_classes[i][t]] * zp[(-j * t) % m]) % q
                cj = acc * minv % q
                if cj > d:
                    raise AssertionError("eigenvalue multiplicity out of range")
                if cj:
                    coeffs[(e // m) * j] = cj
            values.append(Cyclotomic(e, coeffs))
        rows.append(ClassFunction(G, values))

    if sum(int(row.degree().integer()) ** 2 for row in rows) != n:
        raise AssertionError("sum of squared degrees does not match group order")
    rows.sort(key=lambda row: (row.degree().integer(), row.sort_key()))
    table = CharacterTable(G, rows)
    G._char_table = table
    return table
