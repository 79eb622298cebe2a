"""Unitary matrix models of the irreducible representations.

The regular representation is split into explicit unitary irreducibles with
a seeded random commutant element per isotypic block.  Intertwiners between
conjugate representations yield the obstruction 2-cocycle that measures
whether an irreducible representation of a normal subgroup extends to its
stabilizer; the cocycle is snapped to exact roots of unity and all identity
checks downstream are exact integer arithmetic.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from math import lcm
from typing import Optional, Sequence

import numpy as np

from .characters import (ClassFunction, character_table,
                         determinant_character_value)
from .errors import (CapExceeded, InvalidCocycle, NonScalar,
                     NumericalDegeneracy, SnapFailure, SplitFailure)
from .groups import FiniteGroup, QuotientGroup, Subgroup, minimal_generators

DEFAULT_SEED = 0x5EED
DEFAULT_TOL = 1e-8
DEFAULT_SNAP_TOL = 1e-6
MATRIX_IRREPS_CAP = 256
_MAX_RETRIES = 20


@dataclass(frozen=True)
class MatrixRep:
    """A unitary matrix representation with its exact character attached."""

    group: FiniteGroup
    dimension: int
    images: tuple  # one d x d complex ndarray per element
    character: ClassFunction

    def image(self, g: int) -> np.ndarray:
        return self.images[g]

    def conjugated(self, conj_map: Sequence[int]) -> "MatrixRep":
        """The representation a -> rho(conj_map[a]), e.g. a -> rho(g^-1 a g)."""
        G = self.group
        images = tuple(self.images[conj_map[a]] for a in G.elements())
        values = []
        for cls in G.conjugacy_classes():
            values.append(self.character.values[G.class_index(conj_map[cls[0]])])
        return MatrixRep(G, self.dimension, images, ClassFunction(G, values))


def _regular_images(G: FiniteGroup) -> list[np.ndarray]:
    n = G.order
    out = []
    for g in range(n):
        M = np.zeros((n, n), dtype=complex)
        for h in range(n):
            M[G.mul(g, h), h] = 1.0
        out.append(M)
    return out


def matrix_irreps(G: FiniteGroup, seed: int = DEFAULT_SEED,
                  tol: float = DEFAULT_TOL, cap: int = MATRIX_IRREPS_CAP) -> list[MatrixRep]:
    """One unitary MatrixRep per irreducible character, in table row order.

    Deterministic for a fixed seed: the random commutant elements are drawn
    from a freshly seeded generator in a fixed order.
    """
    if G.order > cap:
        raise CapExceeded("order %d exceeds matrix_irreps cap %d" % (G.order, cap))
    table = character_table(G)
    rng = np.random.default_rng(seed)
    reg = _regular_images(G)
    n = G.order
    reps = []
    for row, d in zip(table.rows, table.degrees):
        if d == 1:
            images = tuple(np.array([[row(g).to_complex()]]) for g in G.elements())
            reps.append(MatrixRep(G, 1, images, row))
            continue
        # isotypic projector for this character
        P = np.zeros((n, n), dtype=complex)
        for cls, val in zip(table.classes, row.values):
            coeff = val.conjugate().to_complex()
            if coeff != 0:
                for g in cls:
                    P += coeff * reg[g]
        P *= d / G.order
        evals, evecs = np.linalg.eigh(P)
        keep = np.nonzero(evals > 0.5)[0]
        if len(keep) != d * d:
            raise SplitFailure("isotypic block has dimension %d, expected %d"
                               % (len(keep), d * d))
        B0 = evecs[:, keep]
        block = [B0.conj().T @ reg[g] @ B0 for g in G.elements()]
        rep = None
        for _ in range(_MAX_RETRIES):
            X = rng.standard_normal((d * d, d * d)) + 1j * rng.standard_normal((d * d, d * d))
            K = (X + X.conj().T) / 2
            S = sum(Bg @ K @ Bg.conj().T for Bg in block) / G.order
            vals, vecs = np.linalg.eigh(S)
            groups = _cluster(vals, 1e-6 * max(1.0, np.max(np.abs(vals))))
            if len(groups) != d or any(len(g) != d for g in groups):
                continue
            W = vecs[:, groups[0]]
            images = tuple(W.conj().T @ Bg @ W for Bg in block)
            rep = MatrixRep(G, d, images, row)
            break
        if rep is None:
            raise SplitFailure("could not separate eigenvalues for a degree-%d block" % d)
        _check_rep(rep, tol)
        reps.append(rep)
    return reps


def _cluster(sorted_vals: np.ndarray, gap: float) -> list[list[int]]:
    groups: list[list[int]] = [[0]]
    for i in range(1, len(sorted_vals)):
        if sorted_vals[i] - sorted_vals[i - 1] < gap:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def _check_rep(rep: MatrixRep, tol: float) -> None:
    G = rep.group
    d = rep.dimension
    eye = np.eye(d)
    for g in G.elements():
        M = rep.images[g]
        if np.linalg.norm(M @ M.conj().T - eye, 2) > tol:
            raise SplitFailure("representation image is not unitary")
    for g in G.elements():
        for h in G.elements():
            if np.linalg.norm(rep.images[g] @ rep.images[h] - rep.images[G.mul(g, h)], 2) > tol:
                raise SplitFailure("homomorphism residual above tolerance")
    for cls, val in zip(G.conjugacy_classes(), rep.character.values):
        if abs(np.trace(rep.images[cls[0]]) - val.to_complex()) > 1e-6:
            raise SplitFailure("trace does not match the exact character")


def intertwiner(rho1: MatrixRep, rho2: MatrixRep,
                rng: Optional[np.random.Generator] = None,
                tol: float = DEFAULT_TOL) -> Optional[np.ndarray]:
    """A unitary U with U rho1(g) U^-1 = rho2(g), or None if not isomorphic.

    Averages rho2(g) R rho1(g)^-1 over the group for a random R and
    unitarizes by polar decomposition.
    """
    if rho1.group is not rho2.group or rho1.dimension != rho2.dimension:
        return None
    if rho1.character != rho2.character:
        return None
    G = rho1.group
    d = rho1.dimension
    if rng is None:
        rng = np.random.default_rng(DEFAULT_SEED)
    for _ in range(_MAX_RETRIES):
        R = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        T = sum(rho2.images[g] @ R @ rho1.images[g].conj().T for g in G.elements()) / G.order
        u, s, vh = np.linalg.svd(T)
        if s[-1] < 1e-8 * max(1.0, s[0]):
            continue
        U = u @ vh
        res = max(np.linalg.norm(U @ rho1.images[g] @ U.conj().T - rho2.images[g], 2)
                  for g in G.elements())
        if res <= tol:
            return U
    raise NumericalDegeneracy("averaged intertwiner stayed singular after retries")


@dataclass(frozen=True)
class ObstructionRecord:
    """The obstruction cocycle of an irreducible rho of a normal subgroup.

    omega is a |Q| x |Q| table of exponents k meaning the root of unity
    exp(2*pi*i*k/modulus); modulus = dim(rho) * order(det o rho), which makes
    every snapped scalar an exact root of unity.  trivial is decided by the
    exact character-level extension criterion, never numerically.
    """

    rho: MatrixRep
    stabilizer: Subgroup
    quotient: QuotientGroup
    omega: tuple  # tuple of tuples of ints
    modulus: int
    trivial: bool
    intertwiners: tuple  # one unitary per coset representative

    def omega_value(self, q1: int, q2: int) -> tuple[int, int]:
        return self.omega[q1][q2], self.modulus

    def to_jsonable(self) -> dict:
        return {
            "stabilizer_order": self.stabilizer.order,
            "quotient_order": self.quotient.order,
            "dimension": self.rho.dimension,
            "modulus": self.modulus,
            "omega": [list(row) for row in self.omega],
            "trivial": self.trivial,
        }


def stabilizer_of_character(G: FiniteGroup, A: Subgroup, chi: ClassFunction) -> Subgroup:
    """G_chi = {g : the class function a -> chi(g^-1 a g) equals chi}."""
    Agrp, embed = A.as_group()
    if chi.group is not Agrp:
        raise ValueError("character does not live on the subgroup")
    members = []
    for g in G.elements():
        if _conjugated_values(G, A, chi, g) == chi.values:
            members.append(g)
    mem = tuple(sorted(members))
    return Subgroup(G, mem, minimal_generators(G, mem), name="Stab")


def _conjugated_values(G: FiniteGroup, A: Subgroup, chi: ClassFunction, g: int):
    """Values of (g . chi)(a) = chi(g^-1 a g) in A-class order."""
    Agrp, embed = A.as_group()
    ginv = G.inv(g)
    vals = []
    for cls in Agrp.conjugacy_classes():
        x = G.mul(G.mul(ginv, embed[cls[0]]), g)
        vals.append(chi.values[Agrp.class_index(A.retract(x))])
    return tuple(vals)


def _det_normalize(U: np.ndarray) -> np.ndarray:
    d = U.shape[0]
    det = np.linalg.det(U)
    return U * cmath.exp(-cmath.log(det) / d)


def obstruction_cocycle(G: FiniteGroup, A: Subgroup, rho: MatrixRep,
                        seed: int = DEFAULT_SEED, tol: float = DEFAULT_TOL,
                        snap_tol: float = DEFAULT_SNAP_TOL) -> ObstructionRecord:
    """Obstruction data for extending rho from the normal subgroup A to its
    stabilizer G_rho.

    For each coset representative g of A in G_rho a unitary U_g with
    U_g rho(g^-1 a g) U_g^-1 = rho(a) is computed and rescaled to det 1;
    the cocycle entry at (q1, q2) is the Schur scalar of
    rho(a0)^-1 U_{g1} U_{g2} U_{g3}^-1 with g1 g2 = a0 g3, snapped to an
    exact root of unity and cross-checked against the exact determinant
    character of rho.  The cocycle identity is then verified exactly.
    """
    Agrp, embed = A.as_group()
    if rho.group is not Agrp:
        raise ValueError("rho must be a representation of the materialized subgroup")
    if not G.is_normal(A):
        raise InvalidCocycle("A must be normal in G")
    d = rho.dimension

    G_rho = stabilizer_of_character(G, A, rho.character)
    Sgrp, sembed = G_rho.as_group()
    A_in_s = Sgrp.subgroup_from_members([G_rho.retract(a) for a in A.members], name=A.name)
    Q = Sgrp.quotient(A_in_s)
    m = Q.order

    # order of the determinant character of rho
    e_lambda = 1
    for a in Agrp.elements():
        _, ord_a = determinant_character_value(rho.character, a)
        e_lambda = lcm(e_lambda, ord_a)
    modulus = d * e_lambda

    rng = np.random.default_rng(seed)
    reps_g = [sembed[Q.lift(q)] for q in range(m)]  # coset reps as G-elements
    eye = np.eye(d)
    units = []
    for q in range(m):
        g = reps_g[q]
        if g == 0:
            units.append(eye.copy())
            continue
        ginv = G.inv(g)
        conj_map = [A.retract(G.mul(G.mul(ginv, embed[a]), g)) for a in Agrp.elements()]
        rho_g = rho.conjugated(conj_map)
        U = intertwiner(rho_g, rho, rng=rng, tol=tol)
        assert U is not None, "coset representative does not stabilize rho"
        units.append(_det_normalize(U))

    # exact values of the determinant character, indexed by A-element
    det_exp = {}
    for a in Agrp.elements():
        k, mm = determinant_character_value(rho.character, a)
        det_exp[a] = (k * (modulus // mm)) % modulus  # det rho(a) = zeta_modulus^this

    omega = [[0] * m for _ in range(m)]
    for q1 in range(m):
        for q2 in range(m):
            q12 = Q.group.mul(q1, q2)
            g1, g2, g3 = reps_g[q1], reps_g[q2], reps_g[q12]
            a0 = G.mul(G.mul(g1, g2), G.inv(g3))
            a0_local = A.retract(a0)  # raises if not in A
            M = rho.images[a0_local].conj().T @ units[q1] @ units[q2] @ units[q12].conj().T
            c = np.trace(M) / d
            if np.max(np.abs(M - c * eye)) > snap_tol:
                raise NonScalar("cocycle matrix is not scalar at (%d, %d)" % (q1, q2))
            k = round(modulus * (cmath.phase(c) / (2 * math.pi))) % modulus
            if abs(c - cmath.exp(2j * math.pi * k / modulus)) > snap_tol:
                raise SnapFailure("scalar %r too far from mu_%d" % (c, modulus))
            # exact cross-check: omega^d must equal det(rho(a0))^-1
            if (k * d) % modulus != (-det_exp[a0_local]) % modulus:
                raise SnapFailure("snapped scalar disagrees with the determinant character")
            omega[q1][q2] = k

    _check_cocycle_identity(Q.group, omega, modulus)

    from .orbits import extension_exists  # deferred: orbits depends on this module
    table_a = character_table(Agrp)
    rho_index = table_a.row_index(rho.character.values)
    trivial = extension_exists(G_rho, A, rho_index)

    return ObstructionRecord(rho=rho, stabilizer=G_rho, quotient=Q,
                             omega=tuple(tuple(row) for row in omega),
                             modulus=modulus, trivial=trivial,
                             intertwiners=tuple(units))


def _check_cocycle_identity(Q: FiniteGroup, omega, modulus: int) -> None:
    n = Q.order
    for a in range(n):
        if omega[0][a] != 0 or omega[a][0] != 0:
            raise InvalidCocycle("cocycle is not normalized")
    for a in range(n):
        for b in range(n):
            ab = Q.mul(a, b)
            for c in range(n):
                lhs = (omega[a][b] + omega[ab][c]) % modulus
                rhs = (omega[a][Q.mul(b, c)] + omega[b][c]) % modulus
                if lhs != rhs:
                    raise InvalidCocycle("cocycle identity fails at (%d,%d,%d)" % (a, b, c))
