"""Exact complex irreducible characters, stored as residues modulo a prime q.

The modulus satisfies q = 1 (mod exp(G)) and q > |G|^2, so GF(q) contains
every needed root of unity and all integer quantities compared by the rest
of the artifact (degrees, multiplicities, induction coefficients) are
recovered exactly from their residues. No decision path ever lifts values
to floating point; `complex_character_values` is display-only.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from math import isqrt

import numpy as np

from .errors import (
    ContextMismatch,
    ModulusSearchFailed,
    NotADirectProduct,
    NotASemidirectDecomposition,
    NotASubgroup,
)
from .group import GroupTable, Subgroup, is_prime, whole_group_subgroup
from .modlinalg import charpoly, inv_mod, nullspace, roots_in_field, solve_right


@dataclass(frozen=True, eq=False)
class ConjugacyData:
    """Conjugacy classes of one group, in deterministic order.

    Classes are numbered by their minimum element, ascending, so class 0 is
    always the identity class.
    """

    group: GroupTable
    class_of: np.ndarray
    reps: tuple
    sizes: np.ndarray
    inverse_class: np.ndarray

    @property
    def count(self):
        return len(self.reps)


def conjugacy_classes(G):
    n = G.order
    class_of = np.full(n, -1, dtype=np.int32)
    reps = []
    rng = np.arange(n, dtype=np.int32)
    for x in range(n):
        if class_of[x] >= 0:
            continue
        t = G.mul[G.inv, x]
        orbit = np.unique(G.mul[t, rng])
        class_of[orbit] = len(reps)
        reps.append(x)
    sizes = np.bincount(class_of, minlength=len(reps)).astype(np.int64)
    inverse_class = np.array([class_of[G.inv[r]] for r in reps], dtype=np.int32)
    class_of.setflags(write=False)
    sizes.setflags(write=False)
    inverse_class.setflags(write=False)
    return ConjugacyData(group=G, class_of=class_of, reps=tuple(reps),
                         sizes=sizes, inverse_class=inverse_class)


def dixon_modulus(G, search_limit=10**7):
    """Smallest prime q with q = 1 (mod exp(G)) and q > |G|^2."""
    e = G.exponent()
    n = G.order
    q = e + 1
    for _ in range(search_limit):
        if q > n * n and is_prime(q):
            return q
        q += e
    raise ModulusSearchFailed(f"no modulus below bound for |G| = {n}")


def _class_matrix(G, cls, i):
    """A_i with A_i[j, k] = #{(x, y) in C_i x C_j : x y = rep_k}."""
    m = cls.count
    members_i = np.flatnonzero(cls.class_of == i).astype(np.int32)
    reps = np.array(cls.reps, dtype=np.int32)
    ys = G.mul[G.inv[members_i][:, None], reps[None, :]]
    cj = cls.class_of[ys]                      # (|C_i|, m)
    A = np.zeros((m, m), dtype=np.int64)
    cols = np.broadcast_to(np.arange(m), cj.shape)
    np.add.at(A, (cj, cols), 1)
    return A


@dataclass(frozen=True, eq=False)
class Character:
    """One irreducible character: integer degree plus residues per class."""

    degree: int
    values: tuple
    id: int

    def __repr__(self):
        return f"Character(id={self.id}, degree={self.degree})"


@dataclass(frozen=True, eq=False)
class CharTable:
    group: GroupTable
    classes: ConjugacyData
    q: int
    chars: tuple

    @property
    def count(self):
        return len(self.chars)

    def values_matrix(self):
        return np.array([c.values for c in self.chars], dtype=np.int64)


def _eigenvector_splitting(G, cls, q):
    """Common eigenvectors of all class matrices, split deterministically."""
    m = cls.count
    spaces = [np.eye(m, dtype=np.int64)]
    for i in range(1, m):
        if all(B.shape[1] == 1 for B in spaces):
            break
        A = _class_matrix(G, cls, i)
        nxt = []
        for B in spaces:
            d = B.shape[1]
            if d == 1:
                nxt.append(B)
                continue
            R = solve_right(B, (A @ B) % q, q)
            eigs = roots_in_field(charpoly(R, q), q)
            found = 0
            for lam in eigs:
                Nb = nullspace((R - lam * np.eye(d, dtype=np.int64)) % q, q)
                if Nb.shape[1]:
                    nxt.append((B @ Nb) % q)
                    found += Nb.shape[1]
            if found != d:
                raise AssertionError("class matrix failed to diagonalize")
        spaces = nxt
    if not all(B.shape[1] == 1 for B in spaces):
        raise AssertionError("common eigenspaces did not split to dimension 1")
    return spaces


def irr_table(G, q=None):
    """Full irreducible character table of G as residues mod q (Dixon)."""
    cls = conjugacy_classes(G)
    n = G.order
    m = cls.count
    if q is None:
        q = dixon_modulus(G)
    spaces = _eigenvector_splitting(G, cls, q)
    inv_sizes = np.array([inv_mod(s, q) for s in cls.sizes], dtype=np.int64)
    inv_n = inv_mod(n, q)
    rows = []
    for B in spaces:
        v = B[:, 0] % q
        v = v * inv_mod(v[0], q) % q               # central character, omega(1) = 1
        s = int((v * v[cls.inverse_class] % q * inv_sizes % q).sum() % q)
        d2 = n * inv_mod(s, q) % q                 # degree^2 as a residue
        d = isqrt(d2)
        if d * d != d2 or not 1 <= d <= isqrt(n):
            raise AssertionError("degree recovery failed")
        vals = tuple(int(d * v[k] % q * inv_sizes[k] % q) for k in range(m))
        rows.append((d, vals))
    if len(rows) != m:
        raise AssertionError("wrong number of characters")
    if sum(d * d for d, _ in rows) != n:
        raise AssertionError("degree squares do not sum to |G|")
    for d, _ in rows:
        if n % d != 0:
            raise AssertionError("character degree does not divide |G|")
    rows.sort()
    chars = tuple(Character(degree=d, values=vals, id=i)
                  for i, (d, vals) in enumerate(rows))
    table = CharTable(group=G, classes=cls, q=q, chars=chars)
    if not check_row_orthogonality(table):
        raise AssertionError("row orthogonality failed")
    del inv_n
    return table


def inner_product(table, a, b):
    """[a, b] for class functions mod q, lifted to its integer value in [0, q)."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    cls = table.classes
    if a.shape != (cls.count,) or b.shape != (cls.count,):
        raise ContextMismatch("class functions do not match the table's classes")
    q = table.q
    tot = int((cls.sizes % q * (a % q) % q * (b[cls.inverse_class] % q) % q).sum() % q)
    return tot * inv_mod(table.group.order, q) % q


def check_row_orthogonality(table):
    V = table.values_matrix() % table.q
    for i, ci in enumerate(table.chars):
        for k in range(i, table.count):
            expected = 1 if i == k else 0
            if inner_product(table, V[i], V[k]) != expected:
                return False
    return True


def check_column_orthogonality(table):
    q = table.q
    V = table.values_matrix() % q
    cls = table.classes
    n = table.group.order
    for j in range(cls.count):
        for k in range(cls.count):
            s = int((V[:, j] * V[:, cls.inverse_class[k]] % q).sum() % q)
            expected = n * inv_mod(int(cls.sizes[j]), q) % q if j == k else 0
            if s != expected:
                return False
    return True


def regular_character(table):
    """Class-function vector of the regular character."""
    vals = np.zeros(table.classes.count, dtype=np.int64)
    vals[0] = table.group.order
    return vals


class CharContext:
    """Shared-modulus character tables for one parent group and its subgroups.

    Tables are cached by canonical member list, so conjugate subgroups are
    recomputed rather than shared (restriction stays embedding-exact). The
    cache follows a single-writer/multi-reader contract; tables themselves
    are immutable.
    """

    def __init__(self, G, q=None):
        self.group = G
        self.q = q if q is not None else dixon_modulus(G)
        self._tables = {}

    def table(self, S=None):
        """CharTable of the subgroup S (or of the whole group if S is None)."""
        if S is None:
            key = None
            build = lambda: irr_table(self.group, q=self.q)
        else:
            if S.parent is not self.group:
                raise ContextMismatch("subgroup belongs to a different group")
            key = S.members
            build = lambda: irr_table(S.local, q=self.q)
        tab = self._tables.get(key)
        if tab is None:
            tab = build()
            self._tables[key] = tab
        return tab

    def whole(self):
        return whole_group_subgroup(self.group)


def restrict_values(ctx, K, psi, H):
    """psi|_H as a class-function vector over H's classes (mod ctx.q)."""
    if not H.member_set <= K.member_set:
        raise NotASubgroup("H is not contained in K")
    tK = ctx.table(K)
    tH = ctx.table(H)
    psi_vals = np.asarray(psi.values, dtype=np.int64)
    out = np.zeros(tH.classes.count, dtype=np.int64)
    for j, rep_local in enumerate(tH.classes.reps):
        parent = H.members[rep_local]
        k_cls = int(tK.classes.class_of[K.index_of[parent]])
        out[j] = psi_vals[k_cls]
    return out


def decompose_restriction(ctx, K, psi, H):
    """Multiplicity vector of psi|_H over Irr(H)."""
    tH = ctx.table(H)
    vals = restrict_values(ctx, K, psi, H)
    mults = tuple(inner_product(tH, vals, phi.values) for phi in tH.chars)
    if sum(m * phi.degree for m, phi in zip(mults, tH.chars)) != psi.degree:
        raise AssertionError("restriction degrees do not add up")
    return mults


@dataclass(frozen=True, eq=False)
class InducedCharacter:
    """theta^G: values over G's classes plus its decomposition into Irr(G)."""

    values: tuple
    decomposition: tuple
    degree: int


def induce(ctx, H, theta):
    """Induced class function theta^G with its Irr(G) decomposition."""
    G = ctx.group
    if H.parent is not G:
        raise NotASubgroup("H is not a subgroup of the context group")
    q = ctx.q
    tG = ctx.table(None)
    tH = ctx.table(H)
    # theta as a function on parent elements, zero outside H
    theta_parent = np.zeros(G.order, dtype=np.int64)
    marr = np.array(H.members, dtype=np.int32)
    theta_vals = np.asarray(theta.values, dtype=np.int64)
    theta_parent[marr] = theta_vals[tH.classes.class_of]
    inv_h = inv_mod(H.order, q)
    rng = np.arange(G.order, dtype=np.int32)
    values = []
    for g in tG.classes.reps:
        conj = G.mul[G.mul[G.inv, g], rng]      # x^{-1} g x over all x
        inside = conj[H.mask[conj]]
        values.append(int(theta_parent[inside].sum() % q * inv_h % q))
    values = tuple(values)
    degree = (G.order // H.order) * theta.degree
    if values[0] != degree % q:
        raise AssertionError("induced degree mismatch")
    decomposition = tuple(inner_product(tG, values, chi.values)
                          for chi in tG.chars)
    if sum(m * chi.degree for m, chi in zip(decomposition, tG.chars)) != degree:
        raise AssertionError("induction decomposition degrees do not add up")
    return InducedCharacter(values=values, decomposition=decomposition,
                            degree=degree)


@dataclass(frozen=True, eq=False)
class DirectProductStructure:
    """Validated internal direct product G = A x B with factor maps."""

    group: GroupTable
    a: Subgroup
    b: Subgroup
    a_of: np.ndarray
    b_of: np.ndarray


def validate_direct_product(G, A, B):
    if A.parent is not G or B.parent is not G:
        raise NotADirectProduct("factors belong to a different group")
    if A.order * B.order != G.order:
        raise NotADirectProduct("|A||B| != |G|")
    if A.member_set & B.member_set != {0}:
        raise NotADirectProduct("factors intersect nontrivially")
    amarr = np.array(A.members, dtype=np.int32)
    bmarr = np.array(B.members, dtype=np.int32)
    if not (G.mul[np.ix_(amarr, bmarr)] == G.mul[np.ix_(bmarr, amarr)].T).all():
        raise NotADirectProduct("factors do not commute elementwise")
    a_of = np.full(G.order, -1, dtype=np.int32)
    b_of = np.full(G.order, -1, dtype=np.int32)
    prods = G.mul[np.ix_(amarr, bmarr)]
    for i, a in enumerate(A.members):
        for j, b in enumerate(B.members):
            g = int(prods[i, j])
            if a_of[g] >= 0:
                raise NotADirectProduct("factorization is not unique")
            a_of[g] = a
            b_of[g] = b
    if (a_of < 0).any():
        raise NotADirectProduct("AB != G")
    return DirectProductStructure(group=G, a=A, b=B, a_of=a_of, b_of=b_of)


def direct_product_char(ctx, dp, phi, psi):
    """(phi x psi)(ab) = phi(a) psi(b), returned as a row of Irr(G)."""
    if dp.group is not ctx.group:
        raise ContextMismatch("direct product structure for a different group")
    q = ctx.q
    tG = ctx.table(None)
    tA = ctx.table(dp.a)
    tB = ctx.table(dp.b)
    phi_vals = np.asarray(phi.values, dtype=np.int64)
    psi_vals = np.asarray(psi.values, dtype=np.int64)
    vals = []
    for g in tG.classes.reps:
        a = int(dp.a_of[g])
        b = int(dp.b_of[g])
        va = phi_vals[tA.classes.class_of[dp.a.index_of[a]]]
        vb = psi_vals[tB.classes.class_of[dp.b.index_of[b]]]
        vals.append(int(va * vb % q))
    vals = tuple(vals)
    for chi in tG.chars:
        if chi.values == vals:
            return chi
    raise AssertionError("product character is not a table row")


@dataclass(frozen=True, eq=False)
class SemidirectStructure:
    """Validated G = H K with H normal, K a complement; k_of factors g = h k."""

    group: GroupTable
    h: Subgroup
    k: Subgroup
    k_of: np.ndarray


def validate_semidirect(G, H, K):
    if H.parent is not G or K.parent is not G:
        raise NotASemidirectDecomposition("parts belong to a different group")
    if H.order * K.order != G.order:
        raise NotASemidirectDecomposition("|H||K| != |G|")
    if H.member_set & K.member_set != {0}:
        raise NotASemidirectDecomposition("parts intersect nontrivially")
    hmarr = np.array(H.members, dtype=np.int32)
    for g in range(G.order):
        if not H.mask[G.conj_set(hmarr, g)].all():
            raise NotASemidirectDecomposition("H is not normal in G")
    k_of = np.full(G.order, -1, dtype=np.int32)
    for h in H.members:
        for k in K.members:
            g = int(G.mul[h, k])
            if k_of[g] >= 0:
                raise NotASemidirectDecomposition("factorization is not unique")
            k_of[g] = k
    if (k_of < 0).any():
        raise NotASemidirectDecomposition("HK != G")
    return SemidirectStructure(group=G, h=H, k=K, k_of=k_of)


def lift_through_complement(ctx, sd, phi):
    """Lift of phi in Irr(K) to G along g = hk -> phi(k)."""
    if sd.group is not ctx.group:
        raise ContextMismatch("semidirect structure for a different group")
    tG = ctx.table(None)
    tK = ctx.table(sd.k)
    phi_vals = np.asarray(phi.values, dtype=np.int64)
    vals = []
    for g in tG.classes.reps:
        k = int(sd.k_of[g])
        vals.append(int(phi_vals[tK.classes.class_of[sd.k.index_of[k]]]))
    vals = tuple(vals)
    for chi in tG.chars:
        if chi.values == vals:
            return chi
    raise AssertionError("lift is not a table row; character not constant on classes?")


def _primitive_root(q):
    factors = []
    m = q - 1
    d = 2
    while d * d <= m:
        if m % d == 0:
            factors.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        factors.append(m)
    for r in range(2, q):
        if all(pow(r, (q - 1) // f, q) != 1 for f in factors):
            return r
    raise AssertionError("no primitive root found")


def complex_character_values(table):
    """Approximate complex values, for display only (never used in logic)."""
    G = table.group
    q = table.q
    root = _primitive_root(q)
    out = []
    for chi in table.chars:
        row = []
        for j, rep in enumerate(table.classes.reps):
            e = int(G.elem_order[rep])
            z = pow(root, (q - 1) // e, q)
            # chi on the powers of rep
            powers = [table.classes.class_of[G.power(rep, s)] for s in range(e)]
            inv_e = inv_mod(e, q)
            val = 0.0 + 0.0j
            for t in range(e):
                c = sum(chi.values[powers[s]] * pow(z, (-s * t) % (q - 1), q)
                        for s in range(e)) % q * inv_e % q
                val += c * cmath.exp(2j * cmath.pi * t / e)
            row.append(val)
        out.append(row)
    return out
