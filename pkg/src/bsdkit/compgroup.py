"""Component group and Tamagawa number from combinatorial fibre data.

The special fibre of a regular model is given as components with
multiplicities, a symmetric intersection matrix and a Frobenius
permutation.  The component group of the Jacobian's Neron model is
ker(beta-bar)/im(alpha-bar): the integer kernel of the multiplicity
vector modulo the column lattice of the intersection matrix.  The
Tamagawa number c_p counts Frobenius-fixed elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .intmat import (hermite_normal_form, identity, inverse_unimodular,
                     invariant_factors, kernel_basis, mat_mul, mat_vec,
                     smith_normal_form, solve_integer)


class FibreError(ValueError):
    pass


@dataclass(frozen=True)
class Component:
    id: str
    multiplicity: int


@dataclass
class SpecialFibre:
    p: int
    components: List[Component]
    intersections: List[List[int]]   # indexed like components
    frobenius: Dict[str, str]        # component id -> component id

    def index(self, cid: str) -> int:
        for i, c in enumerate(self.components):
            if c.id == cid:
                return i
        raise FibreError(f"unknown component id {cid!r}")

    @property
    def multiplicities(self) -> List[int]:
        return [c.multiplicity for c in self.components]


@dataclass
class FinAbGroupWithAction:
    invariant_factors: List[int]     # d_1 | d_2 | ..., each >= 2
    generators: List[List[int]]      # columns, in ker beta-bar coordinates
    action_matrix: List[List[int]]   # Frobenius on the generators
    kernel_basis: List[List[int]]    # ker beta-bar basis (component coords)

    @property
    def order(self) -> int:
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n


def _rational_rank(M: Sequence[Sequence[int]]) -> int:
    A = [[Fraction(x) for x in row] for row in M]
    rank = 0
    rows, cols = len(A), len(A[0]) if A else 0
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if A[r][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = 1 / A[rank][c]
        A[rank] = [x * inv for x in A[rank]]
        for r in range(rows):
            if r != rank and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[rank])]
        rank += 1
    return rank


def validate_fibre(F: SpecialFibre) -> List[str]:
    """All SpecialFibre invariants; returns a list of failure messages."""
    out: List[str] = []
    n = len(F.components)
    ids = [c.id for c in F.components]
    if len(set(ids)) != n:
        out.append("duplicate component ids")
        return out
    for c in F.components:
        if c.multiplicity < 1:
            out.append(f"component {c.id}: multiplicity "
                       f"{c.multiplicity} is not positive")
    M = F.intersections
    if len(M) != n or any(len(row) != n for row in M):
        out.append(f"intersection matrix is not {n}x{n}")
        return out
    for i in range(n):
        for j in range(i + 1, n):
            if M[i][j] != M[j][i]:
                out.append(f"intersection matrix asymmetric at pair "
                           f"({ids[i]}, {ids[j]}): "
                           f"{M[i][j]} != {M[j][i]}")
    m = F.multiplicities
    for i in range(n):
        s = sum(m[j] * M[i][j] for j in range(n))
        if s != 0:
            out.append(f"weighted row sum for component {ids[i]} "
                       f"is {s}, not 0")
    if set(F.frobenius.keys()) != set(ids) or \
            set(F.frobenius.values()) != set(ids):
        out.append("frobenius is not a permutation of the component ids")
        return out
    sigma = [F.index(F.frobenius[c.id]) for c in F.components]
    for i in range(n):
        if m[sigma[i]] != m[i]:
            out.append(f"frobenius does not preserve the multiplicity "
                       f"of {ids[i]}")
    for i in range(n):
        for j in range(n):
            if M[sigma[i]][sigma[j]] != M[i][j]:
                out.append(f"frobenius does not preserve the intersection "
                           f"number of ({ids[i]}, {ids[j]})")
    if not out and n > 0 and _rational_rank(M) != n - 1:
        out.append(f"intersection graph is disconnected "
                   f"(matrix rank {_rational_rank(M)} != {n - 1})")
    return out


def _kernel_and_relations(F: SpecialFibre):
    """Kernel basis B of the multiplicity vector and the relation matrix C
    with B·C = intersection matrix (columns of C are im alpha-bar in
    kernel coordinates)."""
    n = len(F.components)
    B = kernel_basis([F.multiplicities])          # n x (n-1)
    r = len(B[0]) if B else 0
    C: List[List[int]] = [[0] * n for _ in range(r)]
    for j in range(n):
        col = [F.intersections[i][j] for i in range(n)]
        x = solve_integer(B, col)
        if x is None:
            raise FibreError("intersection column is not in ker beta-bar "
                             "(weighted row sums nonzero?)")
        for i in range(r):
            C[i][j] = x[i]
    return B, C


def _kernel_action(F: SpecialFibre, B) -> List[List[int]]:
    """Frobenius on kernel coordinates: solve B·A = P·B."""
    n = len(F.components)
    r = len(B[0]) if B else 0
    sigma = [F.index(F.frobenius[c.id]) for c in F.components]
    A = [[0] * r for _ in range(r)]
    for j in range(r):
        col = [B[i][j] for i in range(n)]
        image = [0] * n
        for i in range(n):
            image[sigma[i]] = col[i]
        x = solve_integer(B, image)
        if x is None:
            raise FibreError("frobenius does not preserve ker beta-bar")
        for i in range(r):
            A[i][j] = x[i]
    return A


def component_group(F: SpecialFibre) -> FinAbGroupWithAction:
    diags = validate_fibre(F)
    if diags:
        raise FibreError("; ".join(diags))
    n = len(F.components)
    if n == 1:
        return FinAbGroupWithAction([], [], [], [[]])
    B, C = _kernel_and_relations(F)
    r = len(C)
    D, U, V = smith_normal_form(C)
    diag = [D[t][t] for t in range(min(r, len(C[0])))]
    if len(diag) < r or any(d == 0 for d in diag):
        raise FibreError("component group is infinite (disconnected fibre)")
    Uinv = inverse_unimodular(U)
    A_full = mat_mul(mat_mul(U, _kernel_action(F, B)), Uinv)
    torsion = [t for t in range(r) if diag[t] > 1]
    inv_factors = [diag[t] for t in torsion]
    generators = [[Uinv[i][t] for i in range(r)] for t in torsion]
    action = [[A_full[torsion[i]][torsion[j]] % inv_factors[i]
               for j in range(len(torsion))] for i in range(len(torsion))]
    return FinAbGroupWithAction(inv_factors, generators, action, B)


def tamagawa_number(F: SpecialFibre) -> int:
    G = component_group(F)
    return fixed_point_count(G)


def fixed_point_count(G: FinAbGroupWithAction) -> int:
    """|ker(action - 1)| on ⊕ ZZ/d_i, via the Smith form of the stacked
    relation matrix [A - I | diag(d)]."""
    t = len(G.invariant_factors)
    if t == 0:
        return 1
    A = G.action_matrix
    stacked = [[A[i][j] - (1 if i == j else 0) for j in range(t)]
               + [G.invariant_factors[i] if j == i else 0 for j in range(t)]
               for i in range(t)]
    facs = invariant_factors(stacked)
    # [A-I | diag(d)] has full row rank (it contains diag(d)), so the
    # kernel count equals the product of its t invariant factors
    c = 1
    for d in facs:
        c *= d
    return c


# ---------------------------------------------------------------------------
# brute-force oracle


@dataclass
class GroupTable:
    order: int
    invariant_factors: List[int]
    fixed_point_count: int
    elements: List[Tuple[int, ...]]   # canonical coset representatives


def _factorize(n: int) -> Dict[int, int]:
    out: Dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _invariants_from_counts(order: int, kill_count) -> List[int]:
    """Invariant factors of a finite abelian group from the counts
    c(k) = #{x : k·x = 0} (kill_count is that function)."""
    primes = _factorize(order)
    per_prime: Dict[int, List[int]] = {}
    max_len = 0
    for q in primes:
        exps = []
        prev = 1
        j = 1
        while True:
            c = kill_count(q ** j)
            if c == prev:
                break
            s = 0
            ratio = c // prev
            while ratio > 1:
                ratio //= q
                s += 1
            exps.append(s)       # number of cyclic q-factors of order >= q^j
            prev = c
            j += 1
        # i-th largest factor exponent = #{j : exps[j] >= i}
        count = exps[0] if exps else 0
        factors = [sum(1 for s in exps if s >= i)
                   for i in range(1, count + 1)]
        per_prime[q] = sorted(factors)   # ascending
        max_len = max(max_len, len(factors))
    inv = []
    for i in range(max_len):
        d = 1
        for q, factors in per_prime.items():
            pad = [0] * (max_len - len(factors)) + factors
            d *= q ** pad[i]
        if d > 1:
            inv.append(d)
    return inv


def brute_force_component_group(F: SpecialFibre, cap: int = 10 ** 4
                                ) -> GroupTable:
    """Enumerates ker beta-bar modulo im alpha-bar by coset hashing."""
    diags = validate_fibre(F)
    if diags:
        raise FibreError("; ".join(diags))
    n = len(F.components)
    if n == 1:
        return GroupTable(1, [], 1, [()])
    B, C = _kernel_and_relations(F)
    r = len(C)
    H, _ = hermite_normal_form(C)     # r x n, first r columns triangular
    piv = [H[i][i] for i in range(r)]
    order = 1
    for d in piv:
        if d == 0:
            raise FibreError("component group is infinite "
                             "(disconnected fibre)")
        order *= d
    if order > cap:
        raise FibreError(f"group order {order} exceeds cap {cap}")

    def reduce(x: Sequence[int]) -> Tuple[int, ...]:
        y = list(x)
        for i in range(r):
            q = y[i] // piv[i]
            if q:
                for k in range(i, r):
                    y[k] -= q * H[k][i]
        return tuple(y)

    # enumerate canonical representatives
    elements: List[Tuple[int, ...]] = []
    idx = [0] * r
    while True:
        elements.append(reduce(idx))
        i = 0
        while i < r and idx[i] == piv[i] - 1:
            idx[i] = 0
            i += 1
        if i == r:
            break
        idx[i] += 1
    elements = sorted(set(elements))
    if len(elements) != order:
        raise FibreError("coset enumeration inconsistent with determinant")

    A = _kernel_action(F, B)
    fixed = sum(1 for x in elements
                if reduce(mat_vec(A, list(x))) == x)

    def kill_count(k: int) -> int:
        return sum(1 for x in elements
                   if all(v == 0 for v in reduce([k * v for v in x])))

    inv = _invariants_from_counts(order, kill_count)
    return GroupTable(order, inv, fixed, elements)


# ---------------------------------------------------------------------------
# orbit expansion (copies of a cluster defined over an extension field)


@dataclass
class OrbitCluster:
    base_field_exponent: int                  # ell
    copies: int                               # m
    components: List[Component]               # copy-0 components
    internal_intersections: List[List[int]]
    internal_permutation: Dict[str, str]      # action of Frob^m on copy 0
    ambient_links: Dict[str, Dict[str, int]]  # copy-0 id -> ambient id -> num

    def index(self, cid: str) -> int:
        for i, c in enumerate(self.components):
            if c.id == cid:
                return i
        raise FibreError(f"unknown cluster component id {cid!r}")


@dataclass
class FibreFragment:
    components: List[Component]
    intersections: Dict[Tuple[str, str], int]   # canonical (sorted) pairs
    frobenius: Dict[str, str]
    ambient_links: Dict[str, Dict[str, int]]


def _validate_cluster(cluster: OrbitCluster):
    n = len(cluster.components)
    M = cluster.internal_intersections
    if len(M) != n or any(len(row) != n for row in M):
        raise FibreError("internal intersection matrix has wrong shape")
    for i in range(n):
        for j in range(n):
            if M[i][j] != M[j][i]:
                raise FibreError("internal intersection matrix asymmetric")
    ids = {c.id for c in cluster.components}
    if set(cluster.internal_permutation.keys()) != ids or \
            set(cluster.internal_permutation.values()) != ids:
        raise FibreError("internal permutation is not a permutation")
    sigma = [cluster.index(cluster.internal_permutation[c.id])
             for c in cluster.components]
    for i in range(n):
        if cluster.components[sigma[i]].multiplicity != \
                cluster.components[i].multiplicity:
            raise FibreError("internal permutation changes a multiplicity")
        for j in range(n):
            if M[sigma[i]][sigma[j]] != M[i][j]:
                raise FibreError("internal permutation does not preserve "
                                 "the intersection matrix")


def copy_id(cid: str, i: int) -> str:
    return f"{cid}#{i}"


def expand_orbit(cluster: OrbitCluster,
                 ambient_frobenius: Dict[str, str]) -> FibreFragment:
    """m copies of the cluster with the Frobenius cycling through them.

    Copy i maps identically onto copy i+1 for i < m-1; copy m-1 maps onto
    copy 0 via the internal permutation.  Distinct copies do not
    intersect; copy-i-to-ambient numbers are <D_0, sigma_ambient^{-i}(E)>.
    """
    _validate_cluster(cluster)
    m = cluster.copies
    if m < 1:
        raise FibreError("copies must be >= 1")
    amb_inv = {v: k for k, v in ambient_frobenius.items()}
    if len(amb_inv) != len(ambient_frobenius):
        raise FibreError("ambient frobenius is not a permutation")

    def amb_power(e: str, k: int) -> str:
        # sigma_ambient^{-k}(e)
        for _ in range(k):
            if e not in amb_inv:
                raise FibreError(f"ambient id {e!r} missing from the "
                                 "ambient frobenius")
            e = amb_inv[e]
        return e

    def amb_fwd(e: str, k: int) -> str:
        for _ in range(k):
            e = ambient_frobenius[e]
        return e

    # equivariance of the links under Frob^m: <pi(D), sigma^m(E)> = <D, E>;
    # a violation means the ambient permutation order is incompatible with m
    pi = cluster.internal_permutation
    for d, links in cluster.ambient_links.items():
        pd = pi[d]
        plinks = cluster.ambient_links.get(pd, {})
        for e, v in links.items():
            if e not in ambient_frobenius:
                raise FibreError(f"ambient id {e!r} missing from the "
                                 "ambient frobenius")
            if plinks.get(amb_fwd(e, m), 0) != v:
                raise FibreError(
                    f"ambient permutation order incompatible with {m} "
                    f"copies: link <{d}, {e}> = {v} is not matched by "
                    f"<{pd}, sigma^{m}({e})>")

    comps: List[Component] = []
    inter: Dict[Tuple[str, str], int] = {}
    frob: Dict[str, str] = {}
    links: Dict[str, Dict[str, int]] = {}
    n = len(cluster.components)
    for i in range(m):
        for c in cluster.components:
            comps.append(Component(copy_id(c.id, i), c.multiplicity))
        for a in range(n):
            for b in range(a, n):
                v = cluster.internal_intersections[a][b]
                if v or a == b:
                    key = tuple(sorted((
                        copy_id(cluster.components[a].id, i),
                        copy_id(cluster.components[b].id, i))))
                    inter[key] = v
        for c in cluster.components:
            if i < m - 1:
                frob[copy_id(c.id, i)] = copy_id(c.id, i + 1)
            else:
                frob[copy_id(c.id, i)] = copy_id(pi[c.id], 0)
        for d, lk in cluster.ambient_links.items():
            row = {}
            for e, v in lk.items():
                if v:
                    row[amb_power(e, i)] = row.get(amb_power(e, i), 0) + v
            if row:
                links[copy_id(d, i)] = row
    return FibreFragment(comps, inter, frob, links)


def assemble_fibre(p: int,
                   ambient_components: List[Component],
                   ambient_intersections: List[List[int]],
                   ambient_frobenius: Dict[str, str],
                   fragment: FibreFragment) -> SpecialFibre:
    """Merge an expanded fragment into the ambient data to a full fibre."""
    comps = list(ambient_components) + list(fragment.components)
    ids = [c.id for c in comps]
    pos = {cid: k for k, cid in enumerate(ids)}
    n = len(comps)
    M = [[0] * n for _ in range(n)]
    na = len(ambient_components)
    for i in range(na):
        for j in range(na):
            M[i][j] = ambient_intersections[i][j]
    for (a, b), v in fragment.intersections.items():
        i, j = pos[a], pos[b]
        M[i][j] = v
        M[j][i] = v
    for d, lk in fragment.ambient_links.items():
        for e, v in lk.items():
            i, j = pos[d], pos[e]
            M[i][j] = v
            M[j][i] = v
    frob = dict(ambient_frobenius)
    frob.update(fragment.frobenius)
    return SpecialFibre(p, comps, M, frob)
