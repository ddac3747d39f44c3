"""Number-field towers with the subfield property and p inert.

A tower is grown one prime ell at a time: the ell-chain QQ = F_0 c F_1 c
F_2 c ... (degree ell^a at level a) is extended by lifting an irreducible
degree-ell polynomial over the residue field of the top chain level, and
product fields for several primes are built as composita of chain levels.
Every constructed field carries p inert (its defining polynomial stays
irreducible mod p) and a registry of subfields, one per divisor of the
degree, with embedding witnesses.

Polynomials here are univariate, encoded as tuples of coefficients in
ascending degree: ints for ZZ-level data, Fractions for QQ-level
embeddings.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .poly import Polynomial
from .rings import (CoefficientRing, fp_is_irreducible, fp_is_squarefree,
                    fp_trim, find_irreducible, is_prime)

DEGREE_CAP = 24


class FieldTowerError(ValueError):
    pass


# ---------------------------------------------------------------------------
# univariate polynomials over QQ (tuples of Fractions, low degree first)


def uq(coeffs) -> Tuple[Fraction, ...]:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def uq_add(a, b):
    n = max(len(a), len(b))
    return uq([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
               for i in range(n)])


def uq_sub(a, b):
    n = max(len(a), len(b))
    return uq([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)
               for i in range(n)])


def uq_scale(a, c):
    return uq([Fraction(c) * x for x in a])


def uq_mul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return uq(out)


def uq_divmod(a, b):
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    while len(a) >= len(b):
        if a[-1] == 0:
            a.pop()
            continue
        d = len(a) - len(b)
        c = a[-1] * inv
        q[d] = c
        for i, y in enumerate(b):
            a[d + i] -= c * y
        while a and a[-1] == 0:
            a.pop()
    return uq(q), uq(a)


def uq_mod(a, b):
    return uq_divmod(a, b)[1]


def uq_gcd(a, b):
    while b:
        a, b = b, uq_mod(a, b)
    if a:
        a = uq_scale(a, 1 / a[-1])
    return a


def uq_compose_mod(a, b, mod):
    """a(b) reduced modulo mod, by Horner."""
    acc: Tuple[Fraction, ...] = ()
    for c in reversed(a):
        acc = uq_mod(uq_add(uq_mul(acc, b), uq((c,))), mod)
    return acc


def uq_eval(a, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def uq_to_int(a) -> Tuple[int, ...]:
    out = []
    for c in a:
        c = Fraction(c)
        if c.denominator != 1:
            raise FieldTowerError(f"expected integer coefficients, got {a}")
        out.append(c.numerator)
    return tuple(out)


# ---------------------------------------------------------------------------
# integer resultants and discriminants


def _bareiss_det(M: List[List[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    n = len(M)
    if n == 0:
        return 1
    A = [row[:] for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if A[r][k]), None)
            if piv is None:
                return 0
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[-1][-1]


def resultant(f: Sequence[int], g: Sequence[int]) -> int:
    """Res(f, g) of integer univariate polynomials via the Sylvester
    determinant."""
    f = tuple(f)
    g = tuple(g)
    n = len(f) - 1
    m = len(g) - 1
    if n < 0 or m < 0:
        return 0
    if n == 0:
        return f[0] ** m
    if m == 0:
        return g[0] ** n
    size = n + m
    S = [[0] * size for _ in range(size)]
    for i in range(m):
        for j, c in enumerate(reversed(f)):
            S[i][i + j] = c
    for i in range(n):
        for j, c in enumerate(reversed(g)):
            S[m + i][i + j] = c
    return _bareiss_det(S)


def discriminant(f: Sequence[int]) -> int:
    """disc(f) for monic integer f: (-1)^(n(n-1)/2) Res(f, f')."""
    f = tuple(f)
    n = len(f) - 1
    if n < 1:
        raise FieldTowerError("discriminant needs degree >= 1")
    if f[-1] != 1:
        raise FieldTowerError("discriminant implemented for monic f")
    fp = tuple(i * f[i] for i in range(1, len(f)))
    r = resultant(f, fp)
    return -r if (n * (n - 1) // 2) % 2 else r


# ---------------------------------------------------------------------------
# univariate polynomials over an arbitrary finite field (elements of a
# CoefficientRing with is_field(); coefficients low degree first)


def gfq_trim(ring, a):
    a = list(a)
    while a and ring.is_zero(a[-1]):
        a.pop()
    return tuple(a)


def gfq_mul(ring, a, b):
    if not a or not b:
        return ()
    out = [ring.zero()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not ring.is_zero(x):
            for j, y in enumerate(b):
                out[i + j] = ring.add(out[i + j], ring.mul(x, y))
    return gfq_trim(ring, out)


def gfq_mod(ring, a, b):
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    a = list(a)
    inv = ring.inv(b[-1])
    while len(a) >= len(b):
        if ring.is_zero(a[-1]):
            a.pop()
            continue
        d = len(a) - len(b)
        c = ring.mul(a[-1], inv)
        for i, y in enumerate(b):
            a[d + i] = ring.sub(a[d + i], ring.mul(c, y))
        while a and ring.is_zero(a[-1]):
            a.pop()
    return gfq_trim(ring, a)


def gfq_gcd(ring, a, b):
    while b:
        a, b = b, gfq_mod(ring, a, b)
    if a:
        inv = ring.inv(a[-1])
        a = gfq_trim(ring, [ring.mul(inv, x) for x in a])
    return a


def gfq_powmod(ring, a, n: int, mod):
    result = (ring.one(),)
    a = gfq_mod(ring, a, mod)
    while n:
        if n & 1:
            result = gfq_mod(ring, gfq_mul(ring, result, a), mod)
        a = gfq_mod(ring, gfq_mul(ring, a, a), mod)
        n >>= 1
    return result


def gfq_is_irreducible(ring, f) -> bool:
    """Irreducibility over GF(q), q = p^k, via the x^(q^d) - x ladder."""
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    q = ring.p ** (ring.k or 1)
    x = (ring.zero(), ring.one())

    def minus_x(h):
        out = list(h) + [ring.zero()] * max(0, 2 - len(h))
        out[1] = ring.sub(out[1], ring.one())
        return gfq_trim(ring, out)

    if minus_x(gfq_powmod(ring, x, q ** n, f)):
        return False
    for r in {d for d in range(2, n + 1) if n % d == 0 and is_prime(d)}:
        h = minus_x(gfq_powmod(ring, x, q ** (n // r), f))
        if gfq_gcd(ring, h, f) != (ring.one(),):
            return False
    return True


def gfq_find_irreducible(ring, degree: int, rng: random.Random,
                         budget: int = 2000):
    """Monic irreducible of the given degree over the finite field."""
    q_elems = _field_elements(ring)
    for _ in range(budget):
        coeffs = [rng.choice(q_elems) for _ in range(degree)]
        f = tuple(coeffs) + (ring.one(),)
        if gfq_is_irreducible(ring, f):
            return f
    raise FieldTowerError("budget exhausted searching for an irreducible "
                          f"degree-{degree} polynomial")


def _field_elements(ring):
    p = ring.p
    k = ring.k or 1
    if ring.kind == "GF":
        return list(range(p))
    out = []

    def rec(prefix, depth):
        if depth == k:
            out.append(fp_trim(prefix, p))
            return
        for c in range(p):
            rec(prefix + [c], depth + 1)
    rec([], 0)
    return out


# ---------------------------------------------------------------------------
# the quotient algebra QQ[x, y]/(f1(x), H(x, y)) and minimal polynomials


class _TowerAlgebra:
    """QQ[x, y]/(f1(x), H(x, y)) with f1 monic of degree n over ZZ and H
    monic in y of degree ell with coefficients in ZZ[x].  Elements are
    lists over the y-degree of QQ[x]-polynomials (reduced mod f1)."""

    def __init__(self, f1: Sequence[int], H: Sequence[Sequence[int]]):
        self.f1 = uq(f1)
        self.n = len(self.f1) - 1
        self.H = [uq(c) for c in H]       # H[j] = coefficient of y^j
        if self.H[-1] != (Fraction(1),):
            raise FieldTowerError("H must be monic in y")
        self.ell = len(self.H) - 1
        self.dim = self.n * self.ell

    def zero(self):
        return [()] * self.ell

    def x_elem(self):
        e = self.zero()
        e[0] = uq_mod(uq((0, 1)), self.f1)
        return e

    def y_elem(self):
        if self.ell == 1:
            # y = -H[0] in the quotient
            return [uq_mod(uq_scale(self.H[0], -1), self.f1)]
        e = self.zero()
        e[1] = (Fraction(1),)
        return e

    def add(self, a, b):
        return [uq_add(x, y) for x, y in zip(a, b)]

    def scale(self, a, c):
        return [uq_scale(x, c) for x in a]

    def mul(self, a, b):
        # convolve in y
        conv = [() for _ in range(2 * self.ell - 1)]
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] = uq_add(conv[i + j], uq_mul(x, y))
        # reduce y-degrees >= ell using y^ell = -sum H[j] y^j
        for d in range(2 * self.ell - 2, self.ell - 1, -1):
            c = conv[d]
            if not c:
                continue
            conv[d] = ()
            for j in range(self.ell):
                conv[d - self.ell + j] = uq_sub(
                    conv[d - self.ell + j], uq_mul(c, self.H[j]))
        return [uq_mod(c, self.f1) for c in conv[:self.ell]]

    def coords(self, a) -> List[Fraction]:
        out = [Fraction(0)] * self.dim
        for j, c in enumerate(a):
            for i, v in enumerate(c):
                out[j * self.n + i] = v
        return out


def _solve_fraction(M: List[List[Fraction]], rhs_list):
    """Solve M·x = rhs for each rhs; returns None if M is singular."""
    n = len(M)
    A = [row[:] + [r[i] for r in rhs_list] for i, row in enumerate(M)]
    w = len(rhs_list)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return None
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [[A[r][n + j] for r in range(n)] for j in range(w)]


def minimal_polynomial(alg: _TowerAlgebra, theta
                       ) -> Optional[Tuple[Tuple[int, ...],
                                           Tuple[Fraction, ...],
                                           Tuple[Fraction, ...]]]:
    """Minimal polynomial of theta in the algebra, with witnesses.

    Returns (g, wx, wy) where g is the degree-dim integer minimal
    polynomial and wx, wy express x and y as QQ-polynomials in theta; or
    None when theta is not a primitive element (dependence found early or
    the witness solve fails).
    """
    N = alg.dim
    powers = []
    cur = alg.zero()
    cur[0] = (Fraction(1),)
    cols = []
    for _ in range(N):
        powers.append(cur)
        cols.append(alg.coords(cur))
        cur = alg.mul(cur, theta)
    target = alg.coords(cur)          # theta^N
    M = [[cols[k][i] for k in range(N)] for i in range(N)]
    sol = _solve_fraction(M, [target,
                              alg.coords(alg.x_elem()),
                              alg.coords(alg.y_elem())])
    if sol is None:
        return None
    a, cx, cy = sol
    # g(T) = T^N - sum a_k T^k
    g = uq([-v for v in a] + [1])
    if len(g) != N + 1:
        return None
    try:
        g_int = uq_to_int(g)
    except FieldTowerError:
        return None
    return g_int, uq(cx), uq(cy)


# ---------------------------------------------------------------------------
# towers


@dataclass
class ChainLevel:
    poly: Tuple[int, ...]                 # absolute, degree ell^a
    embed_prev: Tuple[Fraction, ...]      # previous level's generator here


@dataclass
class NumberFieldNode:
    tower: "FieldTower"
    degree: int
    defining_poly: Tuple[int, ...]
    levels: Dict[int, int]                       # prime -> chain exponent
    gen_images: Dict[int, Tuple[Fraction, ...]]  # top chain gen -> image
    parent: Optional["NumberFieldNode"] = None
    subfield_registry: Dict[int, Tuple["NumberFieldNode",
                                       Tuple[Fraction, ...]]] = \
        field(default_factory=dict)

    def registry(self) -> Dict[int, Tuple["NumberFieldNode",
                                          Tuple[Fraction, ...]]]:
        if not self.subfield_registry:
            self.tower._build_registry(self)
        return self.subfield_registry


def _divisors(n: int) -> List[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


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


def is_inert(f, p: int) -> bool:
    """Whether p is inert in QQ[x]/(f): f irreducible mod p."""
    fi = _as_int_poly(f)
    if not fi or fi[-1] != 1:
        raise FieldTowerError("f must be monic")
    fbar = fp_trim(fi, p)
    if len(fbar) != len(fi):
        raise FieldTowerError("f is not monic modulo p")
    if not fp_is_squarefree(fbar, p):
        raise FieldTowerError(f"f is not squarefree modulo {p}")
    return fp_is_irreducible(fbar, p)


def _as_int_poly(f) -> Tuple[int, ...]:
    if isinstance(f, Polynomial):
        if len(f.variables) != 1:
            raise FieldTowerError("expected a univariate polynomial")
        if f.ring.kind != "ZZ":
            raise FieldTowerError("expected integer coefficients")
        deg = f.total_degree()
        out = [0] * (deg + 1)
        for e, c in f.terms.items():
            out[e[0]] = c
        return tuple(out)
    return tuple(int(c) for c in f)


class FieldTower:
    """Per-prime chains of inert fields over QQ, with composita cached."""

    def __init__(self, p: int, seed: int = 0, degree_cap: int = DEGREE_CAP):
        if not is_prime(p):
            raise FieldTowerError(f"{p} is not prime")
        self.p = p
        self.rng = random.Random(seed)
        self.degree_cap = degree_cap
        self.chains: Dict[int, List[ChainLevel]] = {}
        self._node_cache: Dict[Tuple[Tuple[int, int], ...],
                               NumberFieldNode] = {}
        self._recipes: Dict[Tuple[Tuple[int, int], ...],
                            List[Tuple[int, int, int, int]]] = {}

    # -- base field

    def base_node(self) -> NumberFieldNode:
        return self.node_for({})

    # -- chain growth

    def _grow_chain(self, ell: int, budget: int):
        chain = self.chains.setdefault(ell, [])
        e = len(chain)
        new_degree = ell ** (e + 1)
        if new_degree > self.degree_cap:
            raise FieldTowerError(
                f"degree {new_degree} exceeds the cap {self.degree_cap}")
        p = self.p
        if e == 0:
            g = tuple(find_irreducible(p, ell))     # lift of the residue poly
            chain.append(ChainLevel(g, uq(())))
            return
        base = chain[-1].poly
        R = CoefficientRing.GF(p, len(base) - 1, modulus=fp_trim(base, p))
        tries = 0
        while True:
            tries += 1
            if tries > budget:
                raise FieldTowerError("budget exhausted extending the "
                                      f"{ell}-chain")
            hbar = gfq_find_irreducible(R, ell, self.rng)
            # lift: each GF(p^k) coefficient is a ZZ[x]-polynomial
            H = []
            for c in hbar:
                if R.kind == "GF":
                    H.append((int(c),))
                else:
                    H.append(tuple(int(v) for v in c) or (0,))
            alg = _TowerAlgebra(base, H)
            res = minimal_polynomial(alg, alg.y_elem())
            if res is None:
                continue
            g, wx, wy = res
            gbar = fp_trim(g, p)
            if len(gbar) != len(g) or not fp_is_squarefree(gbar, p) \
                    or not fp_is_irreducible(gbar, p):
                continue
            chain.append(ChainLevel(tuple(g), wx))
            return

    # -- composita

    def node_for(self, levels: Dict[int, int],
                 budget: int = 200) -> NumberFieldNode:
        levels = {ell: a for ell, a in sorted(levels.items()) if a > 0}
        key = tuple(sorted(levels.items()))
        if key in self._node_cache:
            return self._node_cache[key]
        for ell, a in levels.items():
            while len(self.chains.get(ell, [])) < a:
                self._grow_chain(ell, budget)
        if not levels:
            node = NumberFieldNode(self, 1, (0, 1), {}, {})
            self._node_cache[key] = node
            self._recipes[key] = []
            return node
        primes = sorted(levels)
        ell0 = primes[0]
        cur_poly = self.chains[ell0][levels[ell0] - 1].poly
        gen_images: Dict[int, Tuple[Fraction, ...]] = {ell0: uq((0, 1))}
        recipe: List[Tuple[int, int, int, int]] = [(ell0, levels[ell0], 0, 1)]
        degree = len(cur_poly) - 1
        for ell in primes[1:]:
            f2 = self.chains[ell][levels[ell] - 1]
            H = [(c,) for c in f2.poly]
            alg = _TowerAlgebra(cur_poly, H)
            found = None
            for (s, c_pow) in _shift_candidates(budget):
                # theta = y + s * x^c_pow
                xp = alg.x_elem()
                acc = alg.y_elem()
                if s:
                    t = alg.zero()
                    t[0] = (Fraction(1),)
                    for _ in range(c_pow):
                        t = alg.mul(t, xp)
                    acc = alg.add(acc, alg.scale(t, s))
                res = minimal_polynomial(alg, acc)
                if res is None:
                    continue
                g, wx, wy = res
                gbar = fp_trim(g, self.p)
                if len(gbar) != len(g) or not fp_is_squarefree(gbar, self.p) \
                        or not fp_is_irreducible(gbar, self.p):
                    continue
                found = (g, wx, wy, s, c_pow)
                break
            if found is None:
                raise FieldTowerError(
                    "no primitive element found for the compositum "
                    f"(budget {budget})")
            g, wx, wy, s, c_pow = found
            gen_images = {l: uq_compose_mod(img, wx, uq(g))
                          for l, img in gen_images.items()}
            gen_images[ell] = wy
            recipe.append((ell, levels[ell], s, c_pow))
            cur_poly = g
            degree = len(cur_poly) - 1
        node = NumberFieldNode(self, degree, cur_poly, dict(levels),
                               gen_images)
        self._node_cache[key] = node
        self._recipes[key] = recipe
        return node

    # -- chain-generator images inside a node

    def _chain_gen_image(self, node: NumberFieldNode, ell: int,
                         level: int) -> Tuple[Fraction, ...]:
        """Image of the level-`level` generator of the ell-chain in node."""
        a = node.levels.get(ell, 0)
        if level > a:
            raise FieldTowerError("chain level not contained in the node")
        img = node.gen_images[ell]              # level-a generator
        gmod = uq(node.defining_poly)
        for b in range(a - 1, level - 1, -1):
            img = uq_compose_mod(self.chains[ell][b].embed_prev, img, gmod)
        return img

    def embed(self, sub: NumberFieldNode, node: NumberFieldNode
              ) -> Tuple[Fraction, ...]:
        """Witness w with sub.defining_poly(w) = 0 mod node.defining_poly,
        sending sub's primitive element to its image in node."""
        key = tuple(sorted(sub.levels.items()))
        recipe = self._recipes[key]
        gmod = uq(node.defining_poly)
        if not recipe:
            return uq(())        # QQ: generator 0
        ell, lev, _, _ = recipe[0]
        img = self._chain_gen_image(node, ell, lev)
        for (ell, lev, s, c_pow) in recipe[1:]:
            y_img = self._chain_gen_image(node, ell, lev)
            term = y_img
            if s:
                powx = uq((1,))
                for _ in range(c_pow):
                    powx = uq_mod(uq_mul(powx, img), gmod)
                term = uq_add(term, uq_scale(powx, s))
            img = uq_mod(term, gmod)
        return img

    # -- registry

    def _build_registry(self, node: NumberFieldNode):
        reg: Dict[int, Tuple[NumberFieldNode, Tuple[Fraction, ...]]] = {}
        for d in _divisors(node.degree):
            fac = _factorize(d)
            if any(ell not in node.levels
                   or fac[ell] > node.levels[ell] for ell in fac):
                raise FieldTowerError(
                    f"divisor {d} is not a product of chain degrees")
            sub = self.node_for({ell: fac.get(ell, 0)
                                 for ell in node.levels})
            w = self.embed(sub, node)
            check = uq_compose_mod(uq(sub.defining_poly), w,
                                   uq(node.defining_poly))
            if check:
                raise FieldTowerError(
                    f"embedding witness for degree {d} failed verification")
            reg[d] = (sub, w)
        node.subfield_registry = reg


def _shift_candidates(budget: int):
    out = []
    s_values = [0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5]
    for c_pow in (1, 2, 3):
        for s in s_values:
            if c_pow > 1 and s == 0:
                continue
            out.append((s, c_pow))
    return out[:budget]


def extend_inert(K: NumberFieldNode, ell: int, p: int,
                 search_budget: int = 200) -> NumberFieldNode:
    """Degree-ell extension L of K with p inert and the subfield property
    (new chain level for ell, then the compositum with K's other parts)."""
    if not is_prime(ell):
        raise FieldTowerError(f"{ell} is not prime")
    tower = K.tower
    if tower.p != p:
        raise FieldTowerError(f"tower is built at p = {tower.p}, not {p}")
    if K.degree * ell > tower.degree_cap:
        raise FieldTowerError(
            f"degree {K.degree * ell} exceeds the cap {tower.degree_cap}")
    levels = dict(K.levels)
    levels[ell] = levels.get(ell, 0) + 1
    while len(tower.chains.get(ell, [])) < levels[ell]:
        tower._grow_chain(ell, search_budget)
    L = tower.node_for(levels, budget=search_budget)
    L.parent = K
    L.registry()
    return L


def subfield_property_check(K: NumberFieldNode
                            ) -> Tuple[bool, List[int]]:
    """Audit: a registered subfield with a verified embedding witness for
    every divisor of the degree."""
    missing: List[int] = []
    reg = K.registry()
    gmod = uq(K.defining_poly)
    for d in _divisors(K.degree):
        entry = reg.get(d)
        if entry is None:
            missing.append(d)
            continue
        sub, w = entry
        if sub.degree != d or \
                uq_compose_mod(uq(sub.defining_poly), w, gmod):
            missing.append(d)
    return (not missing), missing


@dataclass
class DiscriminantDescent:
    poly: Tuple[int, ...]
    trace: List[int]          # |disc| after each accepted state


def optimise_discriminant(f, p: int, iterations: int = 200,
                          seed: int = 0) -> DiscriminantDescent:
    """Greedy descent: repeatedly add/subtract p times a random monomial,
    keeping the change only when |disc| does not grow."""
    fi = _as_int_poly(f)
    if not fi or fi[-1] != 1:
        raise FieldTowerError("f must be monic")
    if not is_inert(fi, p):
        raise FieldTowerError(f"f must be irreducible mod {p}")
    rng = random.Random(seed)
    n = len(fi) - 1
    cur = list(fi)
    best = abs(discriminant(cur))
    trace = [best]
    for _ in range(iterations):
        i = rng.randrange(n)
        delta = p if rng.random() < 0.5 else -p
        cand = cur[:]
        cand[i] += delta
        d = abs(discriminant(cand))
        if d != 0 and d <= best:
            cur = cand
            best = d
        trace.append(best)
    return DiscriminantDescent(tuple(cur), trace)
