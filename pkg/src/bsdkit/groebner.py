"""Buchberger-style Groebner bases over fields, ZZ and ZZ/p^e.

Over ZZ the completion uses S- and G-polynomials; over the chain rings
ZZ/p^e leading coefficients are normalized to powers of p and annihilator
polynomials p^(e-k) * f are adjoined instead of G-polynomials.  Reduction
is Euclidean on coefficients (remainder in [0, lc)), so membership of f
in an ideal is equivalent to normal form 0 against a strong basis.
"""

from __future__ import annotations

import heapq
import math
from typing import Dict, List, Optional, Sequence, Tuple

from .poly import (GREVLEX, MonomialOrder, Polynomial, PolynomialError,
                   exp_div, exp_divides, exp_lcm, exp_mul, exact_divide)
from .rings import CoefficientRing

DEFAULT_MAX_PAIRS = 10 ** 6
DEFAULT_MAX_DEGREE = 400


class GroebnerError(Exception):
    pass


class UnsupportedRingError(GroebnerError):
    pass


class BudgetExceededError(GroebnerError):
    """Resource cap hit; distinct from any mathematical failure."""


def _check_ring(ring: CoefficientRing):
    if ring.kind not in ("ZZ", "Zmod", "GF", "GFext"):
        raise UnsupportedRingError(f"no Groebner bases over {ring!r}")


# ---------------------------------------------------------------------------
# basis entries


class _Entry:
    __slots__ = ("terms", "lm", "lc", "cof")

    def __init__(self, terms, lm, lc, cof=None):
        self.terms = terms   # full dict, including the leading term
        self.lm = lm
        self.lc = lc
        self.cof = cof       # optional cofactor dict (expression in f)


def _leading(terms: dict, key):
    lm = min(terms, key=key)
    return lm, terms[lm]


def _normalize(ring, terms: dict, cof: Optional[dict], key):
    """Scale so the leading coefficient is monic / positive / a power of p."""
    lm, lc = _leading(terms, key)
    if ring.is_field():
        u = ring.inv(lc)
    elif ring.kind == "ZZ":
        u = 1 if lc > 0 else -1
    else:
        _, unit = ring.unit_val(lc)
        u = pow(unit, -1, ring.m)
    if u != ring.one():
        terms = {e: ring.mul(c, u) for e, c in terms.items()}
        if cof is not None:
            cof = {e: ring.mul(c, u) for e, c in cof.items()}
    return _Entry(terms, lm, terms[lm], cof)


def _coeff_quotient(ring, c, lc):
    """q such that c - q*lc is the canonical remainder of c by lc."""
    if ring.is_field():
        return ring.mul(c, ring.inv(lc))
    if ring.kind == "ZZ":
        return c // lc
    return c // lc  # lc is a power of p, c in [0, p^e)


def _reduce(ring, key, work_terms: dict, basis: Sequence[_Entry],
            cof: Optional[dict] = None, basis_cofs: bool = False):
    """Normal form of work_terms against basis (destructive on a copy).

    If ``cof`` is given, it is updated so that input = output + (sum of
    basis multiples expressed through the entries' cofactors).
    """
    work = dict(work_terms)
    out: Dict[Tuple[int, ...], object] = {}
    heap = [(key(e), e) for e in work]
    heapq.heapify(heap)
    seen = set(work)
    # flat arrays over the basis for the hot divisor search
    blms = [g.lm for g in basis]
    bdegs = [sum(lm) for lm in blms]
    nb = len(basis)
    is_field = ring.is_field()
    binvs = [ring.inv(g.lc) for g in basis] if is_field else None
    is_zmod = ring.kind == "Zmod"
    mod = ring.m if is_zmod else None
    push = heapq.heappush
    while heap:
        _, e = heapq.heappop(heap)
        c = work.get(e)
        if c is None or e in out:
            continue
        while True:
            edeg = sum(e)
            g = None
            for i in range(nb):
                if bdegs[i] > edeg:
                    continue
                lm = blms[i]
                ok = True
                for x, y in zip(lm, e):
                    if x > y:
                        ok = False
                        break
                if not ok:
                    continue
                if is_field:
                    q = ring.mul(c, binvs[i])
                else:
                    q = c // basis[i].lc
                    if q == 0:
                        continue
                g = basis[i]
                break
            if g is None:
                break
            delta = exp_div(e, g.lm)
            if is_zmod:
                for ge, gc in g.terms.items():
                    te = exp_mul(ge, delta)
                    d = q * gc % mod
                    cur = work.get(te)
                    nc = (cur - d) % mod if cur is not None else -d % mod
                    if nc == 0:
                        work.pop(te, None)
                    else:
                        work[te] = nc
                        if te not in seen:
                            seen.add(te)
                            push(heap, (key(te), te))
            else:
                for ge, gc in g.terms.items():
                    te = exp_mul(ge, delta)
                    d = ring.mul(q, gc)
                    cur = work.get(te)
                    nc = ring.sub(cur, d) if cur is not None else ring.neg(d)
                    if ring.is_zero(nc):
                        work.pop(te, None)
                    else:
                        work[te] = nc
                        if te not in seen:
                            seen.add(te)
                            push(heap, (key(te), te))
            if cof is not None and basis_cofs:
                # maintain: current value = cof * f  (so subtract q * cof_g)
                for ce, cc in g.cof.items():
                    te = exp_mul(ce, delta)
                    d = ring.mul(q, cc)
                    cur = cof.get(te)
                    nc = ring.sub(cur, d) if cur is not None else ring.neg(d)
                    if ring.is_zero(nc):
                        cof.pop(te, None)
                    else:
                        cof[te] = nc
            c = work.get(e)
            if c is None:
                break
        if c is not None:
            out[e] = c
            del work[e]
    return out


# ---------------------------------------------------------------------------
# Buchberger completion


def _xgcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def _scale_shift(ring, terms, c, delta):
    out = {}
    for e, x in terms.items():
        y = ring.mul(x, c)
        if not ring.is_zero(y):
            out[exp_mul(e, delta)] = y
    return out


def _add_into(ring, acc, terms, sign=1):
    for e, c in terms.items():
        if sign < 0:
            c = ring.neg(c)
        cur = acc.get(e)
        nc = ring.add(cur, c) if cur is not None else c
        if ring.is_zero(nc):
            acc.pop(e, None)
        else:
            acc[e] = nc
    return acc


def _buchberger(gens: Sequence[Polynomial], ring, order,
                max_pairs=None, max_degree=None, track=False) -> List[_Entry]:
    _check_ring(ring)
    max_pairs = max_pairs or DEFAULT_MAX_PAIRS
    max_degree = max_degree or DEFAULT_MAX_DEGREE
    key = order.sort_key
    is_field = ring.is_field()
    is_zz = ring.kind == "ZZ"
    is_chain = ring.kind == "Zmod"

    G: List[_Entry] = []
    nvars = None
    for i, g in enumerate(gens):
        if g.is_zero():
            continue
        nvars = len(g.variables)
        cof = {(0,) * nvars: ring.one()} if track else None
        if track and len(gens) != 1:
            raise GroebnerError("cofactor tracking is for principal ideals")
        G.append(_normalize(ring, dict(g.terms), cof, key))

    pairs: List[Tuple] = []   # heap of (degree, key(lcm), i, j)
    alive: set = set()        # surviving (i, j) pairs
    pair_T: Dict[Tuple[int, int], Tuple] = {}  # (i, j) -> (v, lcm monomial)
    ann_queue: List[int] = []

    def lead_val(entry) -> int:
        if is_chain:
            return ring.unit_val(entry.lc)[0]
        return 0

    vals: List[int] = []

    def pair_term(i, j):
        return (max(vals[i], vals[j]), exp_lcm(G[i].lm, G[j].lm))

    def push_pair(i, j):
        v, L = pair_term(i, j)
        alive.add((i, j))
        pair_T[(i, j)] = (v, L)
        heapq.heappush(pairs, (sum(L), key(L), i, j))

    # Gebauer-Moller update: leading terms include the p-valuation of the
    # leading coefficient, so term divisibility is (v_k <= v, lm_k | L).
    # Valid for fields (v = 0 throughout) and for the chain rings ZZ/p^e;
    # over ZZ pairs also carry G-polynomials, so no elimination is done.
    use_gm = is_field or is_chain

    def push_elem(entry) -> int:
        idx = len(G)
        G.append(entry)
        vals.append(lead_val(entry))
        if use_gm:
            vn, lmn = vals[idx], entry.lm
            # drop old pairs whose lcm-term is properly covered by idx
            for (i, j) in list(alive):
                vij, Lij = pair_T[(i, j)]
                if vn <= vij and exp_divides(lmn, Lij):
                    Tin = pair_term(i, idx)
                    Tjn = pair_term(j, idx)
                    if Tin != (vij, Lij) and Tjn != (vij, Lij):
                        alive.discard((i, j))
                        del pair_T[(i, j)]
            # new pairs (i, idx), pruned by the M/F/B criteria
            cand = []
            for i in range(idx):
                cand.append((i,) + pair_term(i, idx))
            keep: List[Tuple] = []
            for (i, v, L) in cand:
                dominated = False
                for (j, w, M) in cand:
                    if j == i:
                        continue
                    if w <= v and exp_divides(M, L) and (w, M) != (v, L):
                        dominated = True
                        break
                if not dominated:
                    keep.append((i, v, L))
            seen_T = set()
            for (i, v, L) in keep:
                if (v, L) in seen_T:
                    continue
                seen_T.add((v, L))
                # product criterion: unit leads and coprime monomials
                if vals[i] == 0 and vn == 0 and \
                        L == exp_mul(G[i].lm, lmn):
                    continue
                push_pair(i, idx)
        else:
            for i in range(idx):
                push_pair(i, idx)
        if is_chain:
            if vals[idx] > 0:
                ann_queue.append(idx)
        return idx

    n0 = len(G)
    vals = [lead_val(G[i]) for i in range(n0)]
    for i in range(n0):
        for j in range(i + 1, n0):
            push_pair(i, j)
    if is_chain:
        for i in range(n0):
            if vals[i] > 0:
                ann_queue.append(i)

    processed = 0

    def consider(terms, cof):
        nonlocal processed
        if not terms:
            return
        red_cof = dict(cof) if track else None
        nf = _reduce(ring, key, terms, G, red_cof, basis_cofs=track)
        if not nf:
            return
        if max(sum(e) for e in nf) > max_degree:
            raise BudgetExceededError(
                f"total degree exceeds cap {max_degree}")
        push_elem(_normalize(ring, nf, red_cof, key))

    while pairs or ann_queue:
        if ann_queue:
            i = ann_queue.pop()
            v, _ = ring.unit_val(G[i].lc)
            a = ring.coerce(ring.p ** (ring.e - v))
            terms = _scale_shift(ring, G[i].terms, a, (0,) * nvars)
            cof = (_scale_shift(ring, G[i].cof, a, (0,) * nvars)
                   if track else None)
            consider(terms, cof)
            continue
        _, _, i, j = heapq.heappop(pairs)
        if (i, j) not in alive:
            continue
        alive.discard((i, j))
        pair_T.pop((i, j), None)
        processed += 1
        if processed > max_pairs:
            raise BudgetExceededError(f"pair count exceeds cap {max_pairs}")
        f, g = G[i], G[j]
        L = exp_lcm(f.lm, g.lm)
        if is_field and L == exp_mul(f.lm, g.lm):
            continue  # product criterion (fields only)
        df, dg = exp_div(L, f.lm), exp_div(L, g.lm)
        if is_field:
            cf, cg = ring.one(), ring.one()
        elif is_zz:
            l = f.lc * g.lc // math.gcd(f.lc, g.lc)
            cf, cg = l // f.lc, l // g.lc
        else:
            vf, _ = ring.unit_val(f.lc)
            vg, _ = ring.unit_val(g.lc)
            v = max(vf, vg)
            cf = ring.coerce(ring.p ** (v - vf))
            cg = ring.coerce(ring.p ** (v - vg))
        s = _scale_shift(ring, f.terms, cf, df)
        _add_into(ring, s, _scale_shift(ring, g.terms, cg, dg), sign=-1)
        scof = None
        if track:
            scof = _scale_shift(ring, f.cof, cf, df)
            _add_into(ring, scof, _scale_shift(ring, g.cof, cg, dg), sign=-1)
        consider(s, scof)
        if is_zz and f.lc % g.lc != 0 and g.lc % f.lc != 0:
            d, u, v = _xgcd(f.lc, g.lc)
            t = _scale_shift(ring, f.terms, u, df)
            _add_into(ring, t, _scale_shift(ring, g.terms, v, dg))
            tcof = None
            if track:
                tcof = _scale_shift(ring, f.cof, u, df)
                _add_into(ring, tcof, _scale_shift(ring, g.cof, v, dg))
            consider(t, tcof)
    return G


def _term_divides(ring, lt_a, lt_b) -> bool:
    """Whether lt_a divides lt_b as a term (monomial and coefficient)."""
    (ea, ca), (eb, cb) = lt_a, lt_b
    return exp_divides(ea, eb) and ring.divides(ca, cb)


def _reduced_basis(ring, key, G: List[_Entry], track=False) -> List[_Entry]:
    # drop entries whose leading term is term-divisible by another's
    kept: List[_Entry] = []
    order_idx = sorted(range(len(G)), key=lambda i: (key(G[i].lm), i))
    removed = [False] * len(G)
    for i in order_idx:
        for j in order_idx:
            if i == j or removed[j]:
                continue
            if _term_divides(ring, (G[j].lm, G[j].lc), (G[i].lm, G[i].lc)):
                if G[j].lm == G[i].lm and G[j].lc == G[i].lc and j > i:
                    continue  # identical leading terms: keep the earlier one
                removed[i] = True
                break
    kept = [G[i] for i in order_idx if not removed[i]]
    # tail-reduce each against the others until stable
    changed = True
    guard = 0
    while changed and guard < 100:
        changed = False
        guard += 1
        for i in range(len(kept)):
            others = kept[:i] + kept[i + 1:]
            cof = dict(kept[i].cof) if track else None
            # reduce only the tail so the leading term is preserved;
            # minimality already guarantees the lead is irreducible
            nf = _reduce(ring, key, kept[i].terms, others, cof,
                         basis_cofs=track)
            if nf != kept[i].terms:
                changed = True
                if not nf:
                    kept = kept[:i] + kept[i + 1:]
                    break
                # cofactor update direction: entry = nf means
                # original = nf + sum(multiples); keep cof consistent
                if track:
                    kept[i] = _normalize(ring, nf, cof, key)
                else:
                    kept[i] = _normalize(ring, nf, None, key)
    kept.sort(key=lambda en: key(en.lm))
    return kept


# ---------------------------------------------------------------------------
# public interface


class Ideal:
    """A finitely generated ideal with a cached reduced (strong) basis."""

    def __init__(self, generators: Sequence[Polynomial],
                 order: Optional[MonomialOrder] = None):
        generators = list(generators)
        if not generators:
            raise GroebnerError("need at least one polynomial to fix the "
                                "ring; use Ideal.zero_ideal for (0)")
        gens = [g for g in generators if not g.is_zero()]
        if not gens:
            self.ring = generators[0].ring
            self.variables = generators[0].variables
            self.order = order or generators[0].order
            self.generators = ()
            self._gb = ()
            return
        ring = gens[0].ring
        variables = gens[0].variables
        for g in gens:
            if g.ring != ring or g.variables != variables:
                raise GroebnerError("generators disagree on ring/variables")
        self.ring = ring
        self.variables = variables
        self.order = order or gens[0].order
        self.generators = tuple(g.with_order(self.order) for g in gens)
        self._gb: Optional[Tuple[Polynomial, ...]] = None

    @staticmethod
    def zero_ideal(ring, variables, order=GREVLEX) -> "Ideal":
        ideal = Ideal.__new__(Ideal)
        ideal.ring = ring
        ideal.variables = tuple(variables)
        ideal.order = order
        ideal.generators = ()
        ideal._gb = ()
        return ideal

    def is_zero(self) -> bool:
        return not self.generators

    def groebner_basis(self, max_pairs=None, max_degree=None):
        if self._gb is None:
            entries = _buchberger(self.generators, self.ring, self.order,
                                  max_pairs, max_degree)
            entries = _reduced_basis(self.ring, self.order.sort_key, entries)
            self._gb = tuple(
                Polynomial(self.ring, self.variables, dict(e.terms),
                           self.order)
                for e in entries)
        return list(self._gb)

    def interreduced(self, max_pairs=None, max_degree=None) -> "Ideal":
        """The same ideal, but generated by its reduced strong basis.

        Useful before products/sums so generator counts stay bounded by
        the basis size instead of multiplying up.
        """
        gb = self.groebner_basis(max_pairs, max_degree)
        if not gb:
            return self
        K = Ideal(gb, order=self.order)
        K._gb = self._gb
        return K

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators[:6])
        more = ", ..." if len(self.generators) > 6 else ""
        return f"Ideal({gens}{more})"


def groebner_basis(I: Ideal, max_pairs=None, max_degree=None):
    return I.groebner_basis(max_pairs, max_degree)


def normal_form(f: Polynomial, I: Ideal, max_pairs=None,
                max_degree=None) -> Polynomial:
    if I.is_zero():
        return f
    gb = I.groebner_basis(max_pairs, max_degree)
    key = I.order.sort_key
    entries = []
    for g in gb:
        lm, lc = _leading(g.terms, key)
        entries.append(_Entry(dict(g.terms), lm, lc))
    nf = _reduce(I.ring, key, dict(f.with_order(I.order).terms), entries)
    return Polynomial(I.ring, I.variables, nf, I.order)


def ideal_membership(f: Polynomial, I: Ideal, **kw) -> bool:
    return normal_form(f, I, **kw).is_zero()


def ideal_sum_product(A: Ideal, B: Ideal, C: Ideal) -> Ideal:
    """The ideal A*B + C."""
    gens = [a * b for a in A.generators for b in B.generators]
    gens.extend(C.generators)
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return Ideal.zero_ideal(A.ring, A.variables, A.order)
    return Ideal(gens, order=A.order)


def ideal_sum(A: Ideal, B: Ideal) -> Ideal:
    gens = list(A.generators) + list(B.generators)
    if not gens:
        return Ideal.zero_ideal(A.ring, A.variables, A.order)
    return Ideal(gens, order=A.order)


def _fresh_tag(variables) -> str:
    tag = "t_elim"
    while tag in variables:
        tag += "_"
    return tag


def ideal_quotient(I: Ideal, f: Polynomial, max_pairs=None,
                   max_degree=None) -> Ideal:
    """(I : (f)) via tag-variable intersection with (f)."""
    if f.is_zero():
        raise GroebnerError("quotient by the zero polynomial")
    _check_ring(I.ring)
    ring = I.ring
    if I.is_zero():
        gens_out: List[Polynomial] = []
    else:
        tag = _fresh_tag(I.variables)
        ext_vars = (tag,) + I.variables
        elim = MonomialOrder.block(1)
        t = Polynomial.variable(ring, ext_vars, tag, elim)
        one = Polynomial.constant(ring, ext_vars, 1, elim)
        # start from the reduced basis: fewer, smaller generators, and
        # the basis is cached on I across repeated quotients
        base = I.groebner_basis(max_pairs, max_degree)
        gens = [t * g.extend_variables(ext_vars, elim) for g in base]
        gens.append((one - t) * f.extend_variables(ext_vars, elim))
        J = Ideal(gens, order=elim)
        gb = J.groebner_basis(max_pairs, max_degree)
        inter = [g.restrict_variables(I.variables).with_order(I.order)
                 for g in gb if g.degree_in(tag) == 0]
        gens_out = [_divide_exact(h, f, max_pairs, max_degree)
                    for h in inter]
    if ring.kind == "Zmod":
        # the annihilator of f: f = p^v * (unit-content part)
        v = min(ring.unit_val(c)[0] for c in f.terms.values())
        if v > 0:
            gens_out.append(Polynomial.constant(ring, I.variables,
                                                ring.p ** (ring.e - v),
                                                I.order))
    gens_out = [g for g in gens_out if not g.is_zero()]
    if not gens_out:
        return Ideal.zero_ideal(ring, I.variables, I.order)
    return Ideal(gens_out, order=I.order)


def _divide_exact(h: Polynomial, f: Polynomial, max_pairs=None,
                  max_degree=None) -> Polynomial:
    """h / f for h in (f); robust over ZZ/p^e via cofactor tracking."""
    ring = h.ring
    if ring.kind != "Zmod":
        q = exact_divide(h, f)
        if q is None:
            raise GroebnerError("intersection element not divisible; "
                                "internal error in quotient computation")
        return q
    entries = _buchberger([f], ring, h.order, max_pairs, max_degree,
                          track=True)
    entries = _reduced_basis(ring, h.order.sort_key, entries, track=True)
    key = h.order.sort_key
    cof: Dict[Tuple[int, ...], object] = {}
    nf = _reduce(ring, key, dict(h.terms), entries, cof, basis_cofs=True)
    if nf:
        raise GroebnerError("intersection element not in (f); "
                            "internal error in quotient computation")
    # h reduced to 0, so 0 = h + cof * f, i.e. h = (-cof) * f
    quot = {e: ring.neg(c) for e, c in cof.items()}
    return Polynomial(ring, h.variables, quot, h.order)


def ideal_contained_in(A: Ideal, B: Ideal, **kw) -> bool:
    return all(ideal_membership(g, B, **kw) for g in A.generators)
