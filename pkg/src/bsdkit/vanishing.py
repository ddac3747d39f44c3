"""Order of vanishing of functions on components of a special fibre.

The order of f along the component V(I) of the curve V(J) is the largest
n with f in I^n localized at I; it is detected through the criterion
"(I^n + J : (f)) is not contained in I".  Two chain constructions are
available: the direct chain I_n = I_{n-1} * I + J, and a modified chain
that re-adds those Groebner basis elements of the previous step that
already vanish to higher order, which keeps the bases much smaller.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .groebner import (Ideal, ideal_contained_in, ideal_membership,
                       ideal_quotient, ideal_sum, ideal_sum_product,
                       normal_form)
from .poly import Polynomial, PolynomialError
from .rings import CoefficientRing

DEFAULT_ORDER_BUDGET = 64


class VanishingError(ValueError):
    pass


class FunctionVanishesOnCurve(VanishingError):
    """f lies in J: the order along a component is undefined/infinite."""


@dataclass(frozen=True)
class ComponentLocus:
    """A component V(I) of the special fibre of the curve V(J) at p."""
    J: Ideal
    I: Ideal
    p: int

    def __post_init__(self):
        if self.J.ring != self.I.ring or self.J.variables != self.I.variables:
            raise VanishingError("I and J must share ring and variables")
        for g in self.J.generators:
            if not ideal_membership(g, self.I):
                raise VanishingError(f"generator {g} of J is not in I")
        p_const = Polynomial.constant(self.I.ring, self.I.variables, self.p,
                                      self.I.order)
        if not p_const.is_zero() and not ideal_membership(p_const, self.I):
            raise VanishingError(f"{self.p} is not in I")
        # I must be prime and O_{V(J),I} regular; both are the caller's
        # obligation (only cheap sanity checks are run here)

    @property
    def ring(self) -> CoefficientRing:
        return self.I.ring

    def change_ring(self, target: CoefficientRing) -> "ComponentLocus":
        J = Ideal([g.change_ring(target) for g in self.J.generators]
                  or [Polynomial.zero(target, self.I.variables, self.I.order)],
                  order=self.J.order)
        I = Ideal([g.change_ring(target) for g in self.I.generators],
                  order=self.I.order)
        return ComponentLocus(J, I, self.p)


@dataclass
class VanishingOrder:
    order: int
    exact: bool   # False when the budget was hit ("at least" semantics)

    def __int__(self):
        return self.order


def _quotient_outside(In: Ideal, f: Polynomial, I: Ideal) -> bool:
    """Whether (In : (f)) is NOT contained in I (early exit on witness)."""
    Q = ideal_quotient(In, f)
    for g in Q.generators:
        if not ideal_membership(g, I):
            return True
    return False


def _direct_chain(locus: ComponentLocus):
    In = locus.I
    while True:
        yield In
        # interreduce first: keeps the generator count at the basis size
        # instead of multiplying up step over step
        In = ideal_sum_product(In.interreduced(), locus.I, locus.J)


def _modified_chain(locus: ComponentLocus):
    """J_n / I_n^modified chain; yields I_n^modified at each step."""
    I, J = locus.I, locus.J
    In_mod = I
    yield In_mod
    while True:
        Jn = ideal_sum_product(In_mod.interreduced(), I, J).interreduced()
        extra = [x for x in In_mod.groebner_basis()
                 if _quotient_outside(Jn, x, I)]
        In_mod = ideal_sum(Jn, Ideal(extra, order=I.order)) if extra else Jn
        yield In_mod


def vanishing_order(f: Polynomial, locus: ComponentLocus,
                    mode: str = "modified",
                    budget: int = DEFAULT_ORDER_BUDGET) -> VanishingOrder:
    """Largest n <= budget with f in I^n localized along the component."""
    if mode not in ("direct", "modified"):
        raise VanishingError(f"unknown mode {mode!r}")
    if f.is_zero() or (not locus.J.is_zero()
                       and ideal_membership(f, locus.J)):
        raise FunctionVanishesOnCurve(
            "f vanishes identically on the curve V(J)")
    chain = _direct_chain(locus) if mode == "direct" else \
        _modified_chain(locus)
    n = 0
    for In in chain:
        n += 1
        if n > budget:
            return VanishingOrder(budget, exact=False)
        if not _quotient_outside(In, f, locus.I):
            return VanishingOrder(n - 1, exact=True)
    raise AssertionError("unreachable")


def vanishing_order_truncated(f: Polynomial, locus: ComponentLocus,
                              r: int, m: int,
                              mode: str = "modified") -> VanishingOrder:
    """Run the chain over ZZ/p^(floor(r/m)+1)ZZ.

    A result < r is exact; otherwise only "order >= r" is known.
    """
    if r < 1:
        raise VanishingError("threshold r must be >= 1")
    if m < 1:
        raise VanishingError("multiplicity m must be >= 1")
    if locus.ring.kind != "ZZ":
        raise VanishingError("truncated computation starts from ZZ data")
    e = r // m + 1
    target = CoefficientRing.Zmod(locus.p, e)
    res = vanishing_order(f.change_ring(target), locus.change_ring(target),
                          mode=mode, budget=r)
    if res.exact and res.order < r:
        return res
    return VanishingOrder(r, exact=False)


def multiplicity_of_component(locus: ComponentLocus,
                              mode: str = "modified",
                              budget: int = DEFAULT_ORDER_BUDGET) -> int:
    """Order of vanishing of the constant p: the fibre multiplicity.

    Runs over ZZ/p^2 first and doubles the modulus exponent until the
    truncated answer is exact.
    """
    p_const = Polynomial.constant(locus.ring, locus.I.variables, locus.p,
                                  locus.I.order)
    if locus.ring.kind == "Zmod":
        res = vanishing_order(p_const, locus, mode=mode, budget=budget)
        if not res.exact:
            raise VanishingError("budget hit while computing multiplicity")
        return res.order
    r = 1
    while r <= budget:
        res = vanishing_order_truncated(p_const, locus, r=r, m=1, mode=mode)
        if res.exact:
            return res.order
        r *= 2
    raise VanishingError("budget hit while computing multiplicity")


def rational_function_order(f, g, locus: ComponentLocus,
                            f_factors: Optional[Sequence] = None,
                            g_factors: Optional[Sequence] = None,
                            mode: str = "modified",
                            budget: int = DEFAULT_ORDER_BUDGET) -> int:
    """ord(f) - ord(g); factor lists, when supplied, are summed termwise."""

    def total(poly, factors):
        if factors:
            s = 0
            for fac in factors:
                res = vanishing_order(fac, locus, mode=mode, budget=budget)
                if not res.exact:
                    raise VanishingError("budget hit on a factor")
                s += res.order
            return s
        res = vanishing_order(poly, locus, mode=mode, budget=budget)
        if not res.exact:
            raise VanishingError("budget hit")
        return res.order

    return total(f, f_factors) - total(g, g_factors)
