"""Truncated formal deformations of generalized Rota-Baxter systems."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import Algebra, Bimodule
from .cohomology import Cochain, coboundary_solve, derived_bracket, hochschild_differential, rbs_differential
from .errors import InputError, NotCocycleError, NotRotaBaxterError
from .linalg import arrays_equal, as_array, first_nonzero, is_zero
from .rbs import RBSPair, check_shapes, grbs_defect, outer_product, star_tensor, through


@dataclass(frozen=True, eq=False)
class DeformationSeries:
    """R_t = R + t R_1 + ... + t^N R_N and likewise for S."""

    base: RBSPair
    terms: tuple = field(default=())

    def __post_init__(self):
        terms = tuple(self.terms)
        for t in terms:
            if t.R.shape != self.base.R.shape:
                raise InputError("deformation term shape differs from the base pair")
        object.__setattr__(self, "terms", terms)

    @property
    def order(self) -> int:
        return len(self.terms)

    def term(self, i: int) -> RBSPair:
        return self.base if i == 0 else self.terms[i - 1]

    def extended(self, pair: RBSPair) -> "DeformationSeries":
        return DeformationSeries(self.base, self.terms + (pair,))


@dataclass
class OrderDefect:
    order: int
    defect_R: np.ndarray
    defect_S: np.ndarray

    @property
    def vanishes(self) -> bool:
        return is_zero(self.defect_R) and is_zero(self.defect_S)

    def witness(self):
        for name, t in (("defect_R", self.defect_R), ("defect_S", self.defect_S)):
            hit = first_nonzero(t)
            if hit is not None:
                return name, hit[0], hit[1]
        return None


def order_defect(ds: DeformationSeries, n: int, alg: Algebra, mod: Bimodule) -> OrderDefect:
    """Σ_{i+j=n} R_i(u)R_j(v) − R_i(R_j(u)·v + u·S_j(v)), and the S analogue."""
    dR = dS = 0
    for i in range(n + 1):
        Ti, Tj = ds.term(i), ds.term(n - i)
        star = star_tensor(mod, Tj.R, Tj.S)
        dR = dR + outer_product(alg, Ti.R, Tj.R) - through(Ti.R, star)
        dS = dS + outer_product(alg, Ti.S, Tj.S) - through(Ti.S, star)
    return OrderDefect(n, dR, dS)


def deformation_defects(ds: DeformationSeries, alg: Algebra, mod: Bimodule) -> list:
    check_shapes(alg, mod, ds.base)
    return [order_defect(ds, n, alg, mod) for n in range(ds.order + 1)]


def bracket_form(ds: DeformationSeries, n: int, alg: Algebra, mod: Bimodule) -> Cochain:
    """⟦θ0, θn⟧ + ½ Σ_{i+j=n, i,j≥1} ⟦θi, θj⟧; equals minus the order-n defect."""
    th = [Cochain.from_pair(ds.term(i)) for i in range(n + 1)]
    if n == 0:
        return derived_bracket(th[0], th[0], alg, mod).scaled(Fraction(1, 2))
    total = derived_bracket(th[0], th[n], alg, mod)
    for i in range(1, n):
        total = total + derived_bracket(th[i], th[n - i], alg, mod).scaled(Fraction(1, 2))
    return total


def is_deformation(ds: DeformationSeries, alg: Algebra, mod: Bimodule) -> bool:
    return all(d.vanishes for d in deformation_defects(ds, alg, mod))


def obstruction_cocycle(ds: DeformationSeries, alg: Algebra, mod: Bimodule) -> Cochain:
    """Ob = −½ Σ_{i+j=N+1, i,j≥1} ⟦θi, θj⟧, checked to be a 2-cocycle."""
    for d in deformation_defects(ds, alg, mod):
        if not d.vanishes:
            raise NotRotaBaxterError(f"series fails the order-{d.order} equation", d.witness())
    N = ds.order
    dim_a, dim_m = ds.base.R.shape
    ob = Cochain.zero(2, dim_a, dim_m)
    for i in range(1, N + 1):
        j = N + 1 - i
        if 1 <= j <= N:
            ob = ob + derived_bracket(Cochain.from_pair(ds.term(i)),
                                      Cochain.from_pair(ds.term(j)), alg, mod)
    ob = ob.scaled(Fraction(-1, 2))
    if not rbs_differential(ds.base, ob, alg, mod, check=False).is_zero():
        raise NotCocycleError("obstruction failed the cocycle check")
    return ob


def extend_step(ds: DeformationSeries, alg: Algebra, mod: Bimodule) -> RBSPair | None:
    """A next term (R_{N+1}, S_{N+1}) solving d_{(R,S)} X = Ob, or None."""
    ob = obstruction_cocycle(ds, alg, mod)
    x = coboundary_solve(ds.base, ob, alg, mod)
    return None if x is None else x.as_pair()


def equivalence_first_order_check(ds: DeformationSeries, ds2: DeformationSeries, a, b,
                                  alg: Algebra, mod: Bimodule) -> bool:
    """(R_1, S_1) − (R_1', S_1') = δ_Hoch(a, b) exactly."""
    if not (arrays_equal(ds.base.R, ds2.base.R) and arrays_equal(ds.base.S, ds2.base.S)):
        raise InputError("series do not share the same base pair")
    if ds.order < 1 or ds2.order < 1:
        raise InputError("both series need a first-order term")
    a, b = as_array(a), as_array(b)
    delta = hochschild_differential(ds.base, Cochain(0, a, b), alg, mod, check=False)
    t1, t2 = ds.term(1), ds2.term(1)
    return arrays_equal(t1.R - t2.R, delta.P) and arrays_equal(t1.S - t2.S, delta.Q)
