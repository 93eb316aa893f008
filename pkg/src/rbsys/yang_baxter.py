"""Associative Yang-Baxter pairs, covariant bialgebras and averaging systems.

Elements of A⊗A are arrays ``t[i, j]`` (coefficient of e_i⊗e_j); maps
A → A⊗A are arrays ``D[i, j, a]`` holding D(e_a).  Elements of A⊗A⊗A are
``T[i, j, k]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import Algebra, Bimodule, canonical_bimodule, is_algebra_map
from .errors import InputError, NotAlgebraMapError, NotRotaBaxterError
from .linalg import einsum, as_array, first_nonzero, is_zero, zeros
from .rbs import RBSPair, check_shapes, dendriform_tables, grbs_defect, morphism_check


def _tensor2(t, alg: Algebra) -> np.ndarray:
    t = as_array(t)
    if t.shape != (alg.dim, alg.dim):
        raise InputError(f"tensor must have shape {(alg.dim, alg.dim)}, got {t.shape}")
    return t


@dataclass(frozen=True, eq=False)
class Tensor2:
    """Element of A⊗A on the basis grid."""

    coefficients: np.ndarray

    def __post_init__(self):
        c = as_array(self.coefficients)
        if c.ndim != 2 or c.shape[0] != c.shape[1]:
            raise InputError("A⊗A coefficients must form a square grid")
        object.__setattr__(self, "coefficients", c)

    @property
    def is_skew(self) -> bool:
        return is_zero(self.coefficients + self.coefficients.T)

    @classmethod
    def simple(cls, u, v) -> "Tensor2":
        """u⊗v."""
        return cls(np.outer(as_array(u), as_array(v)))


def _coeffs(t) -> np.ndarray:
    return t.coefficients if isinstance(t, Tensor2) else as_array(t)


def place(alg: Algebra, X, pos_x, Y, pos_y) -> np.ndarray:
    """The product X_{pos_x} Y_{pos_y} in A⊗A⊗A.

    Each slot collects the legs placed there, X's leg first; a slot with two
    legs multiplies them.  No unit is needed since every slot gets a leg.
    """
    X, Y = _coeffs(X), _coeffs(Y)
    if set(pos_x) | set(pos_y) != {1, 2, 3} or len(set(pos_x)) != 2 or len(set(pos_y)) != 2:
        raise InputError("positions must be two distinct slots each, covering 1..3")
    operands, subs = [X, Y], ["ab", "cd"]
    out = ""
    fresh = iter("xyz")
    for slot in (1, 2, 3):
        legs = ([subs[0][pos_x.index(slot)]] if slot in pos_x else []) + \
               ([subs[1][pos_y.index(slot)]] if slot in pos_y else [])
        if len(legs) == 1:
            out += legs[0]
        else:
            o = next(fresh)
            operands.append(alg.mult)
            subs.append(o + legs[0] + legs[1])
            out += o
    return einsum(",".join(subs) + "->" + out, *operands)


# ---------------------------------------------------------------------------
# Yang-Baxter pairs


@dataclass
class AYBPDefect:
    mode: str
    defects: dict
    passed: bool

    @property
    def defect_1(self):
        return self.defects["defect_1"]

    @property
    def defect_2(self):
        return self.defects["defect_2"]

    def witness(self):
        for name, t in self.defects.items():
            hit = first_nonzero(t)
            if hit is not None:
                return name, hit[0], hit[1]
        return None


def aybp_terms(r, s, alg: Algebra) -> dict:
    r, s = _tensor2(_coeffs(r), alg), _tensor2(_coeffs(s), alg)
    return {
        "r13r12": place(alg, r, (1, 3), r, (1, 2)),
        "r12r23": place(alg, r, (1, 2), r, (2, 3)),
        "s23r13": place(alg, s, (2, 3), r, (1, 3)),
        "s13r12": place(alg, s, (1, 3), r, (1, 2)),
        "s12s23": place(alg, s, (1, 2), s, (2, 3)),
        "s23s13": place(alg, s, (2, 3), s, (1, 3)),
    }


def aybp_defect(r, s, alg: Algebra, mode: str = "aybp") -> AYBPDefect:
    t = aybp_terms(r, s, alg)
    if mode == "aybp":
        d = {"defect_1": t["r13r12"] - t["r12r23"] + t["s23r13"],
             "defect_2": t["s13r12"] - t["s12s23"] + t["s23s13"]}
    elif mode == "frobenius_separability":
        d = {"defect_1": np.stack([t["r13r12"] - t["r12r23"], t["r12r23"] - t["s23r13"]]),
             "defect_2": np.stack([t["s13r12"] - t["s12s23"], t["s12s23"] - t["s23s13"]])}
    else:
        raise InputError(f"unknown mode {mode!r}")
    return AYBPDefect(mode, d, all(is_zero(v) for v in d.values()))


def sandwich(t, alg: Algebra) -> np.ndarray:
    """Matrix of a ↦ t₍₁₎ a t₍₂₎."""
    t = _tensor2(_coeffs(t), alg)
    return einsum("ij,yia,xyj->xa", t, alg.mult, alg.mult)


def rbs_from_tensors(r, s, alg: Algebra, flavor: str = "rota_baxter_system") -> RBSPair:
    if flavor == "rota_baxter_system":
        rep = aybp_defect(r, s, alg)
        if not rep.passed:
            raise NotRotaBaxterError("(r, s) is not an associative Yang-Baxter pair", rep.witness())
    elif flavor == "left_averaging":
        t = aybp_terms(r, s, alg)
        for name, d in (("r13r12 - r12r23", t["r13r12"] - t["r12r23"]),
                        ("s13r12 - s12s23", t["s13r12"] - t["s12s23"])):
            hit = first_nonzero(d)
            if hit is not None:
                raise NotRotaBaxterError("left-averaging tensor condition fails",
                                         (name, hit[0], hit[1]))
    else:
        raise InputError(f"unknown flavor {flavor!r}")
    return RBSPair(sandwich(r, alg), sandwich(s, alg))


def sharp_map(r) -> np.ndarray:
    """r♯ : A* → A, α ↦ α(r₍₂₎) r₍₁₎, on the dual basis; it is the grid itself."""
    return as_array(_coeffs(r)).copy()


@dataclass
class SkewReport:
    aybp_pass: bool
    grbs_pass: bool

    @property
    def agree(self) -> bool:
        return self.aybp_pass == self.grbs_pass


def skew_aybp_grbs_check(r, s, alg: Algebra) -> SkewReport:
    r, s = _tensor2(_coeffs(r), alg), _tensor2(_coeffs(s), alg)
    for name, t in (("r", r), ("s", s)):
        if not is_zero(t + t.T):
            raise InputError(f"{name} is not skew-symmetric")
    co = canonical_bimodule(alg, "coadjoint")
    return SkewReport(aybp_defect(r, s, alg).passed,
                      grbs_defect(alg, co, RBSPair(sharp_map(r), sharp_map(s))).is_rbs)


def dual_star(r, s, alg: Algebra) -> np.ndarray:
    """α∗β = α(r₍₂₎)(r₍₁₎·β) + β(s₍₂₎)(α·s₍₁₎) on A*, as a table [w, p, q]."""
    co = canonical_bimodule(alg, "coadjoint")
    prec, succ = dendriform_tables(co, RBSPair(sharp_map(r), sharp_map(s)))
    return prec + succ


# ---------------------------------------------------------------------------
# covariant bialgebras


def _coproduct(D, alg: Algebra) -> np.ndarray:
    D = as_array(D)
    n = alg.dim
    if D.shape != (n, n, n):
        raise InputError(f"map A → A⊗A must have shape {(n, n, n)}, got {D.shape}")
    return D


@dataclass(frozen=True, eq=False)
class CovariantBialgebra:
    alg: Algebra
    coproduct: np.ndarray
    delta1: np.ndarray
    delta2: np.ndarray

    def __post_init__(self):
        for f in ("coproduct", "delta1", "delta2"):
            object.__setattr__(self, f, _coproduct(getattr(self, f), self.alg))

    @classmethod
    def zero(cls, alg: Algebra) -> "CovariantBialgebra":
        z = zeros((alg.dim,) * 3)
        return cls(alg, z, z, z)


def _left_on(alg, D):
    """a·D(b) = (a d₍₁₎)⊗d₍₂₎, indexed [i, j, a, b]."""
    return einsum("iap,pjb->ijab", alg.mult, D)


def _right_on(alg, D):
    """D(a)·b = d₍₁₎⊗(d₍₂₎ b), indexed [i, j, a, b]."""
    return einsum("iqa,jqb->ijab", D, alg.mult)


def _on_product(alg, D):
    """D(ab), indexed [i, j, a, b]."""
    return einsum("ijk,kab->ijab", D, alg.mult)


def _id_tensor(D2, D):
    """(id⊗D2)∘D, indexed [i, j, k, a]."""
    return einsum("ipa,jkp->ijka", D, D2)


def _tensor_id(D2, D):
    """(D2⊗id)∘D, indexed [i, j, k, a]."""
    return einsum("pka,ijp->ijka", D, D2)


@dataclass
class BialgebraReport:
    passed: bool
    compatible: bool
    failures: list = field(default_factory=list)

    def witness(self):
        return self.failures[0] if self.failures else None


def covariant_bialgebra_check(cb: CovariantBialgebra) -> BialgebraReport:
    alg, D, d1, d2 = cb.alg, cb.coproduct, cb.delta1, cb.delta2
    checks = {
        "δ1 derivation": _on_product(alg, d1) - _left_on(alg, d1) - _right_on(alg, d1),
        "δ2 derivation": _on_product(alg, d2) - _left_on(alg, d2) - _right_on(alg, d2),
        "Δ(ab) = a·δ1(b) + Δ(a)·b": _on_product(alg, D) - _left_on(alg, d1) - _right_on(alg, D),
        "Δ(ab) = a·Δ(b) + δ2(a)·b": _on_product(alg, D) - _left_on(alg, D) - _right_on(alg, d2),
        "coassociativity": _id_tensor(D, D) - _tensor_id(D, D),
    }
    failures = []
    for name, t in checks.items():
        hit = first_nonzero(t)
        if hit is not None:
            failures.append((name, hit[0], hit[1]))
    compatible = is_zero(_id_tensor(d1, D) - _tensor_id(d2, D))
    return BialgebraReport(not failures, compatible, failures)


def _a_dot(alg, t):
    """a·t with t ∈ A⊗A, indexed [i, j, a]."""
    return einsum("iap,pj->ija", alg.mult, t)


def _dot_a(alg, t):
    """t·a with t ∈ A⊗A, indexed [i, j, a]."""
    return einsum("iq,jqa->ija", t, alg.mult)


def quasitriangular_build(r, s, alg: Algebra) -> CovariantBialgebra:
    """Δ̄(a) = a·r − s·a, δ_r(a) = a·r − r·a, δ_s(a) = a·s − s·a."""
    r, s = _tensor2(_coeffs(r), alg), _tensor2(_coeffs(s), alg)
    rep = aybp_defect(r, s, alg)
    if not rep.passed:
        raise NotRotaBaxterError("(r, s) is not an associative Yang-Baxter pair", rep.witness())
    return _perturbation_maps(r, s, alg)


def _perturbation_maps(r, s, alg) -> CovariantBialgebra:
    return CovariantBialgebra(alg, _a_dot(alg, r) - _dot_a(alg, s),
                              _a_dot(alg, r) - _dot_a(alg, r),
                              _a_dot(alg, s) - _dot_a(alg, s))


def dual_coproduct_product(cb: CovariantBialgebra, pairing: str = "xi") -> np.ndarray:
    """Product on A* dual to Δ, as a table [a, p, q] = (e^p ∗ e^q)(e_a).

    ``xi`` uses Ξ(α⊗β)(a⊗b) = α(b)β(a); ``standard`` uses α(a)β(b).
    """
    D = cb.coproduct
    if pairing == "xi":
        return einsum("qpa->apq", D)
    if pairing == "standard":
        return einsum("pqa->apq", D)
    raise InputError(f"unknown pairing {pairing!r}")


@dataclass
class PerturbationReport:
    condition_holds: bool
    direct_check: bool

    @property
    def agree(self) -> bool:
        return self.condition_holds == self.direct_check


def perturbation_condition(cb: CovariantBialgebra, r, s, form: str = "covariant") -> np.ndarray:
    """LHS − RHS of the perturbation criterion, indexed [i, j, k, a].

    ``literal`` uses (id⊗Δ)(t) − (Δ⊗id)(t) for both r and s.  ``covariant``
    expands Δ(a r₍₁₎) and Δ(s₍₂₎ a) with the covariance laws instead, giving
    (id⊗Δ)(r) − (δ1⊗id)(r) and (id⊗δ2)(s) − (Δ⊗id)(s); the two agree when
    δ1 = δ2 = Δ.
    """
    if form not in ("covariant", "literal"):
        raise InputError(f"unknown form {form!r}")
    alg, D = cb.alg, cb.coproduct
    d1, d2 = (cb.delta1, cb.delta2) if form == "covariant" else (D, D)
    r, s = _tensor2(_coeffs(r), alg), _tensor2(_coeffs(s), alg)
    t = aybp_terms(r, s, alg)
    y1 = t["r13r12"] - t["r12r23"] + t["s23r13"]
    y2 = t["s13r12"] - t["s12s23"] + t["s23s13"]
    minus_r = einsum("ip,jkp->ijk", r, D) - einsum("ijp,pk->ijk", d1, r)
    minus_s = einsum("ip,jkp->ijk", s, d2) - einsum("ijp,pk->ijk", D, s)
    X, Y = minus_r - y1, minus_s - y2
    lhs = einsum("iap,pjk->ijka", alg.mult, X) - einsum("ijq,kqa->ijka", Y, alg.mult)
    n = alg.dim
    rhs = zeros((n, n, n, n))
    for a in range(n):
        Da = D[:, :, a]
        rhs[:, :, :, a] = place(alg, s, (2, 3), Da, (1, 3)) + place(alg, Da, (1, 3), r, (1, 2))
    return lhs - rhs


def perturbation_check(cb: CovariantBialgebra, r, s, form: str = "covariant") -> PerturbationReport:
    rep = covariant_bialgebra_check(cb)
    if not rep.passed:
        raise InputError(f"base data is not a covariant bialgebra: {rep.witness()}")
    cond = is_zero(perturbation_condition(cb, r, s, form))
    bar = _perturbation_maps(_tensor2(_coeffs(r), cb.alg), _tensor2(_coeffs(s), cb.alg), cb.alg)
    total = CovariantBialgebra(cb.alg, cb.coproduct + bar.coproduct,
                               cb.delta1 + bar.delta1, cb.delta2 + bar.delta2)
    return PerturbationReport(cond, covariant_bialgebra_check(total).passed)


def compatible_prelie(cb: CovariantBialgebra):
    """a⋄b = b₍₁₎ a b₍₂₎ summed over Δ(b)."""
    from .loday import BinaryStructure

    rep = covariant_bialgebra_check(cb)
    if not rep.passed:
        raise InputError(f"not a covariant bialgebra: {rep.witness()}")
    if not rep.compatible:
        raise InputError("covariant bialgebra is not compatible")
    c = cb.alg.mult
    return BinaryStructure("prelie", {
        "diamond": einsum("ijb,yia,wyj->wab", cb.coproduct, c, c)})


# ---------------------------------------------------------------------------
# weak morphisms


def _report(checks: dict) -> list:
    out = []
    for name, t in checks.items():
        hit = first_nonzero(t)
        if hit is not None:
            out.append((name, hit[0], hit[1]))
    return out


def _psi_laws(alg, phi, varphi, psi) -> dict:
    c = alg.mult
    return {
        "ψ(aφ(b)) = ψ(a)b": (einsum("xk,kay,yb->xab", psi, c, phi)
                             - einsum("xpb,pa->xab", c, psi)),
        "ψ(ϕ(a)b) = aψ(b)": (einsum("xk,kyb,ya->xab", psi, c, varphi)
                             - einsum("xaq,qb->xab", c, psi)),
    }


def weak_aybp_failures(alg, pair1, pair2, phi, varphi, psi) -> list:
    (r, s), (r2, s2) = pair1, pair2
    r, s, r2, s2 = (_tensor2(_coeffs(t), alg) for t in (r, s, r2, s2))
    phi, varphi, psi = as_array(phi), as_array(varphi), as_array(psi)
    for name, f in (("phi", phi), ("varphi", varphi)):
        if not is_algebra_map(alg, alg, f):
            raise NotAlgebraMapError(f"{name} is not an algebra map")
    checks = {
        "(ψ⊗id)(r') = (id⊗φ)(r)": psi.dot(r2) - r.dot(phi.T),
        "(ψ⊗id)(s') = (id⊗ϕ)(s)": psi.dot(s2) - s.dot(varphi.T),
    }
    checks.update(_psi_laws(alg, phi, varphi, psi))
    return _report(checks)


def weak_covariant_failures(cb1: CovariantBialgebra, cb2: CovariantBialgebra,
                            phi, varphi, psi) -> list:
    alg = cb1.alg
    phi, varphi, psi = as_array(phi), as_array(varphi), as_array(psi)
    for name, f in (("phi", phi), ("varphi", varphi)):
        if not is_algebra_map(alg, alg, f):
            raise NotAlgebraMapError(f"{name} is not an algebra map")

    def intertwine(D1, D2):
        # (ψ⊗ψ)∘D2 − D1∘ψ, indexed [i, j, a]
        return einsum("ip,jq,pqa->ija", psi, psi, D2) - einsum("ijk,ka->ija", D1, psi)

    checks = {
        "(ψ⊗ψ)Δ' = Δψ": intertwine(cb1.coproduct, cb2.coproduct),
        "(ψ⊗ψ)δ1' = δ1ψ": intertwine(cb1.delta1, cb2.delta1),
        "(ψ⊗ψ)δ2' = δ2ψ": intertwine(cb1.delta2, cb2.delta2),
    }
    checks.update(_psi_laws(alg, phi, varphi, psi))
    return _report(checks)


def weak_morphism_check(kind: str, *data) -> bool:
    """``aybp``: (alg, (r, s), (r', s'), φ, ϕ, ψ).  ``covariant``: (cb, cb', φ, ϕ, ψ)."""
    if kind == "aybp":
        if len(data) != 6:
            raise InputError("aybp weak morphism needs alg, (r,s), (r',s'), φ, ϕ, ψ")
        return not weak_aybp_failures(*data)
    if kind == "covariant":
        if len(data) != 5 or not isinstance(data[0], CovariantBialgebra):
            raise InputError("covariant weak morphism needs cb, cb', φ, ϕ, ψ")
        return not weak_covariant_failures(*data)
    raise InputError(f"unknown weak morphism kind {kind!r}")


def sharp_morphism_check(alg, pair1, pair2, phi, varphi, psi) -> bool:
    """Whether (φ, ϕ, ψ*) is a morphism (r♯, s♯) → (r'♯, s'♯) on the coadjoint module."""
    co = canonical_bimodule(alg, "coadjoint")
    src = (alg, co, RBSPair(sharp_map(pair1[0]), sharp_map(pair1[1])))
    dst = (alg, co, RBSPair(sharp_map(pair2[0]), sharp_map(pair2[1])))
    return morphism_check(src, dst, phi, varphi, as_array(psi).T).ok


# ---------------------------------------------------------------------------
# averaging systems


@dataclass
class AveragingReport:
    side: str
    defects: dict
    passed: bool

    def witness(self):
        for name, t in self.defects.items():
            hit = first_nonzero(t)
            if hit is not None:
                return name, hit[0], hit[1]
        return None


def averaging_defect(alg: Algebra, mod: Bimodule, pair: RBSPair, side: str = "both") -> AveragingReport:
    """Left: R(u)R(v) = R(R(u)·v), S(u)S(v) = S(R(u)·v).  Right: the same with u·S(v)."""
    if side not in ("left", "right", "both"):
        raise InputError(f"unknown side {side!r}")
    check_shapes(alg, mod, pair)
    R, S, c = pair.R, pair.S, alg.mult
    RR = einsum("kab,au,bv->kuv", c, R, R)
    SS = einsum("kab,au,bv->kuv", c, S, S)
    Ru_v = einsum("wav,au->wuv", mod.left, R)
    u_Sv = einsum("wua,av->wuv", mod.right, S)
    d = {}
    if side in ("left", "both"):
        d["left_R"] = RR - einsum("kw,wuv->kuv", R, Ru_v)
        d["left_S"] = SS - einsum("kw,wuv->kuv", S, Ru_v)
    if side in ("right", "both"):
        d["right_R"] = RR - einsum("kw,wuv->kuv", R, u_Sv)
        d["right_S"] = SS - einsum("kw,wuv->kuv", S, u_Sv)
    return AveragingReport(side, d, all(is_zero(t) for t in d.values()))
