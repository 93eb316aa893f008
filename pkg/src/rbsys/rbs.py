"""Generalized Rota-Baxter systems and their characterizations."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import Algebra, Bimodule, is_algebra_map, semidirect_triple, validate_model
from .errors import (HypothesisError, InputError, NonInvertibleError, NotAlgebraMapError,
                     NotCocycleError, NotRotaBaxterError)
from .linalg import (einsum, integer_scaled, as_array, column_basis, complement, first_nonzero, identity, intersect,
                     inverse, is_zero, kernel, linear_solve_suite, rank, zeros)


@dataclass(frozen=True, eq=False)
class RBSPair:
    """Two linear maps M → A stored as (dim A) × (dim M) matrices."""

    R: np.ndarray
    S: np.ndarray

    def __post_init__(self):
        R, S = as_array(self.R), as_array(self.S)
        if R.ndim != 2 or R.shape != S.shape:
            raise InputError(f"R and S must be matrices of equal shape, got {R.shape}, {S.shape}")
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "S", S)

    @classmethod
    def zero(cls, dim_a: int, dim_m: int) -> "RBSPair":
        return cls(zeros((dim_a, dim_m)), zeros((dim_a, dim_m)))

    def __add__(self, other):
        return RBSPair(self.R + other.R, self.S + other.S)

    def scaled(self, c):
        return RBSPair(self.R * c, self.S * c)


@dataclass(frozen=True, eq=False)
class CocycleSystemPair:
    theta0: np.ndarray
    theta1: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "theta0", as_array(self.theta0))
        object.__setattr__(self, "theta1", as_array(self.theta1))


def check_shapes(alg: Algebra, mod: Bimodule, pair: RBSPair) -> None:
    if mod.algebra.dim != alg.dim:
        raise InputError("bimodule is over an algebra of different dimension")
    if pair.R.shape != (alg.dim, mod.dim):
        raise InputError(
            f"pair has shape {pair.R.shape}, expected {(alg.dim, mod.dim)}")


# ---------------------------------------------------------------------------
# the defining identities


def outer_product(alg: Algebra, X, Y) -> np.ndarray:
    """Tensor [k, u, v] of X(u) Y(v)."""
    return einsum("kij,iu,jv->kuv", alg.mult, X, Y)


def star_tensor(mod: Bimodule, R, S) -> np.ndarray:
    """Tensor [w, u, v] of R(u)·v + u·S(v)."""
    return einsum("wav,au->wuv", mod.left, R) + einsum("wua,av->wuv", mod.right, S)


def through(T, tensor) -> np.ndarray:
    """Apply the matrix T to the output index of a bilinear tensor."""
    return einsum("kw,wuv->kuv", T, tensor)


@dataclass
class GRBSDefect:
    defect_R: np.ndarray
    defect_S: np.ndarray

    @property
    def is_rbs(self) -> bool:
        return is_zero(self.defect_R) and is_zero(self.defect_S)

    def witness(self):
        """(name, (k, u, v), value) of the first nonzero defect entry, or None."""
        for name, t in (("defect_R", self.defect_R), ("defect_S", self.defect_S)):
            hit = first_nonzero(t)
            if hit is not None:
                return name, hit[0], hit[1]
        return None


def grbs_defect(alg: Algebra, mod: Bimodule, pair: RBSPair) -> GRBSDefect:
    """R(u)R(v) − R(R(u)·v + u·S(v)) and the same with S outside."""
    check_shapes(alg, mod, pair)
    star = star_tensor(mod, pair.R, pair.S)
    dR = outer_product(alg, pair.R, pair.R) - through(pair.R, star)
    dS = outer_product(alg, pair.S, pair.S) - through(pair.S, star)
    return GRBSDefect(dR, dS)


def require_rbs(alg, mod, pair) -> None:
    d = grbs_defect(alg, mod, pair)
    if not d.is_rbs:
        raise NotRotaBaxterError("pair is not a generalized Rota-Baxter system", d.witness())


def graph_matrix(pair: RBSPair) -> np.ndarray:
    """Columns (R e_u, S e_u, e_u) spanning the graph in A⊕A⊕M."""
    m = pair.R.shape[1]
    return np.concatenate([pair.R, pair.S, identity(m)], axis=0)


def graph_subalgebra_check(alg: Algebra, mod: Bimodule, pair: RBSPair) -> bool:
    check_shapes(alg, mod, pair)
    triple = semidirect_triple(alg, mod)
    G = graph_matrix(pair)
    m = G.shape[1]
    prods = einsum("kij,iu,jv->kuv", triple.mult, G, G).reshape(G.shape[0], m * m)
    return linear_solve_suite(G, prods).particular_solution is not None


def nijenhuis_defect(alg: Algebra, N) -> np.ndarray:
    """N(x)N(y) − N(N(x)y + xN(y) − N(xy)) on basis pairs, indexed [k, x, y]."""
    return _nijenhuis_raw(alg.mult, as_array(N))


def _nijenhuis_raw(c, N):
    lhs = einsum("kij,ix,jy->kxy", c, N, N)
    inner = (einsum("kiy,ix->kxy", c, N) + einsum("kxj,jy->kxy", c, N)
             - einsum("kl,lxy->kxy", N, c))
    return lhs - einsum("kl,lxy->kxy", N, inner)


def nijenhuis_lift(alg: Algebra, mod: Bimodule, pair: RBSPair) -> np.ndarray:
    n, m = alg.dim, mod.dim
    N = zeros((2 * n + m, 2 * n + m))
    N[:n, 2 * n:] = pair.R
    N[n:2 * n, 2 * n:] = pair.S
    return N


def nijenhuis_lift_check(alg: Algebra, mod: Bimodule, pair: RBSPair) -> bool:
    check_shapes(alg, mod, pair)
    triple = semidirect_triple(alg, mod)
    # homogeneous in the structure constants and in N, so int rescaling is safe
    return is_zero(_nijenhuis_raw(integer_scaled(triple.mult),
                                  integer_scaled(nijenhuis_lift(alg, mod, pair))))


# ---------------------------------------------------------------------------
# invertible 1-cocycle systems


def cocycle_system_defects(alg: Algebra, mod: Bimodule, pair: CocycleSystemPair):
    """Defects of the two identities, each indexed [w, x, y]."""
    t0, t1 = pair.theta0, pair.theta1
    n = alg.dim
    if mod.dim != n or t0.shape != (n, n) or t1.shape != (n, n):
        raise InputError("a 1-cocycle system needs dim A = dim M and square maps")
    try:
        t0i, t1i = inverse(t0), inverse(t1)
    except NonInvertibleError as exc:
        raise NonInvertibleError(f"1-cocycle system maps must be invertible: {exc}") from None
    c, L, Rt = alg.mult, mod.left, mod.right
    # θ0(xy) − x·θ0(y) − θ0(x)·(θ1^{-1}θ0(y))
    d0 = (einsum("wk,kxy->wxy", t0, c) - einsum("wxv,vy->wxy", L, t0)
          - einsum("wua,ux,ay->wxy", Rt, t0, t1i.dot(t0)))
    # θ1(xy) − (θ0^{-1}θ1(x))·θ1(y) − θ1(x)·y
    d1 = (einsum("wk,kxy->wxy", t1, c) - einsum("wav,ax,vy->wxy", L, t0i.dot(t1), t1)
          - einsum("wuy,ux->wxy", Rt, t1))
    return d0, d1


def cocycle_system_check(alg: Algebra, mod: Bimodule, pair: CocycleSystemPair) -> bool:
    d0, d1 = cocycle_system_defects(alg, mod, pair)
    return is_zero(d0) and is_zero(d1)


def inverse_correspondence(pair: RBSPair) -> CocycleSystemPair:
    """(R, S) ↦ (R^{-1}, S^{-1})."""
    if pair.R.shape[0] != pair.R.shape[1]:
        raise NonInvertibleError("the correspondence needs dim A = dim M")
    return CocycleSystemPair(inverse(pair.R), inverse(pair.S))


# ---------------------------------------------------------------------------
# induced structures


@dataclass
class InducedStructures:
    dendriform: object
    prelie: object
    assoc: object
    morphism_R: bool
    morphism_S: bool


def dendriform_tables(mod: Bimodule, pair: RBSPair):
    """u ≺ v = u·S(v) and u ≻ v = R(u)·v, as tensors [w, u, v]."""
    prec = einsum("wua,av->wuv", mod.right, pair.S)
    succ = einsum("wav,au->wuv", mod.left, pair.R)
    return prec, succ


def prelie_table(mod: Bimodule, pair: RBSPair) -> np.ndarray:
    """u ⋄ v = u ≻ v − v ≺ u = R(u)·v − v·S(u)."""
    prec, succ = dendriform_tables(mod, pair)
    return succ - np.swapaxes(prec, 1, 2)


def is_morphism_into(alg: Algebra, star, T) -> bool:
    """T(u ∗ v) = T(u)T(v) for all basis pairs."""
    return is_zero(through(T, star) - outer_product(alg, T, T))


def induce_structures(alg: Algebra, mod: Bimodule, pair: RBSPair) -> InducedStructures:
    from .loday import BinaryStructure

    require_rbs(alg, mod, pair)
    prec, succ = dendriform_tables(mod, pair)
    star = prec + succ
    dend = BinaryStructure("dendriform", {"prec": prec, "succ": succ})
    pre = BinaryStructure("prelie", {"diamond": prelie_table(mod, pair)})
    assoc = BinaryStructure("associative", {"mul": star})
    return InducedStructures(dend, pre, assoc, is_morphism_into(alg, star, pair.R),
                             is_morphism_into(alg, star, pair.S))


# ---------------------------------------------------------------------------
# morphisms


@dataclass
class MorphismReport:
    ok: bool
    failures: list = field(default_factory=list)
    dendriform_morphism: bool | None = None

    def __bool__(self):
        return self.ok


def morphism_check(src, dst, phi, varphi, psi) -> MorphismReport:
    """Check (φ, ϕ, ψ) is a morphism from src = (A, M, (R,S)) to dst = (A', M', (R',S'))."""
    alg, mod, pair = src
    alg2, mod2, pair2 = dst
    phi, varphi, psi = as_array(phi), as_array(varphi), as_array(psi)
    if phi.shape != (alg2.dim, alg.dim) or varphi.shape != phi.shape:
        raise InputError("φ, ϕ must be maps A → A'")
    if psi.shape != (mod2.dim, mod.dim):
        raise InputError("ψ must be a map M → M'")
    for name, f in (("phi", phi), ("varphi", varphi)):
        if not is_algebra_map(alg, alg2, f):
            raise NotAlgebraMapError(f"{name} is not an algebra map")
    checks = {
        "R'ψ = φR": pair2.R.dot(psi) - phi.dot(pair.R),
        "S'ψ = ϕS": pair2.S.dot(psi) - varphi.dot(pair.S),
        # ψ(a·u) − φ(a)·ψ(u), indexed [w, a, u]
        "ψ(a·u) = φ(a)·ψ(u)": (einsum("xw,wau->xau", psi, mod.left)
                               - einsum("xbv,ba,vu->xau", mod2.left, phi, psi)),
        "ψ(u·a) = ψ(u)·ϕ(a)": (einsum("xw,wua->xua", psi, mod.right)
                               - einsum("xvb,vu,ba->xua", mod2.right, psi, varphi)),
    }
    failures = []
    for name, t in checks.items():
        hit = first_nonzero(t)
        if hit is not None:
            failures.append((name, hit[0], hit[1]))
    report = MorphismReport(not failures, failures)
    if report.ok:
        p1, s1 = dendriform_tables(mod, pair)
        p2, s2 = dendriform_tables(mod2, pair2)
        report.dendriform_morphism = all(
            is_zero(einsum("xw,wuv->xuv", psi, t1) - einsum("xab,au,bv->xuv", t2, psi, psi))
            for t1, t2 in ((p1, p2), (s1, s2)))
    return report


# ---------------------------------------------------------------------------
# gauge transformations


def sum_algebra_cocycle_defect(alg: Algebra, mod: Bimodule, B) -> np.ndarray:
    """Hochschild 1-cocycle defect of B : A⊕A → M.

    A⊕A acts on M by (a1,a2)·m = a1·m and m·(a1,a2) = m·a2.  Returned tensor is
    indexed [w, x, y] over basis vectors x, y of A⊕A.
    """
    n, m = alg.dim, mod.dim
    B = as_array(B)
    if B.shape != (m, 2 * n):
        raise InputError(f"B must have shape {(m, 2 * n)}, got {B.shape}")
    c2 = zeros((2 * n,) * 3)
    c2[:n, :n, :n] = alg.mult
    c2[n:, n:, n:] = alg.mult
    left = zeros((m, 2 * n, m))
    left[:, :n, :] = mod.left
    right = zeros((m, m, 2 * n))
    right[:, :, n:] = mod.right
    return (einsum("wxv,vy->wxy", left, B) - einsum("wk,kxy->wxy", B, c2)
            + einsum("wvy,vx->wxy", right, B))


def gauge_operator(pair: RBSPair, B) -> np.ndarray:
    """id + B∘(R, S) : M → M."""
    B = as_array(B)
    m = pair.R.shape[1]
    return identity(m) + B.dot(np.concatenate([pair.R, pair.S], axis=0))


def gauge_transform(alg: Algebra, mod: Bimodule, pair: RBSPair, B) -> RBSPair | None:
    """Gauge transformation by a 1-cocycle B, or None when B is inadmissible."""
    check_shapes(alg, mod, pair)
    hit = first_nonzero(sum_algebra_cocycle_defect(alg, mod, B))
    if hit is not None:
        raise NotCocycleError("B is not a 1-cocycle of A⊕A with values in M", hit)
    G = gauge_operator(pair, B)
    try:
        Gi = inverse(G)
    except NonInvertibleError:
        return None
    return RBSPair(pair.R.dot(Gi), pair.S.dot(Gi))


# ---------------------------------------------------------------------------
# reduction


@dataclass
class ReductionResult:
    quotient_alg: Algebra
    annihilator_module: Bimodule
    reduced_pair: RBSPair
    annihilator_basis: np.ndarray
    section: np.ndarray
    compatible: bool


def _span_check(basis, vectors) -> bool:
    vectors = np.asarray(vectors, dtype=object)
    if vectors.size == 0:
        return True
    basis = np.asarray(basis, dtype=object)
    if basis.shape[1] == 0:
        return is_zero(vectors)
    return linear_solve_suite(basis, vectors).particular_solution is not None


def reduce(alg: Algebra, mod: Bimodule, pair: RBSPair, B_sub, E, N_sub) -> ReductionResult:
    """Reduce (R, S) along a subalgebra, a subspace and a sub-bimodule.

    Bases are given as columns; the result lives on the annihilator (E∩B)⁰_N
    over the quotient B/(E∩B).
    """
    check_shapes(alg, mod, pair)
    n, m = alg.dim, mod.dim
    Bm = column_basis(as_array(B_sub).reshape(n, -1))
    Em = as_array(E).reshape(n, -1)
    Nm = column_basis(as_array(N_sub).reshape(m, -1))
    b = Bm.shape[1]
    c = alg.mult

    prods = einsum("kij,ix,jy->kxy", c, Bm, Bm).reshape(n, b * b)
    if not _span_check(Bm, prods):
        raise HypothesisError("subalgebra", "B is not closed under the product")

    I = intersect(Bm, Em) if Em.shape[1] else zeros((n, 0))
    i_dim = I.shape[1]
    I_B = linear_solve_suite(Bm, I).particular_solution if i_dim else zeros((b, 0))
    C = complement(I_B, b)
    q = C.shape[1]
    P = np.concatenate([I_B, C], axis=1) if i_dim else C
    pi = inverse(P)[i_dim:, :]               # B-coordinates → quotient coordinates
    to_B = linear_solve_suite(Bm, prods).particular_solution.reshape(b, b, b)
    # structure constants of B in its own basis, then pushed to the quotient
    quot = einsum("qk,kij,ia,jb->qab", pi, to_B, C, C)
    quotient = Algebra(quot)
    if not validate_model(quotient).associative:
        raise HypothesisError("quotient", "B/(E∩B) is not associative")
    if not is_zero(einsum("qk,kij->qij", pi, to_B)
                   - einsum("qab,ai,bj->qij", quot, pi, pi)):
        raise HypothesisError("quotient", "the projection B → B/(E∩B) is not an algebra map")

    p = Nm.shape[1]
    lb = einsum("wau,ax,uy->wxy", mod.left, Bm, Nm).reshape(m, b * p)
    rb = einsum("wua,uy,ax->wxy", mod.right, Nm, Bm).reshape(m, b * p)
    if not (_span_check(Nm, lb) and _span_check(Nm, rb)):
        raise HypothesisError("sub_bimodule", "N is not a B-sub-bimodule of M")

    if i_dim and p:
        cond = np.concatenate([
            einsum("wau,ai,uy->wiy", mod.left, I, Nm).reshape(m * i_dim, p),
            einsum("wua,uy,ai->wiy", mod.right, Nm, I).reshape(m * i_dim, p)], axis=0)
        ker = kernel(cond)
        coords = np.stack(ker, axis=1) if ker else zeros((p, 0))
    else:
        coords = identity(p)
    Ann = Nm.dot(coords) if p else zeros((m, 0))
    a = Ann.shape[1]

    RA, SA = pair.R.dot(Ann), pair.S.dot(Ann)
    if not (_span_check(Bm, RA) and _span_check(Bm, SA)):
        raise HypothesisError("image_condition", "R or S does not map the annihilator into B")

    section = Bm.dot(C)                      # quotient basis lifted to A
    if a:
        lq = einsum("wau,ax,uy->wxy", mod.left, section, Ann).reshape(m, q * a)
        rq = einsum("wua,uy,ax->wyx", mod.right, Ann, section).reshape(m, a * q)
        left = linear_solve_suite(Ann, lq).particular_solution.reshape(a, q, a)
        right = linear_solve_suite(Ann, rq).particular_solution.reshape(a, a, q)
        Rq = pi.dot(linear_solve_suite(Bm, RA).particular_solution)
        Sq = pi.dot(linear_solve_suite(Bm, SA).particular_solution)
    else:
        left, right = zeros((0, q, 0)), zeros((0, 0, q))
        Rq, Sq = zeros((q, 0)), zeros((q, 0))
    ann_mod = Bimodule(quotient, left, right)
    reduced = RBSPair(Rq, Sq)

    # R̄(u)·v = R(u)·v and the three companions, computed inside M
    compatible = True
    for full, red in ((RA, Rq), (SA, Sq)):
        diff = section.dot(red) - full
        on_left = einsum("wau,ax,uy->wxy", mod.left, diff, Ann)
        on_right = einsum("wua,uy,ax->wxy", mod.right, Ann, diff)
        compatible = compatible and is_zero(on_left) and is_zero(on_right)
    return ReductionResult(quotient, ann_mod, reduced, Ann, section, compatible)
