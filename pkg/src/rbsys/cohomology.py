"""Cochains Hom(M^{⊗n}, A⊕A), the derived bracket, differentials and cohomology.

Cochains are dense: ``P`` and ``Q`` have shape ``(dim A,) + (dim M,) * n``
and for ``n = 0`` they are elements of A.  The explicit bracket formulas are
the main path; ``oracle_bracket`` recomputes the same bracket as a derived
Gerstenhaber bracket on A⊕A⊕M using sparse ``MultiTensor`` arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from types import SimpleNamespace

import numpy as np

from .algebra import Algebra, Bimodule, semidirect_triple
from .errors import InputError, NotRotaBaxterError, ResourceError
from .linalg import (MultiTensor, as_array, insert, integer_scaled, is_zero, linear_solve_suite, rank,
                     zeros)
from .rbs import RBSPair, check_shapes, grbs_defect, star_tensor


def sign(e: int) -> int:
    return -1 if e % 2 else 1


@dataclass(frozen=True, eq=False)
class Cochain:
    arity: int
    P: np.ndarray
    Q: np.ndarray

    def __post_init__(self):
        P, Q = np.asarray(self.P, dtype=object), np.asarray(self.Q, dtype=object)
        if P.shape != Q.shape or P.ndim != self.arity + 1:
            raise InputError(f"cochain components of shapes {P.shape}, {Q.shape} "
                             f"do not have arity {self.arity}")
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "Q", Q)

    @classmethod
    def zero(cls, arity: int, dim_a: int, dim_m: int) -> "Cochain":
        shape = (dim_a,) + (dim_m,) * arity
        return cls(arity, zeros(shape), zeros(shape))

    @classmethod
    def from_pair(cls, pair: RBSPair) -> "Cochain":
        return cls(1, pair.R, pair.S)

    @classmethod
    def from_vector(cls, vec, arity: int, dim_a: int, dim_m: int) -> "Cochain":
        shape = (dim_a,) + (dim_m,) * arity
        size = int(np.prod(shape))
        vec = np.asarray(vec, dtype=object).reshape(-1)
        if vec.size != 2 * size:
            raise InputError("vector length does not match cochain dimension")
        return cls(arity, vec[:size].reshape(shape), vec[size:].reshape(shape))

    @property
    def dims(self):
        dim_m = self.P.shape[1] if self.arity else None
        return self.P.shape[0], dim_m

    def to_vector(self) -> np.ndarray:
        return np.concatenate([self.P.reshape(-1), self.Q.reshape(-1)])

    def as_pair(self) -> RBSPair:
        if self.arity != 1:
            raise InputError("only arity-1 cochains are pairs of maps")
        return RBSPair(self.P, self.Q)

    def __add__(self, other: "Cochain") -> "Cochain":
        return Cochain(self.arity, self.P + other.P, self.Q + other.Q)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return Cochain(self.arity, self.P - other.P, self.Q - other.Q)

    def __neg__(self) -> "Cochain":
        return self.scaled(-1)

    def scaled(self, c) -> "Cochain":
        return Cochain(self.arity, self.P * c, self.Q * c)

    def is_zero(self) -> bool:
        return is_zero(self.P) and is_zero(self.Q)

    def equals(self, other: "Cochain") -> bool:
        return self.arity == other.arity and (self - other).is_zero()


def cochain_dim(arity: int, dim_a: int, dim_m: int) -> int:
    return 2 * dim_a * dim_m ** arity


# ---------------------------------------------------------------------------
# dense building blocks


def left_of(mod: Bimodule, X) -> np.ndarray:
    """(v1..vk, v) ↦ X(v1..vk)·v for X with values in A."""
    t = np.tensordot(mod.left, X, axes=([1], [0]))  # w, v, v1..vk
    return np.moveaxis(t, 1, -1)


def right_of(mod: Bimodule, X) -> np.ndarray:
    """(v0, v1..vk) ↦ v0·X(v1..vk) for X with values in A."""
    return np.tensordot(mod.right, X, axes=([2], [0]))


def prod(alg: Algebra, X, Y) -> np.ndarray:
    """(x.., y..) ↦ X(x..) Y(y..) in A."""
    t = np.tensordot(alg.mult, X, axes=([1], [0]))  # k, b, x..
    t = np.tensordot(t, Y, axes=([1], [0]))          # k, x.., y..
    return t


def push(T, X) -> np.ndarray:
    """Apply the matrix T to the output index of X."""
    return np.tensordot(T, X, axes=([1], [0]))


# ---------------------------------------------------------------------------
# the derived bracket


def _component(alg, mod, F, Fp, c1: Cochain, c2: Cochain) -> np.ndarray:
    m, n = c1.arity, c2.arity
    P, Q, Pp, Qp = c1.P, c1.Q, c2.P, c2.Q
    total = 0
    lp, rq = left_of(mod, Pp), right_of(mod, Qp)
    for i in range(1, m + 1):
        total = total + sign((i - 1) * n) * insert(F, i - 1, lp)
        total = total - sign(i * n) * insert(F, i - 1, rq)
    lp1, rq1 = left_of(mod, P), right_of(mod, Q)
    inner = 0
    for i in range(1, n + 1):
        inner = inner + sign((i - 1) * m) * insert(Fp, i - 1, lp1)
        inner = inner - sign(i * m) * insert(Fp, i - 1, rq1)
    total = total - sign(m * n) * inner
    total = total + sign(m * n) * (prod(alg, F, Fp) - sign(m * n) * prod(alg, Fp, F))
    return total


def _with_element(alg, mod, c: Cochain, a, b) -> Cochain:
    """⟦c, (a, b)⟧ for c of arity m ≥ 1."""
    ad = (np.tensordot(mod.left, a, axes=([1], [0]))
          - np.tensordot(mod.right, b, axes=([2], [0])))  # u ↦ a·u − u·b
    out = []
    for F, x in ((c.P, a), (c.Q, b)):
        total = prod(alg, F, x) - prod(alg, x, F)
        for i in range(c.arity):
            total = total + insert(F, i, ad)
        out.append(total)
    return Cochain(c.arity, out[0], out[1])


def derived_bracket(c1: Cochain, c2: Cochain, alg: Algebra, mod: Bimodule) -> Cochain:
    """⟦c1, c2⟧ from the explicit closed formulas."""
    m, n = c1.arity, c2.arity
    if m == 0 and n == 0:
        a, b = c1.P, c1.Q
        c, d = c2.P, c2.Q
        return Cochain(0, alg.product(a, c) - alg.product(c, a),
                       alg.product(b, d) - alg.product(d, b))
    if n == 0:
        return _with_element(alg, mod, c1, c2.P, c2.Q)
    if m == 0:
        return -_with_element(alg, mod, c2, c1.P, c1.Q)
    return Cochain(m + n, _component(alg, mod, c1.P, c2.P, c1, c2),
                   _component(alg, mod, c1.Q, c2.Q, c1, c2))


def mc_defect(pair: RBSPair, alg: Algebra, mod: Bimodule) -> Cochain:
    """½⟦(R,S),(R,S)⟧; equals (−defect_R, −defect_S)."""
    c = Cochain.from_pair(pair)
    return derived_bracket(c, c, alg, mod).scaled(Fraction(1, 2))


# ---------------------------------------------------------------------------
# Gerstenhaber bracket and the semidirect-product oracle


def gerstenhaber_circ(f: MultiTensor, g: MultiTensor) -> MultiTensor:
    """f • g = Σ_i (−1)^{(i−1)(n−1)} f ∘_i g."""
    n = g.arity
    total = MultiTensor(f.arity + n - 1, f.input_dim, f.output_dim)
    for i in range(f.arity):
        total = total + f.compose(i, g).scaled(sign(i * (n - 1)))
    return total


def gerstenhaber_bracket(f: MultiTensor, g: MultiTensor) -> MultiTensor:
    """[f, g] = f • g − (−1)^{(m−1)(n−1)} g • f."""
    if f.input_dim != g.input_dim or f.output_dim != g.output_dim or f.input_dim != f.output_dim:
        raise InputError("both maps must act on the same space V")
    m, n = f.arity, g.arity
    return gerstenhaber_circ(f, g) - gerstenhaber_circ(g, f).scaled(sign((m - 1) * (n - 1)))


def lift_cochain(c: Cochain, dim_a: int, dim_m: int) -> MultiTensor:
    """(P, Q) as a multilinear map on V = A⊕A⊕M: M-inputs to the two A-copies."""
    N = 2 * dim_a + dim_m
    coeffs = {}
    for idx in np.ndindex(*c.P.shape):
        out, ins = idx[0], tuple(2 * dim_a + u for u in idx[1:])
        if c.P[idx] != 0:
            coeffs[(out, ins)] = c.P[idx]
        if c.Q[idx] != 0:
            coeffs[(dim_a + out, ins)] = c.Q[idx]
    return MultiTensor(c.arity, N, N, coeffs)


def restrict_cochain(T: MultiTensor, dim_a: int, dim_m: int) -> Cochain:
    """Inverse of ``lift_cochain``; every other coefficient must vanish."""
    shape = (dim_a,) + (dim_m,) * T.arity
    P, Q = zeros(shape), zeros(shape)
    for (out, ins), v in T.coefficients.items():
        if any(i < 2 * dim_a for i in ins) or out >= 2 * dim_a:
            raise InputError("multitensor is not supported on M^{⊗n} → A⊕A")
        idx = tuple(i - 2 * dim_a for i in ins)
        if out < dim_a:
            P[(out,) + idx] = v
        else:
            Q[(out - dim_a,) + idx] = v
    return Cochain(T.arity, P, Q)


def oracle_bracket(c1: Cochain, c2: Cochain, alg: Algebra, mod: Bimodule) -> Cochain:
    """(−1)^m [[μ+μ+l₁+r₂, c1], c2] computed on A⊕A⊕M."""
    n, m = alg.dim, mod.dim
    pi = MultiTensor.from_dense(semidirect_triple(alg, mod).mult)
    f, g = lift_cochain(c1, n, m), lift_cochain(c2, n, m)
    res = gerstenhaber_bracket(gerstenhaber_bracket(pi, f), g).scaled(sign(c1.arity))
    return restrict_cochain(res, n, m)


# ---------------------------------------------------------------------------
# differentials


def _require(pair, alg, mod):
    d = grbs_defect(alg, mod, pair)
    if not d.is_rbs:
        raise NotRotaBaxterError("the differential needs a generalized Rota-Baxter system",
                                 d.witness())


def rbs_differential(pair: RBSPair, c: Cochain, alg: Algebra, mod: Bimodule,
                     check: bool = True) -> Cochain:
    """d_{(R,S)} c = ⟦(R,S), c⟧."""
    if check:
        _require(pair, alg, mod)
    return derived_bracket(Cochain.from_pair(pair), c, alg, mod)


def hochschild_differential(pair: RBSPair, c: Cochain, alg: Algebra, mod: Bimodule,
                            check: bool = True) -> Cochain:
    """Hochschild differential of (M, ∗) with coefficients in A⊕A."""
    check_shapes(alg, mod, pair)
    if check:
        _require(pair, alg, mod)
    return _hochschild(pair, c, alg, mod)


def _hochschild(pair, c: Cochain, alg, mod) -> Cochain:
    n = c.arity
    R, S = pair.R, pair.S
    star = star_tensor(mod, R, S)
    f, g = c.P, c.Q
    out = []
    for T, h in ((R, f), (S, g)):
        total = prod(alg, T, h) - push(T, right_of(mod, g))
        for i in range(1, n + 1):
            total = total + sign(i) * insert(h, i - 1, star)
        total = total + sign(n + 1) * (prod(alg, h, T) - push(T, left_of(mod, f)))
        out.append(total)
    return Cochain(n + 1, out[0], out[1])


def _columns(fn, pair, alg, mod, arity, dims, zero, one) -> np.ndarray:
    n, m = dims
    src = cochain_dim(arity, n, m)
    D = np.empty((cochain_dim(arity + 1, n, m), src), dtype=object)
    for j in range(src):
        e = np.full(src, zero, dtype=object)
        e[j] = one
        D[:, j] = fn(pair, Cochain.from_vector(e, arity, n, m), alg, mod, check=False).to_vector()
    return D


def differential_matrix(pair: RBSPair, alg: Algebra, mod: Bimodule, arity: int,
                        kind: str = "rbs") -> np.ndarray:
    """Matrix of d : C^n → C^{n+1} in the standard cochain basis."""
    fn = rbs_differential if kind == "rbs" else hochschild_differential
    return _columns(fn, pair, alg, mod, arity, (alg.dim, mod.dim), Fraction(0), Fraction(1))


def _common_integers(*arrays):
    """One positive integer multiple of all ``arrays``, with Python int entries."""
    flat = integer_scaled(np.concatenate([np.asarray(a, dtype=object).reshape(-1) for a in arrays]))
    out, k = [], 0
    for a in arrays:
        size = int(np.prod(np.shape(a)))
        out.append(flat[k:k + size].reshape(np.shape(a)))
        k += size
    return out


def scaled_differential_matrix(pair: RBSPair, alg: Algebra, mod: Bimodule, arity: int,
                               kind: str = "rbs") -> np.ndarray:
    """A positive integer multiple of ``differential_matrix``, in Python ints.

    Every term of either differential carries exactly one structure tensor
    (product or action) and one of R, S, so scaling those two groups by
    integers scales the whole matrix and leaves its rank alone.
    """
    mult, left, right = _common_integers(alg.mult, mod.left, mod.right)
    R, S = _common_integers(pair.R, pair.S)
    ialg = SimpleNamespace(mult=mult, dim=alg.dim)
    imod = SimpleNamespace(left=left, right=right, dim=mod.dim)
    ipair = SimpleNamespace(R=R, S=S)
    if kind == "rbs":
        def fn(p, c, a, m, check=False):
            return derived_bracket(Cochain(1, p.R, p.S), c, a, m)
    else:
        def fn(p, c, a, m, check=False):
            return _hochschild(p, c, a, m)
    return _columns(fn, ipair, ialg, imod, arity, (alg.dim, mod.dim), 0, 1)


DEFAULT_BUDGET = 4_000_000


def cohomology_dimensions(pair: RBSPair, alg: Algebra, mod: Bimodule, max_degree: int,
                          budget: int = DEFAULT_BUDGET) -> list[int]:
    """dim H^0 .. dim H^N of the cochain complex (C*(M, A), d_{(R,S)})."""
    if max_degree < 0:
        raise InputError("max_degree must be nonnegative")
    check_shapes(alg, mod, pair)
    n, m = alg.dim, mod.dim
    worst = cochain_dim(max_degree, n, m) * cochain_dim(max_degree + 1, n, m)
    if worst > budget:
        raise ResourceError(
            f"differential at degree {max_degree} has {worst} entries (budget {budget})")
    _require(pair, alg, mod)
    ranks = [rank(scaled_differential_matrix(pair, alg, mod, k)) for k in range(max_degree + 1)]
    dims = []
    for k in range(max_degree + 1):
        ker = cochain_dim(k, n, m) - ranks[k]
        im = ranks[k - 1] if k else 0
        dims.append(ker - im)
    return dims


def coboundary_solve(pair: RBSPair, target: Cochain, alg: Algebra, mod: Bimodule):
    """An arity-(n−1) cochain X with d X = target, or None."""
    k = target.arity - 1
    if k < 0:
        raise InputError("arity-0 cochains are never coboundaries")
    D = differential_matrix(pair, alg, mod, k)
    sol = linear_solve_suite(D, target.to_vector()).particular_solution
    if sol is None:
        return None
    return Cochain.from_vector(sol, k, alg.dim, mod.dim)


# ---------------------------------------------------------------------------
# the dendriform operad complex


@dataclass(frozen=True, eq=False)
class DendCochain:
    """Element of Hom(𝕂[C_n] ⊗ D^{⊗n}, D); ``tables[r-1]`` is the [r] component."""

    arity: int
    tables: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.tables, dtype=object)
        if t.ndim != self.arity + 2 or t.shape[0] != self.arity:
            raise InputError(f"dendriform cochain of arity {self.arity} has shape {t.shape}")
        object.__setattr__(self, "tables", t)

    @property
    def dim(self) -> int:
        return self.tables.shape[1]

    def component(self, r: int) -> np.ndarray:
        return self.tables[r - 1]

    def total(self) -> np.ndarray:
        return self.tables.sum(axis=0)

    def __add__(self, other):
        return DendCochain(self.arity, self.tables + other.tables)

    def __sub__(self, other):
        return DendCochain(self.arity, self.tables - other.tables)

    def scaled(self, c):
        return DendCochain(self.arity, self.tables * c)

    def is_zero(self) -> bool:
        return is_zero(self.tables)

    def equals(self, other) -> bool:
        return self.arity == other.arity and (self - other).is_zero()

    @classmethod
    def zero(cls, arity: int, dim: int) -> "DendCochain":
        return cls(arity, zeros((arity,) + (dim,) * (arity + 1)))


def dend_partial_compose(f: DendCochain, g: DendCochain, i: int) -> DendCochain:
    """f ∘_i g for 1 ≤ i ≤ arity(f), following the three-case table."""
    from .homotopy import index_table

    m, n = f.arity, g.arity
    if not 1 <= i <= m:
        raise InputError(f"position {i} out of range for arity {m}")
    out = []
    for r in range(1, m + n):
        r0, coeffs = index_table(m, n, i, r)
        inner = sum(int(c) * g.component(s + 1) for s, c in enumerate(coeffs) if c)
        out.append(insert(f.component(r0), i - 1, inner))
    return DendCochain(m + n - 1, np.stack(out))


def dend_bracket(f: DendCochain, g: DendCochain) -> DendCochain:
    """⌈f, g⌉ for f ∈ O(m+1), g ∈ O(n+1)."""
    m, n = f.arity - 1, g.arity - 1
    total = DendCochain.zero(m + n + 1, f.dim)
    for i in range(1, m + 2):
        total = total + dend_partial_compose(f, g, i).scaled(sign((i - 1) * n))
    rest = DendCochain.zero(m + n + 1, f.dim)
    for i in range(1, n + 2):
        rest = rest + dend_partial_compose(g, f, i).scaled(sign((i - 1) * m))
    return total - rest.scaled(sign(m * n))


@dataclass
class DendComplex:
    pi: DendCochain

    def partial_compose(self, f, g, i):
        return dend_partial_compose(f, g, i)

    def bracket(self, f, g):
        return dend_bracket(f, g)

    def differential(self, f: DendCochain) -> DendCochain:
        """δ_π(f) = (−1)^{n−1} ⌈π, f⌉ for f ∈ O(n)."""
        return dend_bracket(self.pi, f).scaled(sign(f.arity - 1))

    def mc_defect(self) -> DendCochain:
        return dend_bracket(self.pi, self.pi)


def dend_complex(d) -> DendComplex:
    from .loday import axiom_check

    if d.kind != "dendriform":
        raise InputError("expected a dendriform structure")
    rep = axiom_check(d)
    if not rep.passed:
        raise InputError(f"not a dendriform algebra: {rep.failing_identity}")
    pi = DendCochain(2, np.stack([d.tables["prec"], d.tables["succ"]]))
    return DendComplex(pi)


def theta_map(c: Cochain, pair: RBSPair, alg: Algebra, mod: Bimodule) -> DendCochain:
    """Θ_n(P, Q) ∈ O(n+1) on M.

    [1] ↦ (−1)^{n+1} u1·Q(u2..), [n+1] ↦ P(u1..un)·u_{n+1}, zero in between.
    For n = 0 both end cases fall on [1] and are added: u ↦ a·u − u·b.
    """
    n = c.arity
    m = mod.dim
    first = sign(n + 1) * right_of(mod, c.Q)
    last = left_of(mod, c.P)
    tables = zeros((n + 1,) + (m,) * (n + 2))
    tables[0] = tables[0] + first
    tables[n] = tables[n] + last
    return DendCochain(n + 1, tables)
