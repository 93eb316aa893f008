"""Truncated A∞, A∞-bimodule, Dend∞ and Quad∞ structures.

Operations are dense object arrays ``T[out, in_1, ..., in_k]`` over a graded
basis.  Keys of ``HomotopyStructure.ops``:

* ``ainf``: ``k``
* ``dendinf``: ``(k, r)`` with ``[r] ∈ C_k``
* ``quadinf``: ``(k, r, s)``
* ``ainf_bimodule``: ``(k, p)`` where input slot ``p`` (1-based) is the module
  slot; the array has the module dimension on the output axis and on slot ``p``
  and the algebra dimension elsewhere.

Missing keys mean the zero operation.  Checks are exact and only ever look at
arities up to ``arity_bound``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import HypothesisError, InputError, NotRotaBaxterError, ResourceError, TruncationError
from .linalg import einsum, as_array, first_nonzero, insert, is_zero, koszul_sign, zeros

KINDS = ("ainf", "ainf_bimodule", "dendinf", "quadinf")
DEFAULT_ARITY = 4
DEFAULT_BUDGET = 2_000_000


def _budget(dim: int, n: int, budget: int = DEFAULT_BUDGET):
    """Refuse dense arity-n relation tensors on a dim-dimensional space above the budget."""
    if dim ** (n + 1) > budget:
        raise ResourceError(f"arity {n} on a space of dimension {dim} needs {dim ** (n + 1)} "
                            f"entries (budget {budget})")


def index_table(j: int, i: int, position: int, r: int):
    """(R₀ value in C_j, R_position value as a coefficient vector over C_i).

    ``r`` ranges over C_{j+i−1}; all indices are 1-based as in [r].
    """
    if not 1 <= position <= j:
        raise InputError(f"position {position} out of range 1..{j}")
    if not 1 <= r <= j + i - 1:
        raise InputError(f"[{r}] is not in C_{j + i - 1}")
    full = (1,) * i
    if r <= position - 1:
        return r, full
    if r <= position + i - 1:
        inner = [0] * i
        inner[r - position] = 1
        return position, tuple(inner)
    return r - i + 1, full


@dataclass(frozen=True)
class GradedSpace:
    """Finite graded space given by the degree of each basis vector."""

    degrees: tuple
    names: tuple = None

    def __post_init__(self):
        degs = tuple(int(d) for d in self.degrees)
        object.__setattr__(self, "degrees", degs)
        names = tuple(self.names) if self.names else tuple(f"v{i + 1}" for i in range(len(degs)))
        if len(names) != len(degs):
            raise InputError("basis name count does not match the number of degrees")
        object.__setattr__(self, "names", names)

    @classmethod
    def from_blocks(cls, blocks, names=None) -> "GradedSpace":
        """``blocks`` is a list of (degree, dimension)."""
        degs = []
        for deg, dim in blocks:
            if dim < 0:
                raise InputError("negative block dimension")
            degs.extend([deg] * dim)
        return cls(tuple(degs), names)

    @classmethod
    def concentrated(cls, dim: int, names=None) -> "GradedSpace":
        return cls((0,) * dim, names)

    @property
    def dim(self) -> int:
        return len(self.degrees)

    def blocks(self) -> dict:
        out = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return out

    def __add__(self, other: "GradedSpace") -> "GradedSpace":
        return GradedSpace(self.degrees + other.degrees, self.names + other.names)


def _arity(key) -> int:
    return key if isinstance(key, int) else key[0]


@dataclass(frozen=True, eq=False)
class HomotopyStructure:
    kind: str
    space: GradedSpace
    arity_bound: int
    ops: dict = field(default_factory=dict)
    base: "HomotopyStructure | None" = None  # the A∞-algebra of a bimodule

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown homotopy kind {self.kind!r}")
        if self.kind == "ainf_bimodule" and (self.base is None or self.base.kind != "ainf"):
            raise InputError("an A∞-bimodule needs its A∞-algebra as base")
        ops = {}
        for key, t in self.ops.items():
            k = _arity(key)
            if not 1 <= k <= self.arity_bound:
                raise InputError(f"operation {key!r} exceeds arity bound {self.arity_bound}")
            self._check_key(key)
            t = as_array(t)
            if t.shape != self._shape(key):
                raise InputError(f"operation {key!r} has shape {t.shape}, expected {self._shape(key)}")
            ops[key] = t
        object.__setattr__(self, "ops", ops)

    def _check_key(self, key):
        k = _arity(key)
        if self.kind == "ainf":
            ok = isinstance(key, int)
        elif self.kind == "quadinf":
            ok = isinstance(key, tuple) and len(key) == 3 and 1 <= key[1] <= k and 1 <= key[2] <= k
        else:
            ok = isinstance(key, tuple) and len(key) == 2 and 1 <= key[1] <= k
        if not ok:
            raise InputError(f"bad operation key {key!r} for kind {self.kind}")

    def _shape(self, key):
        k = _arity(key)
        if self.kind != "ainf_bimodule":
            return (self.space.dim,) * (k + 1)
        m, a = self.space.dim, self.base.space.dim
        return (m,) + tuple(m if t == key[1] else a for t in range(1, k + 1))

    def op(self, key) -> np.ndarray:
        """Stored table, or zeros for a missing key."""
        if key in self.ops:
            return self.ops[key]
        self._check_key(key)
        return zeros(self._shape(key))

    def degree_violations(self) -> list:
        """Entries breaking homogeneity deg(μ_k) = k − 2."""
        out = []
        for key, t in self.ops.items():
            k = _arity(key)
            if self.kind == "ainf_bimodule":
                dm, da = self.space.degrees, self.base.space.degrees
                slot_degs = [dm if s == key[1] else da for s in range(1, k + 1)]
                out_degs = dm
            else:
                slot_degs = [self.space.degrees] * k
                out_degs = self.space.degrees
            for idx in zip(*np.nonzero(t != 0)):
                want = sum(slot_degs[s][idx[s + 1]] for s in range(k)) + k - 2
                if out_degs[idx[0]] != want:
                    out.append((key, tuple(int(x) for x in idx)))
        return out


@dataclass(frozen=True, eq=False)
class HomotopyRBS:
    """Degree-0 maps R, S : ℳ → 𝒜 as matrices (rows index 𝒜)."""

    R: np.ndarray
    S: np.ndarray

    def __post_init__(self):
        R, S = as_array(self.R), as_array(self.S)
        if R.ndim != 2 or R.shape != S.shape:
            raise InputError("R and S must be matrices of equal shape")
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "S", S)


@dataclass
class HomotopyReport:
    passed: bool
    defects: dict
    checked_through: int

    def __bool__(self):
        return self.passed

    def witness(self):
        for key, t in self.defects.items():
            hit = first_nonzero(t)
            if hit is not None:
                return key, hit[0], hit[1]
        return None


# ---------------------------------------------------------------------------
# label bookkeeping for the three families of relations


def _labels(kind: str, n: int) -> list:
    if kind == "ainf":
        return [None]
    if kind == "dendinf":
        return list(range(1, n + 1))
    return [(r, s) for r in range(1, n + 1) for s in range(1, n + 1)]


def _compose_labels(kind: str, j: int, i: int, lam: int, label):
    """Outer key and the inner formal sum {key: coefficient}."""
    if kind == "ainf":
        return j, {i: 1}
    if kind == "dendinf":
        r0, vec = index_table(j, i, lam, label)
        return (j, r0), {(i, t + 1): c for t, c in enumerate(vec) if c}
    r0, vr = index_table(j, i, lam, label[0])
    s0, vs = index_table(j, i, lam, label[1])
    inner = {(i, a + 1, b + 1): ca * cb
             for a, ca in enumerate(vr) if ca for b, cb in enumerate(vs) if cb}
    return (j, r0, s0), inner


@lru_cache(maxsize=None)
def _sign_tensor(degrees: tuple, n: int, lam: int, i: int) -> np.ndarray:
    d = len(degrees)
    out = np.empty((d,) * n, dtype=object)
    for idx in np.ndindex(*out.shape):
        out[idx] = koszul_sign([degrees[t] for t in idx], lam, i)
    return out


def relation_tensor(h: HomotopyStructure, n: int, label=None) -> np.ndarray:
    """The left side of the arity-n relation for ``label``, as [out, a_1..a_n]."""
    if h.kind == "ainf_bimodule":
        raise InputError("use bimodule_relation_tensor for bimodules")
    if n > h.arity_bound:
        raise TruncationError(f"arity {n} exceeds the stored bound {h.arity_bound}")
    N = h.space.dim
    total = zeros((N,) * (n + 1))
    for i in range(1, n + 1):
        j = n + 1 - i
        for lam in range(1, j + 1):
            outer_key, inner = _compose_labels(h.kind, j, i, lam, label)
            if outer_key not in h.ops:
                continue
            g = sum(c * h.ops[k] for k, c in inner.items() if k in h.ops)
            if isinstance(g, int):
                continue
            term = insert(h.ops[outer_key], lam - 1, g)
            sign = _sign_tensor(h.space.degrees, n, lam, i)
            total = total + term * sign[np.newaxis]
    return total


def combined_ainf(bimod: HomotopyStructure) -> HomotopyStructure:
    """A∞-algebra on 𝒜 ⊕ ℳ: μ on pure algebra inputs, η with one module input."""
    alg = bimod.base
    a, m = alg.space.dim, bimod.space.dim
    space = alg.space + bimod.space
    N = a + m
    K = min(alg.arity_bound, bimod.arity_bound)
    ops = {}
    A, M = slice(0, a), slice(a, N)
    for k in range(1, K + 1):
        t = zeros((N,) * (k + 1))
        if k in alg.ops:
            t[(A,) * (k + 1)] = alg.ops[k]
        hit = k in alg.ops
        for p in range(1, k + 1):
            if (k, p) in bimod.ops:
                idx = (M,) + tuple(M if s == p else A for s in range(1, k + 1))
                t[idx] = bimod.ops[(k, p)]
                hit = True
        if hit:
            ops[k] = t
    return HomotopyStructure("ainf", space, K, ops)


def homotopy_axiom_defect(h: HomotopyStructure, n_max: int) -> HomotopyReport:
    """Relations of arity 1..n_max; exact because they only involve arities ≤ n_max."""
    if n_max > h.arity_bound:
        raise TruncationError(f"cannot verify through arity {n_max}: bound is {h.arity_bound}")
    dim = h.space.dim + (h.base.space.dim if h.kind == "ainf_bimodule" else 0)
    _budget(dim, n_max)
    defects = {}
    if h.kind == "ainf_bimodule":
        big = combined_ainf(h)
        a = h.base.space.dim
        for n in range(1, n_max + 1):
            t = relation_tensor(big, n)
            # keep inputs with exactly one module argument and module output
            mask = np.zeros(t.shape, dtype=bool)
            for p in range(1, n + 1):
                idx = (slice(a, None),) + tuple(
                    slice(a, None) if s == p else slice(0, a) for s in range(1, n + 1))
                mask[idx] = True
            t = np.where(mask, t, 0)
            defects[n] = t
    else:
        for n in range(1, n_max + 1):
            for label in _labels(h.kind, n):
                defects[n if label is None else (n, label)] = relation_tensor(h, n, label)
    passed = all(is_zero(t) for t in defects.values())
    return HomotopyReport(passed, defects, n_max)


# ---------------------------------------------------------------------------
# classical (degree 0) inputs


def ainf_from_algebra(alg, arity_bound: int = DEFAULT_ARITY) -> HomotopyStructure:
    return HomotopyStructure("ainf", GradedSpace.concentrated(alg.dim, alg.basis_names),
                             arity_bound, {2: alg.mult})


def ainf_bimodule_from_classical(h_alg: HomotopyStructure, mod) -> HomotopyStructure:
    return HomotopyStructure("ainf_bimodule", GradedSpace.concentrated(mod.dim, mod.basis_names),
                             h_alg.arity_bound, {(2, 1): mod.right, (2, 2): mod.left}, h_alg)


def adjoint_bimodule(h: HomotopyStructure) -> HomotopyStructure:
    """An A∞-algebra as a bimodule over itself: η_{k,p} = μ_k for every p."""
    if h.kind != "ainf":
        raise InputError("expected an A∞-algebra")
    ops = {(k, p): t for k, t in h.ops.items() for p in range(1, k + 1)}
    return HomotopyStructure("ainf_bimodule", h.space, h.arity_bound, ops, h)


def dendinf_from_binary(d, arity_bound: int = DEFAULT_ARITY) -> HomotopyStructure:
    if d.kind != "dendriform":
        raise InputError("expected a dendriform structure")
    return HomotopyStructure("dendinf", GradedSpace.concentrated(d.dim), arity_bound,
                             {(2, 1): d.tables["prec"], (2, 2): d.tables["succ"]})


# (r, s) ↔ quadri operation: r picks ≺/≻, s picks the north/south row
QUAD_LABELS = {(1, 1): "nw", (2, 1): "ne", (1, 2): "sw", (2, 2): "se"}


def quadinf_from_binary(q, arity_bound: int = DEFAULT_ARITY) -> HomotopyStructure:
    if q.kind != "quadri":
        raise InputError("expected a quadri structure")
    ops = {(2,) + rs: q.tables[name] for rs, name in QUAD_LABELS.items()}
    return HomotopyStructure("quadinf", GradedSpace.concentrated(q.dim), arity_bound, ops)


# ---------------------------------------------------------------------------
# Rota-Baxter systems in the homotopy setting


def _precompose(T, maps) -> np.ndarray:
    """Apply ``maps[t]`` (or nothing, for None) to input slot t + 1 of T."""
    for t, L in enumerate(maps):
        if L is None:
            continue
        T = np.moveaxis(np.tensordot(T, L, axes=([t + 1], [0])), -1, t + 1)
    return T


def _mixed_maps(k: int, r: int, R, S) -> list:
    return [R] * (r - 1) + [None] + [S] * (k - r)


def _check_degree_zero(pair: HomotopyRBS, src: GradedSpace, dst: GradedSpace):
    if pair.R.shape != (dst.dim, src.dim):
        raise InputError(f"R, S must have shape {(dst.dim, src.dim)}")
    for name, X in (("R", pair.R), ("S", pair.S)):
        for x, u in zip(*np.nonzero(X != 0)):
            if dst.degrees[x] != src.degrees[u]:
                raise InputError(f"{name} is not of degree 0 at entry ({x}, {u})")


def induced_dendinf_ops(bimod: HomotopyStructure, pair: HomotopyRBS, k_max: int) -> dict:
    """μ_{k,[r]} = η_k(R u_1, …, R u_{r−1}, u_r, S u_{r+1}, …, S u_k)."""
    ops = {}
    for k in range(1, k_max + 1):
        for r in range(1, k + 1):
            if (k, r) in bimod.ops:
                ops[(k, r)] = _precompose(bimod.ops[(k, r)], _mixed_maps(k, r, pair.R, pair.S))
    return ops


def homotopy_grbs_defect(alg: HomotopyStructure, bimod: HomotopyStructure, pair: HomotopyRBS,
                         k_max: int, check_structures: bool = False) -> HomotopyReport:
    """μ_k(Ru_1, …, Ru_k) − R(Σ_i η_k(Ru_1, …, u_i, Su_{i+1}, …)) and the S analogue."""
    if bimod.kind != "ainf_bimodule" or alg.kind != "ainf":
        raise InputError("expected an A∞-algebra and an A∞-bimodule")
    if k_max > min(alg.arity_bound, bimod.arity_bound):
        raise TruncationError(f"cannot verify through arity {k_max}")
    _budget(max(alg.space.dim, bimod.space.dim), k_max)
    _check_degree_zero(pair, bimod.space, alg.space)
    if check_structures:
        for h in (alg, bimod):
            rep = homotopy_axiom_defect(h, k_max)
            if not rep.passed:
                raise InputError(f"{h.kind} fails its relations: {rep.witness()}")
    dend = induced_dendinf_ops(bimod, pair, k_max)
    defects = {}
    for k in range(1, k_max + 1):
        star = sum((dend[(k, r)] for r in range(1, k + 1) if (k, r) in dend),
                   zeros((bimod.space.dim,) * (k + 1)))
        for name, X in (("R", pair.R), ("S", pair.S)):
            lhs = _precompose(alg.op(k), [X] * k)
            defects[(name, k)] = lhs - np.tensordot(X, star, axes=([1], [0]))
    return HomotopyReport(all(is_zero(t) for t in defects.values()), defects, k_max)


def dendinf_from_grbs(alg: HomotopyStructure, bimod: HomotopyStructure, pair: HomotopyRBS,
                      k_max: int) -> HomotopyStructure:
    rep = homotopy_grbs_defect(alg, bimod, pair, k_max)
    if not rep.passed:
        raise NotRotaBaxterError("pair is not a generalized Rota-Baxter system", rep.witness())
    return HomotopyStructure("dendinf", bimod.space, k_max, induced_dendinf_ops(bimod, pair, k_max))


def ainf_collapse(h: HomotopyStructure) -> HomotopyStructure:
    """μ_k = Σ_r μ_{k,[r]} (dendinf) or Σ_{r,s} μ_{k,([r],[s])} (quadinf)."""
    if h.kind not in ("dendinf", "quadinf"):
        raise InputError("collapse needs a Dend∞ or Quad∞ structure")
    ops = {}
    for key, t in h.ops.items():
        ops[key[0]] = ops.get(key[0], 0) + t
    return HomotopyStructure("ainf", h.space, h.arity_bound, ops)


def rbs_on_dendinf_defect(d: HomotopyStructure, pair: HomotopyRBS, k_max: int) -> HomotopyReport:
    """μ_{k,[r]}(Ra_1, …, Ra_k) − R(Σ_i μ_{k,[r]}(Ra_1, …, a_i, Sa_{i+1}, …)) and S likewise."""
    if d.kind != "dendinf":
        raise InputError("expected a Dend∞ structure")
    if k_max > d.arity_bound:
        raise TruncationError(f"cannot verify through arity {k_max}")
    _check_degree_zero(pair, d.space, d.space)
    defects = {}
    for (k, r), t in d.ops.items():
        if k > k_max:
            continue
        star = sum(_precompose(t, _mixed_maps(k, i, pair.R, pair.S)) for i in range(1, k + 1))
        for name, X in (("R", pair.R), ("S", pair.S)):
            lhs = _precompose(t, [X] * k)
            defects[(name, k, r)] = lhs - np.tensordot(X, star, axes=([1], [0]))
    return HomotopyReport(all(is_zero(t) for t in defects.values()), defects, k_max)


def quadinf_from_rbs(d: HomotopyStructure, pair: HomotopyRBS, k_max: int) -> HomotopyStructure:
    """μ_{k,([r],[s])} = μ_{k,[r]}(Ra_1, …, Ra_{s−1}, a_s, Sa_{s+1}, …, Sa_k)."""
    rep = rbs_on_dendinf_defect(d, pair, k_max)
    if not rep.passed:
        raise NotRotaBaxterError("pair is not a Rota-Baxter system on the Dend∞ structure",
                                 rep.witness())
    ops = {}
    for (k, r), t in d.ops.items():
        if k > k_max:
            continue
        for s in range(1, k + 1):
            ops[(k, r, s)] = _precompose(t, _mixed_maps(k, s, pair.R, pair.S))
    return HomotopyStructure("quadinf", d.space, k_max, ops)


def dendinf_projections(q: HomotopyStructure):
    """μ'_{k,[r]} = Σ_s μ_{k,([r],[s])} and μ''_{k,[r]} = Σ_s μ_{k,([s],[r])}."""
    if q.kind != "quadinf":
        raise InputError("expected a Quad∞ structure")
    first, second = {}, {}
    for (k, r, s), t in q.ops.items():
        first[(k, r)] = first.get((k, r), 0) + t
        second[(k, s)] = second.get((k, s), 0) + t
    return (HomotopyStructure("dendinf", q.space, q.arity_bound, first),
            HomotopyStructure("dendinf", q.space, q.arity_bound, second))


def commuting_homotopy_quadinf(alg: HomotopyStructure, pairPQ: HomotopyRBS, pairRS: HomotopyRBS,
                               k_max: int):
    """(P,Q)-induced Dend∞ on 𝒜, then the Quad∞ from (R,S) on it."""
    if not all(is_zero(X.dot(Y) - Y.dot(X)) for X in (pairPQ.R, pairPQ.S)
               for Y in (pairRS.R, pairRS.S)):
        raise HypothesisError("commute", "the two systems do not commute")
    adj = adjoint_bimodule(alg)
    for label, pair in (("(P,Q)", pairPQ), ("(R,S)", pairRS)):
        rep = homotopy_grbs_defect(alg, adj, pair, k_max)
        if not rep.passed:
            raise NotRotaBaxterError(f"{label} is not a Rota-Baxter system", rep.witness())
    dend = dendinf_from_grbs(alg, adj, pairPQ, k_max)
    return dend, quadinf_from_rbs(dend, pairRS, k_max)


# ---------------------------------------------------------------------------
# the two-term example


@dataclass
class TwoTermResult:
    ainf: HomotopyStructure
    pair: HomotopyRBS

    @property
    def bimodule(self) -> HomotopyStructure:
        return adjoint_bimodule(self.ainf)


def _first_hit(tag, checks: dict):
    for name, t in checks.items():
        hit = first_nonzero(t)
        if hit is not None:
            raise HypothesisError(tag, f"{name} fails", (name, hit[0], hit[1]))


def triple_bimodule_defects(alg, pair, mod, RM, SM, reading: str = "consistent") -> dict:
    """Defects of (M, R_M, S_M) being a bimodule over the triple (A, R, S).

    The right-hand pair reads R_M(R_M(u)·a + u·S(a)) under ``consistent`` and
    R_M(R_M(u)·a + u·R(a)) under ``literal``.
    """
    R, S = pair.R, pair.S
    RM, SM = as_array(RM), as_array(SM)
    L, Rt = mod.left, mod.right
    inner_left = einsum("wbu,ba->wau", L, R) + einsum("wav,vu->wau", L, SM)
    T = S if reading == "consistent" else R
    if reading not in ("consistent", "literal"):
        raise InputError(f"unknown reading {reading!r}")
    inner_right = einsum("wva,vu->wua", Rt, RM) + einsum("wub,ba->wua", Rt, T)
    return {
        "R(a)·R_M(u) = R_M(R(a)·u + a·S_M(u))":
            einsum("wbv,ba,vu->wau", L, R, RM) - einsum("xw,wau->xau", RM, inner_left),
        "S(a)·S_M(u) = S_M(R(a)·u + a·S_M(u))":
            einsum("wbv,ba,vu->wau", L, S, SM) - einsum("xw,wau->xau", SM, inner_left),
        "R_M(u)·R(a) = R_M(R_M(u)·a + u·T(a))":
            einsum("wvb,vu,ba->wua", Rt, RM, R) - einsum("xw,wua->xua", RM, inner_right),
        "S_M(u)·S(a) = S_M(R_M(u)·a + u·T(a))":
            einsum("wvb,vu,ba->wua", Rt, SM, S) - einsum("xw,wua->xua", SM, inner_right),
    }


def two_term_builder(alg, pair, M_data, N_data, d, reading: str = "consistent",
                     arity_bound: int = DEFAULT_ARITY) -> TwoTermResult:
    """A∞-algebra on M --d--> A ⊕ N with A, N in degree 0 and M in degree 1.

    ``M_data`` and ``N_data`` are (bimodule, R_X, S_X); ``pair`` is a Rota-Baxter
    system on A.  The basis is ordered A, N, M.
    """
    from .algebra import canonical_bimodule
    from .rbs import grbs_defect

    (modM, RM, SM), (modN, RN, SN) = M_data, N_data
    RM, SM, RN, SN, d = (as_array(x) for x in (RM, SM, RN, SN, d))
    a, n, m = alg.dim, modN.dim, modM.dim
    if d.shape != (n, m):
        raise InputError(f"d must have shape {(n, m)}")
    rep = grbs_defect(alg, canonical_bimodule(alg, "adjoint"), pair)
    if not rep.is_rbs:
        raise HypothesisError("rota_baxter", "(R, S) is not a Rota-Baxter system on A", rep.witness())
    _first_hit("triple_bimodule_M", triple_bimodule_defects(alg, pair, modM, RM, SM, reading))
    _first_hit("triple_bimodule_N", triple_bimodule_defects(alg, pair, modN, RN, SN, reading))
    _first_hit("d_bimodule_map", {
        "d(a·u) = a·d(u)": einsum("xw,wau->xau", d, modM.left) - einsum("xav,vu->xau", modN.left, d),
        "d(u·a) = d(u)·a": einsum("xw,wua->xua", d, modM.right) - einsum("xva,vu->xua", modN.right, d),
    })
    _first_hit("d_intertwines", {"R_N d = d R_M": RN.dot(d) - d.dot(RM),
                                 "S_N d = d S_M": SN.dot(d) - d.dot(SM)})

    N = a + n + m
    A, Nn, M = slice(0, a), slice(a, a + n), slice(a + n, N)
    mu1 = zeros((N, N))
    mu1[Nn, M] = d
    mu2 = zeros((N, N, N))
    mu2[A, A, A] = alg.mult
    mu2[Nn, A, Nn] = modN.left
    mu2[Nn, Nn, A] = modN.right
    mu2[M, A, M] = modM.left
    mu2[M, M, A] = modM.right
    space = GradedSpace.from_blocks(
        [(0, a), (0, n), (1, m)],
        list(alg.basis_names) + list(modN.basis_names) + list(modM.basis_names))
    h = HomotopyStructure("ainf", space, arity_bound, {1: mu1, 2: mu2})

    def block(X, XN, XM):
        out = zeros((N, N))
        out[A, A] = X
        out[Nn, Nn] = XN
        out[M, M] = XM
        return out

    return TwoTermResult(h, HomotopyRBS(block(pair.R, RN, RM), block(pair.S, SN, SM)))
