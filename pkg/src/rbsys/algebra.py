"""Structure-constant associative algebras and their bimodules."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import InputError
from .linalg import einsum, MultiTensor, as_array, frac, identity, is_zero, zeros


def _names(prefix: str, n: int) -> list[str]:
    return [f"{prefix}{i + 1}" for i in range(n)]


@dataclass(frozen=True, eq=False)
class Algebra:
    """Algebra with ``e_i e_j = sum_k mult[k, i, j] e_k``."""

    mult: np.ndarray
    basis_names: list = field(default=None)

    def __post_init__(self):
        mult = as_array(self.mult)
        if mult.ndim != 3 or len(set(mult.shape)) != 1:
            raise InputError(f"structure tensor must have shape (n, n, n), got {mult.shape}")
        object.__setattr__(self, "mult", mult)
        names = self.basis_names or _names("e", mult.shape[0])
        if len(names) != mult.shape[0]:
            raise InputError("basis name count does not match dimension")
        object.__setattr__(self, "basis_names", list(names))

    @property
    def dim(self) -> int:
        return self.mult.shape[0]

    @property
    def mult_tensor(self) -> MultiTensor:
        return MultiTensor.from_dense(self.mult)

    def product(self, x, y) -> np.ndarray:
        return einsum("kij,i,j->k", self.mult, np.asarray(x, dtype=object),
                         np.asarray(y, dtype=object))

    def left_matrix(self, a) -> np.ndarray:
        """Matrix of b ↦ ab."""
        return einsum("kij,i->kj", self.mult, np.asarray(a, dtype=object))

    def right_matrix(self, a) -> np.ndarray:
        """Matrix of b ↦ ba."""
        return einsum("kij,j->ki", self.mult, np.asarray(a, dtype=object))

    def basis_vector(self, i: int) -> np.ndarray:
        return identity(self.dim)[:, i]

    def __repr__(self):
        return f"Algebra(dim={self.dim}, basis={self.basis_names})"


@dataclass(frozen=True, eq=False)
class Bimodule:
    """Bimodule over ``algebra``: ``left[w, a, u]`` is a·u, ``right[w, u, a]`` is u·a."""

    algebra: Algebra
    left: np.ndarray
    right: np.ndarray
    basis_names: list = field(default=None)

    def __post_init__(self):
        left = as_array(self.left)
        right = as_array(self.right)
        n = self.algebra.dim
        if left.ndim != 3 or right.ndim != 3:
            raise InputError("action tensors must have three indices")
        m = left.shape[0]
        if left.shape != (m, n, m) or right.shape != (m, m, n):
            raise InputError(
                f"action shapes {left.shape}, {right.shape} do not fit algebra dim {n}")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        names = self.basis_names or _names("m", m)
        if len(names) != m:
            raise InputError("basis name count does not match module dimension")
        object.__setattr__(self, "basis_names", list(names))

    @property
    def dim(self) -> int:
        return self.left.shape[0]

    def act_left(self, a, u) -> np.ndarray:
        return einsum("wau,a,u->w", self.left, np.asarray(a, dtype=object),
                         np.asarray(u, dtype=object))

    def act_right(self, u, a) -> np.ndarray:
        return einsum("wua,u,a->w", self.right, np.asarray(u, dtype=object),
                         np.asarray(a, dtype=object))

    def __repr__(self):
        return f"Bimodule(dim={self.dim}, over {self.algebra!r})"


@dataclass
class ValidationReport:
    associative: bool
    bimodule: bool | None
    failing_triples: list

    @property
    def ok(self) -> bool:
        return self.associative and self.bimodule is not False


def associator(alg: Algebra) -> np.ndarray:
    """Tensor of (e_i e_j) e_k − e_i (e_j e_k)."""
    c = alg.mult
    lhs = einsum("lij,mlk->mijk", c, c)
    rhs = einsum("ljk,mil->mijk", c, c)
    return lhs - rhs


def bimodule_defects(mod: Bimodule) -> dict[str, np.ndarray]:
    c = mod.algebra.mult
    L, Rt = mod.left, mod.right
    return {
        # (ab)·u − a·(b·u), indices [w, a, b, u]
        "left": einsum("kab,wku->wabu", c, L) - einsum("wav,vbu->wabu", L, L),
        # (a·u)·b − a·(u·b), indices [w, a, u, b]
        "middle": einsum("wvb,vau->waub", Rt, L) - einsum("wav,vub->waub", L, Rt),
        # (u·a)·b − u·(ab), indices [w, u, a, b]
        "right": einsum("wvb,vua->wuab", Rt, Rt) - einsum("wuk,kab->wuab", Rt, c),
    }


def _failures(name, tensor):
    out = []
    for idx in np.ndindex(*tensor.shape[1:]):
        if not is_zero(tensor[(slice(None),) + idx]):
            out.append((name, idx))
    return out


def validate_model(alg: Algebra, mod: Bimodule | None = None) -> ValidationReport:
    fails = _failures("associativity", associator(alg))
    assoc = not fails
    bim = None
    if mod is not None:
        if mod.algebra.dim != alg.dim:
            raise InputError("bimodule is over an algebra of different dimension")
        bfails = []
        for name, t in bimodule_defects(mod).items():
            bfails.extend(_failures(name, t))
        bim = not bfails
        fails.extend(bfails)
    return ValidationReport(assoc, bim, fails)


def canonical_bimodule(alg: Algebra, kind: str, mod: Bimodule | None = None) -> Bimodule:
    """Adjoint, coadjoint, or a one-sided truncation of ``mod``."""
    c = alg.mult
    n = alg.dim
    if kind == "adjoint":
        return Bimodule(alg, c, c, list(alg.basis_names))
    if kind == "coadjoint":
        # (a·f)(b) = f(ba) and (f·a)(b) = f(ab) on the dual basis
        left = einsum("kba->bak", c)
        right = einsum("kab->bka", c)
        return Bimodule(alg, left, right, [f"{b}*" for b in alg.basis_names])
    if kind in ("left_only", "right_only"):
        if mod is None:
            raise InputError(f"{kind} needs a bimodule to truncate")
        m = mod.dim
        if kind == "left_only":
            return Bimodule(alg, mod.left, zeros((m, m, n)), mod.basis_names)
        return Bimodule(alg, zeros((m, n, m)), mod.right, mod.basis_names)
    raise InputError(f"unknown bimodule kind {kind!r}")


def semidirect_triple(alg: Algebra, mod: Bimodule) -> Algebra:
    """A⊕A⊕M with (a1,a2,u)(b1,b2,v) = (a1b1, a2b2, a1·v + u·b2)."""
    n, m = alg.dim, mod.dim
    N = 2 * n + m
    t = zeros((N, N, N))
    A1, A2, M = slice(0, n), slice(n, 2 * n), slice(2 * n, N)
    t[A1, A1, A1] = alg.mult
    t[A2, A2, A2] = alg.mult
    t[M, A1, M] = mod.left
    t[M, M, A2] = mod.right
    names = ([f"{b}'" for b in alg.basis_names] + [f"{b}''" for b in alg.basis_names]
             + list(mod.basis_names))
    return Algebra(t, names)


def direct_sum(a: Algebra, b: Algebra) -> Algebra:
    n, m = a.dim, b.dim
    t = zeros((n + m,) * 3)
    t[:n, :n, :n] = a.mult
    t[n:, n:, n:] = b.mult
    return Algebra(t, list(a.basis_names) + list(b.basis_names))


def change_basis(alg: Algebra, P) -> Algebra:
    """Structure constants in the basis given by the columns of invertible P."""
    from .linalg import inverse
    P = as_array(P)
    Pi = inverse(P)
    t = einsum("lk,kij,ia,jb->lab", Pi, alg.mult, P, P)
    return Algebra(t)


def bimodule_change_basis(mod: Bimodule, alg_new: Algebra, P, Q) -> Bimodule:
    """Transport ``mod`` along algebra basis change P and module basis change Q."""
    from .linalg import inverse
    P, Q = as_array(P), as_array(Q)
    Qi = inverse(Q)
    left = einsum("xw,wau,ab,uv->xbv", Qi, mod.left, P, Q)
    right = einsum("xw,wua,uv,ab->xvb", Qi, mod.right, Q, P)
    return Bimodule(alg_new, left, right)


def bimodule_direct_sum(m1: Bimodule, m2: Bimodule) -> Bimodule:
    alg = m1.algebra
    a, b, n = m1.dim, m2.dim, alg.dim
    left = zeros((a + b, n, a + b))
    right = zeros((a + b, a + b, n))
    left[:a, :, :a] = m1.left
    left[a:, :, a:] = m2.left
    right[:a, :a, :] = m1.right
    right[a:, a:, :] = m2.right
    return Bimodule(alg, left, right, list(m1.basis_names) + list(m2.basis_names))


def is_algebra_map(src: Algebra, dst: Algebra, phi) -> bool:
    """φ(xy) = φ(x)φ(y) on all basis pairs."""
    phi = np.asarray(phi, dtype=object)
    lhs = einsum("pk,kij->pij", phi, src.mult)
    rhs = einsum("pab,ai,bj->pij", dst.mult, phi, phi)
    return is_zero(lhs - rhs)


@dataclass
class JacksonModel:
    alg: Algebra
    sigma: np.ndarray
    J: np.ndarray
    q: Fraction
    degree: int

    @property
    def S(self) -> np.ndarray:
        return self.sigma.dot(self.J)


def truncated_polynomial(d: int) -> Algebra:
    """ℚ[x]/(x^{d+1}) on the basis 1, x, ..., x^d."""
    n = d + 1
    t = zeros((n, n, n))
    for a in range(n):
        for b in range(n):
            if a + b <= d:
                t[a + b, a, b] = 1
    names = ["1", "x"] + [f"x^{k}" for k in range(2, n)]
    return Algebra(t, names[:n])


def jackson_example(d: int, q) -> JacksonModel:
    """Truncated Jackson integral J(x^n) = (1−q)/(1−q^{n+1}) x^{n+1} with σ(x^n) = q^n x^n."""
    if d < 0:
        raise InputError("truncation degree must be nonnegative")
    q = frac(q)
    for k in range(1, d + 2):
        if q ** k == 1:
            raise InputError(f"q = {q} makes 1 − q^{k} vanish")
    alg = truncated_polynomial(d)
    n = d + 1
    sigma = zeros((n, n))
    J = zeros((n, n))
    for k in range(n):
        sigma[k, k] = q ** k
        if k + 1 <= d:
            J[k + 1, k] = (1 - q) / (1 - q ** (k + 1))
    return JacksonModel(alg, as_array(sigma), as_array(J), q, d)
