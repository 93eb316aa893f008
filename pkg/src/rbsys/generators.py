"""Seeded random instances for property suites.

Everything is driven by an explicit ``random.Random`` so runs are
reproducible.  Valid pairs come from constructions known to produce
Rota-Baxter systems; invalid ones come from random or perturbed matrices.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import (Algebra, Bimodule, canonical_bimodule, change_basis, bimodule_change_basis,
                      direct_sum, jackson_example, truncated_polynomial)
from .errors import NonInvertibleError
from .linalg import einsum, as_array, identity, inverse, is_zero, kernel, zeros
from .rbs import RBSPair, gauge_transform, grbs_defect, sum_algebra_cocycle_defect


def _alg(entries, n, names=None) -> Algebra:
    t = zeros((n, n, n))
    for i, j, k, v in entries:
        t[k, i, j] = v
    return Algebra(t, names)


def catalog() -> dict:
    """Small associative algebras, dimension ≤ 3."""
    unit = _alg([(0, 0, 0, 1)], 1, ["e"])
    return {
        "unit1": unit,
        "zero1": _alg([], 1),
        "zero2": _alg([], 2),
        "dual2": truncated_polynomial(1),
        "poly3": truncated_polynomial(2),
        "nil2": _alg([(0, 0, 1, 1)], 2, ["x", "y"]),
        "left2": _alg([(0, 0, 0, 1), (0, 1, 1, 1)], 2, ["e", "f"]),
        "split2": direct_sum(unit, _alg([(0, 0, 0, 1)], 1, ["f"])),
        "nil3": _alg([(0, 2, 1, 1)], 3, ["e12", "e13", "e23"]),
        "ut3": _alg([(0, 0, 0, 1), (0, 1, 1, 1), (1, 2, 1, 1), (2, 2, 2, 1)], 3,
                    ["e11", "e12", "e22"]),
        "unit_nil3": direct_sum(unit, _alg([(0, 0, 1, 1)], 2, ["x", "y"])),
    }


def nilpotent3() -> Algebra:
    return catalog()["nil3"]


def rand_frac(rng: random.Random, lo: int = -2, hi: int = 2) -> Fraction:
    return Fraction(rng.randint(lo, hi))


def rand_matrix(rng: random.Random, rows: int, cols: int, lo=-2, hi=2, density=0.6) -> np.ndarray:
    out = zeros((rows, cols))
    for i in range(rows):
        for j in range(cols):
            if rng.random() < density:
                out[i, j] = rand_frac(rng, lo, hi)
    return out


def rand_invertible(rng: random.Random, n: int) -> np.ndarray:
    while True:
        P = rand_matrix(rng, n, n, -1, 1, 0.5) + identity(n)
        try:
            inverse(P)
            return P
        except NonInvertibleError:
            continue


def random_algebra(rng: random.Random, max_dim: int = 3, basis_change: bool = True):
    """(name, algebra) from the catalog, optionally in a random basis."""
    cat = catalog()
    names = sorted(k for k, a in cat.items() if a.dim <= max_dim)
    name = rng.choice(names)
    alg = cat[name]
    if basis_change and alg.dim > 1 and rng.random() < 0.5:
        alg = change_basis(alg, rand_invertible(rng, alg.dim))
        name += "~"
    return name, alg


MODULE_KINDS = ("adjoint", "coadjoint", "left_only", "right_only", "zero")


def random_module(rng: random.Random, alg: Algebra, kind: str | None = None):
    kind = kind or rng.choice(MODULE_KINDS)
    if kind in ("adjoint", "coadjoint"):
        return kind, canonical_bimodule(alg, kind)
    if kind in ("left_only", "right_only"):
        base = canonical_bimodule(alg, rng.choice(("adjoint", "coadjoint")))
        return kind, canonical_bimodule(alg, kind, base)
    m = rng.randint(1, 2)
    return kind, Bimodule(alg, zeros((m, alg.dim, m)), zeros((m, m, alg.dim)))


# ---------------------------------------------------------------------------
# constructions of valid pairs


def _left_mult(mod: Bimodule, x) -> np.ndarray:
    """Matrix of u ↦ x·u."""
    return einsum("wau,a->wu", mod.left, x)


def _right_mult(mod: Bimodule, x) -> np.ndarray:
    """Matrix of u ↦ u·x."""
    return einsum("wua,a->wu", mod.right, x)


def _square_ratio(alg: Algebra, x):
    """c with x² = c x, or None."""
    sq = alg.product(x, x)
    if is_zero(sq):
        return Fraction(0)
    k = next(i for i in range(len(x)) if x[i] != 0)
    c = sq[k] / x[k]
    return c if is_zero(sq - c * x) else None


def _candidates(rng, alg, tries=12):
    vecs = [identity(alg.dim)[:, i] for i in range(alg.dim)]
    for _ in range(tries):
        vecs.append(rand_matrix(rng, alg.dim, 1, -1, 1)[:, 0])
    return [v for v in vecs if not is_zero(v) and _square_ratio(alg, v) is not None]


def _random_in_span(rng, basis, n):
    v = zeros((n,))
    for b in basis:
        v = v + rand_frac(rng, -2, 2) * as_array(b)
    return v


def rank_one_pair(rng: random.Random, alg: Algebra, mod: Bimodule, side: str = "R"):
    """(x⊗φ, 0) or (0, x⊗φ) with x² = c x and the linear condition on φ.

    For R = x⊗φ, S = 0 the identity reduces to c φ(v) = φ(x·v); for R = 0,
    S = x⊗φ it reduces to c φ(u) = φ(u·x).
    """
    cands = _candidates(rng, alg)
    rng.shuffle(cands)
    m = mod.dim
    for x in cands:
        c = _square_ratio(alg, x)
        act = _left_mult(mod, x) if side == "R" else _right_mult(mod, x)
        # φ ∘ (act − c id) = 0  ⇔  (act − c id)^T φ = 0
        ker = kernel((act - c * identity(m)).T)
        if not ker:
            continue
        phi = _random_in_span(rng, ker, m)
        if is_zero(phi):
            continue
        T = np.outer(x, phi)
        Z = zeros((alg.dim, m))
        return RBSPair(T, Z) if side == "R" else RBSPair(Z, T)
    return RBSPair.zero(alg.dim, m)


def inner_cocycle(alg: Algebra, mod: Bimodule, m_vec) -> np.ndarray:
    """B(a1, a2) = a1·m − m·a2 as a (dim M) × (2 dim A) matrix."""
    m_vec = as_array(m_vec)
    left = einsum("wau,u->wa", mod.left, m_vec)
    right = einsum("wua,u->wa", mod.right, m_vec)
    return np.concatenate([left, -right], axis=1)


def cocycle_basis(alg: Algebra, mod: Bimodule) -> list:
    """Basis of 1-cocycles A⊕A → M, each a (dim M) × (2 dim A) matrix."""
    m, n2 = mod.dim, 2 * alg.dim
    cols = []
    for idx in range(m * n2):
        B = zeros((m * n2,))
        B[idx] = 1
        cols.append(sum_algebra_cocycle_defect(alg, mod, B.reshape(m, n2)).reshape(-1))
    return [v.reshape(m, n2) for v in kernel(np.stack(cols, axis=1))]


def random_valid_pair(rng: random.Random, alg: Algebra, mod: Bimodule) -> RBSPair:
    """A pair passing grbs_defect, from a randomly chosen construction."""
    n, m = alg.dim, mod.dim
    choice = rng.randrange(6)
    if choice == 0:
        return RBSPair.zero(n, m)
    if choice in (1, 2):
        pair = rank_one_pair(rng, alg, mod, "R" if choice == 1 else "S")
    elif choice == 3 and n == m and _is_adjoint(alg, mod):
        lam = rand_frac(rng, -2, 2)
        pair = rng.choice([RBSPair(identity(n) * lam, zeros((n, n))),
                           RBSPair(zeros((n, n)), identity(n) * lam)])
    else:
        pair = rank_one_pair(rng, alg, mod, rng.choice("RS"))
    if rng.random() < 0.4:
        pair = pair.scaled(rand_frac(rng, 1, 3))
    if rng.random() < 0.4:
        basis = cocycle_basis(alg, mod)
        if basis:
            B = sum(rand_frac(rng, -1, 1) * b for b in basis)
            g = gauge_transform(alg, mod, pair, B)
            if g is not None:
                pair = g
    return pair


def _is_adjoint(alg, mod) -> bool:
    return (mod.left.shape == alg.mult.shape and is_zero(mod.left - alg.mult)
            and is_zero(mod.right - alg.mult))


def random_invalid_pair(rng: random.Random, alg: Algebra, mod: Bimodule) -> RBSPair:
    """Random or perturbed pair; usually, not always, fails."""
    n, m = alg.dim, mod.dim
    if rng.random() < 0.5:
        return RBSPair(rand_matrix(rng, n, m), rand_matrix(rng, n, m))
    base = random_valid_pair(rng, alg, mod)
    E = zeros((n, m))
    E[rng.randrange(n), rng.randrange(m)] = rng.choice([-1, 1])
    return base + (RBSPair(E, zeros((n, m))) if rng.random() < 0.5 else RBSPair(zeros((n, m)), E))


@dataclass
class Instance:
    label: str
    alg: Algebra
    mod: Bimodule
    pair: RBSPair


def random_instance(rng: random.Random, max_dim: int = 3, valid: bool | None = None,
                    module_kind: str | None = None) -> Instance:
    name, alg = random_algebra(rng, max_dim)
    kind, mod = random_module(rng, alg, module_kind)
    if mod.dim > max_dim:
        kind, mod = "adjoint", canonical_bimodule(alg, "adjoint")
    if valid is None:
        valid = rng.random() < 0.5
    pair = random_valid_pair(rng, alg, mod) if valid else random_invalid_pair(rng, alg, mod)
    return Instance(f"{name}/{kind}/{'valid' if valid else 'random'}", alg, mod, pair)


def valid_instance(rng: random.Random, max_dim: int = 3, module_kind: str | None = None) -> Instance:
    inst = random_instance(rng, max_dim, True, module_kind)
    if not grbs_defect(inst.alg, inst.mod, inst.pair).is_rbs:
        raise AssertionError(f"construction produced an invalid pair on {inst.label}")
    return inst


def jackson_instance(d: int = 3, q=2) -> Instance:
    jm = jackson_example(d, q)
    return Instance(f"jackson(d={d},q={q})", jm.alg, canonical_bimodule(jm.alg, "adjoint"),
                    RBSPair(jm.J, jm.S))


# ---------------------------------------------------------------------------
# deformation families and tensors


def polynomial_family(rng: random.Random, alg: Algebra, mod: Bimodule):
    """Exact family R_t = (x + t x')⊗(φ + t φ'), S_t = 0, or None.

    x and x' span a square-zero subspace N (N·N = 0) and φ, φ' vanish on
    N·M, so every R_t satisfies R(u)R(v) = R(R(u)·v).  Returns the three
    coefficient pairs (t⁰, t¹, t²).
    """
    cands = [v for v in _candidates(rng, alg, 16) if is_zero(alg.product(v, v))]
    rng.shuffle(cands)
    for x in cands:
        for y in cands:
            if is_zero(alg.product(x, y)) and is_zero(alg.product(y, x)):
                acts = np.concatenate([_left_mult(mod, x), _left_mult(mod, y)], axis=1)
                ker = kernel(acts.T)
                if len(ker) < 1:
                    continue
                phi = _random_in_span(rng, ker, mod.dim)
                phi2 = _random_in_span(rng, ker, mod.dim)
                Z = zeros((alg.dim, mod.dim))
                return (RBSPair(np.outer(x, phi), Z),
                        RBSPair(np.outer(y, phi) + np.outer(x, phi2), Z),
                        RBSPair(np.outer(y, phi2), Z))
    return None


def random_tensor2(rng: random.Random, n: int, skew: bool = False, density=0.5) -> np.ndarray:
    t = rand_matrix(rng, n, n, -1, 1, density)
    return t - t.T if skew else t


def nilpotent_aybp():
    """r = e12⊗e12, s = e13⊗e13 on strictly upper-triangular 3×3 matrices."""
    alg = nilpotent3()
    r = zeros((3, 3))
    s = zeros((3, 3))
    r[0, 0] = 1
    s[1, 1] = 1
    return alg, r, s


def first_order_family(rng: random.Random, alg: Algebra, mod: Bimodule, pair: RBSPair):
    """Order-1 series (pair, θ1) with θ1 a random 1-cocycle, or None if there is none."""
    from .cohomology import Cochain, differential_matrix
    from .deformation import DeformationSeries

    ker = kernel(differential_matrix(pair, alg, mod, 1))
    if not ker:
        return None
    v = sum(rand_frac(rng, -1, 1) * k for k in ker)
    t1 = Cochain.from_vector(v, 1, alg.dim, mod.dim).as_pair()
    return DeformationSeries(pair, (t1,))


def searched_pair(rng: random.Random, alg: Algebra, mod: Bimodule, tries: int = 2000,
                  accept=None):
    """Random sparse {-1,0,1} pairs filtered by grbs_defect (and ``accept``), or None.

    Reaches Rota-Baxter systems with R and S both nonzero, which the
    constructions above rarely produce.
    """
    n, m = alg.dim, mod.dim
    for _ in range(tries):
        R = rand_matrix(rng, n, m, -1, 1, 0.4)
        S = rand_matrix(rng, n, m, -1, 1, 0.4)
        pair = RBSPair(R, S)
        if grbs_defect(alg, mod, pair).is_rbs and (accept is None or accept(pair)):
            return pair
    return None


def searched_aybp(rng: random.Random, alg: Algebra, tries: int = 400, skew: bool = False,
                  density=0.3, nonzero: bool = True):
    """Random sparse (r, s) passing the AYBP equations, or None.

    With ``nonzero`` both tensors must be nonzero.
    """
    from .yang_baxter import aybp_defect

    for _ in range(tries):
        r = random_tensor2(rng, alg.dim, skew, density)
        s = random_tensor2(rng, alg.dim, skew, density)
        if nonzero and (is_zero(r) or is_zero(s)):
            continue
        if aybp_defect(r, s, alg).passed:
            return r, s
    return None
