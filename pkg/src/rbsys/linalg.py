"""Exact rational linear algebra and multilinear tensor helpers.

Dense data (matrices, structure tensors, cochains) are numpy arrays of
``dtype=object`` whose entries are Python ints or ``fractions.Fraction``.
Both are exact; ``canon`` turns every entry into a ``Fraction`` so that
printed output is uniform.  Sparse multilinear maps use ``MultiTensor``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import InputError, NonInvertibleError

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


def frac(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            p, q = s.split("/", 1)
            try:
                num, den = int(p), int(q)
            except ValueError:
                raise InputError(f"malformed rational {x!r}") from None
            if den == 0:
                raise InputError(f"zero denominator in {x!r}")
            return Fraction(num, den)
        try:
            return Fraction(int(s))
        except ValueError:
            raise InputError(f"malformed rational {x!r}") from None
    if isinstance(x, float):
        raise InputError("floating point values are not accepted; use p/q")
    raise InputError(f"cannot interpret {x!r} as a rational")


def fmt(x) -> str:
    """Render a rational as ``p/q`` with q > 0 in lowest terms."""
    f = frac(x)
    return f"{f.numerator}/{f.denominator}"


def einsum(spec: str, *operands) -> np.ndarray:
    """np.einsum with contraction-order optimization; much faster on object arrays."""
    return np.einsum(spec, *operands, optimize=True)


def zeros(shape) -> np.ndarray:
    return np.zeros(shape, dtype=object)


def as_array(data, shape=None) -> np.ndarray:
    """Object array of Fractions built from nested lists or another array."""
    arr = np.array(data, dtype=object)
    if shape is not None:
        arr = arr.reshape(shape)
    out = np.empty(arr.shape, dtype=object)
    flat_in = arr.reshape(-1)
    flat_out = out.reshape(-1)
    for k in range(flat_in.size):
        flat_out[k] = frac(flat_in[k])
    return out


def canon(arr) -> np.ndarray:
    return as_array(arr)


def identity(n: int) -> np.ndarray:
    out = zeros((n, n))
    for i in range(n):
        out[i, i] = 1
    return out


def integer_scaled(arr) -> np.ndarray:
    """Positive multiple of ``arr`` with Python int entries.

    Only for zero tests of expressions homogeneous in ``arr``; int arithmetic
    is far cheaper than Fraction arithmetic on object arrays.
    """
    arr = as_array(arr)
    den = 1
    for x in arr.flat:
        den = den * x.denominator // gcd(den, x.denominator)
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        out[idx] = int(x * den)
    return out


def is_zero(arr) -> bool:
    arr = np.asarray(arr, dtype=object)
    return not any(x != 0 for x in arr.reshape(-1))


def first_nonzero(arr):
    """Index tuple and value of the first nonzero entry, or None."""
    arr = np.asarray(arr, dtype=object)
    for idx in np.ndindex(*arr.shape):
        if arr[idx] != 0:
            return idx, frac(arr[idx])
    return None


def arrays_equal(a, b) -> bool:
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    return a.shape == b.shape and is_zero(a - b)


def scale(c, arr) -> np.ndarray:
    return np.asarray(arr, dtype=object) * frac(c)


# ---------------------------------------------------------------------------
# linear systems


@dataclass(frozen=True)
class SolveResult:
    rank: int
    kernel_basis: list
    particular_solution: np.ndarray | None
    pivots: tuple = field(default=())

    @property
    def nullity(self) -> int:
        return len(self.kernel_basis)


def _sparse_rows(A: np.ndarray) -> list[dict]:
    rows = []
    for i in range(A.shape[0]):
        row = {}
        for j in range(A.shape[1]):
            v = A[i, j]
            if v != 0:
                row[j] = frac(v)
        rows.append(row)
    return rows


def _reduce(rows: Iterable[dict]) -> dict[int, dict]:
    """Reduced row echelon form as {pivot column: row with pivot 1}."""
    pivots: dict[int, dict] = {}
    for row in rows:
        row = dict(row)
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                inv = 1 / row[c]
                row = {j: v * inv for j, v in row.items()}
                pivots[c] = row
                break
            f = row[c]
            for j, v in piv.items():
                nv = row.get(j, ZERO) - f * v
                if nv:
                    row[j] = nv
                else:
                    row.pop(j, None)
    # back substitution, highest pivot first
    order = sorted(pivots)
    for c in reversed(order):
        prow = pivots[c]
        for c2 in order:
            if c2 >= c:
                break
            other = pivots[c2]
            f = other.get(c)
            if f:
                for j, v in prow.items():
                    nv = other.get(j, ZERO) - f * v
                    if nv:
                        other[j] = nv
                    else:
                        other.pop(j, None)
    return pivots


def linear_solve_suite(A, b=None) -> SolveResult:
    """Rank, null space basis and (if consistent) a particular solution of Ax=b.

    ``b`` may be a vector or a matrix with the same row count as ``A``; in
    the matrix case the particular solution is a matrix X with AX = b.
    """
    A = np.asarray(A, dtype=object)
    if A.ndim != 2:
        raise InputError(f"expected a matrix, got shape {A.shape}")
    nrows, ncols = A.shape
    B = None
    if b is not None:
        B = np.asarray(b, dtype=object)
        vector = B.ndim == 1
        if vector:
            B = B.reshape(-1, 1)
        if B.ndim != 2 or B.shape[0] != nrows:
            raise InputError(
                f"right-hand side has shape {np.asarray(b).shape}, expected {nrows} rows")
    # pivots of [A|B] inside the first ncols columns are exactly those of A
    full = A if B is None else np.concatenate([A, B], axis=1)
    reduced = _reduce(_sparse_rows(full))
    pivots = {c: row for c, row in reduced.items() if c < ncols}
    pcols = sorted(pivots)
    free = [j for j in range(ncols) if j not in pivots]
    kernel = []
    for f in free:
        v = zeros(ncols)
        v[f] = ONE
        for p in pcols:
            coeff = pivots[p].get(f)
            if coeff:
                v[p] = -coeff
        kernel.append(as_array(v))

    solution = None
    if B is not None and len(pivots) == len(reduced):
        k = B.shape[1]
        X = zeros((ncols, k))
        for c, row in pivots.items():
            for j in range(k):
                X[c, j] = row.get(ncols + j, ZERO)
        X = as_array(X)
        solution = X[:, 0] if vector else X
    return SolveResult(len(pivots), kernel, solution, tuple(pcols))


def rank(A) -> int:
    A = np.asarray(A, dtype=object)
    if A.size == 0:
        return 0
    return len(_reduce(_sparse_rows(A)))


def kernel(A) -> list:
    return linear_solve_suite(A).kernel_basis


def solve(A, b):
    """A particular solution of Ax = b, or None when inconsistent."""
    return linear_solve_suite(A, b).particular_solution


def inverse(A) -> np.ndarray:
    A = np.asarray(A, dtype=object)
    n = A.shape[0]
    if A.shape != (n, n):
        raise InputError(f"inverse of non-square shape {A.shape}")
    res = linear_solve_suite(A, identity(n))
    if res.rank < n:
        raise NonInvertibleError(f"matrix of rank {res.rank} < {n} is not invertible")
    return res.particular_solution


def in_span(basis_cols, v) -> bool:
    """Is ``v`` in the column span of ``basis_cols``?"""
    M = np.asarray(basis_cols, dtype=object)
    v = np.asarray(v, dtype=object).reshape(-1)
    if M.size == 0:
        return is_zero(v)
    return linear_solve_suite(M, v).particular_solution is not None


def column_basis(M) -> np.ndarray:
    """Independent columns spanning the column space of M, as a matrix."""
    M = np.asarray(M, dtype=object)
    if M.ndim != 2:
        raise InputError("expected a matrix")
    if M.shape[1] == 0:
        return zeros((M.shape[0], 0))
    piv = linear_solve_suite(M).pivots
    return as_array(M[:, list(piv)]).reshape(M.shape[0], len(piv))


def intersect(U, W) -> np.ndarray:
    """Basis (as columns) of the intersection of two column spans."""
    U = column_basis(U)
    W = column_basis(W)
    n = U.shape[0]
    if U.shape[1] == 0 or W.shape[1] == 0:
        return zeros((n, 0))
    ker = kernel(np.concatenate([U, -W], axis=1))
    if not ker:
        return zeros((n, 0))
    cols = [U.dot(k[: U.shape[1]]) for k in ker]
    return column_basis(np.stack(cols, axis=1))


def complement(U, n: int) -> np.ndarray:
    """Standard basis vectors completing the columns of U to a basis."""
    U = column_basis(U) if np.asarray(U).size else zeros((n, 0))
    chosen = [U[:, j] for j in range(U.shape[1])]
    extra = []
    for i in range(n):
        e = zeros(n)
        e[i] = 1
        cand = np.stack(chosen + [e], axis=1)
        if rank(cand) == len(chosen) + 1:
            chosen.append(e)
            extra.append(e)
    if not extra:
        return zeros((n, 0))
    return as_array(np.stack(extra, axis=1))


# ---------------------------------------------------------------------------
# multilinear maps


def dense_apply(T, args: Sequence) -> np.ndarray:
    """Evaluate the dense tensor ``T[out, i1, ..., in]`` on ``args``."""
    T = np.asarray(T, dtype=object)
    n = T.ndim - 1
    if len(args) != n:
        raise InputError(f"tensor of arity {n} applied to {len(args)} arguments")
    res = T
    for arg in reversed(args):
        arg = np.asarray(arg, dtype=object)
        if arg.shape != (res.shape[-1],):
            raise InputError(f"argument of shape {arg.shape} for slot of dim {res.shape[-1]}")
        res = np.tensordot(res, arg, axes=([res.ndim - 1], [0]))
    return np.asarray(res, dtype=object)


def insert(f, i: int, g) -> np.ndarray:
    """Dense partial composition: plug ``g`` into input slot ``i`` (0-based) of ``f``."""
    f = np.asarray(f, dtype=object)
    g = np.asarray(g, dtype=object)
    p = f.ndim - 1
    q = g.ndim - 1
    if not 0 <= i < p:
        raise InputError(f"slot {i} out of range for arity {p}")
    t = np.tensordot(f, g, axes=([1 + i], [0]))
    # axes now: out, f inputs without slot i, then q inputs of g
    src = list(range(p, p + q))
    dst = list(range(1 + i, 1 + i + q))
    return np.moveaxis(t, src, dst) if q else t


def apply_linear(L, T, slot: int) -> np.ndarray:
    """Apply the matrix ``L`` to axis ``slot`` of the tensor ``T``."""
    T = np.asarray(T, dtype=object)
    L = np.asarray(L, dtype=object)
    t = np.tensordot(L, T, axes=([1], [slot]))
    return np.moveaxis(t, 0, slot)


@dataclass(frozen=True)
class MultiTensor:
    """Sparse multilinear map M^{⊗n} → V on fixed bases.

    ``coefficients`` maps ``(out, (i1, ..., in))`` to a nonzero Fraction.
    """

    arity: int
    input_dim: int
    output_dim: int
    coefficients: Mapping = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (o, ins), v in self.coefficients.items():
            ins = tuple(ins)
            if len(ins) != self.arity:
                raise InputError(f"index {ins} does not have arity {self.arity}")
            if not 0 <= o < self.output_dim or any(not 0 <= i < self.input_dim for i in ins):
                raise InputError(f"index ({o}, {ins}) out of range")
            v = frac(v)
            if v:
                clean[(o, ins)] = v
        object.__setattr__(self, "coefficients", clean)

    @classmethod
    def from_dense(cls, T) -> "MultiTensor":
        T = np.asarray(T, dtype=object)
        n = T.ndim - 1
        m = T.shape[1] if n else 0
        coeffs = {}
        for idx in np.ndindex(*T.shape):
            if T[idx] != 0:
                coeffs[(idx[0], idx[1:])] = T[idx]
        return cls(n, m, T.shape[0], coeffs)

    def to_dense(self) -> np.ndarray:
        out = zeros((self.output_dim,) + (self.input_dim,) * self.arity)
        for (o, ins), v in self.coefficients.items():
            out[(o,) + ins] = v
        return out

    def __add__(self, other: "MultiTensor") -> "MultiTensor":
        self._check_same(other)
        c = dict(self.coefficients)
        for k, v in other.coefficients.items():
            c[k] = c.get(k, ZERO) + v
        return MultiTensor(self.arity, self.input_dim, self.output_dim, c)

    def __neg__(self) -> "MultiTensor":
        return self.scaled(-1)

    def __sub__(self, other: "MultiTensor") -> "MultiTensor":
        return self + (-other)

    def scaled(self, c) -> "MultiTensor":
        c = frac(c)
        return MultiTensor(self.arity, self.input_dim, self.output_dim,
                           {k: c * v for k, v in self.coefficients.items()})

    def is_zero(self) -> bool:
        return not self.coefficients

    def _check_same(self, other):
        if (self.arity, self.input_dim, self.output_dim) != (
                other.arity, other.input_dim, other.output_dim):
            raise InputError("multitensor shapes differ")

    def compose(self, i: int, g: "MultiTensor") -> "MultiTensor":
        """Partial composition ``self ∘_i g`` with 0-based slot ``i``."""
        if g.output_dim != self.input_dim:
            raise InputError("dimension mismatch in composition")
        if not 0 <= i < self.arity:
            raise InputError(f"slot {i} out of range for arity {self.arity}")
        by_out: dict[int, list] = {}
        for (o, ins), v in g.coefficients.items():
            by_out.setdefault(o, []).append((ins, v))
        c: dict = {}
        for (o, ins), v in self.coefficients.items():
            for gins, gv in by_out.get(ins[i], ()):
                key = (o, ins[:i] + gins + ins[i + 1:])
                c[key] = c.get(key, ZERO) + v * gv
        return MultiTensor(self.arity + g.arity - 1, self.input_dim, self.output_dim, c)


def multilinear_apply(T, args: Sequence) -> np.ndarray:
    """Evaluate a MultiTensor (or dense tensor) on coordinate vectors."""
    if not isinstance(T, MultiTensor):
        return as_array(dense_apply(T, args))
    if len(args) != T.arity:
        raise InputError(f"tensor of arity {T.arity} applied to {len(args)} arguments")
    vecs = [np.asarray(a, dtype=object).reshape(-1) for a in args]
    for v in vecs:
        if v.shape[0] != T.input_dim:
            raise InputError(f"argument of dim {v.shape[0]}, expected {T.input_dim}")
    out = zeros(T.output_dim)
    for (o, ins), c in T.coefficients.items():
        term = c
        for v, i in zip(vecs, ins):
            term = term * v[i]
            if not term:
                break
        else:
            out[o] += term
    return as_array(out)


def koszul_sign(degrees: Sequence[int], lam: int, i: int) -> int:
    """Sign (-1)^{λ(i+1) + i(|a_1|+...+|a_{λ-1}|)} of the A∞ relations."""
    exponent = lam * (i + 1) + i * sum(degrees[: lam - 1])
    return -1 if exponent % 2 else 1
