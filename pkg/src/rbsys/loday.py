"""Dendriform, pre-Lie, dialgebra and quadri-algebra structures.

Every identity is stored as a formal sum of terms; one enumerating checker
evaluates all of them.  A term ``(coef, nest, outer, inner, perm)`` stands
for ``coef * (x inner y) outer z`` when ``nest == "L"`` and for
``coef * x outer (y inner z)`` when ``nest == "R"``, where ``(x, y, z)`` is
``(a, b, c)`` permuted by ``perm``.  Each identity asserts its terms sum to 0.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, NotRotaBaxterError
from .linalg import einsum, as_array, first_nonzero, is_zero

ID = (0, 1, 2)

TABLE_NAMES = {
    "associative": ("mul",),
    "dendriform": ("prec", "succ"),
    "prelie": ("diamond",),
    "dialgebra": ("left", "right"),
    "quadri": ("nw", "ne", "sw", "se"),
}

# derived operations as sums of primary tables
DERIVED = {
    "dendriform": {"star": ("prec", "succ")},
    "quadri": {
        "sqsub": ("nw", "sw"),
        "sqsup": ("ne", "se"),
        "wedge": ("nw", "ne"),
        "vee": ("sw", "se"),
        "star": ("nw", "ne", "sw", "se"),
    },
}


def _eq(name, lhs, rhs):
    """lhs = rhs, each a list of (nest, outer, inner)."""
    terms = [(1, n, o, i, ID) for n, o, i in lhs] + [(-1, n, o, i, ID) for n, o, i in rhs]
    return name, terms


IDENTITIES = {
    "associative": [_eq("associativity", [("L", "mul", "mul")], [("R", "mul", "mul")])],
    "dendriform": [
        _eq("(a≺b)≺c = a≺(b∗c)", [("L", "prec", "prec")], [("R", "prec", "star")]),
        _eq("(a≻b)≺c = a≻(b≺c)", [("L", "prec", "succ")], [("R", "succ", "prec")]),
        _eq("(a∗b)≻c = a≻(b≻c)", [("L", "succ", "star")], [("R", "succ", "succ")]),
    ],
    "prelie": [(
        "(a⋄b)⋄c − a⋄(b⋄c) = (b⋄a)⋄c − b⋄(a⋄c)",
        [(1, "L", "diamond", "diamond", ID), (-1, "R", "diamond", "diamond", ID),
         (-1, "L", "diamond", "diamond", (1, 0, 2)), (1, "R", "diamond", "diamond", (1, 0, 2))],
    )],
    "dialgebra": [
        _eq("a⊣(b⊣c) = (a⊣b)⊣c", [("R", "left", "left")], [("L", "left", "left")]),
        _eq("(a⊣b)⊣c = a⊣(b⊢c)", [("L", "left", "left")], [("R", "left", "right")]),
        _eq("(a⊢b)⊣c = a⊢(b⊣c)", [("L", "left", "right")], [("R", "right", "left")]),
        _eq("(a⊣b)⊢c = a⊢(b⊢c)", [("L", "right", "left")], [("R", "right", "right")]),
        _eq("a⊢(b⊢c) = (a⊢b)⊢c", [("R", "right", "right")], [("L", "right", "right")]),
    ],
    "quadri": [
        _eq("(a↖b)↖c = a↖(b∗c)", [("L", "nw", "nw")], [("R", "nw", "star")]),
        _eq("(a↗b)↖c = a↗(b⊏c)", [("L", "nw", "ne")], [("R", "ne", "sqsub")]),
        _eq("(a∧b)↗c = a↗(b⊐c)", [("L", "ne", "wedge")], [("R", "ne", "sqsup")]),
        _eq("(a↙b)↖c = a↙(b∧c)", [("L", "nw", "sw")], [("R", "sw", "wedge")]),
        _eq("(a↘b)↖c = a↘(b↖c)", [("L", "nw", "se")], [("R", "se", "nw")]),
        _eq("(a∨b)↗c = a↘(b↗c)", [("L", "ne", "vee")], [("R", "se", "ne")]),
        _eq("(a⊏b)↙c = a↙(b∨c)", [("L", "sw", "sqsub")], [("R", "sw", "vee")]),
        _eq("(a⊐b)↙c = a↘(b↙c)", [("L", "sw", "sqsup")], [("R", "se", "sw")]),
        _eq("(a∗b)↘c = a↘(b↘c)", [("L", "se", "star")], [("R", "se", "se")]),
    ],
}


@dataclass(frozen=True, eq=False)
class BinaryStructure:
    """Named arity-2 tables ``T[w, a, b]`` of a given kind on a common space."""

    kind: str
    tables: dict

    def __post_init__(self):
        if self.kind not in TABLE_NAMES:
            raise InputError(f"unknown structure kind {self.kind!r}")
        names = TABLE_NAMES[self.kind]
        if set(self.tables) != set(names):
            raise InputError(f"{self.kind} needs tables {names}, got {sorted(self.tables)}")
        tables = {k: as_array(self.tables[k]) for k in names}
        shapes = {t.shape for t in tables.values()}
        if len(shapes) != 1:
            raise InputError("tables of different shapes")
        (shape,) = shapes
        if len(shape) != 3 or len(set(shape)) != 1:
            raise InputError(f"tables must have shape (d, d, d), got {shape}")
        object.__setattr__(self, "tables", tables)

    @property
    def dim(self) -> int:
        return next(iter(self.tables.values())).shape[0]

    def op(self, name: str) -> np.ndarray:
        """A primary table or a recomputed derived sum."""
        if name in self.tables:
            return self.tables[name]
        parts = DERIVED.get(self.kind, {}).get(name)
        if parts is None:
            raise InputError(f"{self.kind} has no operation {name!r}")
        return sum(self.tables[p] for p in parts)


@dataclass
class AxiomReport:
    passed: bool
    failing_identity: tuple | None = None

    def __bool__(self):
        return self.passed


def term_tensor(outer, inner, nest: str) -> np.ndarray:
    if nest == "L":
        return einsum("wxc,xab->wabc", outer, inner)
    return einsum("wax,xbc->wabc", outer, inner)


def identity_defect(s: BinaryStructure, terms) -> np.ndarray:
    d = s.dim
    total = np.zeros((d, d, d, d), dtype=object)
    for coef, nest, outer, inner, perm in terms:
        t = term_tensor(s.op(outer), s.op(inner), nest)
        if perm != ID:
            # t is indexed by (x, y, z) = permuted (a, b, c); re-index by (a, b, c)
            t = np.transpose(t, (0,) + tuple(1 + perm.index(k) for k in range(3)))
        total = total + coef * t
    return total


def axiom_check(s: BinaryStructure) -> AxiomReport:
    for name, terms in IDENTITIES[s.kind]:
        hit = first_nonzero(identity_defect(s, terms))
        if hit is not None:
            (w, a, b, c), value = hit
            return AxiomReport(False, (name, (a, b, c), w, value))
    return AxiomReport(True)


def associated_star(s: BinaryStructure) -> BinaryStructure:
    if s.kind == "associative":
        return s
    return BinaryStructure("associative", {"mul": s.op("star")})


def dendriform_halves(q: BinaryStructure):
    """The dendriform structures (⊏, ⊐) and (∧, ∨) of a quadri-algebra."""
    if q.kind != "quadri":
        raise InputError("expected a quadri structure")
    return (BinaryStructure("dendriform", {"prec": q.op("sqsub"), "succ": q.op("sqsup")}),
            BinaryStructure("dendriform", {"prec": q.op("wedge"), "succ": q.op("vee")}))


# ---------------------------------------------------------------------------
# Rota-Baxter systems on dendriform algebras


def _rbs_defect_for(table, R, S):
    """R(a)·R(b) − R(R(a)·b + a·S(b)) and the S companion for one table."""
    left = einsum("wxy,xa,yb->wab", table, R, R)
    inner = einsum("wxb,xa->wab", table, R) + einsum("way,yb->wab", table, S)
    dR = left - einsum("wk,kab->wab", R, inner)
    dS = einsum("wxy,xa,yb->wab", table, S, S) - einsum("wk,kab->wab", S, inner)
    return dR, dS


@dataclass
class DendRBSDefect:
    defects: dict

    @property
    def is_rbs(self) -> bool:
        return all(is_zero(t) for t in self.defects.values())

    def witness(self):
        for name, t in self.defects.items():
            hit = first_nonzero(t)
            if hit is not None:
                return name, hit[0], hit[1]
        return None


def rbs_on_dendriform_defect(d: BinaryStructure, R, S) -> DendRBSDefect:
    if d.kind != "dendriform":
        raise InputError("expected a dendriform structure")
    R, S = as_array(R), as_array(S)
    if R.shape != (d.dim, d.dim) or S.shape != R.shape:
        raise InputError("R and S must be square maps on the dendriform space")
    out = {}
    for op in ("prec", "succ"):
        dR, dS = _rbs_defect_for(d.tables[op], R, S)
        out[f"R_{op}"] = dR
        out[f"S_{op}"] = dS
    return DendRBSDefect(out)


def quadri_from_rbs_on_dendriform(d: BinaryStructure, R, S) -> BinaryStructure:
    """a↖b = a≺S(b), a↗b = a≻S(b), a↙b = R(a)≺b, a↘b = R(a)≻b."""
    rep = rbs_on_dendriform_defect(d, R, S)
    if not rep.is_rbs:
        raise NotRotaBaxterError("(R, S) is not a Rota-Baxter system on the dendriform algebra",
                                 rep.witness())
    R, S = as_array(R), as_array(S)
    prec, succ = d.tables["prec"], d.tables["succ"]
    return BinaryStructure("quadri", {
        "nw": einsum("wab,bv->wav", prec, S),
        "ne": einsum("wab,bv->wav", succ, S),
        "sw": einsum("wab,au->wub", prec, R),
        "se": einsum("wab,au->wub", succ, R),
    })


@dataclass
class CommutingQuadri:
    commute: bool
    quadri: BinaryStructure | None
    intermediate_rbs: bool | None = None


def commuting_rbs_quadri(alg, pairPQ, pairRS) -> CommutingQuadri:
    """Quadri-algebra a↖b = aQS(b), a↗b = P(a)S(b), a↙b = R(a)Q(b), a↘b = PR(a)b."""
    from .algebra import canonical_bimodule
    from .rbs import grbs_defect

    adj = canonical_bimodule(alg, "adjoint")
    for label, pair in (("(P,Q)", pairPQ), ("(R,S)", pairRS)):
        rep = grbs_defect(alg, adj, pair)
        if not rep.is_rbs:
            raise NotRotaBaxterError(f"{label} is not a Rota-Baxter system", rep.witness())
    P, Q, R, S = pairPQ.R, pairPQ.S, pairRS.R, pairRS.S
    commute = all(is_zero(X.dot(Y) - Y.dot(X)) for X in (P, Q) for Y in (R, S))
    if not commute:
        return CommutingQuadri(False, None)
    c = alg.mult
    dend = BinaryStructure("dendriform", {
        "prec": einsum("wab,bv->wav", c, Q),
        "succ": einsum("wab,au->wub", c, P),
    })
    intermediate = rbs_on_dendriform_defect(dend, R, S).is_rbs
    quad = BinaryStructure("quadri", {
        "nw": einsum("wab,bv->wav", c, Q.dot(S)),
        "ne": einsum("wab,au,bv->wuv", c, P, S),
        "sw": einsum("wab,au,bv->wuv", c, R, Q),
        "se": einsum("wab,au->wub", c, P.dot(R)),
    })
    return CommutingQuadri(True, quad, intermediate)


def dialgebra_from_averaging(alg, mod, pair) -> BinaryStructure:
    """u⊣v = u·S(v) and u⊢v = R(u)·v for a two-sided averaging system."""
    from .yang_baxter import averaging_defect

    rep = averaging_defect(alg, mod, pair, "both")
    if not rep.passed:
        raise NotRotaBaxterError("pair is not a two-sided averaging system", rep.witness())
    return BinaryStructure("dialgebra", {
        "left": einsum("wua,av->wuv", mod.right, pair.S),
        "right": einsum("wav,au->wuv", mod.left, pair.R),
    })
