"""Command line front end: ``rbsys COMMAND MODEL [options]``.

Exit status is 0 when every check passes, 1 when a mathematical check fails
(the report is still printed) and 2 on malformed input or usage errors.
"""
from __future__ import annotations

import argparse
import hashlib
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import algebra as alg_mod
from . import cohomology, deformation, homotopy, loday, rbs, yang_baxter
from .errors import (HypothesisError, InputError, NonInvertibleError, NotAlgebraMapError,
                     NotCocycleError, NotRotaBaxterError, RBSError, ResourceError,
                     TruncationError)
from .linalg import first_nonzero, fmt
from .model import ModelDocument, parse_text

COMMANDS = ("validate", "check-rbs", "characterize", "induce", "gauge", "reduce", "cohomology",
            "deform", "aybp", "covariant", "perturb", "averaging", "homotopy", "quadri")

# plain-language statement of each check, used by the human format
ABOUT = {
    "associative": "the structure constants satisfy (ab)c = a(bc)",
    "bimodule": "the actions satisfy the three bimodule identities",
    "rbs": "R(u)R(v) = R(R(u)·v + u·S(v)) and S(u)S(v) = S(R(u)·v + u·S(v)) for all basis u, v",
    "graph": "the graph {(R u, S u, u)} is a subalgebra of the semidirect triple A⊕A⊕M",
    "nijenhuis": "the lift of (R, S) to A⊕A⊕M is a Nijenhuis operator",
    "maurer_cartan": "(R, S) is a Maurer-Cartan element: its derived bracket with itself vanishes",
    "agree": "the four characterizations return the same verdict",
    "dendriform": "u≺v = u·S(v), u≻v = R(u)·v satisfy the three dendriform axioms",
    "star_associative": "u∗v = u≺v + u≻v is associative",
    "prelie": "u⋄v = R(u)·v − v·S(u) has a left-symmetric associator",
    "morphism_R": "R(u∗v) = R(u)R(v)",
    "morphism_S": "S(u∗v) = S(u)S(v)",
    "cocycle": "B is a 1-cocycle of A⊕A with values in M",
    "admissible": "id + B∘(R, S) is invertible on M",
    "gauged_rbs": "the gauge transformed pair is again a Rota-Baxter system",
    "subalgebra": "the chosen subspace is closed under the product",
    "quotient": "the quotient algebra and projection are well defined",
    "sub_bimodule": "the chosen module subspace is a sub-bimodule",
    "image_condition": "R and S map the annihilator into the subalgebra",
    "compatible": "the reduced operators act like the originals inside M",
    "reduced_rbs": "the reduced pair is a Rota-Baxter system on the quotient",
    "deformation": "every order of the truncated series satisfies the Rota-Baxter equations",
    "obstruction_cocycle": "the obstruction to the next order is a 2-cocycle",
    "extension": "the obstruction is a coboundary, so the series extends one more order",
    "h2_consistent": "an obstruction can only survive when the second cohomology is nonzero",
    "aybp": "r13r12 − r12r23 + s23r13 = 0 and s13r12 − s12s23 + s23s13 = 0",
    "frobenius": "r13r12 = r12r23 = s23r13 and s13r12 = s12s23 = s23s13",
    "skew_agree": "for skew tensors the pair equation matches the Rota-Baxter test of (r♯, s♯)",
    "induced_rbs": "the sandwich maps of r and s form a Rota-Baxter system",
    "bialgebra": "δ1, δ2 are derivations, Δ is coassociative and satisfies both covariance laws",
    "compatible_bialgebra": "(id⊗δ1)∘Δ = (δ2⊗id)∘Δ on A",
    "prelie_from_bialgebra": "a⋄b = b(1) a b(2) is pre-Lie",
    "base_bialgebra": "the unperturbed data form a covariant bialgebra",
    "perturbation_condition": "the algebraic criterion for the perturbation by (r, s)",
    "perturbed_bialgebra": "the perturbed data form a covariant bialgebra",
    "perturbation_agree": "the criterion and the direct check agree",
    "averaging": "R(u)R(v) and S(u)S(v) factor through the averaging identities",
    "dialgebra": "u⊣v = u·S(v), u⊢v = R(u)·v satisfy the five dialgebra identities",
    "ainf": "the signed Stasheff identities hold through the arity bound",
    "degrees": "every operation μ_k has degree k − 2",
    "ainf_bimodule": "the bimodule operations satisfy the Stasheff identities",
    "homotopy_rbs": "the homotopy Rota-Baxter identities hold through the arity bound",
    "collapse_agrees": "the degree-0 homotopy verdict matches the classical one",
    "commute": "P and Q commute with R and S",
    "rbs_PQ": "(P, Q) is a Rota-Baxter system on A",
    "rbs_RS": "(R, S) is a Rota-Baxter system on A",
    "intermediate_rbs": "(R, S) is a Rota-Baxter system on the dendriform algebra from (P, Q)",
    "quadri": "the four products satisfy the nine quadri-algebra identities",
    "quadri_halves": "both row and column sums are dendriform",
}


@dataclass
class Witness:
    check: str
    label: str
    args: tuple
    value: object
    component: str | None = None


@dataclass
class Report:
    command: str
    checks: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    values: list = field(default_factory=list)
    maps: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    def check(self, name: str, ok: bool, witness: Witness | None = None):
        self.checks.append((name, bool(ok)))
        if not ok and witness is not None:
            self.witnesses.append(witness)
        return bool(ok)


def _witness(check, label, hit, axes) -> Witness | None:
    """``hit`` is (index, value) with the output index first; ``axes`` name each index."""
    if hit is None:
        return None
    idx, value = hit
    names = tuple(str(ax[i]) for ax, i in zip(axes, idx))
    return Witness(check, label, names[1:], value, names[0])


def _slot_witness(check, w, axes) -> Witness | None:
    """Witness of a tensor-valued defect without a distinguished output index."""
    if w is None:
        return None
    label, idx, value = w
    return Witness(check, label, tuple(str(ax[i]) for ax, i in zip(axes, idx)), value)


def _first(check, defects: dict, axes) -> Witness | None:
    for label, t in defects.items():
        w = _witness(check, label, first_nonzero(t), axes)
        if w is not None:
            return w
    return None


# ---------------------------------------------------------------------------
# commands


def _pair(doc: ModelDocument, r="R", s="S", mod=None):
    mod = mod or doc.bimodule()
    shape = (doc.alg.dim, mod.dim)
    return rbs.RBSPair(doc.map(r, shape), doc.map(s, shape))


def _rbs_check(rep: Report, doc, pair, mod, name="rbs") -> bool:
    d = rbs.grbs_defect(doc.alg, mod, pair)
    axes = [doc.alg.basis_names, mod.basis_names, mod.basis_names]
    return rep.check(name, d.is_rbs, _first(name, {"defect_R": d.defect_R, "defect_S": d.defect_S}, axes))


def _axiom_check(rep: Report, name: str, s, names) -> bool:
    a = loday.axiom_check(s)
    w = None
    if not a.passed:
        ident, args, comp, value = a.failing_identity
        w = Witness(name, ident, tuple(names[i] for i in args), value, names[comp])
    return rep.check(name, a.passed, w)


def cmd_validate(doc, opts, rep):
    rep.check("associative", alg_mod.validate_model(doc.alg).associative)
    if doc.mod is not None:
        rep.check("bimodule", alg_mod.validate_model(doc.alg, doc.mod).bimodule)
    for name in sorted(doc.modules):
        rep.check("bimodule", alg_mod.validate_model(doc.alg, doc.modules[name]).bimodule)


def cmd_check_rbs(doc, opts, rep):
    mod = doc.bimodule()
    _rbs_check(rep, doc, _pair(doc, mod=mod), mod)


def cmd_characterize(doc, opts, rep):
    mod = doc.bimodule()
    pair = _pair(doc, mod=mod)
    flags = [_rbs_check(rep, doc, pair, mod),
             rep.check("graph", rbs.graph_subalgebra_check(doc.alg, mod, pair)),
             rep.check("nijenhuis", rbs.nijenhuis_lift_check(doc.alg, mod, pair)),
             rep.check("maurer_cartan", cohomology.mc_defect(pair, doc.alg, mod).is_zero())]
    rep.check("agree", len(set(flags)) == 1)


def cmd_induce(doc, opts, rep):
    mod = doc.bimodule()
    pair = _pair(doc, mod=mod)
    if not _rbs_check(rep, doc, pair, mod):
        return
    ind = rbs.induce_structures(doc.alg, mod, pair)
    names = mod.basis_names
    _axiom_check(rep, "dendriform", ind.dendriform, names)
    _axiom_check(rep, "star_associative", ind.assoc, names)
    _axiom_check(rep, "prelie", ind.prelie, names)
    rep.check("morphism_R", ind.morphism_R)
    rep.check("morphism_S", ind.morphism_S)


def cmd_gauge(doc, opts, rep):
    mod = doc.bimodule()
    pair = _pair(doc, mod=mod)
    B = doc.map("B", (mod.dim, 2 * doc.alg.dim))
    if not _rbs_check(rep, doc, pair, mod):
        return
    try:
        out = rbs.gauge_transform(doc.alg, mod, pair, B)
    except NotCocycleError as e:
        src = list(doc.alg.basis_names) + [f"{b}'" for b in doc.alg.basis_names]
        rep.check("cocycle", False, _witness("cocycle", "cocycle_defect", e.witness,
                                             [mod.basis_names, src, src]))
        return
    rep.check("cocycle", True)
    if not rep.check("admissible", out is not None):
        return
    rep.maps["R_gauged"], rep.maps["S_gauged"] = out.R, out.S
    _rbs_check(rep, doc, out, mod, "gauged_rbs")


def cmd_reduce(doc, opts, rep):
    mod = doc.bimodule()
    pair = _pair(doc, mod=mod)
    subs = [doc.map(k) for k in ("sub_B", "sub_E", "sub_N")]
    if not _rbs_check(rep, doc, pair, mod):
        return
    try:
        res = rbs.reduce(doc.alg, mod, pair, *subs)
    except HypothesisError as e:
        rep.check(e.hypothesis, False)
        rep.notes.append(str(e))
        return
    for tag in ("subalgebra", "quotient", "sub_bimodule", "image_condition"):
        rep.check(tag, True)
    rep.values.append(("quotient_dim", str(res.quotient_alg.dim)))
    rep.values.append(("annihilator_dim", str(res.annihilator_module.dim)))
    rep.check("compatible", res.compatible)
    d = rbs.grbs_defect(res.quotient_alg, res.annihilator_module, res.reduced_pair)
    rep.check("reduced_rbs", d.is_rbs)
    rep.maps["R_reduced"], rep.maps["S_reduced"] = res.reduced_pair.R, res.reduced_pair.S


def cmd_cohomology(doc, opts, rep):
    mod = doc.bimodule()
    pair = _pair(doc, mod=mod)
    if not _rbs_check(rep, doc, pair, mod):
        return
    dims = cohomology.cohomology_dimensions(pair, doc.alg, mod, opts.max_degree)
    rep.values.append(("H", " ".join(f"H{k}={d}" for k, d in enumerate(dims))))


def _series(doc, mod, order):
    base = _pair(doc, mod=mod)
    shape = base.R.shape
    terms = [rbs.RBSPair(doc.map(r, shape), doc.map(s, shape)) for r, s in doc.series]
    if order is not None:
        if order > len(terms):
            raise InputError(f"the series has only {len(terms)} terms, asked for order {order}")
        terms = terms[:order]
    return deformation.DeformationSeries(base, tuple(terms))


def cmd_deform(doc, opts, rep):
    mod = doc.bimodule()
    ds = _series(doc, mod, opts.order)
    axes = [doc.alg.basis_names, mod.basis_names, mod.basis_names]
    for d in deformation.deformation_defects(ds, doc.alg, mod):
        if not d.vanishes:
            w = _first("deformation", {f"order{d.order}_defect_R": d.defect_R,
                                       f"order{d.order}_defect_S": d.defect_S}, axes)
            rep.check("deformation", False, w)
            return
    rep.check("deformation", True)
    try:
        ob = deformation.obstruction_cocycle(ds, doc.alg, mod)
    except NotCocycleError:
        rep.check("obstruction_cocycle", False)
        return
    rep.check("obstruction_cocycle", True)
    rep.values.append(("order", str(ds.order)))
    rep.values.append(("obstruction_zero", "true" if ob.is_zero() else "false"))
    nxt = deformation.extend_step(ds, doc.alg, mod)
    h2 = cohomology.cohomology_dimensions(ds.base, doc.alg, mod, 2)[2]
    rep.values.append(("H2", str(h2)))
    rep.check("extension", nxt is not None)
    rep.check("h2_consistent", nxt is not None or h2 > 0)
    if nxt is not None:
        rep.maps["R_next"], rep.maps["S_next"] = nxt.R, nxt.S


def _tensor2(doc, name):
    return doc.tensor(name, 2)


def cmd_aybp(doc, opts, rep):
    alg = doc.alg
    r, s = _tensor2(doc, "r"), _tensor2(doc, "s")
    mode = opts.mode or "aybp"
    if mode not in ("aybp", "frobenius"):
        raise InputError("aybp mode is aybp or frobenius")
    full = "aybp" if mode == "aybp" else "frobenius_separability"
    d = yang_baxter.aybp_defect(r, s, alg, full)
    names = alg.basis_names
    axes = [names] * 3 if mode == "aybp" else [("first", "second")] + [names] * 3
    ok = rep.check(mode, d.passed, _slot_witness(mode, d.witness(), axes))
    skew = all(np.all(t + t.T == 0) for t in (r, s))
    if skew:
        rep.check("skew_agree", yang_baxter.skew_aybp_grbs_check(r, s, alg).agree)
    if ok and mode == "aybp":
        try:
            pair = yang_baxter.rbs_from_tensors(r, s, alg)
            rep.check("induced_rbs", True)
            rep.maps["R_sandwich"], rep.maps["S_sandwich"] = pair.R, pair.S
        except NotRotaBaxterError:
            rep.check("induced_rbs", False)


def _bialgebra(doc):
    if "coproduct" in doc.tensors:
        return yang_baxter.CovariantBialgebra(doc.alg, doc.tensor("coproduct", 3),
                                              doc.tensor("delta1", 3), doc.tensor("delta2", 3))
    return None


def _bialgebra_check(rep, doc, cb, name):
    b = yang_baxter.covariant_bialgebra_check(cb)
    rep.check(name, b.passed, _slot_witness(name, b.witness(), [doc.alg.basis_names] * 4))
    return b


def cmd_covariant(doc, opts, rep):
    cb = _bialgebra(doc)
    if cb is None:
        r, s = _tensor2(doc, "r"), _tensor2(doc, "s")
        d = yang_baxter.aybp_defect(r, s, doc.alg)
        if not rep.check("aybp", d.passed):
            return
        cb = yang_baxter.quasitriangular_build(r, s, doc.alg)
    b = _bialgebra_check(rep, doc, cb, "bialgebra")
    if b.passed and rep.check("compatible_bialgebra", b.compatible):
        _axiom_check(rep, "prelie_from_bialgebra", yang_baxter.compatible_prelie(cb),
                     doc.alg.basis_names)


def cmd_perturb(doc, opts, rep):
    cb = _bialgebra(doc) or yang_baxter.CovariantBialgebra.zero(doc.alg)
    r, s = _tensor2(doc, "r"), _tensor2(doc, "s")
    if not _bialgebra_check(rep, doc, cb, "base_bialgebra").passed:
        return
    p = yang_baxter.perturbation_check(cb, r, s)
    rep.check("perturbation_condition", p.condition_holds)
    rep.check("perturbed_bialgebra", p.direct_check)
    rep.check("perturbation_agree", p.agree)


def cmd_averaging(doc, opts, rep):
    mod = doc.bimodule()
    pair = _pair(doc, mod=mod)
    side = opts.mode or "both"
    if side not in ("left", "right", "both"):
        raise InputError("averaging mode is left, right or both")
    a = yang_baxter.averaging_defect(doc.alg, mod, pair, side)
    axes = [doc.alg.basis_names, mod.basis_names, mod.basis_names]
    rep.check("averaging", a.passed, _first("averaging", a.defects, axes))
    if a.passed and side == "both":
        _axiom_check(rep, "dialgebra", loday.dialgebra_from_averaging(doc.alg, mod, pair),
                     mod.basis_names)


def _homotopy_report(rep, name, hrep, names, in_names=None):
    w = hrep.witness()
    wit = None
    if w is not None:
        key, idx, value = w
        in_names = in_names or names
        wit = Witness(name, str(key), tuple(in_names[i] for i in idx[1:]), value, names[idx[0]])
    return rep.check(name, hrep.passed, wit)


def cmd_homotopy(doc, opts, rep):
    K = opts.arity_bound
    if "ainf" in doc.homotopy:
        h = doc.homotopy["ainf"]
        rep.check("degrees", not h.degree_violations())
        _homotopy_report(rep, "ainf", homotopy.homotopy_axiom_defect(h, K), h.space.names)
        return
    if "two_term" in doc.homotopy:
        t = doc.homotopy["two_term"]
        pair = _pair(doc, *t["pair"], mod=alg_mod.canonical_bimodule(doc.alg, "adjoint"))
        data = []
        for part in ("M", "N"):
            p = t[part]
            mod = doc.modules[p["module"]]
            shape = (mod.dim, mod.dim)
            data.append((mod, doc.map(p["R"], shape), doc.map(p["S"], shape)))
        d = doc.map(t["d"], (data[1][0].dim, data[0][0].dim))
        try:
            res = homotopy.two_term_builder(doc.alg, pair, data[0], data[1], d, t["reading"],
                                            arity_bound=max(K, homotopy.DEFAULT_ARITY))
        except HypothesisError as e:
            rep.check(e.hypothesis, False)
            rep.notes.append(str(e))
            return
        names = res.ainf.space.names
        rep.check("degrees", not res.ainf.degree_violations())
        _homotopy_report(rep, "ainf", homotopy.homotopy_axiom_defect(res.ainf, K), names)
        _homotopy_report(rep, "homotopy_rbs",
                         homotopy.homotopy_grbs_defect(res.ainf, res.bimodule, res.pair, K), names)
        return
    # classical data read as degree-0 homotopy structures
    mod = doc.bimodule()
    pair = _pair(doc, mod=mod)
    h = homotopy.ainf_from_algebra(doc.alg, max(K, 2))
    hb = homotopy.ainf_bimodule_from_classical(h, mod)
    _homotopy_report(rep, "ainf", homotopy.homotopy_axiom_defect(h, K), doc.alg.basis_names)
    _homotopy_report(rep, "ainf_bimodule", homotopy.homotopy_axiom_defect(hb, K),
                     list(doc.alg.basis_names) + list(mod.basis_names))
    hr = homotopy.homotopy_grbs_defect(h, hb, homotopy.HomotopyRBS(pair.R, pair.S), K)
    _homotopy_report(rep, "homotopy_rbs", hr, doc.alg.basis_names, mod.basis_names)
    rep.check("collapse_agrees", hr.passed == rbs.grbs_defect(doc.alg, mod, pair).is_rbs)


def cmd_quadri(doc, opts, rep):
    adj = alg_mod.canonical_bimodule(doc.alg, "adjoint")
    PQ = _pair(doc, "P", "Q", mod=adj)
    RS = _pair(doc, "R", "S", mod=adj)
    ok = _rbs_check(rep, doc, PQ, adj, "rbs_PQ")
    ok = _rbs_check(rep, doc, RS, adj, "rbs_RS") and ok
    if not ok:
        return
    q = loday.commuting_rbs_quadri(doc.alg, PQ, RS)
    if not rep.check("commute", q.commute):
        return
    names = doc.alg.basis_names
    rep.check("intermediate_rbs", q.intermediate_rbs)
    _axiom_check(rep, "quadri", q.quadri, names)
    halves = loday.dendriform_halves(q.quadri)
    rep.check("quadri_halves", all(loday.axiom_check(h).passed for h in halves))


DISPATCH = {
    "validate": cmd_validate, "check-rbs": cmd_check_rbs, "characterize": cmd_characterize,
    "induce": cmd_induce, "gauge": cmd_gauge, "reduce": cmd_reduce,
    "cohomology": cmd_cohomology, "deform": cmd_deform, "aybp": cmd_aybp,
    "covariant": cmd_covariant, "perturb": cmd_perturb, "averaging": cmd_averaging,
    "homotopy": cmd_homotopy, "quadri": cmd_quadri,
}


def _defaults(options):
    base = argparse.Namespace(max_degree=2, arity_bound=3, order=None, seed=0, mode=None,
                              format="machine")
    if options is None:
        return base
    if isinstance(options, dict):
        options = argparse.Namespace(**options)
    for k, v in vars(options).items():
        if v is not None:
            setattr(base, k, v)
    return base


def run_command(cmd: str, doc: ModelDocument, options=None, digest: str | None = None) -> Report:
    if cmd not in DISPATCH:
        raise InputError(f"unknown command {cmd!r}")
    opts = _defaults(options)
    if opts.max_degree < 0 or opts.arity_bound < 1:
        raise InputError("degree and arity bounds must be nonnegative and positive")
    rep = Report(cmd, provenance={"input_sha256": digest or "-", "seed": str(opts.seed)})
    try:
        DISPATCH[cmd](doc, opts, rep)
    except TruncationError:
        raise
    except (NotRotaBaxterError, NotAlgebraMapError, NonInvertibleError, HypothesisError) as e:
        rep.check("precondition", False)
        rep.notes.append(str(e))
    return rep


# ---------------------------------------------------------------------------
# output


def _witness_line(w: Witness) -> str:
    comp = f" component={w.component}" if w.component is not None else ""
    return f"witness check={w.check} {w.label}[{','.join(w.args)}] = {fmt(w.value)}{comp}"


def emit_report(rep: Report, format: str = "machine") -> str:
    if format == "machine":
        lines = [f"command={rep.command}",
                 f"input_sha256={rep.provenance.get('input_sha256', '-')}",
                 f"seed={rep.provenance.get('seed', '0')}"]
        lines += [f"check={n} pass={'true' if ok else 'false'}" for n, ok in rep.checks]
        lines += [_witness_line(w) for w in rep.witnesses]
        for key, val in rep.values:
            lines.append(val if key == "H" else f"value {key}={val}")
        for name in sorted(rep.maps):
            for i, row in enumerate(rep.maps[name]):
                lines.append(f"map {name} row={i} " + " ".join(fmt(x) for x in row))
        lines += [f"note {n}" for n in rep.notes]
        lines.append(f"result={'pass' if rep.passed else 'fail'}")
        return "\n".join(lines) + "\n"
    if format != "human":
        raise InputError(f"unknown format {format!r}")
    lines = [f"{rep.command}: {'all checks pass' if rep.passed else 'some checks FAIL'}",
             f"  input sha256 {rep.provenance.get('input_sha256', '-')}, "
             f"seed {rep.provenance.get('seed', '0')}"]
    for n, ok in rep.checks:
        lines.append(f"  [{'ok' if ok else 'FAIL'}] {n}: {ABOUT.get(n, n)}")
    for w in rep.witnesses:
        at = f" at ({', '.join(w.args)})" if w.args else ""
        comp = f", coefficient of {w.component}" if w.component is not None else ""
        lines.append(f"    counterexample for {w.check}: {w.label}{at}{comp} is {fmt(w.value)}")
    for key, val in rep.values:
        lines.append(f"  {val}" if key == "H" else f"  {key}: {val}")
    for name in sorted(rep.maps):
        lines.append(f"  {name} =")
        for row in rep.maps[name]:
            lines.append("    [" + ", ".join(fmt(x) for x in row) + "]")
    lines += [f"  note: {n}" for n in rep.notes]
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rbsys",
                                description="Exact checks for Rota-Baxter systems and relatives.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("model", help="path to a JSON model document, or - for stdin")
    p.add_argument("--max-degree", type=int, default=2)
    p.add_argument("--arity-bound", type=int, default=3)
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("human", "machine"), default="machine")
    p.add_argument("--mode", default=None,
                   help="aybp|frobenius for aybp; left|right|both for averaging")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        raw = sys.stdin.read() if args.model == "-" else Path(args.model).read_text()
    except OSError as e:
        print(f"error: cannot read model: {e}", file=sys.stderr)
        return 2
    digest = hashlib.sha256(raw.encode()).hexdigest()
    try:
        doc = parse_text(raw)
        rep = run_command(args.command, doc, args, digest)
    except (InputError, TruncationError, ResourceError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except RBSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except MemoryError:
        print("error: out of memory; lower the degree or arity bound", file=sys.stderr)
        return 2
    sys.stdout.write(emit_report(rep, args.format))
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
