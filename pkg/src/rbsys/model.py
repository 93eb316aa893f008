"""Declarative model documents: exact tensors over named bases, stored as JSON.

Layout (every section but ``algebra`` is optional)::

    {
      "algebra":  {"basis": ["e"], "mult": [["e", "e", "e", "1/1"]]},
      "bimodule": {"kind": "adjoint"},
      "modules":  {"N": {"basis": [...], "left": [[a, u, w, v]], "right": [[u, a, w, v]]}},
      "maps":     {"R": [["1/1"]], "S": [["0/1"]]},
      "tensors":  {"r": {"entries": [[i, j, v]]}, "D": {"entries": [[i, j, a, v]]}},
      "series":   [["R1", "S1"], ["R2", "S2"]],
      "homotopy": {"two_term": {...}} or {"ainf": {"degrees": [...], "ops": {...}}},
      "meta":     {"title": "..."}
    }

A ``mult`` entry ``[i, j, k, v]`` means e_i e_j has coefficient v on e_k.  A
left entry ``[a, u, w, v]`` means a·u has coefficient v on w, a right entry
``[u, a, w, v]`` that u·a does.  Indices are basis names or 0-based integers.
A three-index tensor entry ``[i, j, a, v]`` is the coefficient of e_i⊗e_j in
D(e_a).  Maps are dense matrices whose rows index the target.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .algebra import Algebra, Bimodule, canonical_bimodule, validate_model
from .errors import InputError, ModelParseError, ModelSemanticError
from .linalg import fmt, zeros

SECTIONS = ("algebra", "bimodule", "modules", "maps", "tensors", "series", "homotopy", "meta")
MODULE_KINDS = ("adjoint", "coadjoint")
_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$")


@dataclass
class ModelDocument:
    alg: Algebra
    mod: Bimodule | None = None
    module_kind: str | None = None
    modules: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    tensors: dict = field(default_factory=dict)
    series: list = field(default_factory=list)
    homotopy: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def bimodule(self) -> Bimodule:
        """The declared bimodule, defaulting to the adjoint one."""
        return self.mod if self.mod is not None else canonical_bimodule(self.alg, "adjoint")

    def map(self, name: str, shape=None) -> np.ndarray:
        if name not in self.maps:
            raise ModelSemanticError("maps", f"map {name!r} is not defined")
        m = self.maps[name]
        if shape is not None and m.shape != tuple(shape):
            raise ModelSemanticError("maps", f"map {name!r} has shape {m.shape}, expected {tuple(shape)}")
        return m

    def tensor(self, name: str, ndim: int) -> np.ndarray:
        if name not in self.tensors:
            raise ModelSemanticError("tensors", f"tensor {name!r} is not defined")
        t = self.tensors[name]
        if t.ndim != ndim:
            raise ModelSemanticError("tensors", f"tensor {name!r} needs {ndim} indices")
        return t


# ---------------------------------------------------------------------------
# parsing


def _locate(text: str, token: str):
    pos = text.find(token)
    if pos < 0:
        return None, None
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


class _Reader:
    def __init__(self, text: str):
        self.text = text

    def rational(self, x, section: str) -> Fraction:
        if isinstance(x, bool) or not isinstance(x, (int, str)):
            line, col = _locate(self.text, json.dumps(x)) if x is not None else (None, None)
            raise ModelParseError(f"[{section}] {x!r} is not an exact rational", line, col)
        if isinstance(x, int):
            return Fraction(x)
        line, col = _locate(self.text, json.dumps(x))
        if not _RATIONAL.match(x):
            raise ModelParseError(f"[{section}] malformed rational {x!r}", line, col)
        num, _, den = x.partition("/")
        if den and int(den) == 0:
            raise ModelParseError(f"[{section}] zero denominator in {x!r}", line, col)
        return Fraction(int(num), int(den) if den else 1)


def _need(cond, section, message):
    if not cond:
        raise ModelSemanticError(section, message)


def _basis(spec: dict, section: str, default_dim=None, prefix="e") -> list:
    if "basis" in spec:
        names = spec["basis"]
        _need(isinstance(names, list) and all(isinstance(b, str) for b in names),
              section, "basis must be a list of names")
    else:
        dim = spec.get("dim", default_dim)
        _need(isinstance(dim, int) and dim >= 0, section, "needs a basis or a dimension")
        names = [f"{prefix}{i + 1}" for i in range(dim)]
    if "dim" in spec:
        _need(spec["dim"] == len(names), section, "dim does not match the basis length")
    _need(len(set(names)) == len(names), section, "basis names must be distinct")
    return list(names)


def _index(x, names: list, section: str) -> int:
    if isinstance(x, bool):
        raise ModelSemanticError(section, f"bad index {x!r}")
    if isinstance(x, int):
        _need(0 <= x < len(names), section, f"index {x} out of range")
        return x
    _need(isinstance(x, str) and x in names, section, f"unknown basis element {x!r}")
    return names.index(x)


def _entries(rd: _Reader, raw, axes: list, section: str) -> np.ndarray:
    _need(isinstance(raw, list), section, "entries must be a list")
    t = zeros(tuple(len(a) for a in axes))
    for e in raw:
        _need(isinstance(e, list) and len(e) == len(axes) + 1, section,
              f"entry {e!r} needs {len(axes)} indices and a value")
        idx = tuple(_index(x, a, section) for x, a in zip(e[:-1], axes))
        t[idx] = t[idx] + rd.rational(e[-1], section)
    return t


def _module(rd: _Reader, spec, alg: Algebra, section: str):
    """(Bimodule, kind or None)."""
    _need(isinstance(spec, dict), section, "must be an object")
    kind = spec.get("kind")
    if kind is not None:
        _need(kind in MODULE_KINDS, section, f"unknown kind {kind!r}")
        _need(set(spec) == {"kind"}, section, "a kind-only module takes no other keys")
        return canonical_bimodule(alg, kind), kind
    names = _basis(spec, section, prefix="m")
    an = alg.basis_names
    # entries are written (a, u, w) and (u, a, w); stored as [w, a, u] and [w, u, a]
    left = _entries(rd, spec.get("left", []), [an, names, names], section + ".left")
    right = _entries(rd, spec.get("right", []), [names, an, names], section + ".right")
    extra = set(spec) - {"basis", "dim", "left", "right"}
    _need(not extra, section, f"unknown keys {sorted(extra)}")
    return Bimodule(alg, np.transpose(left, (2, 0, 1)), np.transpose(right, (2, 0, 1)),
                    names), None


def _validate(alg, mod, section):
    rep = validate_model(alg, mod)
    if rep.ok:
        return
    name, idx = rep.failing_triples[0]
    if name == "associativity":
        trip = tuple(alg.basis_names[i] for i in idx)
        raise ModelSemanticError("algebra", f"not associative: (e_i e_j) e_k ≠ e_i (e_j e_k) "
                                 f"for (i, j, k) = ({', '.join(trip)})", (name, trip))
    slots = {"left": (alg, alg, mod), "middle": (alg, mod, alg), "right": (mod, alg, alg)}[name]
    trip = tuple(sp.basis_names[i] for sp, i in zip(slots, idx))
    raise ModelSemanticError(section, f"bimodule identity '{name}' fails for "
                             f"({', '.join(trip)})", (name, trip))


def _maps(rd: _Reader, raw) -> dict:
    _need(isinstance(raw, dict), "maps", "must be an object of named matrices")
    out = {}
    for name, rows in raw.items():
        sec = f"maps.{name}"
        _need(isinstance(rows, list) and all(isinstance(r, list) for r in rows), sec,
              "a map is a list of rows")
        widths = {len(r) for r in rows}
        _need(len(widths) <= 1, sec, "rows have different lengths")
        width = widths.pop() if widths else 0
        m = zeros((len(rows), width))
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                m[i, j] = rd.rational(x, sec)
        out[name] = m
    return out


def _tensors(rd: _Reader, raw, alg: Algebra) -> dict:
    _need(isinstance(raw, dict), "tensors", "must be an object of named tensors")
    out = {}
    for name, spec in raw.items():
        sec = f"tensors.{name}"
        _need(isinstance(spec, dict) and "entries" in spec, sec, "needs an entries list")
        entries = spec["entries"]
        k = spec.get("indices")
        if k is None:
            _need(isinstance(entries, list) and entries and isinstance(entries[0], list), sec,
                  "cannot infer the number of indices of an empty tensor")
            k = len(entries[0]) - 1
        _need(k in (2, 3), sec, "tensors have 2 or 3 indices")
        out[name] = _entries(rd, entries, [alg.basis_names] * k, sec)
    return out


def _series(raw, maps: dict) -> list:
    _need(isinstance(raw, list), "series", "must be a list of [R_i, S_i] name pairs")
    out = []
    for term in raw:
        _need(isinstance(term, list) and len(term) == 2 and all(isinstance(x, str) for x in term),
              "series", f"term {term!r} must be a pair of map names")
        for x in term:
            _need(x in maps, "series", f"map {x!r} is not defined")
        out.append(tuple(term))
    return out


def _ainf(rd: _Reader, spec) -> dict:
    from .homotopy import DEFAULT_ARITY, GradedSpace, HomotopyStructure

    sec = "homotopy.ainf"
    _need(isinstance(spec, dict) and "degrees" in spec, sec, "needs degrees")
    degs = spec["degrees"]
    _need(isinstance(degs, list) and all(isinstance(d, int) and not isinstance(d, bool)
                                         for d in degs), sec, "degrees must be integers")
    space = GradedSpace(tuple(degs), tuple(spec["names"]) if "names" in spec else None)
    bound = spec.get("arity_bound", DEFAULT_ARITY)
    _need(isinstance(bound, int) and bound >= 1, sec, "arity_bound must be a positive integer")
    names = list(space.names)
    ops = {}
    for key, raw in spec.get("ops", {}).items():
        _need(key.isdigit() and 1 <= int(key) <= bound, sec, f"bad arity {key!r}")
        k = int(key)
        ops[k] = _entries(rd, raw, [names] * (k + 1), f"{sec}.ops.{key}")
    try:
        h = HomotopyStructure("ainf", space, bound, ops)
    except InputError as e:
        raise ModelSemanticError(sec, str(e)) from None
    bad = h.degree_violations()
    _need(not bad, sec, f"operation entry breaks the degree rule: {bad[0]!r}")
    return {"ainf": h}


def _two_term(spec, doc: ModelDocument) -> dict:
    sec = "homotopy.two_term"
    _need(isinstance(spec, dict), sec, "must be an object")
    out = {"reading": spec.get("reading", "consistent")}
    _need(out["reading"] in ("consistent", "literal"), sec, "reading is consistent or literal")
    pair = spec.get("pair", ["R", "S"])
    _need(isinstance(pair, list) and len(pair) == 2, sec, "pair must name two maps")
    out["pair"] = list(pair)
    for x in pair:
        _need(x in doc.maps, sec, f"map {x!r} is not defined")
    for part in ("M", "N"):
        p = spec.get(part)
        _need(isinstance(p, dict) and {"module", "R", "S"} <= set(p), sec,
              f"{part} needs module, R and S")
        _need(p["module"] in doc.modules, sec, f"module {p['module']!r} is not defined")
        for x in (p["R"], p["S"]):
            _need(x in doc.maps, sec, f"map {x!r} is not defined")
        out[part] = {"module": p["module"], "R": p["R"], "S": p["S"]}
    _need(spec.get("d") in doc.maps, sec, "d must name a map")
    out["d"] = spec["d"]
    return {"two_term": out}


def parse_model(source) -> ModelDocument:
    """Parse a model from a path or from JSON text; validation runs eagerly."""
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        try:
            source = Path(source).read_text()
        except OSError as e:
            raise InputError(f"cannot read model file: {e}") from None
    return parse_text(source)


def parse_text(text: str) -> ModelDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelParseError(e.msg, e.lineno, e.colno) from None
    if not isinstance(raw, dict):
        raise ModelParseError("a model document is a JSON object", 1, 1)
    unknown = sorted(set(raw) - set(SECTIONS))
    _need(not unknown, "document", f"unknown sections {unknown}")
    _need("algebra" in raw, "document", "the algebra section is required")
    rd = _Reader(text)

    a = raw["algebra"]
    _need(isinstance(a, dict), "algebra", "must be an object")
    extra = set(a) - {"basis", "dim", "mult"}
    _need(not extra, "algebra", f"unknown keys {sorted(extra)}")
    names = _basis(a, "algebra")
    mult = _entries(rd, a.get("mult", []), [names] * 3, "algebra.mult")
    # entries are (i, j, k); stored as [k, i, j]
    alg = Algebra(np.transpose(mult, (2, 0, 1)), names)
    _validate(alg, None, "algebra")

    doc = ModelDocument(alg)
    if "bimodule" in raw:
        doc.mod, doc.module_kind = _module(rd, raw["bimodule"], alg, "bimodule")
        _validate(alg, doc.mod, "bimodule")
    mods = raw.get("modules", {})
    _need(isinstance(mods, dict), "modules", "must be an object of named bimodules")
    for name, spec in mods.items():
        sec = f"modules.{name}"
        doc.modules[name], kind = _module(rd, spec, alg, sec)
        _validate(alg, doc.modules[name], sec)
    doc.maps = _maps(rd, raw.get("maps", {}))
    doc.tensors = _tensors(rd, raw.get("tensors", {}), alg)
    doc.series = _series(raw.get("series", []), doc.maps)
    hom = raw.get("homotopy", {})
    _need(isinstance(hom, dict) and len(hom) <= 1 and set(hom) <= {"ainf", "two_term"},
          "homotopy", "expects one of ainf or two_term")
    if "ainf" in hom:
        doc.homotopy = _ainf(rd, hom["ainf"])
    elif "two_term" in hom:
        doc.homotopy = _two_term(hom["two_term"], doc)
    meta = raw.get("meta", {})
    _need(isinstance(meta, dict) and all(isinstance(v, str) for v in meta.values()),
          "meta", "meta values must be strings")
    doc.meta = dict(meta)
    return doc


# ---------------------------------------------------------------------------
# canonical emission


def _sparse(t: np.ndarray, axes: list, order=None) -> list:
    """Nonzero entries as [name, ..., "p/q"], written in ``order`` of the stored axes."""
    order = order or list(range(t.ndim))
    out = []
    perm = np.transpose(t, order)
    for idx in np.ndindex(*perm.shape):
        v = perm[idx]
        if v != 0:
            out.append([axes[o][i] for o, i in zip(order, idx)] + [fmt(v)])
    return out


def _module_json(mod: Bimodule, kind) -> dict:
    if kind is not None:
        return {"kind": kind}
    an, mn = mod.algebra.basis_names, mod.basis_names
    return {"basis": list(mn),
            "left": _sparse(mod.left, [mn, an, mn], [1, 2, 0]),
            "right": _sparse(mod.right, [mn, mn, an], [1, 2, 0])}


def model_to_json(doc: ModelDocument) -> dict:
    alg = doc.alg
    names = alg.basis_names
    out = {"algebra": {"basis": list(names), "mult": _sparse(alg.mult, [names] * 3, [1, 2, 0])}}
    if doc.mod is not None:
        out["bimodule"] = _module_json(doc.mod, doc.module_kind)
    if doc.modules:
        out["modules"] = {k: _module_json(doc.modules[k], None) for k in sorted(doc.modules)}
    if doc.maps:
        out["maps"] = {k: [[fmt(x) for x in row] for row in doc.maps[k]] for k in sorted(doc.maps)}
    if doc.tensors:
        out["tensors"] = {k: {"indices": doc.tensors[k].ndim,
                              "entries": _sparse(doc.tensors[k], [names] * doc.tensors[k].ndim)}
                          for k in sorted(doc.tensors)}
    if doc.series:
        out["series"] = [list(t) for t in doc.series]
    if "ainf" in doc.homotopy:
        h = doc.homotopy["ainf"]
        hn = list(h.space.names)
        out["homotopy"] = {"ainf": {
            "degrees": list(h.space.degrees), "names": hn, "arity_bound": h.arity_bound,
            "ops": {str(k): _sparse(h.ops[k], [hn] * (k + 1)) for k in sorted(h.ops)}}}
    elif "two_term" in doc.homotopy:
        t = doc.homotopy["two_term"]
        out["homotopy"] = {"two_term": {"M": t["M"], "N": t["N"], "d": t["d"],
                                        "pair": t["pair"], "reading": t["reading"]}}
    if doc.meta:
        out["meta"] = {k: doc.meta[k] for k in sorted(doc.meta)}
    return out


def _dump(x, indent: int) -> str:
    pad = "  " * (indent + 1)
    if isinstance(x, dict):
        if not x:
            return "{}"
        body = ",\n".join(f"{pad}{json.dumps(k)}: {_dump(v, indent + 1)}" for k, v in x.items())
        return "{\n" + body + "\n" + "  " * indent + "}"
    if isinstance(x, list) and any(isinstance(v, (list, dict)) for v in x):
        body = ",\n".join(pad + _dump(v, indent + 1) for v in x)
        return "[\n" + body + "\n" + "  " * indent + "]"
    return json.dumps(x, ensure_ascii=False)


def emit_model(doc: ModelDocument) -> str:
    """Canonical text: fixed section order, sorted names, lowest-terms rationals."""
    return _dump(model_to_json(doc), 0) + "\n"
