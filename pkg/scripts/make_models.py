"""Regenerate the sample documents under models/ in canonical form."""
import random
import sys
from pathlib import Path

import numpy as np

from rbsys.algebra import canonical_bimodule
from rbsys.deformation import extend_step, obstruction_cocycle
from rbsys.generators import catalog, cocycle_basis, first_order_family, nilpotent_aybp, valid_instance
from rbsys.algebra import jackson_example
from rbsys.linalg import identity, zeros
from rbsys.model import ModelDocument, emit_model
from rbsys.rbs import RBSPair, gauge_transform

OUT = Path(__file__).resolve().parent.parent / "models"


def m(rows):
    return np.array(rows, dtype=object).reshape(len(rows), -1)


def write(name, doc):
    (OUT / f"{name}.json").write_text(emit_model(doc))


def main():
    cat = catalog()
    unit = cat["unit1"]
    adj = canonical_bimodule(unit, "adjoint")

    write("idempotent_identity", ModelDocument(
        unit, adj, "adjoint", maps={"R": m([[1]]), "S": m([[1]])},
        meta={"about": "e^2 = e with R = S = id; not a Rota-Baxter system"}))
    write("idempotent_zero", ModelDocument(
        unit, adj, "adjoint", maps={"R": m([[0]]), "S": m([[0]])},
        meta={"about": "e^2 = e with the zero system"}))

    jm = jackson_example(3, 2)
    write("jackson", ModelDocument(
        jm.alg, canonical_bimodule(jm.alg, "adjoint"), "adjoint", maps={"R": jm.J, "S": jm.S},
        meta={"about": "truncated Jackson integral on Q[x]/(x^4), q = 2, with S = sigma J"}))

    alg, r, s = nilpotent_aybp()
    write("nilpotent_aybp", ModelDocument(
        alg, tensors={"r": r, "s": s},
        meta={"about": "r = e12 (x) e12, s = e13 (x) e13 on strictly upper triangular 3x3"}))

    # scalar two-term example; (R_M, S_M) = (2, 0) is the consistent solution
    two = ModelDocument(unit, modules={"M": adj, "N": adj},
                        maps={"R": m([[2]]), "S": m([[0]]), "RM": m([[2]]), "SM": m([[0]]),
                              "d": m([[1]])},
                        meta={"about": "M --d--> A + N over e^2 = e, with R = 2, S = 0"})
    two.homotopy = {"two_term": {"M": {"module": "M", "R": "RM", "S": "SM"},
                                 "N": {"module": "N", "R": "RM", "S": "SM"},
                                 "d": "d", "pair": ["R", "S"], "reading": "consistent"}}
    write("two_term", two)

    split = cat["split2"]
    write("quadri_split", ModelDocument(
        split, maps={"P": m([[1, 0], [0, 0]]), "Q": m([[0, 0], [0, 0]]),
                     "R": m([[0, 0], [0, 0]]), "S": m([[0, 0], [0, -1]])},
        meta={"about": "two commuting diagonal systems on e^2 = e, f^2 = f, ef = fe = 0"}))

    poly = cat["poly3"]
    write("averaging_identity", ModelDocument(
        poly, maps={"R": identity(3), "S": identity(3)},
        meta={"about": "R = S = id is a two-sided averaging system on Q[x]/(x^3)"}))

    # deformation: θ1 a random 1-cocycle; one extensible case with a nonzero
    # obstruction and one obstructed case
    rng = random.Random(5)
    wanted = {"deformation": (False, True), "deformation_obstructed": (False, False)}
    while wanted:
        inst = valid_instance(rng, 2)
        ds = first_order_family(rng, inst.alg, inst.mod, inst.pair)
        if ds is None:
            continue
        key = (obstruction_cocycle(ds, inst.alg, inst.mod).is_zero(),
               extend_step(ds, inst.alg, inst.mod) is not None)
        for name, want in list(wanted.items()):
            if key == want:
                del wanted[name]
                t1 = ds.term(1)
                write(name, ModelDocument(
                    inst.alg, inst.mod, None,
                    maps={"R": inst.pair.R, "S": inst.pair.S, "R1": t1.R, "S1": t1.S},
                    series=[("R1", "S1")],
                    meta={"about": f"first-order deformation by a 1-cocycle on {inst.label}"}))
                break

    # gauge: R(a) = (2 + x + 2x^2)a on Q[x]/(x^3), moved by a 1-cocycle on A + A
    adj3 = canonical_bimodule(poly, "adjoint")
    pair = RBSPair(m([[2, 1, 2], [0, 0, 0], [0, 0, 0]]), zeros((3, 3)))
    B = cocycle_basis(poly, adj3)[0]
    assert gauge_transform(poly, adj3, pair, B) is not None
    write("gauge", ModelDocument(
        poly, maps={"R": pair.R, "S": pair.S, "B": B},
        meta={"about": "a rank-one system on Q[x]/(x^3) and a 1-cocycle B on A + A"}))

    jm2 = jackson_example(2, 2)
    write("reduce", ModelDocument(
        jm2.alg, maps={"R": jm2.J, "S": jm2.S, "sub_B": identity(3),
                       "sub_E": m([[0], [0], [1]]), "sub_N": identity(3)},
        meta={"about": "Jackson system on Q[x]/(x^3) reduced along the ideal (x^2)"}))


if __name__ == "__main__":
    sys.exit(main())
