import random

import numpy as np
import pytest

from rbsys import generators
from rbsys.algebra import canonical_bimodule
from rbsys.cohomology import Cochain, cohomology_dimensions, coboundary_solve, hochschild_differential, rbs_differential
from rbsys.deformation import (DeformationSeries, bracket_form, deformation_defects, equivalence_first_order_check,
                               extend_step, is_deformation, obstruction_cocycle, order_defect)
from rbsys.errors import InputError, NotRotaBaxterError
from rbsys.linalg import as_array, is_zero, zeros
from rbsys.rbs import RBSPair


def families(seed, count, dim=3):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        inst = generators.valid_instance(rng, dim)
        ds = generators.first_order_family(rng, inst.alg, inst.mod, inst.pair)
        if ds is not None:
            out.append((inst, ds))
    return out


def test_constant_series_is_deformation():
    rng = random.Random(1)
    for _ in range(10):
        inst = generators.valid_instance(rng, 3)
        z = RBSPair(zeros(inst.pair.R.shape), zeros(inst.pair.S.shape))
        ds = DeformationSeries(inst.pair, (z, z))
        assert is_deformation(ds, inst.alg, inst.mod)


def test_shape_mismatch():
    with pytest.raises(InputError):
        DeformationSeries(RBSPair(zeros((2, 2)), zeros((2, 2))), (RBSPair(zeros((1, 1)), zeros((1, 1))),))


def test_cocycle_terms_satisfy_first_order():
    for inst, ds in families(2, 15):
        d = order_defect(ds, 1, inst.alg, inst.mod)
        assert d.vanishes and d.witness() is None


def test_non_cocycle_term_gives_witness():
    e = generators.catalog()["unit1"]
    mod = canonical_bimodule(e, "adjoint")
    ds = DeformationSeries(RBSPair(as_array([[2]]), as_array([[0]])),
                           (RBSPair(as_array([[0]]), as_array([[1]])),))
    d = order_defect(ds, 1, e, mod)
    assert not d.vanishes
    assert d.witness()[0] == "defect_R"
    with pytest.raises(NotRotaBaxterError):
        obstruction_cocycle(ds, e, mod)


def test_defect_equals_minus_bracket_form():
    rng = random.Random(3)
    for _ in range(12):
        inst = generators.random_instance(rng, 2)
        shape = inst.pair.R.shape
        terms = tuple(RBSPair(generators.rand_matrix(rng, *shape), generators.rand_matrix(rng, *shape))
                      for _ in range(2))
        ds = DeformationSeries(inst.pair, terms)
        for n, d in enumerate(deformation_defects(ds, inst.alg, inst.mod)):
            b = bracket_form(ds, n, inst.alg, inst.mod)
            assert is_zero(d.defect_R + b.P) and is_zero(d.defect_S + b.Q)


def test_obstruction_is_cocycle_and_extension_round_trip():
    checked = extended = 0
    for inst, ds in families(4, 20, dim=2):
        ob = obstruction_cocycle(ds, inst.alg, inst.mod)
        assert ob.arity == 2
        assert rbs_differential(inst.pair, ob, inst.alg, inst.mod).is_zero()
        nxt = extend_step(ds, inst.alg, inst.mod)
        solvable = coboundary_solve(inst.pair, ob, inst.alg, inst.mod) is not None
        assert (nxt is not None) == solvable
        if cohomology_dimensions(inst.pair, inst.alg, inst.mod, 2)[2] == 0:
            assert nxt is not None
        if nxt is not None:
            assert is_deformation(ds.extended(nxt), inst.alg, inst.mod)
            extended += 1
        checked += 1
    assert extended >= 5


def test_polynomial_family_is_exact():
    rng = random.Random(5)
    found = 0
    for name, alg in generators.catalog().items():
        mod = canonical_bimodule(alg, "adjoint")
        fam = generators.polynomial_family(rng, alg, mod)
        if fam is None:
            continue
        ds = DeformationSeries(fam[0], fam[1:])
        assert is_deformation(ds, alg, mod), name
        found += 1
    assert found >= 2


def test_equivalence_first_order():
    rng = random.Random(6)
    for inst, ds in families(7, 10, dim=2):
        a, mod, pair = inst.alg, inst.mod, inst.pair
        za, zb = zeros(a.dim), zeros(a.dim)
        assert equivalence_first_order_check(ds, ds, za, zb, a, mod)
        x = generators.rand_matrix(rng, a.dim, 1)[:, 0]
        y = generators.rand_matrix(rng, a.dim, 1)[:, 0]
        delta = hochschild_differential(pair, Cochain(0, x, y), a, mod)
        t1 = ds.term(1)
        ds2 = DeformationSeries(pair, (RBSPair(t1.R - delta.P, t1.S - delta.Q),))
        assert equivalence_first_order_check(ds, ds2, x, y, a, mod)
        if not delta.is_zero():
            assert not equivalence_first_order_check(ds, ds2, za, zb, a, mod)


def test_equivalence_input_errors():
    inst, ds = families(8, 1, dim=2)[0]
    other = DeformationSeries(RBSPair(inst.pair.R + 1, inst.pair.S), ds.terms)
    z = zeros(inst.alg.dim)
    with pytest.raises(InputError):
        equivalence_first_order_check(ds, other, z, z, inst.alg, inst.mod)
    with pytest.raises(InputError):
        equivalence_first_order_check(DeformationSeries(inst.pair), ds, z, z, inst.alg, inst.mod)
