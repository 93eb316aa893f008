"""Acceptance criteria 1-11, each timed against its limit.

``pytest tests/test_acceptance.py`` prints one line per criterion in the
terminal summary; running this file directly does the same.
"""
import hashlib
import random
import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path

import numpy as np

from rbsys import generators
from rbsys.algebra import Algebra, Bimodule, canonical_bimodule, validate_model
from rbsys.cli import main as cli_main
from rbsys.cohomology import (Cochain, DendCochain, cochain_dim, cohomology_dimensions, coboundary_solve, dend_complex,
                              derived_bracket, hochschild_differential, mc_defect, oracle_bracket, rbs_differential,
                              theta_map)
from rbsys.deformation import DeformationSeries, extend_step, is_deformation, obstruction_cocycle
from rbsys.homotopy import (HomotopyRBS, ainf_bimodule_from_classical, ainf_collapse, ainf_from_algebra,
                            dendinf_from_binary, dendinf_from_grbs, homotopy_axiom_defect, homotopy_grbs_defect,
                            quadinf_from_binary, rbs_on_dendinf_defect, two_term_builder)
from rbsys.linalg import as_array, is_zero, zeros
from rbsys.loday import (BinaryStructure, axiom_check, commuting_rbs_quadri, dendriform_halves,
                         dialgebra_from_averaging, rbs_on_dendriform_defect)
from rbsys.rbs import RBSPair, graph_subalgebra_check, grbs_defect, induce_structures, nijenhuis_lift_check
from rbsys.yang_baxter import (CovariantBialgebra, aybp_defect, averaging_defect, compatible_prelie,
                               covariant_bialgebra_check, perturbation_check, quasitriangular_build,
                               rbs_from_tensors, skew_aybp_grbs_check)

MODELS = Path(__file__).resolve().parent.parent / "models"
RESULTS = {}


@contextmanager
def criterion(num, title, limit):
    info = {}
    t0 = time.perf_counter()
    ok = False
    try:
        yield info
        ok = True
    finally:
        elapsed = time.perf_counter() - t0
        RESULTS[num] = (title, ok and elapsed < limit, elapsed, limit, info)
    assert elapsed < limit, f"criterion {num} took {elapsed:.1f} s (limit {limit} s)"


def summary_lines():
    out = []
    for num in sorted(RESULTS):
        title, ok, elapsed, limit, info = RESULTS[num]
        extra = ", ".join(f"{k}={v}" for k, v in info.items())
        lim = f" < {limit} s" if limit != float("inf") else ""
        out.append(f"criterion {num:>2} {'PASS' if ok else 'FAIL'}  {title} "
                   f"({elapsed:.1f} s{lim}{'; ' + extra if extra else ''})")
    return out


def rand_cochain(rng, k, a, m):
    v = generators.rand_matrix(rng, cochain_dim(k, a, m), 1, -1, 1, 0.4)[:, 0]
    return Cochain.from_vector(v, k, a, m)


def mixed_instances(seed, count, max_dim=3):
    """Valid, random and searched (R, S both nonzero) instances in rotation."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        kind = len(out) % 3
        if kind < 2:
            out.append(generators.random_instance(rng, max_dim, valid=kind == 0))
            continue
        name, alg = generators.random_algebra(rng, max_dim)
        _, mod = generators.random_module(rng, alg)
        if mod.dim > max_dim:
            mod = canonical_bimodule(alg, "adjoint")
        pair = generators.searched_pair(rng, alg, mod, 200,
                                        lambda p: not is_zero(p.R) and not is_zero(p.S))
        if pair is not None:
            out.append(generators.Instance(f"{name}/searched", alg, mod, pair))
    return out


# ---------------------------------------------------------------------------


def test_c01_four_way_equivalence():
    with criterion(1, "four-way equivalence", 30) as info:
        insts = mixed_instances(101, 300)
        verdicts = {True: 0, False: 0}
        for inst in insts:
            a, m, p = inst.alg, inst.mod, inst.pair
            assert a.dim <= 3 and m.dim <= 3
            flags = {grbs_defect(a, m, p).is_rbs, graph_subalgebra_check(a, m, p),
                     nijenhuis_lift_check(a, m, p), mc_defect(p, a, m).is_zero()}
            assert len(flags) == 1, inst.label
            verdicts[flags.pop()] += 1
        assert verdicts[True] >= 100 and verdicts[False] >= 50
        info.update(instances=len(insts), rbs=verdicts[True], non_rbs=verdicts[False])


def test_c02_bracket_oracle():
    with criterion(2, "explicit bracket vs semidirect oracle", 60) as info:
        rng = random.Random(102)
        pairs = jac = 0
        while pairs < 120:
            inst = generators.random_instance(rng, 2)
            a, mod = inst.alg, inst.mod
            p, q = rng.randint(0, 2), rng.randint(0, 2)
            c1, c2 = rand_cochain(rng, p, a.dim, mod.dim), rand_cochain(rng, q, a.dim, mod.dim)
            b = derived_bracket(c1, c2, a, mod)
            assert b.equals(oracle_bracket(c1, c2, a, mod))
            assert b.equals(derived_bracket(c2, c1, a, mod).scaled(-(-1) ** (p * q)))
            pairs += 1
            if p + q <= 2:
                r = rng.randint(0, 1)
                c3 = rand_cochain(rng, r, a.dim, mod.dim)
                lhs = derived_bracket(c1, derived_bracket(c2, c3, a, mod), a, mod)
                rhs = (derived_bracket(derived_bracket(c1, c2, a, mod), c3, a, mod)
                       + derived_bracket(c2, derived_bracket(c1, c3, a, mod), a, mod).scaled((-1) ** (p * q)))
                assert lhs.equals(rhs)
                jac += 1
        info.update(pairs=pairs, jacobi_triples=jac)


def test_c03_differentials():
    with criterion(3, "d² = 0, δ² = 0, δ_π² = 0, d = (−1)ⁿ δ", 60) as info:
        rng = random.Random(103)
        count = 0
        for _ in range(12):
            inst = generators.valid_instance(rng, 3)
            a, mod, pair = inst.alg, inst.mod, inst.pair
            for k in range(4):
                if cochain_dim(k + 2, a.dim, mod.dim) > 2000:
                    continue
                c = rand_cochain(rng, k, a.dim, mod.dim)
                d1 = rbs_differential(pair, c, a, mod)
                h1 = hochschild_differential(pair, c, a, mod)
                assert d1.equals(h1.scaled((-1) ** k))
                assert rbs_differential(pair, d1, a, mod).is_zero()
                assert hochschild_differential(pair, h1, a, mod).is_zero()
                count += 1
            cx = dend_complex(induce_structures(a, mod, pair).dendriform)
            n = mod.dim
            for k in (1, 2, 3):
                if n ** (k + 2) > 300:
                    continue
                f = DendCochain(k, np.stack([generators.rand_matrix(rng, n, n ** k, -1, 1, 0.5).reshape((n,) * (k + 1))
                                             for _ in range(k)]))
                assert cx.differential(cx.differential(f)).is_zero()
                count += 1
        info.update(checks=count)


def test_c04_theta_chain_map():
    with criterion(4, "Θ chain map and Θ₁(R,S) = π_M", 30) as info:
        rng = random.Random(104)
        n_inst = 0
        while n_inst < 50:
            inst = generators.valid_instance(rng, 2)
            a, mod, pair = inst.alg, inst.mod, inst.pair
            dend = induce_structures(a, mod, pair).dendriform
            th = theta_map(Cochain.from_pair(pair), pair, a, mod)
            assert is_zero(th.component(1) - dend.tables["prec"])
            assert is_zero(th.component(2) - dend.tables["succ"])
            cx = dend_complex(dend)
            for k in range(3):
                c = rand_cochain(rng, k, a.dim, mod.dim)
                left = theta_map(rbs_differential(pair, c, a, mod).scaled((-1) ** k), pair, a, mod)
                assert left.equals(cx.differential(theta_map(c, pair, a, mod)))
            n_inst += 1
        info.update(instances=n_inst)


def _averaging_instances(rng):
    out = []
    for name, alg in generators.catalog().items():
        if alg.dim > 3:
            continue
        adj = canonical_bimodule(alg, "adjoint")
        ident = np.identity(alg.dim, dtype=object)
        out.append((alg, adj, RBSPair(as_array(ident), as_array(ident))))
        for _ in range(300):
            p = RBSPair(generators.rand_matrix(rng, alg.dim, alg.dim, -1, 1, 0.4),
                        generators.rand_matrix(rng, alg.dim, alg.dim, -1, 1, 0.4))
            if averaging_defect(alg, adj, p).passed and not (is_zero(p.R) and is_zero(p.S)):
                out.append((alg, adj, p))
                break
    return out


def _commuting_instances(rng):
    out = []
    for name, alg in generators.catalog().items():
        if alg.dim > 3:
            continue
        adj = canonical_bimodule(alg, "adjoint")
        base = generators.searched_pair(rng, alg, adj, 300) or RBSPair(zeros((alg.dim,) * 2), zeros((alg.dim,) * 2))
        ident = as_array(np.identity(alg.dim, dtype=object))
        z = zeros((alg.dim, alg.dim))
        out.append((alg, base, RBSPair(2 * ident, z)))
        out.append((alg, RBSPair(z, -3 * ident), base))
        other = generators.searched_pair(
            rng, alg, adj, 300,
            lambda p: all(is_zero(X.dot(Y) - Y.dot(X)) for X in (base.R, base.S) for Y in (p.R, p.S)))
        if other is not None:
            out.append((alg, base, other))
    return out


def test_c05_induced_structures():
    with criterion(5, "induced dendriform, dialgebra and quadri structures", 30) as info:
        rng = random.Random(105)
        insts = [i for i in mixed_instances(205, 90) if grbs_defect(i.alg, i.mod, i.pair).is_rbs]
        for inst in insts:
            ind = induce_structures(inst.alg, inst.mod, inst.pair)
            assert axiom_check(ind.dendriform).passed
            assert axiom_check(ind.assoc).passed
            assert ind.morphism_R and ind.morphism_S
        avg = _averaging_instances(rng)
        for alg, mod, pair in avg:
            assert axiom_check(dialgebra_from_averaging(alg, mod, pair)).passed
        com = _commuting_instances(rng)
        for alg, pq, rs in com:
            res = commuting_rbs_quadri(alg, pq, rs)
            assert res.commute and res.intermediate_rbs
            assert axiom_check(res.quadri).passed
            for half in dendriform_halves(res.quadri):
                assert axiom_check(half).passed
        assert len(insts) >= 50 and len(avg) >= 10 and len(com) >= 15
        info.update(rbs=len(insts), averaging=len(avg), commuting=len(com))


def test_c06_deformation():
    with criterion(6, "obstruction cocycles and extension", 60) as info:
        rng = random.Random(106)
        order1 = order2 = extended = 0
        tries = 0
        while order1 < 25 and tries < 200:
            tries += 1
            inst = generators.valid_instance(rng, 2)
            a, mod, pair = inst.alg, inst.mod, inst.pair
            ds = generators.first_order_family(rng, a, mod, pair)
            if ds is None:
                continue
            h2 = cohomology_dimensions(pair, a, mod, 2)[2]
            for series in (ds,):
                while series is not None and series.order <= 2:
                    assert is_deformation(series, a, mod)
                    ob = obstruction_cocycle(series, a, mod)
                    assert rbs_differential(pair, ob, a, mod).is_zero()
                    nxt = extend_step(series, a, mod)
                    assert (nxt is not None) == (coboundary_solve(pair, ob, a, mod) is not None)
                    if h2 == 0:
                        assert nxt is not None
                    if series.order == 1:
                        order1 += 1
                    else:
                        order2 += 1
                    if nxt is None:
                        break
                    series = series.extended(nxt)
                    assert is_deformation(series, a, mod)
                    extended += 1
        for name, alg in generators.catalog().items():
            mod = canonical_bimodule(alg, "adjoint")
            fam = generators.polynomial_family(rng, alg, mod)
            if fam is None:
                continue
            series = DeformationSeries(fam[0], fam[1:])
            assert is_deformation(series, alg, mod)
            assert rbs_differential(fam[0], obstruction_cocycle(series, alg, mod), alg, mod).is_zero()
            order2 += 1
        assert order1 >= 20 and order2 >= 10
        info.update(order1=order1, order2=order2, extensions=extended)


def test_c07_yang_baxter():
    with criterion(7, "skew AYBP ⇔ coadjoint RBS, nilpotent example", 30) as info:
        rng = random.Random(107)
        small = [a for a in generators.catalog().values() if a.dim <= 3]
        passes = 0
        for t in range(200):
            alg = small[t % len(small)]
            r = generators.random_tensor2(rng, alg.dim, True, rng.choice([0.2, 0.5]))
            s = generators.random_tensor2(rng, alg.dim, True, rng.choice([0.2, 0.5]))
            rep = skew_aybp_grbs_check(r, s, alg)
            assert rep.agree
            passes += rep.aybp_pass
        alg, r, s = generators.nilpotent_aybp()
        assert aybp_defect(r, s, alg).passed
        pair = rbs_from_tensors(r, s, alg)
        assert grbs_defect(alg, canonical_bimodule(alg, "adjoint"), pair).is_rbs
        cb = quasitriangular_build(r, s, alg)
        rep = covariant_bialgebra_check(cb)
        assert rep.passed and rep.compatible
        assert axiom_check(compatible_prelie(cb)).passed
        assert 10 <= passes <= 190
        info.update(skew_pairs=200, aybp_pass=passes)


def test_c08_perturbation():
    with criterion(8, "perturbation criterion ⇔ direct check", 60) as info:
        rng = random.Random(108)
        small = [a for a in generators.catalog().values() if a.dim <= 3]
        zero_base = quasi = 0
        verdicts = {True: 0, False: 0}
        t = 0
        while zero_base + quasi < 120:
            alg = small[t % len(small)]
            t += 1
            r = generators.random_tensor2(rng, alg.dim, density=0.3)
            s = generators.random_tensor2(rng, alg.dim, density=0.3)
            if t % 2:
                base = CovariantBialgebra.zero(alg)
                zero_base += 1
            else:
                got = generators.searched_aybp(rng, alg)
                if got is None:
                    continue
                base = quasitriangular_build(*got, alg)
                if rng.random() < 0.5:
                    r, s = got
                quasi += 1
            p = perturbation_check(base, r, s)
            assert p.agree
            verdicts[p.direct_check] += 1
        assert verdicts[True] and verdicts[False]
        info.update(zero_base=zero_base, quasitriangular=quasi, perturbed_pass=verdicts[True])


def test_c09_jackson():
    with criterion(9, "Jackson model d = 3, q = 2", 10) as info:
        inst = generators.jackson_instance(3, 2)
        J = inst.pair.R
        assert (J[1, 0], J[2, 1], J[3, 2]) == (1, Fraction(1, 3), Fraction(1, 7))
        assert sum(1 for x in J.flat if x) == 3
        assert cli_main(["check-rbs", str(MODELS / "jackson.json")]) == 0
        dims = [cohomology_dimensions(inst.pair, inst.alg, inst.mod, 2) for _ in range(2)]
        assert dims[0] == dims[1] == [5, 5, 5]
        info.update(H=dims[0])


def _random_tables(rng, n, names):
    return {k: generators.rand_matrix(rng, n, n * n, -1, 1, 0.3).reshape(n, n, n) for k in names}


def test_c10_homotopy_collapse():
    with criterion(10, "degree-0 homotopy checks = classical checks; two-term example", 120) as info:
        rng = random.Random(110)
        shared = 0
        agree = {True: 0, False: 0}
        for inst in mixed_instances(210, 110, 2):
            a, mod, pair = inst.alg, inst.mod, inst.pair
            h = ainf_from_algebra(a, 3)
            assert homotopy_axiom_defect(h, 3).passed == validate_model(a).associative
            b = ainf_bimodule_from_classical(h, mod)
            assert homotopy_axiom_defect(b, 3).passed == (validate_model(a, mod).bimodule is True)
            hrep = homotopy_grbs_defect(h, b, HomotopyRBS(pair.R, pair.S), 3)
            classical = grbs_defect(a, mod, pair).is_rbs
            assert hrep.passed == classical
            agree[classical] += 1
            if classical:
                d = dendinf_from_grbs(h, b, HomotopyRBS(pair.R, pair.S), 3)
                assert homotopy_axiom_defect(ainf_collapse(d), 3).passed
            # random binary data of every kind
            n = rng.randint(1, 2)
            c = generators.rand_matrix(rng, n, n * n, -1, 1, 0.5).reshape(n, n, n)
            assert homotopy_axiom_defect(ainf_from_algebra(Algebra(c), 3), 3).passed == validate_model(Algebra(c)).associative
            ab = Algebra(c)
            L = generators.rand_matrix(rng, n, n * n, -1, 1, 0.4).reshape(n, n, n)
            Rt = generators.rand_matrix(rng, n, n * n, -1, 1, 0.4).reshape(n, n, n)
            if validate_model(ab).associative:
                m2 = Bimodule(ab, L, Rt)
                assert (homotopy_axiom_defect(ainf_bimodule_from_classical(ainf_from_algebra(ab, 3), m2), 3).passed
                        == (validate_model(ab, m2).bimodule is True))
            dd = BinaryStructure("dendriform", _random_tables(rng, n, ("prec", "succ")))
            assert homotopy_axiom_defect(dendinf_from_binary(dd), 3).passed == axiom_check(dd).passed
            qq = BinaryStructure("quadri", _random_tables(rng, n, ("nw", "ne", "sw", "se")))
            assert homotopy_axiom_defect(quadinf_from_binary(qq), 3).passed == axiom_check(qq).passed
            if classical:
                dend = induce_structures(a, mod, pair).dendriform
                X = generators.rand_matrix(rng, mod.dim, mod.dim, -1, 1, 0.5)
                Y = generators.rand_matrix(rng, mod.dim, mod.dim, -1, 1, 0.5)
                for P, Q in ((X, Y), (zeros(X.shape), zeros(X.shape))):
                    assert (rbs_on_dendinf_defect(dendinf_from_binary(dend, 3), HomotopyRBS(P, Q), 3).passed
                            == rbs_on_dendriform_defect(dend, P, Q).is_rbs)
            shared += 1
        e = generators.catalog()["unit1"]
        adj = canonical_bimodule(e, "adjoint")
        base = RBSPair(as_array([[2]]), as_array([[0]]))
        for lam, mu in [(0, 0), (2, 0), (0, -2)]:
            data = (adj, as_array([[lam]]), as_array([[mu]]))
            res = two_term_builder(e, base, data, data, as_array([[1]]), arity_bound=3)
            assert homotopy_axiom_defect(res.ainf, 3).passed
            assert homotopy_grbs_defect(res.ainf, res.bimodule, res.pair, 3, check_structures=True).passed
        assert agree[True] >= 20 and agree[False] >= 20
        info.update(shared_instances=shared, rbs=agree[True], non_rbs=agree[False], two_term=3)


def test_c11_determinism():
    with criterion(11, "byte-identical machine reports", float("inf")) as info:
        runs = []
        for _ in range(2):
            outs = []
            for model, cmd in [("jackson", "cohomology"), ("idempotent_identity", "characterize"),
                               ("deformation", "deform"), ("nilpotent_aybp", "perturb"),
                               ("two_term", "homotopy"), ("quadri_split", "quadri")]:
                p = subprocess.run([sys.executable, "-m", "rbsys", cmd, str(MODELS / f"{model}.json"),
                                    "--seed", "7"], capture_output=True)
                outs.append((p.returncode, hashlib.sha256(p.stdout).hexdigest()))
            runs.append(outs)
        assert runs[0] == runs[1]
        info.update(reports=len(runs[0]))


if __name__ == "__main__":
    import pytest

    code = pytest.main([__file__, "-q"])
    sys.exit(code)
