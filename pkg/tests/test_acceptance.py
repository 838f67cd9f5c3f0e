"""Exit criteria. Each test records one PASS/FAIL line for the summary."""

import io
import itertools
import time

import numpy as np

from paramcat.circuit import compile_circuit
from paramcat.cli import main
from paramcat.core import Param, ParamSpace, check_equiv, const_at
from paramcat.laws import check_laws
from paramcat.lattice import load_spec, param_graph
from paramcat.matrix import (AffineExpr, MatrixBackend,
                             SwappedTensorBackend, approx_eq, gate)

from conftest import HALF_PI, IX

IX_TENSOR_I = np.array([[0, 0, 1j, 0],
                        [0, 0, 0, 1j],
                        [1j, 0, 0, 0],
                        [0, 1j, 0, 0]])


def test_1_rx_sequence(criterion):
    start = time.perf_counter()
    seq = compile_circuit("params 2\nrx(t0);rx(2*t1)")
    ok_eval, dev, _ = approx_eq(seq(HALF_PI), IX, 1e-12)
    verdict = check_equiv(seq, compile_circuit("params 2\nrx(t0+2*t1)"),
                          samples=100, seed=0, tol=1e-10)
    elapsed = time.perf_counter() - start
    passed = ok_eval and verdict.equivalent and elapsed < 1.0
    criterion(1, "rx(t0);rx(2*t1) at (pi/2,0) = iX, equivalent to "
              "rx(t0+2*t1)", passed,
              f"(dev={dev:.1e}, {verdict.status}, {elapsed:.3f}s)")
    assert passed


def test_2_rx_parallel(criterion):
    par = compile_circuit("params 2\nrx(t0)|rx(2*t1)")
    ok, dev, _ = approx_eq(par(HALF_PI), IX_TENSOR_I, 1e-12)
    criterion(2, "rx(t0)|rx(2*t1) at (pi/2,0) = iX (x) I", ok,
              f"(dev={dev:.1e})")
    assert ok


def test_3_flip_negates_rz(criterion):
    verdict = check_equiv(compile_circuit("params 1\nx;rz(t0);x"),
                          compile_circuit("params 1\nrz(0-t0)"),
                          samples=100, seed=0, tol=1e-10)
    criterion(3, "x;rz(t0);x equivalent to rz(0-t0)", verdict.equivalent,
              f"(max_dev={verdict.max_deviation:.1e})")
    assert verdict.equivalent


def test_4_const_at(criterion):
    cat = Param(ParamSpace(2), MatrixBackend())
    fixed = const_at(gate(cat, "rx", AffineExpr.param(0)), HALF_PI)
    rng = np.random.default_rng(2024)
    devs = [approx_eq(fixed(cat.space.sample(rng)), IX, 1e-12)[1]
            for _ in range(20)]
    ok = max(devs) <= 1e-12
    criterion(4, "const_at(R_X(t0), (pi/2,0)) = iX at 20 random points", ok,
              f"(max_dev={max(devs):.1e})")
    assert ok


def test_5_lattice_entailment(criterion, samples_dir):
    loops = [(x, x) for x in "ABCD"]
    expected = {
        "top": sorted(loops + [("A", "B"), ("A", "D"), ("C", "D")]),
        "1": sorted(loops + [("A", "B"), ("A", "C"), ("A", "D"), ("B", "D"),
                             ("C", "D")]),
        "bot": list(itertools.product("ABCD", repeat=2)),
    }
    start = time.perf_counter()
    lat, graph = load_spec(samples_dir / "paper_lattice.txt")
    got = {p: list(param_graph(lat, graph, p)) for p in expected}
    elapsed = time.perf_counter() - start
    outputs = {}
    for p in expected:
        out = io.StringIO()
        main(["lattice", str(samples_dir / "paper_lattice.txt"), "--level", p],
             out, io.StringIO())
        outputs[p] = out.getvalue()
    bytes_ok = all(outputs[p] == "".join(f"{x} -> {y}\n" for x, y in expected[p])
                   for p in expected)
    ok = got == expected and bytes_ok and elapsed < 0.1
    criterion(5, "entailment graphs at top / 1 / bot", ok,
              f"({len(got['top'])}/{len(got['1'])}/{len(got['bot'])} edges, "
              f"{elapsed * 1000:.1f}ms)")
    assert ok


def test_6_law_suite(criterion):
    start = time.perf_counter()
    report = check_laws(ParamSpace(2), MatrixBackend(), trials=25, seed=0,
                        tol=1e-10, max_dim=4)
    elapsed = time.perf_counter() - start
    worst = max(r.max_deviation for r in report.results)
    ok = (report.passed and worst < 1e-10 and elapsed < 30
          and all(r.trials == 25 for r in report.results))
    criterion(6, "law suite, 25 trials per law, dims <= 4", ok,
              f"({len(report.results)} laws, max_dev={worst:.1e}, "
              f"{elapsed:.2f}s)")
    assert ok, report.to_text()


def test_7_zero_arity_is_base(criterion):
    cat = Param(ParamSpace(0), MatrixBackend())
    b = cat.backend
    rng = np.random.default_rng(7)
    ok = True
    for _ in range(50):
        x, y, z = (int(d) for d in rng.integers(1, 5, size=3))
        f, g = b.random_morphism(rng, x, y), b.random_morphism(rng, y, z)
        pf, pg = cat.include(f), cat.include(g)
        ok &= np.array_equal(cat.compose(pg, pf)(()), g @ f)
        ok &= np.array_equal(cat.tensor(pf, pg)(()), np.kron(f, g))
        ok &= np.array_equal(cat.identity(x)(()), np.eye(x))
    criterion(7, "Param over the 0-ary space equals the base category", ok,
              "(50 random pairs, exact)")
    assert ok


def test_8_mutation_detected(criterion):
    report = check_laws(ParamSpace(2), SwappedTensorBackend(), trials=25,
                        seed=0)
    r = report["tensor.interchange"]
    ok = not r.passed and r.counterexample is not None
    criterion(8, "swapped-tensor backend fails interchange", ok,
              f"(max_dev={r.max_deviation:.2e})")
    assert ok


def _cli(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out, io.StringIO())
    return code, out.getvalue().encode()


def test_9_determinism(criterion, samples_dir):
    s = samples_dir
    runs = [
        ("check", s / "rz.pqc", s / "rz_neg.pqc", "--seed", 17,
         "--format", "json"),
        ("check", s / "rx_seq.pqc", s / "rx_sum.pqc", "--seed", 17,
         "--format", "json"),
        ("laws", "--seed", 17, "--trials", 5, "--format", "json"),
    ]
    ok = all(_cli(*argv) == _cli(*argv) for argv in runs)
    criterion(9, "identical seeds give byte-identical structured output", ok)
    assert ok
