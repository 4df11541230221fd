"""Acceptance gate: the nine release criteria, one verdict line apiece.

Each test computes its pass verdict first, records a single PASS/FAIL
line through ``acceptance_log`` (replayed in the terminal summary), and
only then asserts, so the line survives either way.
"""

import json
import math
import time

import pytest

from delta_ineq import (
    FiniteGrid,
    IntegerInterval,
    KernelSpec,
    Polynomial,
    RealInterval,
    Sampled,
    TrialConfig,
    Variant,
    bound_t5,
    bound_t7,
    bound_t8,
    cli,
    h_monomial,
    kernel_moments,
    montgomery_lhs,
    reduction_weighted_ostrowski,
    run_bound_suite,
    run_crosscheck_suite,
    run_identity_suite,
    sharpness_search,
    sup_abs_delta_derivative,
    trial_rng,
)

IDENT = Polynomial((0.0, 1.0))
T_SQUARED = Polynomial((0.0, 0.0, 1.0))


@pytest.fixture(scope="module")
def identity_1000():
    """One timed 1000-trial identity-suite run shared by criteria 1 and 9."""
    t0 = time.perf_counter()
    rep = run_identity_suite(TrialConfig(seed=101, n_trials=1000))
    return rep, time.perf_counter() - t0


def worked_spec():
    return KernelSpec(ts=IntegerInterval(0, 4), a=0.0, b=4.0, x=2.0,
                      alpha=1.0, beta=1.0, h=IDENT)


def test_criterion_1_identity_exactness(identity_1000, acceptance_log):
    rep, wall = identity_1000
    agg = rep.checks["montgomery-identity"]
    ok = agg["violations"] == 0 and agg["trials"] == 1000 and wall < 2.0
    acceptance_log(
        "1 montgomery identity, 1000 random discrete trials",
        ok, f"max rel residual {agg['max_rel_residual']:.2e}, {wall:.2f}s")
    assert agg["trials"] == 1000
    assert agg["violations"] == 0
    assert wall < 2.0


def test_criterion_2_worked_instance(acceptance_log):
    spec = worked_spec()
    mom = kernel_moments(spec)
    mont = montgomery_lhs(spec, T_SQUARED)
    m = sup_abs_delta_derivative(spec.ts, T_SQUARED, 0.0, 4.0)
    t5 = bound_t5(spec, T_SQUARED, Variant.CORRECTED)
    t7 = bound_t7(spec, T_SQUARED, "l2")
    t8 = bound_t8(spec, T_SQUARED, gamma=1.0, big_gamma=7.0)
    got = (mont, mom.int_p, mom.int_abs_p, mom.int_p2, m,
           t5.slack, t7.lhs, t7.rhs, t8.lhs, t8.rhs)
    want = (-3.5, -0.5, 1.0, 0.375, 7.0, 3.5, 1.5, 2.5, 1.5, 3.0)
    worst = max(abs(a - b) for a, b in zip(got, want))
    ok = worst <= 1e-12
    acceptance_log("2 worked integer-scale instance, ten pinned values",
                   ok, f"max deviation {worst:.2e}")
    assert worst <= 1e-12


def test_criterion_3_corrected_bounds_at_scale(acceptance_log):
    t0 = time.perf_counter()
    rep = run_bound_suite(TrialConfig(seed=3, n_trials=1700))
    wall = time.perf_counter() - t0
    corrected = {k: v for k, v in rep.checks.items() if k.endswith("/corrected")}
    evals = sum(v["trials"] for v in corrected.values())
    violations = sum(v["violations"] for v in corrected.values())
    ok = evals >= 10_000 and violations == 0 and wall < 30.0
    acceptance_log("3 corrected bounds, >= 10^4 evaluations, zero violations",
                   ok, f"{evals} evaluations, {violations} violations, {wall:.2f}s")
    assert evals >= 10_000
    assert violations == 0
    assert not rep.failures
    assert wall < 30.0


def test_criterion_4_literal_printings_fail_as_findings(tmp_path, acceptance_log):
    base_spec = {"scale": {"kind": "integer", "lo": 0, "hi": 4},
                 "a": 0, "b": 4, "x": 2, "alpha": 1.0, "beta": 1.0,
                 "h": {"repr": "poly", "coeffs": [0.0, 1.0]}}

    sawtooth = tmp_path / "sawtooth.json"
    sawtooth.write_text(json.dumps({
        "spec": base_spec,
        "f": {"repr": "sampled",
              "table": [[0, 0], [1, -7], [2, 0], [3, -7], [4, -14]]},
    }))
    out1 = tmp_path / "o1.json"
    code1 = cli.main(["eval", "--config", str(sawtooth),
                      "--variant", "literal", "--out", str(out1)])
    d1 = json.loads(out1.read_text())
    t5 = next(r for r in d1["bounds"] if r["theorem"] == "T5")

    squares = tmp_path / "squares.json"
    squares.write_text(json.dumps({
        "spec": base_spec,
        "f": {"repr": "poly", "coeffs": [0.0, 0.0, 1.0]},
    }))
    out2 = tmp_path / "o2.json"
    code2 = cli.main(["eval", "--config", str(squares),
                      "--variant", "literal", "--out", str(out2)])
    d2 = json.loads(out2.read_text())
    t6b = next(r for r in d2["bounds"] if r["theorem"] == "T6b")

    ok = (code1 == 0 and d1["findings"]
          and abs(t5["lhs"] - 7.0) <= 1e-12 and abs(t5["rhs"] - 3.5) <= 1e-12
          and code2 == 0 and d2["findings"]
          and abs(t6b["lhs"] - 49.0) <= 1e-12 and abs(t6b["rhs"] - 4.0) <= 1e-12)
    acceptance_log("4 literal printings violated by witnesses, exit 0 findings",
                   ok, f"T5 {t5['lhs']:g} > {t5['rhs']:g}; "
                       f"product {t6b['lhs']:g} > {t6b['rhs']:g}")
    assert code1 == 0 and code2 == 0
    assert d1["findings"] and d2["findings"]
    assert t5["lhs"] == pytest.approx(7.0, abs=1e-12)
    assert t5["rhs"] == pytest.approx(3.5, abs=1e-12)
    assert not t5["pass"]
    assert t6b["lhs"] == pytest.approx(49.0, abs=1e-12)
    assert t6b["rhs"] == pytest.approx(4.0, abs=1e-12)
    assert not t6b["pass"]


def test_criterion_5_family_crosscheck(acceptance_log):
    t0 = time.perf_counter()
    rep = run_crosscheck_suite(TrialConfig(seed=55, n_trials=300))
    wall = time.perf_counter() - t0
    worst = max(agg["max_rel_residual"] for agg in rep.checks.values())
    ok = (all(agg["trials"] == 300 and agg["violations"] == 0
              for agg in rep.checks.values())
          and set(rep.checks) == {"Z", "Q", "R"}
          and worst <= 1e-12 and wall < 5.0)
    acceptance_log("5 closed-form crosscheck, 300 trials per family",
                   ok, f"worst rel residual {worst:.2e}, {wall:.2f}s")
    assert set(rep.checks) == {"Z", "Q", "R"}
    for agg in rep.checks.values():
        assert agg["trials"] == 300
        assert agg["violations"] == 0
    assert worst <= 1e-12
    assert wall < 5.0


def test_criterion_6_proof_machinery(acceptance_log):
    idrep = run_identity_suite(TrialConfig(seed=66, n_trials=500))
    korkine = idrep.checks["korkine"]
    envelope = idrep.checks["variance-envelope"]
    brep = run_bound_suite(TrialConfig(seed=66, n_trials=500))
    chain = brep.checks["t7-chain"]
    ok = (korkine["violations"] == 0 and korkine["trials"] == 500
          and envelope["violations"] == 0
          and chain["violations"] == 0 and chain["trials"] == 500)
    acceptance_log("6 korkine / variance envelope / T7 rhs ordering, 500 trials",
                   ok, f"korkine max rel {korkine['max_rel_residual']:.2e}")
    assert korkine["trials"] == 500 and korkine["violations"] == 0
    assert envelope["violations"] == 0
    assert chain["trials"] == 500 and chain["violations"] == 0


def test_criterion_7_reduction_bracket(acceptance_log):
    worst = 0.0
    checked = 0

    def probe(ts, a, b, x):
        nonlocal worst, checked
        rep = reduction_weighted_ostrowski(ts, IDENT, IDENT, a, b, x)
        m = sup_abs_delta_derivative(ts, IDENT, a, b)     # exactly 1
        bracket = rep.rhs * (b - a) / m
        want = h_monomial(ts, 2, x, a) + h_monomial(ts, 2, x, b)
        worst = max(worst, abs(bracket - want) / max(1.0, abs(want)))
        checked += 1

    ts = IntegerInterval(0, 10)
    for x in range(1, 10):
        probe(ts, 0.0, 10.0, float(x))
    for i in range(100):
        rng = trial_rng(77, i)
        n = rng.randint(4, 12)
        while True:
            pts = sorted(rng.uniform(-10.0, 10.0) for _ in range(n))
            if all(u < v for u, v in zip(pts, pts[1:])):
                break
        grid = FiniteGrid(tuple(pts))
        for x in pts[1:-1]:
            probe(grid, pts[0], pts[-1], x)

    ok = worst <= 1e-12
    acceptance_log("7 reduction bracket equals monomial sum on every interior x",
                   ok, f"{checked} probes, worst rel deviation {worst:.2e}")
    assert worst <= 1e-12


def test_criterion_8_sharpness_t5(acceptance_log):
    spec = KernelSpec(ts=IntegerInterval(0, 8), a=0.0, b=8.0, x=4.0,
                      alpha=1.0, beta=1.0, h=IDENT)
    res = sharpness_search("T5", spec, TrialConfig(seed=0, n_trials=5000))
    ok = (res.best_ratio >= 0.99 and res.iterations <= 5000
          and res.max_ratio_seen <= 1.0 + 1e-10 and not res.violation)
    acceptance_log("8 sharpness search drives T5 ratio above 0.99",
                   ok, f"best {res.best_ratio:.9f} in {res.iterations} evaluations")
    assert res.best_ratio >= 0.99
    assert res.iterations <= 5000
    assert res.max_ratio_seen <= 1.0 + 1e-10
    assert not res.violation


def test_criterion_9_product_parts_and_monomials(identity_1000, acceptance_log):
    rep, _ = identity_1000
    product = rep.checks["product-rule"]
    parts = rep.checks["integration-by-parts"]

    ts = RealInterval(-4.0, 4.0)
    worst = 0.0
    for k in range(7):
        for t in [-3.5, -1.0, 0.0, 0.5, 2.0, 3.75]:
            for s in [-3.0, -0.5, 0.0, 1.25, 3.5]:
                want = (t - s) ** k / math.factorial(k)
                got = h_monomial(ts, k, t, s)
                worst = max(worst, abs(got - want) / max(1.0, abs(want)))

    ok = (product["violations"] == 0 and parts["violations"] == 0
          and product["trials"] == 1000 and worst <= 1e-12)
    acceptance_log("9 product/parts rules on 1000 trials; real-line monomials",
                   ok, f"parts max rel {parts['max_rel_residual']:.2e}, "
                       f"monomial worst {worst:.2e}")
    assert product["trials"] == 1000
    assert product["violations"] == 0
    assert parts["violations"] == 0
    assert worst <= 1e-12
