"""Scratch smoke for verify.py -- delete before finishing."""
import math
import time

import numpy as np
import scipy.linalg

from sp4r import verify
from sp4r.fock import OperatorMatrix, boson_operators, build_basis, interior_indices
from sp4r.hamiltonian import ModelParams, closed_form_spectrum
from sp4r.models import preset
from sp4r.tilt import TiltParameters, conjugate_closed_form
from sp4r.verify import (MODEL_CHECK_SETTINGS, VerificationReport, ccr_report,
                         closure_report, compare_spectra, convergence_scan,
                         corrected_formula_listing, mode_b_free,
                         oracle_spectrum, pipeline_probe, preset_verification,
                         spectrum_with_oracle, tilting_report,
                         _conjugation_blocks, _displaced_columns,
                         _grid_parameters, _lowering_ladders)

rng = np.random.default_rng(20260823)


def section(label):
    print(f"\n=== {label} ===")


# 1. oracle_spectrum basics ---------------------------------------------------
section("1 oracle_spectrum")
basis = build_basis(8, 8)
ops = boson_operators(basis)
number = OperatorMatrix(ops.number_a() + ops.number_b(), basis, label="N")
vals = oracle_spectrum(number, margin=2)
# interior: n_a, n_b <= 6 -> totals 0..12 with binomial-ish multiplicities
assert vals[0] == 0.0 and abs(vals[1] - 1.0) < 1e-14 and abs(vals[-1] - 12.0) < 1e-12
zero = OperatorMatrix(np.zeros((basis.dim, basis.dim)), basis, label="0")
assert max(abs(v) for v in oracle_spectrum(zero, margin=2)) == 0.0
print("number + zero operator spectra OK,", len(vals), "interior values")

# 2. compare_spectra on identical lists --------------------------------------
section("2 compare_spectra identity")
params = preset("jc", kappa=1.0, omega0=0.5, omega1=0.2).params
table = closed_form_spectrum(params, 3)
table.entries = [e for e in table.entries if e.n_b == 0]
oracle = []
for e in table.entries:
    oracle.extend([e.e_plus.real, e.e_minus.real])
rep = compare_spectra(table, oracle, 1e-10)
assert rep.all_passed and not rep.unmatched
assert all(e.flag == "ok" and e.abs_err == 0.0 for e in table.entries)
print("identical lists -> all residuals 0")

# non-real entry skipping
dparams = preset("dirac", m=1.0, c=1.0, omega=0.05).params
dtable = closed_form_spectrum(dparams, 8)
dtable.entries = [e for e in dtable.entries if e.n_b == 0]
flags_before = [e.flag for e in dtable.entries]
rep = compare_spectra(dtable, [e.e_plus.real for e in dtable.entries if e.flag != "non-real"]
                      + [e.e_minus.real for e in dtable.entries if e.flag != "non-real"], 1e-10)
assert all(e.flag == "non-real" for e, f in zip(dtable.entries, flags_before) if f == "non-real")
print("non-real entries preserved and skipped")

# 3. JC vs oracle (criterion-4 shape) ----------------------------------------
section("3 jc spectrum_with_oracle")
t0 = time.time()
model, table, rep = preset_verification("jc")
gap = model.params.energy_gap
worst = max(e.abs_err for e in table.entries if e.flag == "ok")
assert rep.all_passed, [c for c in rep.failures()][:3]
assert worst <= 1e-8, worst
assert any(abs(u - (-gap)) < 1e-12 for u in rep.unmatched), rep.unmatched[:5]
print(f"jc: worst residual {worst:.3e}, -gap={-gap} in unmatched ({time.time()-t0:.2f}s)")

# 4. dirac: diagonal, exact --------------------------------------------------
section("4 dirac")
model, table, rep = preset_verification("dirac")
ok = [e for e in table.entries if e.flag == "ok"]
nonreal = [e for e in table.entries if e.flag == "non-real"]
assert rep.all_passed
assert ok and nonreal
worst = max(e.abs_err for e in ok)
assert worst <= 1e-10, worst
assert all(e.oracle_value is None for e in nonreal)
print(f"dirac: {len(ok)} real matched (worst {worst:.2e}), {len(nonreal)} non-real skipped")

# 5. generalized JC + convergence scan ---------------------------------------
section("5 generalized_jc")
t0 = time.time()
model, table, rep = preset_verification("generalized_jc")
worst = max(e.abs_err for e in table.entries if e.flag == "ok")
assert rep.all_passed and worst <= 1e-6, worst
print(f"gjc: worst residual {worst:.3e} ({time.time()-t0:.2f}s)")
t0 = time.time()
scan = convergence_scan(model.params, (40, 80, 120))
assert scan.all_passed
diffs = [c.residual for c in scan.checks if c.name.startswith("difference")]
assert len(diffs) == 2 and diffs[1] <= 1e-8
assert diffs[0] >= diffs[1]
print(f"scan diffs {diffs} ({time.time()-t0:.2f}s)")
# empty list
assert not convergence_scan(model.params, ()).checks
# diagonal model converges immediately
dscan = convergence_scan(preset("dirac", m=1.0, c=1.0, omega=0.05).params, (20, 30))
assert dscan.all_passed and [c.residual for c in dscan.checks][-1] == 0.0
print("empty scan + diagonal-model scan OK")

# 6. mjc / jc_ajc ------------------------------------------------------------
section("6 two-mode presets")
for name in ("mjc", "jc_ajc"):
    t0 = time.time()
    model, table, rep = preset_verification(name)
    worst = max(e.abs_err for e in table.entries if e.flag == "ok")
    assert rep.all_passed and worst <= 1e-6, (name, worst)
    assert all(e.n + e.m_n <= 10 for e in table.entries)
    lam1 = model.free["lambda1"]
    lam2 = model.free["lambda2"]
    pipe = table.pipeline
    if name == "mjc":
        slope = (pipe.slope_a - pipe.slope_b) / 2.0
        assert abs(slope - (lam1 ** 2 + lam2 ** 2)) < 1e-12, slope
    else:
        slope = (pipe.slope_a + pipe.slope_b) / 2.0
        assert abs(slope - (lam1 ** 2 - lam2 ** 2)) < 1e-12, slope
    print(f"{name}: worst {worst:.3e}, slope check OK ({time.time()-t0:.2f}s)")

# 7. ccr ---------------------------------------------------------------------
section("7 ccr_report")
t0 = time.time()
rep = ccr_report()
assert rep.all_passed and max(c.residual for c in rep.checks) <= 1e-12
dt = time.time() - t0
assert dt < 1.0, dt
print(f"ccr zeros in {dt:.3f}s")

# 8. closure -----------------------------------------------------------------
section("8 closure_report")
t0 = time.time()
audit, rep = closure_report()
assert len(rep.checks) == 45 and rep.all_passed
devs = audit.deviations()
f2 = [d for d in devs if d.category == "factor2"]
assert {(d.x, d.y) for d in f2} == {("K+a", "K-a"), ("K+b", "K-b")}
assert {(d.x, d.y, d.category) for d in devs} == {
    ("K+a", "K-a", "factor2"), ("K+b", "K-b", "factor2"),
    ("K+b", "J0", "sign")}
worked = audit.bracket("K+ab", "K-a")
assert set(worked) == {"J-"} and abs(worked["J-"] + 1) < 1e-12
print(f"45 pairs OK, factor-2 set OK, worked entry OK ({time.time()-t0:.2f}s)")

# 9. displaced-columns dual-route check vs dense expm ------------------------
section("9 displaced columns vs dense expm")


def dense_displacement(params, size_a, size_b):
    a1, b1 = _lowering_ladders(size_a, size_b)
    a1 = a1.toarray()
    b1 = b1.toarray()
    ad, bd = a1.T, b1.T
    factors = []
    if params.xi_a != 0:
        x = params.xi_a * (ad @ ad) / 2 - np.conj(params.xi_a) * (a1 @ a1) / 2
        factors.append(scipy.linalg.expm(x))
    if params.xi_b != 0:
        x = params.xi_b * (bd @ bd) / 2 - np.conj(params.xi_b) * (b1 @ b1) / 2
        factors.append(scipy.linalg.expm(x))
    if params.xi != 0:
        x = params.xi * (ad @ bd) - np.conj(params.xi) * (b1 @ a1)
        factors.append(scipy.linalg.expm(x))
    if params.chi != 0:
        x = params.chi * (ad @ b1) - np.conj(params.chi) * (bd @ a1)
        factors.append(scipy.linalg.expm(x))
    m = np.eye(size_a * size_b, dtype=np.complex128)
    for f in factors:
        m = m @ f
    return m


# Dense route runs on a fixed independent box; comparison restricted to a
# window deep inside both the pad and the dense box, where both routes are
# accurate (the pads grew too large for a dense expm of the whole graph).
cases = [
    # kind, |z|, basis cutoffs, dense box, window, tolerance
    ("su11_mode_a", 0.3, (8, 2), (96, 3), (60, 3), 5e-12),
    ("su11_mode_b", 0.3, (2, 8), (3, 96), (3, 60), 5e-12),
    ("su11_two_mode", 0.3, (6, 6), (33, 33), (21, 21), 1e-10),
    ("su2", 0.3, (6, 6), (13, 13), (13, 13), 1e-12),
    ("product_ab", 0.18, (4, 4), (36, 36), (18, 18), 1e-9),
    ("sp4r_product", 0.12, (5, 5), (26, 26), (14, 14), 1e-8),
]
for kind, mag, (ca, cb), (da, db), (wa, wb), tol in cases:
    z = mag * np.exp(0.61j)
    params = _grid_parameters(kind, z)
    tb = build_basis(ca, cb)
    cols = np.arange(tb.dim)
    t0 = time.time()
    v = _displaced_columns(params, tb, cols)
    size_a, size_b, _ = v.shape
    dense = dense_displacement(params, da, db)
    err = 0.0
    for k in range(tb.dim):
        na, nb = tb.state(k)
        ref = dense[:, na * db + nb].reshape(da, db)
        err = max(err, float(np.max(np.abs(
            v[:wa, :wb, k] - ref[:wa, :wb]))))
    print(f"{kind}: pad ({size_a},{size_b}), window err {err:.2e} "
          f"({time.time()-t0:.1f}s)")
    assert err < tol, (kind, err)

# 10. conjugation blocks vs closed form at one point -------------------------
section("10 conjugation blocks sanity")
basis24 = build_basis(24, 24)
idx24 = interior_indices(basis24, 8)
for kind in ("su11_mode_a", "su11_two_mode", "su2", "sp4r_product"):
    z = 0.5 * np.exp(1.1j)
    params = _grid_parameters(kind, z)
    t0 = time.time()
    blocks, defect = _conjugation_blocks(params, basis24, idx24)
    from sp4r.algebra import build_generators, GENERATOR_ORDER
    gens24 = build_generators(basis24)
    worst = 0.0
    for g in GENERATOR_ORDER:
        closed = conjugate_closed_form(g, params)
        target = np.zeros((len(idx24), len(idx24)), dtype=np.complex128)
        for label, coeff in closed.items():
            if label == "I":
                target += coeff * np.eye(len(idx24))
            else:
                target += coeff * gens24.ops[label][np.ix_(idx24, idx24)]
        rel = np.linalg.norm(target - blocks[g]) / np.linalg.norm(blocks[g])
        worst = max(worst, rel)
    print(f"{kind}: defect {defect:.2e}, worst rel {worst:.2e} ({time.time()-t0:.1f}s)")
    assert defect < 1e-10 and worst < 1e-9, (kind, defect, worst)

# 11. pipeline probe on a rotation-family draw -------------------------------
section("11 pipeline probe")
m = rng.uniform(0.3, 1.0)
phases = np.exp(1j * rng.uniform(0, 2 * np.pi, size=2))
if rng.random() < 0.5:
    kappas = dict(kappa1=m * phases[0], kappa3=m * phases[1])
else:
    kappas = dict(kappa2=m * phases[0], kappa4=m * phases[1])
params = ModelParams.with_hermitian_couplings(**kappas)
probe = pipeline_probe(params)
print(f"path={probe.path} margin={probe.margin} offdiag={probe.offdiag_ratio:.2e} "
      f"diag_err={probe.diagonal_error:.2e} shift={probe.eigenvalue_shift:.2e} "
      f"closed_vs_oracle={probe.closed_vs_oracle:.2e}")
assert probe.path == "rotation" and probe.margin == 4
assert probe.offdiag_ratio < 1e-12
assert probe.diagonal_error < 1e-10
assert probe.eigenvalue_shift < 1e-10
assert probe.closed_vs_oracle < 1e-10

# squeeze-route probe: small per-mode squeeze with generous margin
params2 = preset("generalized_jc", f=0.1, g=0.7, mc2=1.0).params
probe2 = pipeline_probe(params2, cutoff=(40, 1), margin=None)
print(f"gjc probe: path={probe2.path} margin={probe2.margin} "
      f"offdiag={probe2.offdiag_ratio:.2e} shift={probe2.eigenvalue_shift:.2e}")

# 12. corrected formula listing ----------------------------------------------
section("12 corrected_formula_listing")
listing = corrected_formula_listing()
assert "su11_mode_a" not in listing and "su11_mode_b" not in listing
assert set(listing["su11_two_mode"]) == {"K+a", "K-a", "K+b", "K-b", "J+", "J-"}
assert set(listing["su2"]) == {"K+a", "K-a", "K+b", "K-b", "K+ab", "K-ab"}
assert set(listing["product_ab"]) == {"K0ab", "J0", "J+", "J-", "K+ab", "K-ab"}
assert "sp4r_product" in listing
print({k: sorted(v) for k, v in listing.items()})

# 13. report plumbing --------------------------------------------------------
section("13 reports")
r1 = VerificationReport()
r1.add("b-check", 1e-12, 1e-10)
r2 = VerificationReport()
r2.add("a-check", 2.0, 1.0, "expected failure")
merged = VerificationReport.merge([r1, r2])
assert [c.name for c in merged.checks] == ["a-check", "b-check"]
assert merged.summary == (1, 1) and not merged.all_passed
assert len(merged.failures()) == 1
print("\n".join(merged.lines()))

print("\nALL VERIFY SMOKE SECTIONS PASSED")
