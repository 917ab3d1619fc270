"""Scratch validation for hamiltonian.py (deleted before finishing)."""
import cmath
import math
import numpy as np

from sp4r.algebra import build_generators
from sp4r.errors import (ConditionViolatedError, PipelineIndeterminateError,
                         HyperbolicDomainError)
from sp4r.fock import FockBasis, boson_operators, interior_indices, interior_projector
from sp4r.hamiltonian import (ModelParams, alpha_coefficients, build_hamiltonian,
                              closed_form_spectrum, tilt_pipeline,
                              uncoupled_operator, level_bracket,
                              wavefunction, associated_laguerre, laguerre_series)
from sp4r import tilt

rng = np.random.default_rng(20260823)

def rc(scale=0.6):
    return complex(rng.normal(0, scale), rng.normal(0, scale))

print("== 1. reconstruction identity ==")
basis = FockBasis(14, 14)
gens = build_generators(basis)
idx = interior_indices(basis, 2)
worst = 0.0
for trial in range(5):
    p = ModelParams(omega0=rng.normal(), omega1=rng.normal(), omega2=rng.normal(),
                    kappa1=rc(), kappa2=rc(), kappa3=rc(), kappa4=rc(),
                    gamma1=rc(), gamma2=rc(), gamma3=rc(), gamma4=rc())
    alphas = alpha_coefficients(p)
    lhs = tilt.combination(alphas.generator_combination(), gens).matrix
    rhs = uncoupled_operator(p, basis).matrix
    diff = np.abs((lhs - rhs)[np.ix_(idx, idx)]).max()
    worst = max(worst, diff)
print(f"   interior max|combination - product| over 5 random sets: {worst:.3e}")
assert worst < 1e-12

print("== 2. build_hamiltonian structure ==")
b33 = FockBasis(3, 3)
p_jc = ModelParams.with_hermitian_couplings(omega0=2.0, omega1=0.0, kappa1=1.0)
H, H0, HI = build_hamiltonian(p_jc, b33)
print(f"   dim {H.matrix.shape}, additivity {np.abs(H.matrix - H0.matrix - HI.matrix).max():.1e}")
assert H.matrix.shape == (32, 32)
assert np.abs(H.matrix - H0.matrix - HI.matrix).max() == 0.0
assert np.abs(HI.matrix - HI.matrix.conj().T).max() < 1e-12
# all-zero couplings: H_I = gap * sigma0 x I
p0 = ModelParams(omega0=3.0, omega1=0.5, omega2=0.5)
_, _, HI0 = build_hamiltonian(p0, b33)
eye = np.eye(b33.dim)
expect = np.block([[1.0*eye, 0*eye],[0*eye, -1.0*eye]])
assert np.abs(HI0.matrix - expect).max() < 1e-14
print("   zero-coupling interaction block is the bare splitting: ok")

print("== 3. JC route ==")
al = alpha_coefficients(p_jc)
res = tilt_pipeline(al)
print(f"   path={res.path} slope_a={res.slope_a} slope_b={res.slope_b} const={res.constant}")
assert res.path == "diagonal"
tab = closed_form_spectrum(p_jc, 3)
e3 = [e for e in tab.entries if e.n == 3 and e.m_n == 3][0]
print(f"   E(3)= {e3.e_plus.real:.7f} vs sqrt5 {math.sqrt(5):.7f}")
assert abs(e3.e_plus - math.sqrt(5)) < 1e-12
# uncoupled JC kappa=1 -> diag n+1
uo = uncoupled_operator(p_jc, b33)
for na_ in range(3):  # top row hits the cutoff, so stay interior
    for nb_ in range(4):
        i = b33.index(na_, nb_)
        assert abs(uo.matrix[i, i] - (na_ + 1.0)) < 1e-13

print("== 4. Dirac route ==")
m = c = hb = 1.0
omega = 0.1
coupling = 2j * c * math.sqrt(m * omega * hb)
p_dirac = ModelParams(omega0=2 * m * c**2 / hb, kappa1=coupling, gamma2=coupling, hbar=hb)
tab = closed_form_spectrum(p_dirac, 3)
e0 = [e for e in tab.entries if e.n == 0][0]
print(f"   E(0) = {e0.e_plus.real:.7f} vs {math.sqrt(0.6):.7f}; pipeline path {tab.pipeline.path}")
assert tab.pipeline.path == "diagonal"
assert abs(e0.e_plus - math.sqrt(0.6)) < 1e-12
flags = {e.n: e.flag for e in tab.entries if e.m_n == e.n}
print(f"   flags by n: {flags}")
assert flags[3] == "non-real"  # 1 - 0.4*4 < 0

print("== 5. generalized-JC route ==")
f, g = 0.3, 0.7
p_gjc = ModelParams(omega0=2.0, kappa1=np.conj(f), kappa2=g,
                    gamma1=np.conj(g), gamma2=f, hbar=1.0)
al = alpha_coefficients(p_gjc)
res = tilt_pipeline(al)
print(f"   path={res.path} slope_a={res.slope_a:.6f} xi_a={res.xi_a:.4f}")
assert res.path == "per_mode"
tab = closed_form_spectrum(p_gjc, 6)
for n in (0, 2, 4):
    e = [x for x in tab.entries if x.n == n and x.m_n == n][0]
    target = math.sqrt((g*g - f*f) * n + 1.0)
    assert abs(e.e_plus - target) < 1e-12, (n, e.e_plus, target)
print("   E(n) = sqrt(0.4 n + 1): ok")

print("== 6. MJC route ==")
lam1 = lam2 = 1.0
p_mjc = ModelParams.with_hermitian_couplings(omega0=2.0, omega1=1.0, omega2=1.0,
                                             kappa1=lam1, kappa3=lam2)
res = tilt_pipeline(alpha_coefficients(p_mjc))
print(f"   path={res.path} slopes=({res.slope_a}, {res.slope_b}) chi={res.chi}")
assert res.path == "rotation"
assert abs(res.slope_a - 4.0) < 1e-12 and abs(res.slope_b) < 1e-12
br = level_bracket(res, 0, 0)
print(f"   interaction E(0,0) = {math.sqrt(br.real):.7f} vs sqrt2")
assert abs(math.sqrt(br.real) - math.sqrt(2)) < 1e-12
# rotation slope with unequal couplings: sJ = lam1^2 + lam2^2
p2 = ModelParams.with_hermitian_couplings(omega0=0.0, kappa1=1.3, kappa3=0.4)
r2 = tilt_pipeline(alpha_coefficients(p2))
sj = (r2.slope_a - r2.slope_b) / 2
print(f"   sJ = {sj:.12f} vs {1.3**2 + 0.4**2:.12f}")
assert abs(sj - (1.3**2 + 0.4**2)) < 1e-12

print("== 7. JC-AJC route ==")
lam1, lam2 = 2.0, 1.0
p_ja = ModelParams.with_hermitian_couplings(
    omega0=0.0, omega1=0.0, omega2=0.0, kappa1=lam1, kappa4=lam2,
    detuning=0.0)
res = tilt_pipeline(alpha_coefficients(p_ja))
print(f"   path={res.path} slopes=({res.slope_a}, {res.slope_b}) xi={res.xi}")
assert res.path == "pair"
s0 = (res.slope_a + res.slope_b) / 2
print(f"   s0 = {s0} vs {lam1**2 - lam2**2}")
assert abs(s0 - (lam1**2 - lam2**2)) < 1e-12
br = level_bracket(res, 0, 0)
print(f"   E(0,0) = {math.sqrt(br.real):.7f} vs sqrt3")
assert abs(math.sqrt(br.real) - math.sqrt(3)) < 1e-12

print("== 8. balanced hermitian draws (rotation family) ==")
# The only open region of {alpha5 == alpha6} that satisfies every
# pipeline domain condition: two couplings from one rotation pair with
# equal magnitudes and free phases.  (Four- and three-coupling balanced
# draws are hyperbolic at stage 1 off the equal-magnitude slice and
# exactly parabolic at stage 3 on it; the pair family sits on the
# hyperbolic boundary; other families force zero couplings.)
def random_balanced(rng):
    m = rng.uniform(0.3, 1.0)
    ph = rng.uniform(0.0, 2 * math.pi, size=2)
    k_lo = m * cmath.exp(1j * ph[0])
    k_hi = m * cmath.exp(1j * ph[1])
    if rng.uniform() < 0.5:
        kw = dict(kappa1=k_lo, kappa3=k_hi)
    else:
        kw = dict(kappa2=k_lo, kappa4=k_hi)
    p = ModelParams.with_hermitian_couplings(omega0=rng.normal(), **kw)
    al = alpha_coefficients(p)
    assert abs(al.alpha5 - al.alpha6) < 1e-14
    return p, tilt_pipeline(al)

checked = 0
nb_basis = FockBasis(26, 26)
nb_gens = build_generators(nb_basis)
for trial in range(6):
    p, res = random_balanced(rng)
    assert res.path == "rotation", res.path
    assert abs(res.slope_a.imag) < 1e-9 and abs(res.slope_b.imag) < 1e-9
    comp1 = uncoupled_operator(p, nb_basis).matrix
    D = None
    for stage in res.displacements():
        Dk = tilt.displacement(stage, nb_gens)
        D = Dk if D is None else D @ Dk
    # margin > cutoff/2 keeps every interior state inside an unbroken
    # total-quanta sector below the boundary-corrupted one, where the
    # rotation conjugation is exact
    idx = interior_indices(nb_basis, 14)
    conj = (D.matrix.conj().T @ comp1 @ D.matrix)[np.ix_(idx, idx)]
    off = conj - np.diag(np.diag(conj))
    ratio = np.linalg.norm(off) / max(np.linalg.norm(conj), 1e-30)
    # closed-form levels vs diagonal entries
    occ = [nb_basis.state(i) for i in idx]
    pred = np.array([ (res.slope_a*(na_+0.5)/2 + res.slope_b*(nb_+0.5)/2
                       + res.constant).real for na_, nb_ in occ])
    derr = np.abs(np.diag(conj).real - pred).max()
    print(f"   trial {trial}: path={res.path} |chi|={abs(res.chi):.3f} "
          f"slopes=({res.slope_a.real:.3f},{res.slope_b.real:.3f}) "
          f"offdiag-ratio={ratio:.2e} diag-err={derr:.2e}")
    assert ratio < 1e-6, ratio
    assert derr < 1e-5 * max(1.0, np.abs(pred).max()), derr
    checked += 1
assert checked == 6

print("== 9. condition violation and indeterminate cases ==")
# stage-1 elliptic hermitian draw with alpha5 != alpha6: survives the
# squeeze, then trips the balance gate before the rotation stage
p_bad = ModelParams.with_hermitian_couplings(
    omega0=1.0, kappa1=2.041 - 0.453j, kappa2=-2.556 - 0.216j,
    kappa3=0.418 - 2.020j, kappa4=-0.568 - 0.232j)
al = alpha_coefficients(p_bad)
print(f"   alpha5={al.alpha5}, alpha6={al.alpha6}")
try:
    tilt_pipeline(al)
    print("   NO ERROR (unexpected)")
    raise SystemExit(1)
except ConditionViolatedError as exc:
    print(f"   ConditionViolatedError: ok")
# fully hyperbolic draw: stage 1 itself is out of domain
p_hyp = ModelParams.with_hermitian_couplings(omega0=1.0, kappa1=1.0, kappa2=0.4,
                                             kappa3=0.8, kappa4=0.3)
try:
    tilt_pipeline(alpha_coefficients(p_hyp))
    print("   NO ERROR for hyperbolic draw (unexpected)")
    raise SystemExit(1)
except HyperbolicDomainError:
    print("   hyperbolic stage-1 draw -> HyperbolicDomainError: ok")
# one-sided rotation ladder, non-hermitian
p_one = ModelParams(omega0=0.0, kappa1=1.0, gamma4=1.0)
try:
    tilt_pipeline(alpha_coefficients(p_one))
    print("   NO ERROR for one-sided (unexpected)")
    raise SystemExit(1)
except PipelineIndeterminateError:
    print("   one-sided rotation ladder -> PipelineIndeterminateError: ok")

print("== 10. all couplings zero ==")
tab = closed_form_spectrum(ModelParams(omega0=3.0, omega1=0.5, omega2=0.5), 2)
assert all(abs(e.e_plus - 1.0) < 1e-15 for e in tab.entries)
print("   E = +-hbar|delta| for every entry: ok")

print("== 11. wavefunction ==")
w = wavefunction(0, 0, 0.0, 0.0)
print(f"   value(0,0,0)={w.value.real:.10f} (1/sqrt(pi)={1/math.sqrt(math.pi):.10f}) "
      f"legacy={w.legacy_value.real:.10f} (sqrt(2/pi)={math.sqrt(2/math.pi):.10f})")
assert abs(w.value - 1/math.sqrt(math.pi)) < 1e-14
assert abs(w.legacy_value - math.sqrt(2/math.pi)) < 1e-14
# orthonormality of the default normalization via Gauss-Laguerre in x = rho^2
from numpy.polynomial.laguerre import laggauss
xs, ws = laggauss(80)
for mn in range(3):
    for n1 in range(3):
        for n2 in range(3):
            r = np.sqrt(xs)
            v1 = np.array([wavefunction(n1, mn, ri, 0.0).value for ri in r])
            v2 = np.array([wavefunction(n2, mn, ri, 0.0).value for ri in r])
            # d^2r = rho drho dphi; with x = rho^2: rho drho = dx/2; phi integral = 2 pi
            integral = 2 * math.pi * np.sum(ws * np.exp(xs) * (v1.conj() * v2).real) / 2
            target = 1.0 if n1 == n2 else 0.0
            assert abs(integral - target) < 1e-8, (mn, n1, n2, integral)
print("   quadrature orthonormality (n,m<=2): ok")
xr = rng.uniform(0, 30, size=40)
worst = 0.0
for n in range(11):
    for mn in range(5):
        worst = max(worst, np.abs(associated_laguerre(n, mn, xr) -
                                  laguerre_series(n, mn, xr)).max())
print(f"   recurrence vs series max diff: {worst:.2e}")
assert worst < 1e-8 * 1e4  # raw values grow large at x=30

print("== 12. printed stage-1 closed form vs solver (curiosity) ==")
from sp4r.hamiltonian import _solve_pair_squeeze
while True:
    # unbalanced hermitian draw; stage-1 solve alone, elliptic cases only
    ks = [rc(0.7) for _ in range(4)]
    p = ModelParams.with_hermitian_couplings(
        kappa1=ks[0], kappa2=ks[1], kappa3=ks[2], kappa4=ks[3])
    al = alpha_coefficients(p)
    c0 = al.coefficient_vector()
    try:
        xi_solved = _solve_pair_squeeze(c0, max(al.scale, 1e-300))
    except (PipelineIndeterminateError, HyperbolicDomainError):
        continue
    break
a1,a2,a3,a4 = al.alpha1, al.alpha2, al.alpha3, al.alpha4
a8, a9 = al.alpha8, al.alpha9
num = (a3*a8 - a1*a9)*(a4*a9 - a2*a8)
theta_p = np.arctanh(cmath.sqrt(num)/(a1*a2 - a3*a4))
phi_p = 0.5j*cmath.log((a4*a9 - a2*a8)/(a3*a8 - a1*a9))
xi_p = -(theta_p/2)*cmath.exp(-1j*phi_p)
print(f"   solver xi  = {xi_solved:.6f}  |xi|={abs(xi_solved):.6f}")
print(f"   printed xi = {complex(xi_p):.6f}  |xi|={abs(xi_p):.6f}")

print("ALL HAMILTONIAN SMOKE CHECKS PASSED")
