"""Scratch validation for tilt.py: closed forms vs expm conjugation."""
import numpy as np, cmath, math, time
from sp4r.fock import build_basis, FockBasis
from sp4r.algebra import build_generators, GENERATOR_ORDER, su11_rep_matrices, su2_rep_matrices
from sp4r.tilt import (TiltParameters, transform_matrix, conjugate_closed_form,
                       displacement, conjugate_numeric, combination,
                       legacy_column_deviations, reduce_su11_form, reduce_su2_form,
                       perelomov_state, normal_form, rotation_normal_form)
from sp4r.linalg import expm
from sp4r.errors import DegenerateReductionError, HyperbolicDomainError, InvalidArgumentError

def mask_idx(basis, la, lb):
    return np.array([i for i in range(basis.dim)
                     if basis.state(i)[0] <= la and basis.state(i)[1] <= lb])

def check_kind(kind, params, ca, cb, la, lb, tol):
    t0 = time.time()
    basis = build_basis(ca, cb)
    gens = build_generators(basis)
    D = displacement(params, gens)
    idx = mask_idx(basis, la, lb)
    worst = 0.0
    for g in GENERATOR_ORDER:
        num = (D.matrix.conj().T @ gens.op(g) @ D.matrix)[np.ix_(idx, idx)]
        clo = combination(conjugate_closed_form(g, params), gens).matrix[np.ix_(idx, idx)]
        dev = np.max(np.abs(num - clo)) / max(1.0, np.max(np.abs(num)))
        worst = max(worst, dev)
        if dev > tol:
            print(f"  FAIL {kind} {g}: rel dev {dev:.3e}")
    # unitarity
    uni = np.max(np.abs((D.adjoint() @ D).matrix - np.eye(basis.dim)))
    print(f"{kind}: worst rel dev {worst:.3e}, unitarity {uni:.3e}, {time.time()-t0:.1f}s")
    return worst

p_xa = 0.1 * cmath.exp(0.4j)
p_xb = 0.08 * cmath.exp(-1.1j)
p_xi = 0.12 * cmath.exp(0.3j)
p_ch = 0.35 * cmath.exp(0.5j)

check_kind("su11_mode_a", TiltParameters(kind="su11_mode_a", xi_a=0.2 * cmath.exp(0.9j)),
           44, 8, 10, 6, 1e-9)
check_kind("su11_mode_b", TiltParameters(kind="su11_mode_b", xi_b=0.2 * cmath.exp(-0.7j)),
           8, 44, 6, 10, 1e-9)
check_kind("su11_two_mode", TiltParameters(kind="su11_two_mode", xi=0.23 * cmath.exp(0.7j)),
           26, 26, 10, 10, 1e-8)
check_kind("su2", TiltParameters(kind="su2", chi=0.4 * cmath.exp(-0.5j)),
           20, 20, 10, 10, 1e-10)
check_kind("product_ab", TiltParameters(kind="product_ab", xi_a=p_xa, xi_b=p_xb),
           32, 32, 6, 6, 1e-9)
check_kind("sp4r_product", TiltParameters(kind="sp4r_product", xi_a=p_xa, xi_b=p_xb,
                                          xi=p_xi, chi=p_ch),
           26, 26, 4, 4, 1e-9)

# product_ab: ordered product equals expm of summed exponent
basis = build_basis(20, 20); gens = build_generators(basis)
z = 0.15 * cmath.exp(0.25j)
pp = TiltParameters(kind="product_ab", xi_a=z, xi_b=z)
Dprod = displacement(pp, gens).matrix
Esum = (z * gens.op("K+a") - np.conj(z) * gens.op("K-a")
        + z * gens.op("K+b") - np.conj(z) * gens.op("K-b"))
print("product vs summed expm:", np.max(np.abs(Dprod - expm(Esum))))

# legacy deviation sets
for kind, prm in [("su11_two_mode", TiltParameters(kind="su11_two_mode", xi=0.3 * cmath.exp(0.2j))),
                  ("su2", TiltParameters(kind="su2", chi=0.3 * cmath.exp(0.2j))),
                  ("product_ab", TiltParameters(kind="product_ab", xi_a=0.2, xi_b=0.15 * cmath.exp(0.4j))),
                  ("su11_mode_a", TiltParameters(kind="su11_mode_a", xi_a=0.3)),
                  ("su11_mode_b", TiltParameters(kind="su11_mode_b", xi_b=0.3))]:
    devs = legacy_column_deviations(prm)
    diff = sorted(g for g, v in devs.items() if v > 1e-10)
    print(f"legacy diff {kind}: {diff}")

# reductions: contract examples + numeric conjugation in abstract reps
r = reduce_su11_form(5.0, 2.0, 2.0)
print("su11 (5,2,2): slope", r.eigen_slope, "k0c", r.k0_coefficient, "theta", r.theta,
      "expected theta", math.atanh(4.0 / 5.0))
kp, km, k0 = su11_rep_matrices(0.75, 80)
A = 5.0 * k0 + 2.0 * kp + 2.0 * km
Dr = expm(r.xi * kp - np.conj(r.xi) * km)
res = Dr.conj().T @ A @ Dr - r.k0_coefficient * k0
print("su11 reduction conj residual (interior 40):", np.max(np.abs(res[:40, :40])))

for args, exc in [((2.0, 1.0, 1.0), DegenerateReductionError),
                  ((1.0, 2.0, 2.0), HyperbolicDomainError),
                  ((0.5, 0.3j, -0.3j), HyperbolicDomainError),
                  ((1.0, 0.5, 0.0), InvalidArgumentError)]:
    try:
        reduce_su11_form(*args)
        print("ERROR: no exception for", args)
    except exc:
        print("ok:", args, "->", exc.__name__)

# complex Hermitian pair
rc = reduce_su11_form(5.0, 2.0 * cmath.exp(0.9j), 2.0 * cmath.exp(-0.9j))
print("su11 complex: slope", rc.eigen_slope, "k0c", rc.k0_coefficient)
A = 5.0 * k0 + 2.0 * cmath.exp(0.9j) * kp + 2.0 * cmath.exp(-0.9j) * km
Dr = expm(rc.xi * kp - np.conj(rc.xi) * km)
res = Dr.conj().T @ A @ Dr - rc.k0_coefficient * k0
print("  conj residual:", np.max(np.abs(res[:40, :40])))

r2 = reduce_su2_form(3.0, 2.0, 2.0)
print("su2 (3,2,2): slope", r2.eigen_slope, "j0c", r2.j0_coefficient,
      "theta", r2.theta, "expected", math.atan(4.0 / 3.0))
jp, jm, j0m = su2_rep_matrices(7/2)
A2 = 3.0 * j0m + 2.0 * jp + 2.0 * jm
Dr2 = expm(r2.chi * jp - np.conj(r2.chi) * jm)
print("su2 conj residual:", np.max(np.abs(Dr2.conj().T @ A2 @ Dr2 - r2.j0_coefficient * j0m)))
l1, l2 = 1.3, 0.7
r3 = reduce_su2_form(l1**2 - l2**2, l1 * l2, l1 * l2)
print("su2 (l1^2-l2^2, l1l2): slope", r3.eigen_slope, "expected", l1**2 + l2**2)
r4 = reduce_su2_form(0.0, 1.5, 1.5)   # a0 = 0, a1a2 != 0 -> fine, angle pi/4
print("su2 a0=0: theta", r4.theta, "slope", r4.eigen_slope, "j0c", r4.j0_coefficient)
try:
    reduce_su2_form(0.0, 0.0, 0.0)
except DegenerateReductionError:
    print("ok: su2 all-zero -> DegenerateReductionError")

# perelomov su11 vs expm oracle
for k, n in [(0.5, 0), (0.25, 0), (0.75, 3), (1.0, 5)]:
    size = 90
    kp, km, k0 = su11_rep_matrices(k, size)
    xi = 0.3 * cmath.exp(0.8j)
    Dk = expm(xi * kp - np.conj(xi) * km)
    vec = Dk[:, n]
    ser = perelomov_state("su11", k, n, xi, length=30)
    dev = np.max(np.abs(ser - vec[:30]))
    print(f"perelomov su11 k={k} n={n}: dev {dev:.3e}, norm {np.linalg.norm(ser):.12f}")

# ground coefficient == (1-|zeta|^2)^k
nf = normal_form(0.3 * cmath.exp(0.8j))
ser = perelomov_state("su11", 0.5, 0, 0.3 * cmath.exp(0.8j), length=10)
print("ground coeff vs (1-|z|^2)^k:", abs(ser[0] - (1 - abs(nf.zeta) ** 2) ** 0.5))

# normal-form identity: expm(xi K+ - xi* K-)|k,0> = expm(zeta K+) e^{eta K0} |k,0>
kp, km, k0 = su11_rep_matrices(0.5, 90)
xi = 0.35 * cmath.exp(-0.6j)
nf = normal_form(xi)
lhs = expm(xi * kp - np.conj(xi) * km)[:, 0]
rhs = expm(nf.zeta * kp) @ (np.exp(nf.eta * np.diag(k0).real) * np.eye(90))[:, 0]
print("normal-form identity dev:", np.max(np.abs(lhs - rhs)))

# perelomov su2 vs expm oracle
for j, off in [(0.5, 0), (0.5, 1), (1.5, 0), (1.5, 2), (3.0, 4)]:
    jp, jm, j0m = su2_rep_matrices(j)
    chi = 0.4 * cmath.exp(-0.3j)
    Dj = expm(chi * jp - np.conj(chi) * jm)
    vec = Dj[:, off]
    ser = perelomov_state("su2", j, off, chi)
    dev = np.max(np.abs(ser - vec))
    print(f"perelomov su2 j={j} off={off}: dev {dev:.3e}, norm {np.linalg.norm(ser):.12f}")

# xi = 0 trivial
print("xi=0 su11:", perelomov_state("su11", 0.5, 2, 0.0, length=5))
print("trivial displacement is identity:",
      np.max(np.abs(displacement(TiltParameters(kind="su11_two_mode", xi=0.0),
                                 build_generators(build_basis(4, 4))).matrix
                    - np.eye(25))))
