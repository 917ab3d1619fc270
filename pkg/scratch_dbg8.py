import cmath
import math

import numpy as np

from sp4r import tilt
from sp4r.algebra import GENERATOR_ORDER, build_generators
from sp4r.fock import FockBasis, interior_indices
from sp4r.hamiltonian import ModelParams, alpha_coefficients, tilt_pipeline, uncoupled_operator
from sp4r.linalg import least_squares_expand

rng = np.random.default_rng(7)
m = 0.8
k1 = m * cmath.exp(0.3j)
k3 = m * cmath.exp(-1.1j)
p = ModelParams.with_hermitian_couplings(kappa1=k1, kappa3=k3)
al = alpha_coefficients(p)
res = tilt_pipeline(al)
print("path", res.path, "chi", res.chi)
print("final vector:")
for lab, v in zip(tilt.COEFF_BASIS, res.final_vector):
    if abs(v) > 1e-13:
        print(f"   {lab:5s} {v:.6f}")

basis = FockBasis(14, 14)
gens = build_generators(basis)
stage = res.displacements()[0]
print("stage:", stage)
D = tilt.displacement(stage, gens)
op = uncoupled_operator(p, basis).matrix
conj = D.matrix.conj().T @ op @ D.matrix
idx = interior_indices(basis, 8)
sub = np.ix_(idx, idx)
span = [gens.op(lab)[sub] for lab in GENERATOR_ORDER]
span.append(np.eye(len(idx), dtype=np.complex128))
coeffs, resid = least_squares_expand(conj[sub], span)
print("numeric conjugation expansion (resid %.2e):" % resid)
for lab, v in zip(tilt.COEFF_BASIS, coeffs):
    if abs(v) > 1e-10:
        print(f"   {lab:5s} {v:.6f}")

# forward check: M(chi) c0 vs expansion
c2 = tilt.transform_matrix(stage) @ al.coefficient_vector()
print("M(chi) c0:")
for lab, v in zip(tilt.COEFF_BASIS, c2):
    if abs(v) > 1e-13:
        print(f"   {lab:5s} {v:.6f}")

# and the opposite sign
c2m = tilt.transform_matrix(tilt.TiltParameters(kind="su2", chi=-stage.chi)) @ al.coefficient_vector()
print("M(-chi) c0:")
for lab, v in zip(tilt.COEFF_BASIS, c2m):
    if abs(v) > 1e-13:
        print(f"   {lab:5s} {v:.6f}")
