import math

import numpy as np

from sp4r.errors import InvalidArgumentError
from sp4r.hamiltonian import closed_form_spectrum
from sp4r.models import model_spectrum, preset

print("== jc ==")
p = preset("jc", omega0=3.0, omega1=1.0, kappa=1.0)
assert p.params.is_hermitian
ep, em = model_spectrum(p, 3)
print(f"   E(3) = {ep:.7f}, {em:.7f}  (expect 3.5 +- sqrt5)")
assert abs(ep - (3.5 + math.sqrt(5))) < 1e-12
ip, im_ = p.interaction_spectrum(3)
assert abs(ip - math.sqrt(5)) < 1e-12

print("== dirac ==")
p = preset("dirac", m=1.0, c=1.0, omega=0.1)
assert not p.params.is_hermitian
ep, em = model_spectrum(p, 0)
print(f"   E(0) = {ep:.7f}  (expect sqrt(0.6)={math.sqrt(0.6):.7f})")
assert abs(ep - math.sqrt(0.6)) < 1e-12
e3 = model_spectrum(p, 3)[0]
print(f"   E(3) = {e3}  (expect non-real)")
assert isinstance(e3, complex) and abs(e3.imag) > 0.1

print("== generalized_jc ==")
p = preset("generalized_jc", f=0.3, g=0.7, mc2=1.0)
assert p.params.is_hermitian
for n in range(0, 16, 5):
    ep = model_spectrum(p, n)[0]
    assert abs(ep - math.sqrt(0.4 * n + 1.0)) < 1e-12, (n, ep)
ep4 = model_spectrum(preset("generalized_jc", f=0.0, g=1.0, mc2=1.0), 4)[0]
print(f"   |g|^2-|f|^2=1: E(4) = {ep4:.7f} (expect sqrt5)")
assert abs(ep4 - math.sqrt(5)) < 1e-12

print("== mjc ==")
p = preset("mjc", omega0=2.0, omega1=1.0, omega2=1.0, lambda1=1.0, lambda2=1.0)
assert p.params.is_hermitian
ep, em = model_spectrum(p, 0, 0)
print(f"   E(0,0) = {ep:.7f}, {em:.7f}  (expect 1+-sqrt2)")
assert abs(ep - (1 + math.sqrt(2))) < 1e-12 and abs(em - (1 - math.sqrt(2))) < 1e-12

print("== jc_ajc ==")
p = preset("jc_ajc", omega0=0.0, omega1=1.0, omega2=1.0, lambda1=2.0, lambda2=1.0)
assert p.params.is_hermitian
ep, em = model_spectrum(p, 0, 0)
print(f"   E(0,0) = {ep:.7f}, {em:.7f}  (expect +-sqrt3)")
assert abs(ep - math.sqrt(3)) < 1e-12 and abs(em + math.sqrt(3)) < 1e-12

print("== preset-through-pipeline consistency ==")
cases = [
    preset("jc", omega0=3.0, omega1=1.0, kappa=1.0),
    preset("generalized_jc", f=0.3, g=0.7, mc2=1.0),
    preset("mjc", omega0=2.0, omega1=0.7, omega2=0.4, lambda1=0.9, lambda2=0.5),
    preset("jc_ajc", omega0=1.0, lambda1=2.0, lambda2=1.0),
    preset("dirac", m=1.0, c=1.0, omega=0.1),
]
for p in cases:
    table = closed_form_spectrum(p.params, 6)
    worst = 0.0
    for entry in table.entries:
        if entry.flag == "non-real":
            continue
        if p.is_two_mode:
            ip = p.interaction_spectrum(entry.n, entry.m_n)[0]
        else:
            ip = p.interaction_spectrum(entry.n_a)[0]
        worst = max(worst, abs(entry.e_plus - ip))
    print(f"   {p.name:15s} max |closed - printed interaction| = {worst:.2e}")
    assert worst < 1e-9, (p.name, worst)

print("== index validation ==")
try:
    model_spectrum(preset("mjc", lambda1=1.0, lambda2=1.0), 3, 2)
    raise SystemExit("no error for bad parity")
except InvalidArgumentError:
    print("   bad (n,m) parity -> InvalidArgumentError: ok")
try:
    preset("jc", kappa=1.0, bogus=2.0)
    raise SystemExit("no error for unknown key")
except InvalidArgumentError:
    print("   unknown key -> InvalidArgumentError: ok")
try:
    preset("rabi", kappa=1.0)
    raise SystemExit("no error for unknown preset")
except InvalidArgumentError:
    print("   unknown preset -> InvalidArgumentError: ok")

print("ALL MODEL SMOKE CHECKS PASSED")
