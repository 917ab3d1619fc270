"""Two-mode sp(4,R) boson algebra, tilting transformations, and exact
two-level interaction spectra, with a numeric oracle backing every closed
form.

Modules:
    linalg       dense complex kernels (expm, Hermitian eigensolve, fits)
    fock         truncated two-mode Fock basis and ladder operators
    algebra      the ten generators, commutator audits, discrete series
    tilt         displacement operators, closed-form conjugation, coherent
                 states, su(1,1)/su(2) reductions
    hamiltonian  the two-level two-mode interaction model and its tilting
                 pipeline to a diagonal form
    models       named parameter presets and their published spectra
    verify       spectrum oracles, comparisons, verification reports
    cli          command-line interface (spectrum / verify / coherent /
                 wavefunction)
"""

__version__ = "0.1.0"
