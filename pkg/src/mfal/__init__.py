"""Exact computer algebra for modular forms and the Lie algebras they span.

Modules:
  qseries       truncated q-expansions over Q with rational exponents
  modforms      named forms (Eisenstein, theta, eta, Klein, Hauptmoduls)
  quasimodular  the polynomial ring Q[tau, E2, E4, E6, 1/(2 pi i)]
  liealg        root systems, Chevalley bases, sl2 triples, Sym^n
  vvmf          the intertwiner Phi_n and Hilbert series
  alia          weight-zero bracket tables over C[j], two-route certified
  loopext       polyhedral loop algebras, residue cocycles, Onsager
  cli           the `mfal` command
"""

__version__ = "0.1.0"
