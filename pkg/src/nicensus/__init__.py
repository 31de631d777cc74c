"""nicensus: exact and sampled censuses of nilpotent-independent matrix families.

Subpackages by layer: ``gf`` (finite fields), ``poly`` (univariate
polynomials, factorization, Galois orbits), ``matrix`` (exact linear
algebra), ``embed`` (the M(c, q^b) -> M(bc, q) blow-up and primary
cyclic membership), ``census`` (flag-sum identities, brute force),
``quokka`` (torus class sums and bounds), ``estimate`` (seeded Monte
Carlo), ``cli`` (command-line surface and verification suites).
"""

__version__ = "0.1.0"

from . import gf, poly, matrix, embed, census, quokka, estimate  # noqa: F401,E402
