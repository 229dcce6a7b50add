"""Exact symbolic toolkit for genus-6 Prym curves via 4-nodal conic bundles.

Submodules:
  exactalg    - exact rational polynomials and fraction-free linear algebra
  planesys    - resultant elimination for plane systems, over Q or GF(p)
  chow        - intersection rings, Riemann-Roch, Euler-number counts
  conicbundle - constructive engine and nodality certificates
  moduli      - divisor-class ledger and the slope bounds
  cli         - command-line front end
"""

from . import chow, cli, conicbundle, exactalg, moduli, planesys

__all__ = ["chow", "cli", "conicbundle", "exactalg", "moduli", "planesys"]
__version__ = "1.0.0"
