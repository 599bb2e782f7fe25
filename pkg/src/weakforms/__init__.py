"""weakforms: exact bases, CM traces and theta lifts for weakly holomorphic forms.

The package works with genus-zero odd prime levels (3, 5, 7 and 13) and the
associated quadruple levels 12, 20, 28 and 52, providing

* exact rational q-expansion arithmetic (:mod:`weakforms.qseries`),
* eta quotients, Eisenstein series and holomorphic form spaces
  (:mod:`weakforms.modforms`),
* canonical row-reduced bases of weakly holomorphic spaces, including the
  half-integral-weight plus spaces (:mod:`weakforms.spaces`),
* Heegner points and genus characters (:mod:`weakforms.heegner`),
* arbitrary-precision traces of iterated derivatives at CM points
  (:mod:`weakforms.traces`),
* theta lifts and Shimura-type maps with exact output (:mod:`weakforms.lifts`).
"""

from weakforms.qseries import QSeries
from weakforms.config import Config, load_config

__version__ = "0.1.0"

__all__ = ["QSeries", "Config", "load_config", "__version__"]
