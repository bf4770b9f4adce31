"""becgw: phonon-based gravitational-wave detection toolkit for
Bose-Einstein condensates.

Thermal two-mode squeezed phonon states, the resonant wave-induced
squeezing channel, quantum/classical Fisher information, and the
resulting strain-sensitivity bounds.
"""

__version__ = "0.1.0"

from .bec import ModePair, PhysicalParams, initial_state, mode_frequency
from .channel import (BogoliubovSet, ChannelModel, WaveParams,
                      channel_squeezing, channel_symplectic, evolved_state,
                      resonant_frequency)
from .errors import (BecgwError, CalibrationError, ConfigError, NumericError,
                     RegimeError)
from .gaussian import (symplectic_eigenvalues, symplectic_form,
                       two_mode_squeezer, vacuum)
from .metrology import (classical_fisher, phonon_distribution, qfi,
                        strain_qfi, uhlmann_fidelity)
from .sweep import SweepTable, cramer_rao_bound, scan, sensitivity_density
