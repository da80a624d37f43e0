"""Shared physical constants.

All frequencies in this package are angular frequencies in rad/s (written
s^-1 throughout), lengths are in cm, times in s.
"""

#: Speed of light in cm/s.  Functions that need c accept it as a keyword so a
#: run can override it consistently; this is the package-wide default.
C_LIGHT = 2.998e10

#: Default optical carrier for the |1>-|3> transition, s^-1 (~750 nm).
OMEGA31_DEFAULT = 2.5e15
