"""Package-wide numerical defaults. Override at runtime by assignment."""

#: generic float comparison tolerance
DEFAULT_TOL = 1e-9
#: an entry of a quon counts as nonzero above this magnitude
SUPPORT_TOL = 1e-7
#: seed for every pseudorandom sweep unless the caller passes one
DEFAULT_SEED = 20171205
#: largest coefficient table evaluated exhaustively by identity sweeps
SWEEP_CAP = 10**8
#: largest |Irr|**g handled by the brute-force genus fusion sum
BRUTE_FORCE_CAP = 10**7
