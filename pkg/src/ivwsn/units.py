import numpy as np

G = 9.81  # m/s^2


def dbm_to_mw(dbm):
    return 10.0 ** (np.asarray(dbm, dtype=float) / 10.0)


def mw_to_dbm(mw):
    return 10.0 * np.log10(mw)


def db_distance(d, reference_m=0.01):
    """Distance expressed as 10*log10(d / d_ref)."""
    return 10.0 * np.log10(np.asarray(d, dtype=float) / reference_m)
