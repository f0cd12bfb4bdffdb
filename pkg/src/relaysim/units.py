"""dB / linear conversion helpers used across the package."""

import numpy as np


def to_db(linear):
    """Linear power ratio -> dB."""
    return 10.0 * np.log10(linear)


def from_db(db):
    """dB -> linear power ratio."""
    return np.power(10.0, np.asarray(db, dtype=float) / 10.0)


def mw_to_dbm(p_mw):
    return 10.0 * np.log10(p_mw)


def dbm_to_mw(p_dbm):
    return np.power(10.0, np.asarray(p_dbm, dtype=float) / 10.0)
