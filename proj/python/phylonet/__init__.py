from ._phylonet import (
    GuardExceeded,
    hn,
    hn_to_ruhn,
    ndp_to_utc,
    ruhn,
    set_threads,
    tbr_distance,
    uhn,
    utc,
    utc_certificate,
)

__all__ = [
    "GuardExceeded",
    "hn",
    "hn_to_ruhn",
    "ndp_to_utc",
    "ruhn",
    "set_threads",
    "tbr_distance",
    "uhn",
    "utc",
    "utc_certificate",
]
