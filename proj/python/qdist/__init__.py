"""Finite-field distance-set verification laboratory."""

import json

from ._qdist import (
    CapExceeded,
    ConfigError,
    Field,
    PointSet,
    distance_set,
    distance_sumset,
    dft,
    energy,
    gauss_explicit,
    gauss_sum,
    iosevich_rudnev_threshold,
    isotropic_subspace,
    kloosterman,
    pair_counts,
    product_set,
    restriction_masses,
    restriction_masses_autocorrelation,
    run_cli,
    sphere,
    sphere_sizes,
    triple_count,
    twisted_kloosterman,
    variety_v0,
)
from . import _qdist

PAIR_CHECKS = (
    "sumset",
    "cs-bound",
    "lemma33",
    "proof-chain",
    "prop41",
    "shparlinski",
    "triple",
    "restriction",
    "mass-identity",
)


def pair_report(e, f, check):
    """Run one per-pair check on (E, F) and return the report as a dict."""
    if check not in PAIR_CHECKS:
        raise ValueError(f"unknown check {check!r}")
    return json.loads(_qdist._pair_report(e, f, check))


def gauss_report(field):
    return json.loads(_qdist._gauss_report(field))


def sphere_ft_report(field, d):
    return json.loads(_qdist._sphere_ft_report(field, d))


def v0_report(field, d):
    return json.loads(_qdist._v0_report(field, d))


def isotropic_report(field, d):
    return json.loads(_qdist._isotropic_report(field, d))


def check(*args):
    """`qdist check ...` in-process: returns (status, list of report dicts, stderr)."""
    code, out, err = run_cli(["check", *map(str, args)])
    return code, [json.loads(line) for line in out.splitlines() if line], err
