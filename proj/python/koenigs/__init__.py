"""Python access to the koenigs numerics.

Sets and domains are plain dicts in the same shape the CLI reads from --set-file and
--domain-file; results come back as dicts.
"""

import json as _json

try:
    from . import _koenigs as _ext
except ImportError:  # in-tree build: the module sits on PYTHONPATH next to the package
    import _koenigs as _ext

KoenigsError = _ext.KoenigsError
KoenigsModel = _ext.KoenigsModel
alpha_coefficients = _ext.alpha_coefficients
geometric_grid = _ext.geometric_grid

__all__ = [
    "KoenigsError",
    "KoenigsModel",
    "alpha_coefficients",
    "capacity",
    "cli",
    "geometric_grid",
    "hardy_estimate",
    "harmonic_measure",
    "kn_capacity_experiment",
]


def capacity(compact_set, method="leja", k=128, m=128):
    return _json.loads(_ext.capacity(_json.dumps(compact_set), method, k, m))


def kn_capacity_experiment(compact_set, n_list):
    return _json.loads(_ext.kn_capacity_experiment(_json.dumps(compact_set), list(n_list)))


def harmonic_measure(domain, R, samples=100000, seed=0, epsilon=1e-6, workers=0):
    return _json.loads(_ext.harmonic_measure(_json.dumps(domain), R, samples, seed, epsilon, workers))


def hardy_estimate(domain, R_grid, samples=100000, seed=0, epsilon=1e-6, workers=0):
    return _json.loads(_ext.hardy_estimate(_json.dumps(domain), list(R_grid), samples, seed, epsilon, workers))


def cli(*args):
    """Run the command-line front end in-process; returns (exit_code, stdout, stderr)."""
    return _ext.cli([str(a) for a in args])
