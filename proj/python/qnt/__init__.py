"""Exact state-vector simulation of quantum counting pipelines over
number-theoretic oracles.

The heavy lifting lives in the compiled extension ``qnt._core``; this
package adds thin wrappers that parse pipeline reports into dicts.
"""

import json as _json

from ._core import (
    ConfigError,
    CapacityError,
    alpha_closed_form,
    count_witnesses,
    decompose_odd,
    estimate_from_outcome,
    is_witness,
    mod_pow,
    pair_flip_residual,
    peak_position,
    predict_distribution,
    prime_flip_residual,
    r2_pairs,
    sieve_pi,
    sinc_weight,
    strong_liars,
    zero_probability,
)
from . import _core

__all__ = [
    "ConfigError",
    "CapacityError",
    "alpha_closed_form",
    "count_witnesses",
    "decompose_odd",
    "estimate_from_outcome",
    "is_witness",
    "mod_pow",
    "pair_flip_residual",
    "peak_position",
    "predict_distribution",
    "prime_flip_residual",
    "r2_pairs",
    "sieve_pi",
    "sinc_weight",
    "strong_liars",
    "zero_probability",
    "witness",
    "count",
    "primality",
    "pnt",
    "hl",
]


def witness(k):
    """Brute-force strong-witness report for k."""
    return _json.loads(_core.witness_report_json(k))


def count(k, p=8, r=1, reps=1, seed=0):
    """Counting transform over the witness oracle of k."""
    return _json.loads(_core.count_report_json(k, p, r, reps, seed))


def primality(k, p=8, r=1, seed=0):
    """Quantum primality test of k."""
    return _json.loads(_core.primality_report_json(k, p, r, seed))


def pnt(n, p=8, q=16, reps=1, seed=0, delta=0.0):
    """Count the primes below n and compare against n/ln n."""
    return _json.loads(_core.pnt_report_json(n, p, q, reps, seed, delta))


def hl(two_n, p=8, q=16, reps=1, seed=0, nu=0.5, mu=2.0):
    """Count ordered prime-pair representations of an even 2N."""
    return _json.loads(_core.hl_report_json(two_n, p, q, reps, seed, nu, mu))
