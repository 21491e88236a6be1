"""Python access to the weyl_scope core.

Models and configs are passed as dicts; they are serialized to the same JSON
the command line tool reads.
"""

import json

from . import _core
from ._core import (
    Extension,
    FiniteTriple,
    WeylError,
    detect_report,
    fo_m,
    fo_operator_norms,
    green_residual,
    krein_residual,
    make_triple,
    random_triple,
)

__all__ = [
    "Extension",
    "FiniteTriple",
    "WeylError",
    "detect_report",
    "fo_m",
    "fo_operator_norms",
    "fr_m",
    "green_residual",
    "hl_eigenvalues",
    "hl_m_matrix",
    "hl_step_model",
    "krein_residual",
    "make_triple",
    "random_triple",
    "run",
    "triple_from_json",
]


def _dump(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def triple_from_json(data):
    return _core.triple_from_json(_dump(data))


def hl_step_model():
    return json.loads(_core.hl_step_model())


def hl_m_matrix(model, lam):
    return _core.hl_m_matrix(_dump(model), complex(lam))


def hl_eigenvalues(model, region):
    """Zeros of the M-matrix denominator in region = (re_min, re_max, im_min, im_max)."""
    return _core.hl_eigenvalues(_dump(model), *region)


def fr_m(model, lam):
    return _core.fr_m(_dump(model), complex(lam))


def run(command, config=None, seed=1729, tol=None):
    """Runs a CLI command in process; returns (exit_code, text)."""
    return _core.run(command, _dump(config if config is not None else {}), seed, tol)
