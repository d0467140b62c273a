"""Python front end to the jetlc engine.

All values are exact: fractions travel as "num/den" strings.
"""

import json
from fractions import Fraction
from pathlib import Path

from ._jetlc import ConfigError, InputError, ParseError, eval_json, invariants_json, verify_json

__all__ = ["ConfigError", "InputError", "ParseError", "verify", "eval_form", "invariants", "fraction"]


def fraction(text):
    """Parses a "num/den" string into a Fraction."""
    return Fraction(text)


def verify(config, dimensions=None, seed=None):
    """Runs the verification suites. `config` is a dict or a path to a JSON file."""
    if isinstance(config, (str, Path)):
        config = json.loads(Path(config).read_text())
    config = dict(config)
    if dimensions is not None:
        config["dimensions"] = list(dimensions)
    if seed is not None:
        config["seed"] = seed
    return json.loads(verify_json(json.dumps(config)))


def eval_form(form, point, vectors):
    """Evaluates theta, vartheta, omega_hor, omega, curvature, p_k or euler_pf."""
    return json.loads(eval_json(form, json.dumps(point), json.dumps(vectors)))


def invariants(n, group="O", space="E"):
    """Invariant subspace of E, V3 or V4 under O(n) or SO(n)."""
    return json.loads(invariants_json(n, group, space))
