"""Discrete tempered distributions, crystals and their spectra."""

import json

from ._core import *  # noqa: F401,F403
from ._core import _detect_crystal_json, _verify_json


def detect_crystal(points):
    """Crystal or not-crystal document (as a dict) for a PointSet."""
    return json.loads(_detect_crystal_json(points))


def verify_hypotheses(f, radius):
    """Hypothesis report (as a dict) for f on the ball of the given radius."""
    return json.loads(_verify_json(f, radius))
