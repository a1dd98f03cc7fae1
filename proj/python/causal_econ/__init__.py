"""Qualitative causal reasoning over signed diagrams.

Diagram arguments accept a fixture name, diagram DSL text, or a dict in the
JSON shape returned by :func:`load`.
"""

import json as _json

from . import _core
from ._core import Error, ParseError, fixture_names, format_percent, g_multiplier, t_multiplier

__all__ = [
    "Error",
    "ParseError",
    "class_stats",
    "fixture_names",
    "format_percent",
    "g_multiplier",
    "grade",
    "load",
    "loops",
    "propagate",
    "skeleton",
    "t_multiplier",
    "to_dot",
    "to_dsl",
    "trace",
]


def _source(diagram):
    if isinstance(diagram, dict):
        return _json.dumps(diagram)
    return diagram


def load(diagram):
    return _json.loads(_core.load(_source(diagram)))


def to_dsl(diagram):
    return _core.to_dsl(_source(diagram))


def to_dot(diagram):
    return _core.to_dot(_source(diagram))


def skeleton(diagram):
    return _core.skeleton(_source(diagram))


def loops(diagram):
    return _json.loads(_core.loops(_source(diagram)))


def propagate(diagram, var, dir="up", target=None, freeze=()):
    return _json.loads(_core.propagate(_source(diagram), var, dir, target, list(freeze)))


def trace(kind, mpc, delta=1.0, rounds=10):
    return _json.loads(_core.trace(kind, mpc, delta, rounds))


def grade(reference, sheet):
    return _json.loads(_core.grade(_source(reference), sheet))


def class_stats(values):
    return _json.loads(_core.class_stats(list(values)))
