"""Shared fixtures: catalog curves, settings and a curve-spec file."""

import json

import pytest
from hypothesis import settings

from catalog import make_airy, make_pure_gravity, make_quadrangulation
from cli import DEFAULTS
from exact_arith import CoeffField

settings.register_profile("toporec", max_examples=25, deadline=None)
settings.load_profile("toporec")


@pytest.fixture
def config():
    return dict(DEFAULTS)


@pytest.fixture
def Q():
    return CoeffField("Q")


@pytest.fixture
def airy():
    return make_airy()


@pytest.fixture
def pure_gravity():
    return make_pure_gravity()


@pytest.fixture
def quadrangulation():
    """Quadrangulation curve at t4 = 1, gamma = 1/2, over Q."""
    curve, _ = make_quadrangulation(1, gamma="1/2")
    return curve


@pytest.fixture
def airy_spec_file(tmp_path):
    path = tmp_path / "airy.json"
    path.write_text(json.dumps({"field": "Q", "x": "z**2", "y": "z"}))
    return path
