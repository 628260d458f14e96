# Copyright 2026 Canonical Ltd.
# See LICENSE file for licensing details.

import argparse

import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--census-max-n",
        type=int,
        help="Largest width whose expanded circuits are counted against the T-count formulas",
    )
    parser.addoption(
        "--run-slow",
        action="store_true",
        default=False,
        help="Run tests marked slow",
    )


def pytest_configure(config):
    if config.option.census_max_n is not None and config.option.census_max_n < 2:
        raise argparse.ArgumentError(None, "--census-max-n must be at least 2")
    # Note: keep the default in sync with resources.CROSS_CHECK_MAX_N
    if config.option.census_max_n is None:
        config.option.census_max_n = 64


def pytest_collection_modifyitems(config, items):
    if config.option.run_slow:
        return
    skip_slow = pytest.mark.skip(reason="needs --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def census_max_n(request):
    return request.config.option.census_max_n
