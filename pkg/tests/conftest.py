import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--run-long", action="store_true", default=False,
        help="run the long-marked acceptance checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-long"):
        return
    skip = pytest.mark.skip(reason="long check; enable with --run-long")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)
