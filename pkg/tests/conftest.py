from pathlib import Path

import pytest

from eventsrl.pipeline import Models, PipelineConfig, Resources, build_tagger
from eventsrl.resources import bundled_corpus

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def fixture_xes():
    return DATA / "three_traces.xes"


@pytest.fixture(scope="session")
def config():
    return PipelineConfig()


@pytest.fixture(scope="session")
def bundled_tagger(config):
    res = Resources.load(config)
    return build_tagger(bundled_corpus(), res, config)


@pytest.fixture(scope="session")
def models(config):
    return Models.prepare(config)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is not None and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in module.RESULTS:
            terminalreporter.write_line(line)
