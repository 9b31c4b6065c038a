import logging
import os
from contextlib import suppress

import pytest

from ncfem.mesh import build_mesh
from ncfem.utils.config import load_config
from ncfem.utils.logger import LOG_FORMAT, logger

logger.enable('ncfem')
logger.level('testing', no=15, color='<light-blue>')

# One log file per test session, rotated on the session banner.
LOG_FILE = os.path.join(os.getenv('NCFEM_LOG_DIR', 'logs'), 'ncfem-testing.log')
SESSION_BANNER = f'ncfem test session, logging to {LOG_FILE}'
logger.add(LOG_FILE,
           format=LOG_FORMAT,
           backtrace=True,
           diagnose=True,
           rotation=lambda message, _: SESSION_BANNER in message,
           level='TRACE')
logger.log('testing', SESSION_BANNER)


def _log_testing(*lines):
    with suppress(Exception):
        for line in lines:
            logger.log('testing', line)


def pytest_runtest_logstart(nodeid, location):
    """ Mark the start of a test item in the testing log. """
    _log_testing('=' * 80, f'START {nodeid}')


def pytest_runtest_logfinish(nodeid, location):
    _log_testing(f'END {nodeid}', '=' * 80)


def pytest_runtest_logreport(report):
    """ Copy the failure report, and any captured output, into the testing log. """
    if report.outcome != 'failed':
        return
    lines = [f'FAILED {report.nodeid} during {report.when}', report.longreprtext]
    for stream, text in (('stdout', report.capstdout), ('stderr', report.capstderr)):
        if text:
            lines.append(f'Captured {stream} during {report.when}:\n{text}')
    _log_testing(*lines)


@pytest.fixture
def output_dir(tmp_path):
    directory = tmp_path / 'output'
    directory.mkdir(exist_ok=True)
    return str(directory)


@pytest.fixture
def config(output_dir):
    return load_config(overrides=dict(output=dict(directory=output_dir)))


@pytest.fixture(scope='session')
def mesh_4x4():
    return build_mesh((4, 4))


@pytest.fixture(scope='session')
def mesh_8x8():
    return build_mesh((8, 8))


@pytest.fixture(scope='session')
def mesh_odd():
    return build_mesh((3, 4))


@pytest.fixture(scope='session')
def mesh_2x2x2():
    return build_mesh((2, 2, 2))


@pytest.fixture()
def caplog(caplog):
    class PropagatedHandler(logging.Handler):
        def emit(self, record):
            logging.getLogger(record.name).handle(record)

    handler_id = logger.add(PropagatedHandler(), format="{message}")
    yield caplog
    with suppress(ValueError):
        logger.remove(handler_id)
