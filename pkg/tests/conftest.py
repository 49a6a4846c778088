from click.testing import CliRunner
from loguru import logger
import pytest

from kstruve.struve import StruveParams


@pytest.fixture
def log_messages():
    """Collect the package's loguru messages of level WARNING and above."""
    messages = []
    logger.enable("kstruve")
    handler_id = logger.add(messages.append, level="WARNING", format="{message}")
    yield messages
    logger.remove(handler_id)
    logger.disable("kstruve")


@pytest.fixture
def cli_runner():
    """A click runner; the CLI installs its own stderr sink, removed afterwards."""
    yield CliRunner()
    logger.remove()
    logger.disable("kstruve")


@pytest.fixture
def classical():
    """Parameters of the classical Struve function H_0."""
    return StruveParams(0.0, 1.0, 1.0)


@pytest.fixture(
    params=[
        (-0.4, 0.5, 1.0),
        (0.0, 1.0, -1.0),
        (0.5, 1.0, 1.0),
        (1.0, 2.0, 1.0),
        (2.0, 0.5, -1.0),
        (4.0, 2.0, 1.0),
    ],
    ids=lambda p: f"nu={p[0]}k,k={p[1]},c={p[2]}",
)
def identity_params(request):
    """A spread of (nu, k, c) with nu > -k/2, nu given as a multiple of k."""
    nu_over_k, k, c = request.param
    return StruveParams(nu_over_k * k, k, c)
