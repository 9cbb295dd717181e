import os
import tempfile

# Loggers are built when the services are first imported
os.environ.setdefault("LOG_PATH", tempfile.mkdtemp(prefix="nt-codes-logs-"))

import pytest  # noqa: E402

from app.services.code_builder import hamming_code  # noqa: E402
from app.services.finite_field import field_new  # noqa: E402


@pytest.fixture
def gf2():
    return field_new(2)


@pytest.fixture
def gf3():
    return field_new(3)


@pytest.fixture
def gf4():
    return field_new(2, 2)


@pytest.fixture
def gf5():
    return field_new(5)


@pytest.fixture
def gf8():
    return field_new(2, 3)


@pytest.fixture
def gf9():
    return field_new(3, 2)


@pytest.fixture
def binary_hamming():
    return hamming_code(2, 3)
