import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hlgf.complexes import build_builtin


@pytest.fixture(scope="session")
def five():
    return build_builtin("s2_five_vertex")


@pytest.fixture(scope="session")
def tetra():
    return build_builtin("s2_tetra")


@pytest.fixture(scope="session")
def penta():
    return build_builtin("s3_pentachoron")
