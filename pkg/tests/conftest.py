from pathlib import Path

import pytest

from udooc.source import normalize_text

DATA = Path(__file__).parent / "data"
ALICE = DATA / "alice29.txt"


@pytest.fixture(scope="session")
def alice_path() -> Path:
    if not ALICE.exists():
        pytest.skip("Alice corpus not available")
    return ALICE


@pytest.fixture(scope="session")
def alice(alice_path) -> str:
    return normalize_text(alice_path.read_bytes())
