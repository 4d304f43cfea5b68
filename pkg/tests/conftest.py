import sys
from pathlib import Path

import pytest

# so `import oracles` works from any test module
sys.path.insert(0, str(Path(__file__).parent))

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def worked_example_path() -> Path:
    return FIXTURES / "worked_example.jsonl"


@pytest.fixture
def lexicon_dir() -> Path:
    return FIXTURES / "lexicons"


@pytest.fixture
def user_meta_path() -> Path:
    return FIXTURES / "user_meta.tsv"
