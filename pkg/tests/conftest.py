from pathlib import Path

import pytest

GOLDEN_DIR = Path(__file__).parent / "golden"


def pytest_addoption(parser):
    parser.addoption(
        "--update-goldens",
        action="store_true",
        help="rewrite golden files from current outputs instead of comparing",
    )


@pytest.fixture
def golden(request):
    """Compare *content* against a committed golden file, byte for byte."""

    def check(name: str, content: str):
        path = GOLDEN_DIR / name
        if request.config.getoption("--update-goldens"):
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_bytes(content.encode("utf-8"))
            return
        assert path.exists(), f"golden file {name} missing; run pytest --update-goldens"
        expected = path.read_bytes().decode("utf-8")
        assert content == expected, f"output differs from golden {name}"

    return check
