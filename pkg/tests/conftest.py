import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from awbench.interchange import FIXTURE_DIR, load_document  # noqa: E402


@pytest.fixture
def fixture():
    def load(name, **params):
        return load_document(name, {k: str(v) for k, v in params.items()}).value

    return load


def fixture_names(kind=None, expect=None):
    out = []
    for path in sorted(FIXTURE_DIR.glob("*.json")):
        doc = load_document(str(path))
        if (kind is None or doc.kind == kind) and (expect is None or doc.meta.get("expect") == expect):
            out.append(path.stem)
    return out


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[number])
