import os
from pathlib import Path

import pytest

REPO_DB = Path(__file__).resolve().parents[1] / "wndb"


def wndb_path():
    path = os.environ.get("WNDB") or str(REPO_DB)
    return path if (Path(path) / "wn_s.pl").is_file() else None


@pytest.fixture(scope="session")
def wndb():
    path = wndb_path()
    if path is None:
        pytest.skip("WordNet fact files not found (set WNDB)")
    return path


@pytest.fixture(scope="session")
def wn(wndb):
    from wnflp.lexicon import WordNet
    return WordNet.open(wndb)


def pytest_collection_modifyitems(config, items):
    for item in items:
        if "wn" in getattr(item, "fixturenames", ()) or "wndb" in getattr(item, "fixturenames", ()):
            item.add_marker(pytest.mark.wordnet)


GATE_LINES = []


class _Gate:
    def __init__(self, number, title):
        self.number, self.title = number, title
        self.detail = ""
        self.blocking = True
        self.ok = None

    def __enter__(self):
        import time
        self._t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        import time
        ms = (time.perf_counter() - self._t0) * 1e3
        ok = exc_type is None if self.ok is None else (self.ok and exc_type is None)
        status = "PASS" if ok else "FAIL"
        if not self.blocking:
            status += " (informative)"
        detail = self.detail or (f"{exc_type.__name__}: {exc}" if exc_type else "")
        GATE_LINES.append(f"{status} criterion {self.number}: {self.title} [{ms:.0f} ms] {detail}".rstrip())
        return False


@pytest.fixture
def gate():
    return _Gate


def pytest_terminal_summary(terminalreporter):
    if GATE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(GATE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
