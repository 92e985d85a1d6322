import json
import time
from dataclasses import dataclass
from pathlib import Path

import pytest

from toricert.pipeline import Certificate, build_counterexample, certificate_text


@dataclass
class Built:
    cert: Certificate
    text: str
    path: Path
    seconds: float


def _build(n: int, root: Path) -> Built:
    start = time.perf_counter()
    cert = build_counterexample(n)
    seconds = time.perf_counter() - start
    text = certificate_text(cert)
    path = root / f"cert{n}.json"
    path.write_text(text)
    return Built(cert, text, path, seconds)


@pytest.fixture(scope="session")
def built3(tmp_path_factory) -> Built:
    return _build(3, tmp_path_factory.mktemp("n3"))


@pytest.fixture(scope="session")
def built4(tmp_path_factory) -> Built:
    return _build(4, tmp_path_factory.mktemp("n4"))


@pytest.fixture(scope="session")
def built5(tmp_path_factory) -> Built:
    return _build(5, tmp_path_factory.mktemp("n5"))


@pytest.fixture
def cert3_data(built3) -> dict:
    return json.loads(built3.text)


ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def criterion():
    """Record one acceptance line; the test still asserts on its own."""

    def record(name: str, passed: bool, detail: str = "") -> bool:
        ACCEPTANCE.append((name, bool(passed), detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}" + (f"  ({detail})" if detail else ""))
