from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"
CORPUS = sorted(FIXTURES.glob("*.xml"))


@pytest.fixture
def center_bytes():
    return (FIXTURES / "center.xml").read_bytes()


@pytest.fixture
def center_doc(center_bytes):
    from lmfkit.tei import parse_document

    report = parse_document(center_bytes, external_ids=["dead_form"])
    assert report.ok, report.diagnostics
    return report


@pytest.fixture
def center_etym():
    from lmfkit.tei import parse_document

    report = parse_document((FIXTURES / "center-etym.xml").read_bytes(), filename="center-etym.xml")
    assert report.ok, report.diagnostics
    return report.value


@pytest.fixture
def corpus_paths():
    return list(CORPUS)


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_RESULTS: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_RESULTS):
            terminalreporter.write_line(line)
