from __future__ import annotations

from pathlib import Path

import pytest

from fpf.kernel.checker import check_script
from fpf.parser import parse_script
from fpf.render.catalog import load_catalog
from fpf.stdlib import load_stdlib

CORPUS = Path(__file__).resolve().parent.parent / "src" / "fpf" / "corpus"
GOLDEN = Path(__file__).resolve().parent / "golden"


def corpus_text(name: str) -> str:
    return (CORPUS / f"{name}.fpf").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def stdlib():
    return load_stdlib()


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


def _checked(name: str):
    return check_script(parse_script(corpus_text(name)))


@pytest.fixture(scope="session")
def and_comm_trace():
    return _checked("and_commutativity").traces[0]


@pytest.fixture(scope="session")
def exists_or_trace():
    return _checked("exists_or_distribution").traces[0]


@pytest.fixture(scope="session")
def sub_suc_trace():
    return _checked("sub_suc").traces[0]
