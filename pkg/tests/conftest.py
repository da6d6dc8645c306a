import time
from pathlib import Path

import numpy as np
import pytest

from poncelet.chain import SmoothSmooth, SingularInscribed
from poncelet.pencil import tangent_normal_form_matrices
from poncelet.projective import Conic, ProjPoint, SingularDualConic

GOLDEN_DIR = Path(__file__).parent / "golden"

_criteria: dict[tuple[int, str], tuple[bool, str]] = {}


def tangent_scenario(alpha, beta=1.0, gamma=0.0) -> SmoothSmooth:
    c, g = tangent_normal_form_matrices(alpha, beta, gamma)
    return SmoothSmooth(Conic(g), Conic(c))


def inscribed_scenario(alpha) -> SingularInscribed:
    """Unit circle with the point pair C1 = [1:0:0], C2 = [alpha:1:0]."""
    return SingularInscribed(
        Conic(np.diag([1.0, 1.0, -1.0])),
        SingularDualConic(ProjPoint([1.0, 0.0, 0.0]), ProjPoint([alpha, 1.0, 0.0])),
    )


class Criterion:
    """Times a block and records a PASS/FAIL line for the terminal summary."""

    def __init__(self, number: int, title: str):
        self.number, self.title = number, title
        self.details: list[str] = []

    def note(self, text: str):
        self.details.append(text)

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        self.elapsed = time.perf_counter() - self.t0
        ok = exc_type is None
        extra = "; ".join(self.details)
        if exc is not None:
            extra = (extra + "; " if extra else "") + f"{exc_type.__name__}: {str(exc).splitlines()[0] if str(exc) else ''}"
        line = f"criterion {self.number:>2} {'PASS' if ok else 'FAIL'} [{self.elapsed:.2f}s] {self.title}" + (
            f" ({extra})" if extra else ""
        )
        print(line)
        _criteria[(self.number, self.title)] = (ok, line)
        return False


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_criteria):
        terminalreporter.write_line(_criteria[k][1])
