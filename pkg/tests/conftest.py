import time

import pytest


class Criterion:
    def __init__(self, lines, number, title, budget):
        self.lines = lines
        self.number = number
        self.title = title
        self.budget = budget
        self.notes = []
        self.ok = True

    def check(self, ok, note):
        self.notes.append(("ok " if ok else "BAD ") + note)
        self.ok = self.ok and bool(ok)

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        dt = time.perf_counter() - self.t0
        if exc_type is not None:
            self.ok = False
            self.notes.append(f"error {exc_type.__name__}: {exc}")
        within = self.budget is None or dt <= self.budget
        verdict = "PASS" if self.ok and within else "FAIL"
        budget = "" if self.budget is None else f" / budget {self.budget:g}s"
        line = f"[{verdict}] criterion {self.number}: {self.title} ({dt:.2f}s{budget})"
        self.lines.append(line + "".join(f"\n         {n}" for n in self.notes))
        print(self.lines[-1])
        assert within, f"over budget: {dt:.1f}s > {self.budget}s"
        return False


@pytest.fixture
def criterion(request):
    lines = request.config.__dict__.setdefault("_acceptance_lines", [])

    def make(number, title, budget=None):
        return Criterion(lines, number, title, budget)
    return make


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "_acceptance_lines", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
