import pytest

# (criterion, ok, text) tuples appended by the acceptance tests
ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def report_line():
    def add(criterion: str, ok: bool, text: str) -> bool:
        ACCEPTANCE.append((criterion, ok, text))
        print(f"{'PASS' if ok else 'FAIL'} {criterion} {text}")
        return ok

    return add


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit, ok, text in ACCEPTANCE:
        tr.write_line(f"  {'PASS' if ok else 'FAIL'}  {crit}  {text}")
    tr.write_line("")
    seen: dict[str, list[bool]] = {}
    for crit, ok, _ in ACCEPTANCE:
        seen.setdefault(crit.split("[")[0], []).append(ok)
    for crit, oks in seen.items():
        tr.write_line(f"{'PASS' if all(oks) else 'FAIL'} {crit} ({sum(oks)}/{len(oks)} parts)")
