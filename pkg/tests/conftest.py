import pytest

_RESULTS = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_RESULTS] = {}


@pytest.fixture
def criterion(request):
    """Record ``(key, title, ok, detail)`` for the acceptance summary."""
    results = request.config.stash[_RESULTS]

    def record(key, title, ok, detail=""):
        results[str(key)] = (title, bool(ok), detail)
        return ok

    return record


def _sort_key(key):
    digits = "".join(ch for ch in key if ch.isdigit())
    return int(digits or 0), key


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(_RESULTS, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results, key=_sort_key):
        title, ok, detail = results[key]
        line = f"{'PASS' if ok else 'FAIL'}  {key:>3}  {title}"
        terminalreporter.write_line(line + (f"  [{detail}]" if detail else ""))
