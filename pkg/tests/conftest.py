import numpy as np
import pytest

from dmfperiod import GrayImage

# 3-bit 8x20 example image and its hand-corrupted copy
CLEAN_EXAMPLE = np.array(
    [
        [6, 7, 0, 1, 2, 6, 7, 0, 1, 2, 6, 7, 0, 1, 2, 6, 7, 0, 1, 2],
        [1, 2, 4, 5, 0, 1, 2, 4, 5, 0, 1, 2, 4, 5, 0, 1, 2, 4, 5, 0],
        [5, 6, 7, 0, 1, 5, 6, 7, 0, 1, 5, 6, 7, 0, 1, 5, 6, 7, 0, 1],
        [7, 6, 5, 4, 3, 7, 6, 5, 4, 3, 7, 6, 5, 4, 3, 7, 6, 5, 4, 3],
        [6, 7, 0, 1, 2, 6, 7, 0, 1, 2, 6, 7, 0, 1, 2, 6, 7, 0, 1, 2],
        [1, 2, 4, 5, 0, 1, 2, 4, 5, 0, 1, 2, 4, 5, 0, 1, 2, 4, 5, 0],
        [5, 6, 7, 0, 1, 5, 6, 7, 0, 1, 5, 6, 7, 0, 1, 5, 6, 7, 0, 1],
        [7, 6, 5, 4, 3, 7, 6, 5, 4, 3, 7, 6, 5, 4, 3, 7, 6, 5, 4, 3],
    ]
)

NOISY_EXAMPLE = np.array(
    [
        [6, 7, 0, 1, 5, 6, 7, 0, 1, 2, 6, 7, 0, 1, 2, 6, 7, 0, 1, 2],
        [1, 2, 4, 5, 0, 1, 2, 4, 5, 0, 1, 2, 4, 5, 0, 1, 2, 4, 5, 0],
        [5, 6, 7, 0, 1, 5, 6, 7, 7, 1, 5, 6, 7, 0, 1, 5, 6, 7, 0, 1],
        [7, 6, 5, 4, 3, 7, 6, 5, 4, 3, 7, 6, 0, 4, 3, 7, 6, 5, 4, 3],
        [6, 7, 0, 1, 2, 6, 7, 0, 1, 2, 6, 7, 0, 1, 2, 6, 7, 0, 1, 2],
        [1, 2, 4, 5, 0, 1, 2, 4, 5, 0, 1, 2, 4, 5, 0, 1, 2, 4, 5, 0],
        [5, 6, 7, 0, 1, 5, 6, 7, 0, 1, 5, 1, 7, 0, 1, 5, 6, 7, 0, 1],
        [7, 6, 5, 3, 3, 7, 6, 5, 4, 3, 7, 6, 5, 4, 3, 7, 6, 5, 4, 3],
    ]
)

# per-row DMFs of NOISY_EXAMPLE, column k holds displacement k
NOISY_ROW_DMFS = np.array(
    [
        [0, 256, 454, 428, 220, 9, 173, 307, 323, 167, 9, 105, 181, 197, 99, 9, 52, 76, 50, 16],
        [0, 127, 196, 182, 97, 0, 95, 142, 128, 65, 0, 63, 88, 74, 33, 0, 31, 34, 20, 1],
        [0, 242, 398, 372, 206, 98, 174, 272, 246, 103, 49, 155, 202, 176, 84, 0, 52, 76, 50, 16],
        [0, 114, 152, 158, 126, 50, 94, 122, 83, 71, 25, 59, 87, 48, 36, 0, 4, 12, 18, 16],
        [0, 256, 454, 428, 220, 0, 188, 328, 302, 152, 0, 120, 202, 176, 84, 0, 52, 76, 50, 16],
        [0, 127, 196, 182, 97, 0, 95, 142, 128, 65, 0, 63, 88, 74, 33, 0, 31, 34, 20, 1],
        [0, 306, 394, 368, 270, 50, 238, 268, 242, 187, 25, 135, 202, 176, 84, 0, 52, 76, 50, 16],
        [0, 66, 114, 120, 79, 1, 43, 79, 83, 59, 1, 23, 49, 53, 39, 1, 3, 12, 18, 16],
    ]
)

NOISY_ROW_SUM = np.array(
    [0, 1494, 2358, 2238, 1315, 208, 1100, 1660, 1535, 869,
     109, 723, 1099, 974, 492, 10, 277, 396, 276, 98]
)


@pytest.fixture
def clean_example():
    return GrayImage(CLEAN_EXAMPLE, max_value=7)


@pytest.fixture
def noisy_example():
    return GrayImage(NOISY_EXAMPLE, max_value=7)


# one PASS/FAIL line per acceptance criterion, aggregated over its tests
_criteria: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    entry = _criteria.setdefault(number, [title, True, 0])
    if report.failed or (report.when == "call" and report.skipped):
        entry[1] = False
    if report.when == "call":
        entry[2] += 1


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(_criteria):
        title, ok, ran = _criteria[number]
        status = "PASS" if ok and ran else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {title}")
