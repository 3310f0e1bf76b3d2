import pytest

from wreathsub.action import build_coset_space, problem_from_dict

C2 = [[0, 1], [1, 0]]
C3 = [[0, 1, 2], [1, 2, 0], [2, 0, 1]]

FREE_A_INDEX2 = {"kind": "free_group", "generators": ["a"], "degree": 2,
                 "images": {"a": [1, 0]}, "subgroup": []}
FREE_S3 = {"kind": "free_group", "generators": ["a", "b"], "degree": 3,
           "images": {"a": [1, 0, 2], "b": [1, 2, 0]}, "subgroup": []}
FREE_S3_INDEX3 = dict(FREE_S3, subgroup=[[1, 0, 2]])

C2C2_SIGN = {"kind": "free_product",
             "factors": [{"name": "C2", "table": C2}, {"name": "C2", "table": C2}],
             "degree": 2, "images": [[[0, 1], [1, 0]], [[0, 1], [1, 0]]], "subgroup": []}
C2C3_S3 = {"kind": "free_product",
           "factors": [{"name": "C2", "table": C2}, {"name": "C3", "table": C3}],
           "degree": 3,
           "images": [[[0, 1, 2], [1, 0, 2]], [[0, 1, 2], [1, 2, 0], [2, 0, 1]]],
           "subgroup": []}
C2C3_S3_INDEX3 = dict(C2C3_S3, subgroup=[[1, 0, 2]])

FREE_PROBLEMS = {"a_index2": FREE_A_INDEX2, "s3_index6": FREE_S3, "s3_index3": FREE_S3_INDEX3}
PRODUCT_PROBLEMS = {"c2c2_sign": C2C2_SIGN, "c2c3_index6": C2C3_S3, "c2c3_index3": C2C3_S3_INDEX3}


def space(doc):
    return build_coset_space(problem_from_dict(doc))


@pytest.fixture(params=sorted(FREE_PROBLEMS))
def free_space(request):
    return space(FREE_PROBLEMS[request.param])


@pytest.fixture(params=sorted(PRODUCT_PROBLEMS))
def product_space(request):
    return space(PRODUCT_PROBLEMS[request.param])


# acceptance summary: one line per criterion, failing if any case failed
_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion label")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    label = dict(report.user_properties).get("criterion")
    if label:
        _criteria[label] = _criteria.get(label, True) and report.outcome == "passed"


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_setup(item):
    mark = item.get_closest_marker("criterion")
    if mark:
        item.user_properties.append(("criterion", mark.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok in _criteria.items():
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}")
