import copy
import json

import mpmath
import pytest

from regbounds.errors import InputError
from regbounds.exact_linalg import integer_kernel
from regbounds.relative_reg import (
    ExtensionData,
    check_norm_identity,
    check_relative_upper_bound,
    costa_friedman,
    costa_friedman_check,
    image_index,
    norm_consistency,
    relative_regulator,
    relative_regulator_by_selection,
    relative_unit_kernel,
)
from regbounds.sunit_model import regulator

LOG_EPS = mpmath.log(1 + mpmath.sqrt(2))
EPS = mpmath.mpf(10) ** -30


def close(a, b):
    return abs(a - b) <= EPS * max(1, abs(b))


@pytest.fixture
def quadratic(load):
    return load("ext_sqrt2_over_q.json")


@pytest.fixture
def rank3(load):
    return load("ext_synthetic_rank3.json")


def test_norm_identity_examples(quadratic):
    half_log2 = mpmath.log(2) / 2
    # u = 1+sqrt2 has norm -1
    assert check_norm_identity(quadratic, {"r1": LOG_EPS, "r2": -LOG_EPS}, {"inf": 0})
    # u = sqrt2 has norm -2
    assert check_norm_identity(quadratic, {"r1": half_log2, "r2": half_log2}, {"inf": mpmath.log(2)})
    assert not check_norm_identity(quadratic, {"r1": half_log2, "r2": half_log2}, {"inf": mpmath.log(3)})
    assert all(ok for _, ok in norm_consistency(quadratic))


def test_kernel_examples(quadratic):
    E = relative_unit_kernel(quadratic)
    assert E.vectors == ((1,),)
    assert sorted(integer_kernel([[2, 0, 1]])) == [(0, 1, 0), (1, 0, -2)]


def test_quadratic_relative_regulator(quadratic):
    E = relative_unit_kernel(quadratic)
    assert close(relative_regulator(quadratic, E), LOG_EPS)
    assert close(relative_regulator(quadratic, E, {"inf": "r2"}), LOG_EPS)
    assert close(relative_regulator(quadratic, E), regulator(quadratic.l))
    assert image_index(quadratic) == 1
    lhs, rhs = costa_friedman(quadratic, E)
    assert close(lhs, rhs)
    with pytest.raises(InputError):
        relative_regulator(quadratic, E, {"inf": "w9"})


def test_quadratic_relative_bound(quadratic):
    E = relative_unit_kernel(quadratic)
    rep = check_relative_upper_bound(quadratic, E, [[1]])
    assert rep.passed and close(rep.lhs, LOG_EPS) and close(rep.rhs, LOG_EPS)
    rep = check_relative_upper_bound(quadratic, E, [[2]])
    assert rep.passed and close(rep.lhs, 2 * LOG_EPS) and close(rep.rhs, 2 * LOG_EPS)
    with pytest.raises(InputError):
        check_relative_upper_bound(quadratic, E, [[0]])


def test_rank3_extension(rank3):
    assert rank3.relative_rank == 3
    E = relative_unit_kernel(rank3)
    N = rank3.norm_matrix
    assert all(N.apply(v) == (0,) for v in E.vectors)
    values = [v for _, v in relative_regulator_by_selection(rank3, E)]
    assert len(values) == 6
    assert max(values) - min(values) <= EPS * max(values)
    assert image_index(rank3) == 3
    assert costa_friedman_check(rank3, E)
    for C in ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [[1, 1, 0], [-1, 2, 1], [0, 1, 3]]):
        rep = check_relative_upper_bound(rank3, E, C)
        assert rep.passed
        assert rep.rhs - rep.lhs > 0


def test_scaling_a_relative_unit_doubles_regulator(rank3):
    E = relative_unit_kernel(rank3)
    base = relative_regulator(rank3, E)
    rep = check_relative_upper_bound(rank3, E, [[2, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert close(rep.lhs, 2 * base)


def _raw(corpus, name):
    return json.loads((corpus / name).read_text())


def test_rejects_bad_extensions(corpus):
    data = _raw(corpus, "ext_synthetic_rank3.json")
    bad = copy.deepcopy(data)
    bad["fiber_map"]["w5"] = "r1"
    with pytest.raises(InputError):
        ExtensionData.from_dict(bad)
    bad = copy.deepcopy(data)
    bad["norm_matrix"] = [[0, 0, 0, 0]]
    with pytest.raises(InputError):
        ExtensionData.from_dict(bad)
    bad = copy.deepcopy(data)
    bad["relative_units"] = [[1, 0, 0, 1], [0, 2, 0, 0], [0, 0, 1, 1]]
    with pytest.raises(InputError):
        relative_unit_kernel(ExtensionData.from_dict(bad))
    bad = copy.deepcopy(data)
    bad["relative_degree"] = 2
    with pytest.raises(InputError):
        ExtensionData.from_dict(bad)


def test_rejects_zero_relative_rank(corpus):
    # Q(sqrt2)/Q(sqrt2) as a degenerate "extension" has r(l/k) = 0
    k = _raw(corpus, "q_sqrt2.json")
    data = {"k": k, "l": k, "fiber_map": {"r1": "r1", "r2": "r2"}, "relative_degree": 1, "norm_matrix": [[1]]}
    with pytest.raises(InputError, match="r\\(l/k\\) = 0"):
        ExtensionData.from_dict(data)


def test_non_archimedean_data_rejected(corpus):
    data = _raw(corpus, "ext_sqrt2_over_q.json")
    data["k"] = _raw(corpus, "q_s2.json")
    with pytest.raises(InputError):
        ExtensionData.from_dict(data)


def test_norm_matrix_shape(corpus):
    data = _raw(corpus, "ext_synthetic_rank3.json")
    data["norm_matrix"] = [[3, 0, 3]]
    with pytest.raises(InputError):
        ExtensionData.from_dict(data)
