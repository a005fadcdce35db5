import pytest

from picdyn import _enum_py, shortvec
from picdyn.shortvec import EnumerationCapExceeded, vectors_of_norm

try:
    from picdyn import _enum_ext
except ImportError:  # pragma: no cover
    _enum_ext = None

KERNELS = [pytest.param(_enum_py.enumerate_norm, id="python")]
if _enum_ext is not None:
    KERNELS.append(pytest.param(_enum_ext.enumerate_norm, id="compiled"))


def e8_cartan():
    # chain 0-1-2-3-4-5-6 with node 7 attached to node 4
    M = [[2 if i == j else 0 for j in range(8)] for i in range(8)]
    for a, b in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)]:
        M[a][b] = M[b][a] = -1
    return M


@pytest.mark.parametrize("kernel", KERNELS)
@pytest.mark.parametrize("norm, count", [(2, 240), (4, 2160)])
def test_e8_shells(kernel, norm, count):
    vs = vectors_of_norm(e8_cartan(), norm, kernel=kernel)
    assert len(vs) == count
    assert len(set(vs)) == count


@pytest.mark.parametrize("kernel", KERNELS)
def test_z3_shell(kernel):
    I3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    # r_3(3) = 8, r_3(2) = 12
    assert len(vectors_of_norm(I3, 3, kernel=kernel)) == 8
    assert len(vectors_of_norm(I3, 2, kernel=kernel)) == 12


def test_backends_agree_on_skewed_form():
    Q = [[5, 2, 1], [2, 7, 3], [1, 3, 11]]
    if _enum_ext is None:
        pytest.skip("compiled kernel not built")
    for norm in range(1, 30):
        a = vectors_of_norm(Q, norm, kernel=_enum_py.enumerate_norm)
        b = vectors_of_norm(Q, norm, kernel=_enum_ext.enumerate_norm)
        assert a == b


def test_results_in_original_coordinates():
    Q = [[1, 100], [100, 10001]]
    for v in vectors_of_norm(Q, 1):
        x, y = v
        assert x * x + 200 * x * y + 10001 * y * y == 1


def test_not_positive_definite():
    with pytest.raises(ValueError):
        vectors_of_norm([[1, 0], [0, -1]], 1)


def test_cap():
    with pytest.raises(EnumerationCapExceeded):
        vectors_of_norm(e8_cartan(), 4, cap=100)


def test_empty_and_zero():
    assert vectors_of_norm([], 0) == [()]
    assert vectors_of_norm([[2]], 0) == [(0,)]
    assert vectors_of_norm([[2]], 3) == []


def test_backend_name():
    assert shortvec.BACKEND in ("compiled", "python")
