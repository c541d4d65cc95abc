import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from paucity import sysfile
from paucity.normalize import NonlinearSystem, SymmetricSystem, gen_corollary_system, gen_theta_system, normalize
from paucity.sysfile import SystemFileError


def test_linear_round_trip(tmp_path):
    system = gen_theta_system((1, 0, 1), 4)
    path = tmp_path / "g.json"
    sysfile.save(system, path)
    assert sysfile.load(path) == system
    assert json.loads(path.read_text()) == {"kind": "linear", "k": 4, "rows": [[0, -1, 0, 1], [-1, 0, 1, 0]]}


def test_nonlinear_round_trip(nonlinear_system):
    text = sysfile.dumps(nonlinear_system)
    assert sysfile.loads(text) == nonlinear_system
    assert json.loads(text)["upsilons"] == [[{"coeff": 1, "exponents": [2]}], []]


def test_normalized_system_is_written_as_rows():
    norm = normalize(SymmetricSystem(3, [[-2, 1, 0], [0, 0, 1]]))
    assert sysfile.loads(sysfile.dumps(norm)) == norm.to_symmetric()


@given(st.integers(1, 6).flatmap(lambda k: st.tuples(st.just(k), st.integers(1, k))), st.integers(-5, 5))
def test_generated_corollary_files_round_trip(kr, fill):
    k, r = kr
    system = gen_corollary_system(k, r, fill)
    assert sysfile.loads(sysfile.dumps(system)) == system


@given(st.integers(1, 5).flatmap(
    lambda k: st.lists(st.lists(st.integers(-10**30, 10**30), min_size=k, max_size=k), max_size=k)
))
def test_arbitrary_linear_round_trip(rows):
    system = SymmetricSystem(len(rows[0]) if rows else 1, rows or [[0]])
    assert sysfile.loads(sysfile.dumps(system)) == system


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        "[1, 2]",
        '{"kind": "linear", "k": 2, "rows": [[1.5, 0]]}',
        '{"kind": "linear", "k": 2, "rows": [[true, 0]]}',
        '{"kind": "linear", "k": "2", "rows": [[1, 0]]}',
        '{"kind": "cubic", "k": 2, "rows": [[1, 0]]}',
        '{"kind": "linear", "k": 2}',
        '{"kind": "nonlinear", "k": 3, "degrees": [2, 3], "leading": [1, 1], "upsilons": [[{"coeff": 1}], []]}',
        '{"kind": "nonlinear", "k": 3, "degrees": [2, 3], "leading": [1, 1], "upsilons": [[1], []]}',
    ],
)
def test_malformed_files_are_rejected(text):
    with pytest.raises(ValueError):
        sysfile.loads(text)


def test_error_type_is_a_value_error():
    assert issubclass(SystemFileError, ValueError)


def test_wrong_row_length_is_rejected():
    with pytest.raises(ValueError):
        sysfile.loads('{"kind": "linear", "k": 3, "rows": [[1, 0]]}')
