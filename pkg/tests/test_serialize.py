import numpy as np
import pytest

from gfusion.errors import ParseError
from gfusion.frames import ControlPair
from gfusion.serialize import (
    control_pair_from_dict,
    control_pair_to_dict,
    dumps,
    family_from_dict,
    family_to_dict,
    load_json,
    operator_from_dict,
    operator_to_dict,
    subspace_from_dict,
    subspace_to_dict,
)

from conftest import complex_gaussian, random_family, random_subspace


def test_operator_round_trip_exact(rng):
    a = complex_gaussian(rng, 3, 5)
    np.testing.assert_array_equal(operator_from_dict(operator_to_dict(a)), a)


def test_operator_row_major_layout():
    a = np.array([[1.0, 2.0], [3.0, 4.0]])
    d = operator_to_dict(a)
    assert d["re"] == [1.0, 2.0, 3.0, 4.0]
    assert d["im"] == [0.0, 0.0, 0.0, 0.0]


def test_operator_bad_entry_count():
    with pytest.raises(ParseError):
        operator_from_dict({"rows": 2, "cols": 2, "re": [1.0], "im": [0.0]})


def test_operator_missing_key():
    with pytest.raises(ParseError):
        operator_from_dict({"rows": 1, "cols": 1, "re": [1.0]})


def test_subspace_round_trip(rng):
    m = random_subspace(rng, 5, 2)
    m2 = subspace_from_dict(subspace_to_dict(m))
    np.testing.assert_array_equal(m2.basis, m.basis)
    assert m2.ambient_dim == 5


def test_subspace_rejects_non_orthonormal():
    d = {
        "ambient_dim": 2,
        "basis": {"rows": 2, "cols": 1, "re": [1.0, 1.0], "im": [0.0, 0.0]},
    }
    with pytest.raises(ParseError):
        subspace_from_dict(d)


def test_family_round_trip(rng):
    fam = random_family(rng, 4, 3)
    fam2 = family_from_dict(family_to_dict(fam))
    assert fam2.ambient_dim == fam.ambient_dim
    assert fam2.weights == fam.weights
    for (s1, l1, _), (s2, l2, _) in zip(fam.items, fam2.items):
        np.testing.assert_array_equal(l2, l1)
        np.testing.assert_array_equal(s2.basis, s1.basis)


def test_family_bad_item_reported_with_index(rng):
    d = family_to_dict(random_family(rng, 3, 2))
    del d["items"][1]["weight"]
    with pytest.raises(ParseError, match="item 1"):
        family_from_dict(d)


def test_control_pair_round_trip(rng):
    cp = ControlPair.scalars(3, 0.5, 2.0)
    cp2 = control_pair_from_dict(control_pair_to_dict(cp))
    np.testing.assert_array_equal(cp2.t, cp.t)
    np.testing.assert_array_equal(cp2.u, cp.u)


def test_control_pair_rejects_singular():
    z = operator_to_dict(np.zeros((2, 2)))
    with pytest.raises(ParseError):
        control_pair_from_dict({"t": z, "u": z})


def test_dumps_deterministic(rng):
    fam = random_family(rng, 3, 2)
    d = family_to_dict(fam)
    assert dumps(d) == dumps(family_to_dict(fam))
    assert dumps(d).endswith("\n")
    # key order independent of insertion order
    assert dumps({"b": 1, "a": 2}) == dumps({"a": 2, "b": 1})


def test_load_json_reports_position(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text('{"a": 1,}')
    with pytest.raises(ParseError, match="line"):
        load_json(p)


def test_load_json_missing_file(tmp_path):
    with pytest.raises(ParseError):
        load_json(tmp_path / "nope.json")


def test_full_precision_round_trip():
    val = 0.1 + 0.2  # not exactly representable in short decimal
    a = np.array([[val + 1j * np.pi]])
    b = operator_from_dict(operator_to_dict(a))
    assert b[0, 0] == a[0, 0]
