import json

import pytest

from hwlength.errors import InvalidInput, OutOfMemoryBudget
from hwlength.lengths import REPORT_FIELDS, LengthReport, char0_lengths, check_report, length_at_prime
from hwlength.mpoly import parse_poly

XYZ = ["x", "y", "z"]
FERMAT = parse_poly("x^3 + y^3 + z^3", XYZ)


def test_fermat_cubic_ordinary():
    r = length_at_prime(FERMAT, 7)
    assert (r.status, r.h, r.stable_rank, r.quasilength) == ("Valid", 1, 1, 1)
    assert (r.d_module_length, r.unit_f_length, r.char0_ng_length) == (2, 2, 2)
    assert r.classification == "Ordinary"


def test_fermat_cubic_supersingular():
    r = length_at_prime(FERMAT, 5)
    assert (r.h, r.stable_rank, r.quasilength) == (1, 0, 0)
    assert (r.d_module_length, r.unit_f_length) == (1, 1)
    assert r.classification == "Nilpotent"


def test_quadric_surface_is_vacuously_ordinary():
    r = length_at_prime(parse_poly("x^2 + y^2 + z^2 + w^2", ["x", "y", "z", "w"]), 7)
    assert (r.h, r.stable_rank, r.quasilength) == (0, 0, 0)
    assert (r.d_module_length, r.unit_f_length, r.char0_ng_length) == (1, 1, 1)
    assert r.classification == "Ordinary"


def test_bad_prime_has_no_lengths():
    r = length_at_prime(FERMAT, 3)
    assert (r.status, r.bad_reason) == ("Bad", "SingularFibre")
    assert r.d_module_length is None and r.classification is None


def test_fermat_quartic_intermediate_and_split():
    g = parse_poly("x^4 + y^4 + z^4", XYZ)
    r = length_at_prime(g, 13, emit_matrix=True)
    assert r.hasse_witt == [[7, 0, 0], [0, 7, 0], [0, 0, 7]]
    assert (r.stable_rank, r.quasilength, r.d_module_length) == (3, 3, 4)
    r = length_at_prime(g, 7)
    assert r.classification == "Nilpotent"


def test_char0_examples():
    assert char0_lengths(2, 3) == {"ng_length": 2, "h": 1}
    assert char0_lengths(2, 4) == {"ng_length": 4, "h": 3}
    assert char0_lengths(3, 2) == {"ng_length": 1, "h": 0}


@pytest.mark.parametrize("text,variables", [
    ("x^3 + y^3", ["x", "y"]),
    ("x + y + z", XYZ),
    ("x^3 + y^2 + z^3", XYZ),
    ("0", XYZ),
])
def test_invalid_inputs(text, variables):
    with pytest.raises(InvalidInput):
        length_at_prime(parse_poly(text, variables), 7)


def test_not_prime():
    with pytest.raises(InvalidInput):
        length_at_prime(FERMAT, 9)


def test_budget_error_propagates():
    with pytest.raises(OutOfMemoryBudget):
        length_at_prime(parse_poly("x^4 + y^4 + z^4", XYZ), 101, budget=10)


@pytest.mark.parametrize("text", ["x^4 + y^4 + z^4", "x^3*y + y^3*z + z^3*x", "x^5 + y^5 + z^5 + x*y*z^3",
                                  "x^3 + y^3 + z^3 + w^3"])
def test_invariants_over_primes(text):
    variables = ["x", "y", "z", "w"] if "w" in text else XYZ
    g = parse_poly(text, variables)
    for p in [5, 7, 11, 13, 17, 19, 23]:
        r = length_at_prime(g, p)
        check_report(r)
        if r.valid:
            assert 1 <= r.unit_f_length <= r.d_module_length <= r.char0_ng_length
            assert (r.classification == "Ordinary") == (r.d_module_length == r.char0_ng_length)


def test_report_json_shape_and_determinism():
    a = length_at_prime(FERMAT, 13).to_dict()
    b = length_at_prime(FERMAT, 13).to_dict()
    assert list(a) == list(REPORT_FIELDS)
    a.pop("wall_time_ms"), b.pop("wall_time_ms")
    assert json.dumps(a) == json.dumps(b)
    full = length_at_prime(FERMAT, 13, emit_matrix=True).to_dict()
    assert full["hasse_witt"] == [[5]]
    assert LengthReport.from_dict(full).to_dict() == full
