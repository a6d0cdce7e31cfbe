"""
Unit tests for the WTForms forms that validate instance files and options.
Covers validation logic, field paths of errors, and edge cases.
"""

import pytest

from krullab.errors import ValidationError
from krullab.forms import (
    ClassGroupForm,
    PrimeSlotForm,
    RunOptionsForm,
    SemigroupForm,
    first_error,
    validated,
)


def test_class_group_form_valid():
    """
    GIVEN a ClassGroupForm
    WHEN rank 1 and torsion orders 2, 4 are provided
    THEN the form should validate successfully
    """
    form = ClassGroupForm(data={"rank": 1, "torsion": [2, 4]})
    assert form.validate()
    assert form.torsion.data == [2, 4]


def test_class_group_form_negative_rank():
    """
    GIVEN a ClassGroupForm
    WHEN the rank is negative
    THEN the error is reported on the rank field
    """
    form = ClassGroupForm(data={"rank": -1, "torsion": []})
    assert not form.validate()
    assert "rank" in form.errors


def test_class_group_form_broken_chain():
    """
    GIVEN a ClassGroupForm
    WHEN the torsion orders 2, 3 do not form a divisibility chain
    THEN validation fails with a divisibility message
    """
    with pytest.raises(ValidationError, match="2 does not divide 3"):
        validated(ClassGroupForm, {"rank": 0, "torsion": [2, 3]}, "class_group")


def test_class_group_form_small_order_path():
    """
    GIVEN a torsion list whose second order is 1
    WHEN it is validated under the class_group section
    THEN the error names class_group.torsion[1]
    """
    with pytest.raises(ValidationError) as excinfo:
        validated(ClassGroupForm, {"rank": 0, "torsion": [2, 1]}, "class_group")
    assert excinfo.value.field == "class_group.torsion[1]"


def test_class_group_form_missing_rank():
    """
    GIVEN a class group section without a rank
    WHEN it is validated
    THEN the error names the rank field
    """
    with pytest.raises(ValidationError) as excinfo:
        validated(ClassGroupForm, {"torsion": []})
    assert excinfo.value.field == "rank"


def test_class_group_form_not_an_integer():
    """
    GIVEN a rank that is not a number
    WHEN it is validated
    THEN validation fails on the rank field
    """
    with pytest.raises(ValidationError) as excinfo:
        validated(ClassGroupForm, {"rank": "many", "torsion": []})
    assert excinfo.value.field == "rank"


def test_prime_slot_form_valid():
    """
    GIVEN a PrimeSlotForm
    WHEN an identifier name and integer coordinates are provided
    THEN the form should validate successfully
    """
    form = PrimeSlotForm(data={"name": "q1", "free": [-1], "torsion": [2]})
    assert form.validate()
    assert form.free.data == [-1]


@pytest.mark.parametrize("name", ["", "1q", "q 1"])
def test_prime_slot_form_bad_name(name):
    """
    GIVEN a PrimeSlotForm
    WHEN the name is empty or not an identifier
    THEN the form should fail validation
    """
    form = PrimeSlotForm(data={"name": name, "free": [], "torsion": []})
    assert not form.validate()


def test_semigroup_form_valid():
    """
    GIVEN a SemigroupForm
    WHEN generators and facets of the right length are provided
    THEN the form should validate successfully
    """
    form = SemigroupForm(data={
        "ambient_dim": 2,
        "generators": [[1, 0], [0, 1]],
        "facets": [[1, 0], [0, 1]],
        "facet_names": [],
    })
    assert form.validate()


@pytest.mark.parametrize(
    "data, field",
    [
        ({"ambient_dim": 2, "generators": [[1, 0, 0]], "facets": [[1, 0]]}, "generators"),
        ({"ambient_dim": 2, "generators": [[0, 0]], "facets": [[1, 0]]}, "generators"),
        ({"ambient_dim": 2, "generators": [[1, 0]], "facets": [[1]]}, "facets"),
        ({"ambient_dim": 2, "generators": [[1, -1]], "facets": [[1, 0]]}, "generators[0][1]"),
        ({"ambient_dim": 1, "generators": [[1]], "facets": [[1]], "facet_names": ["a", "b"]},
         "facet_names"),
    ],
)
def test_semigroup_form_errors(data, field):
    """
    GIVEN a malformed semigroup description
    WHEN it is validated
    THEN the error names the offending field
    """
    with pytest.raises(ValidationError) as excinfo:
        validated(SemigroupForm, data)
    assert excinfo.value.field == field


@pytest.mark.parametrize("tag", ["q", "Q", "f2", "fp7", "F5"])
def test_run_options_form_valid_tags(tag):
    """
    GIVEN a RunOptionsForm
    WHEN a supported field tag is provided
    THEN the form should validate successfully
    """
    form = RunOptionsForm(data={"bound": 8, "budget": 1000, "field_tag": tag})
    assert form.validate()


def test_run_options_form_errors():
    """
    GIVEN a RunOptionsForm
    WHEN the bound is zero and the field tag is unknown
    THEN both fields report errors
    """
    form = RunOptionsForm(data={"bound": 0, "budget": 1000, "field_tag": "reals"})
    assert not form.validate()
    assert set(form.errors) == {"bound", "field_tag"}


def test_validated_rejects_non_objects():
    """
    GIVEN a list where an object is expected
    WHEN it is validated
    THEN a ValidationError names the section
    """
    with pytest.raises(ValidationError) as excinfo:
        validated(ClassGroupForm, [1, 2], "class_group")
    assert excinfo.value.field == "class_group"


def test_first_error_skips_valid_entries():
    """
    GIVEN a nested errors structure with empty entries for valid items
    WHEN the first error is looked up
    THEN the path of the first message is returned
    """
    errors = {"primes": [[], {"torsion": [[], ["bad"]]}]}
    assert first_error(errors) == ("primes[1].torsion[1]", "bad")
    assert first_error({}) is None
