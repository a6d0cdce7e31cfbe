"""
Declarative validation for instance files and run options.

Instance files are JSON; each section is checked by a WTForms form fed with
``data=`` (there is no HTTP request behind them). The first error found is
raised as :class:`krullab.errors.ValidationError` with its field path, e.g.
``primes[2].torsion[0]: Number must be at least 0.``

Dependencies:
    - WTForms
"""

import re

from wtforms import FieldList, Form, IntegerField, StringField
from wtforms.validators import DataRequired, NumberRange, StopValidation, ValidationError

from krullab import errors

FIELD_TAG = re.compile(r"q|qq|fp?\d+", re.IGNORECASE)


def integer_required(form, field):
    """Stop the chain when an integer field is missing or malformed."""
    if field.data is None:
        raise StopValidation(field.process_errors[0] if field.process_errors else "This field is required.")


class ClassGroupForm(Form):
    """
    Class group section: ``{"rank": r, "torsion": [n1, n2, ...]}``.
    """

    rank = IntegerField("Free rank", validators=[integer_required, NumberRange(min=0)])
    torsion = FieldList(
        IntegerField("Torsion order", validators=[integer_required, NumberRange(min=2)])
    )

    def validate_torsion(self, field):
        """
        Validates the invariant-factor chain n1 | n2 | ...
        """
        orders = [n for n in field.data if n]
        for a, b in zip(orders, orders[1:]):
            if a >= 2 and b % a:
                raise ValidationError(f"{a} does not divide {b}.")


class PrimeSlotForm(Form):
    """
    One prime slot: a name and the free and torsion parts of its class.
    """

    name = StringField("Name", validators=[DataRequired()])
    free = FieldList(IntegerField("Free coordinate", validators=[integer_required]))
    torsion = FieldList(IntegerField("Torsion coordinate", validators=[integer_required]))

    def validate_name(self, field):
        if not re.fullmatch(r"[A-Za-z_]\w*", str(field.data).strip()):
            raise ValidationError("Names must be identifiers.")


class SemigroupForm(Form):
    """
    Semigroup description: ambient dimension, generators and facet functionals.
    """

    ambient_dim = IntegerField("Ambient dimension", validators=[integer_required, NumberRange(min=1)])
    generators = FieldList(
        FieldList(IntegerField("Coordinate", validators=[integer_required, NumberRange(min=0)])),
        min_entries=1,
    )
    facets = FieldList(
        FieldList(IntegerField("Coefficient", validators=[integer_required])),
        min_entries=1,
    )
    facet_names = FieldList(StringField("Facet name", validators=[DataRequired()]))

    def _check_lengths(self, field, what):
        dim = self.ambient_dim.data
        for vector in field.data:
            if dim is not None and len(vector) != dim:
                raise ValidationError(f"Every {what} needs {dim} entries.")

    def validate_generators(self, field):
        self._check_lengths(field, "generator")
        if any(not any(g) for g in field.data):
            raise ValidationError("Generators must be nonzero.")

    def validate_facets(self, field):
        self._check_lengths(field, "facet")

    def validate_facet_names(self, field):
        if field.data and len(field.data) != len(self.facets.data):
            raise ValidationError("Give one name per facet.")


class RunOptionsForm(Form):
    """
    Options shared by every command.
    """

    bound = IntegerField("Degree bound", validators=[integer_required, NumberRange(min=1)])
    budget = IntegerField("Node budget", validators=[integer_required, NumberRange(min=1)])
    field_tag = StringField("Coefficient field", validators=[DataRequired()])

    def validate_field_tag(self, field):
        if not FIELD_TAG.fullmatch(str(field.data).strip()):
            raise ValidationError("Use q or f<p> for a prime p.")


# -----------------------------------------------------------------------------
# Helpers
# -----------------------------------------------------------------------------
def first_error(found, path=""):
    """Depth-first search for the first message in a WTForms errors structure."""
    if isinstance(found, dict):
        for name, value in found.items():
            hit = first_error(value, f"{path}.{name}" if path else name)
            if hit:
                return hit
    elif isinstance(found, (list, tuple)):
        for i, value in enumerate(found):
            if isinstance(value, str):
                return path, value
            hit = first_error(value, f"{path}[{i}]")
            if hit:
                return hit
    elif isinstance(found, str):
        return path, found
    return None


def validated(form_class, data, path=""):
    """
    Build and validate a form from a mapping.

    Returns:
        The validated form.

    Raises:
        krullab.errors.ValidationError: for the first violated field.
    """
    if not isinstance(data, dict):
        raise errors.ValidationError("expected an object", path or None)
    try:
        form = form_class(data=data)
    except TypeError as exc:
        raise errors.ValidationError(f"malformed value ({exc})", path or None) from None
    if form.validate():
        return form
    where, message = first_error(form.errors)
    full = f"{path}.{where}" if path and where else (path or where)
    raise errors.ValidationError(message, full or None)
