"""
Instance files.

An instance file is JSON in one of two shapes.

Krull description::

    {"class_group": {"rank": 1, "torsion": []},
     "primes": [{"name": "q1", "class": {"free": [1], "torsion": []}}, ...],
     "elements": {"x": [1, 0, 0, 1], ...}}

Semigroup description (compiled through compile_to_krull)::

    {"ambient_dim": 3,
     "generators": [[1, 0, 0], ...],
     "facets": [[1, 0, 0], ...],
     "facet_names": ["q1", ...],
     "elements": {"x": [1, 0, 0], ...}}

Named elements are exponent vectors in the file's own coordinates: divisors
for Krull files, lattice points for semigroup files. Fixtures shipped in the
``data`` package can be named directly (``inst_xy`` or ``inst_xy.json``).

Dependencies:
    - importlib.resources for the bundled fixtures
    - krullab.forms (WTForms) for validation
"""

import json
import logging
import re
from dataclasses import dataclass, field
from functools import cached_property
from importlib.resources import files
from pathlib import Path

from krullab.abgroup import FgAbelianGroup
from krullab.errors import ParseError, ShapeMismatch, ValidationError
from krullab.forms import ClassGroupForm, PrimeSlotForm, SemigroupForm, validated
from krullab.krull import Divisor, KrullInstance, PrimeSlot, is_element
from krullab.semigroup import AffineSemigroup, compile_to_krull, membership

log = logging.getLogger(__name__)

_FACTOR = re.compile(r"([A-Za-z_]\w*)(?:\^(\d+))?")
_VECTOR = re.compile(r"[\[(]?\s*-?\d+(?:\s*,\s*-?\d+)*\s*[\])]?")


@dataclass
class ParsedInstance:
    """A validated instance file plus its named elements."""

    source: str
    krull_instance: KrullInstance = None
    semigroup: AffineSemigroup = None
    elements: dict = field(default_factory=dict)
    box_factor: int = 2

    @cached_property
    def compiled(self):
        """(KrullInstance, embed) with embed mapping native vectors to divisors."""
        if self.semigroup is not None:
            return compile_to_krull(self.semigroup, self.box_factor)
        return self.krull_instance, self.krull_instance.divisor

    @property
    def krull(self):
        return self.compiled[0]

    @property
    def native_dim(self):
        if self.semigroup is not None:
            return self.semigroup.ambient_dim
        return self.krull_instance.size

    def embed(self, vector):
        return self.compiled[1](vector)

    def name_of(self, divisor):
        """Name of a named element with this divisor, if any."""
        for name, vector in self.elements.items():
            if self.embed(vector) == divisor:
                return name
        return None


# -----------------------------------------------------------------------------
# Locating and reading files
# -----------------------------------------------------------------------------
def bundled_fixtures():
    """Names of the fixtures shipped with the package."""
    return sorted(p.name[:-5] for p in files("data").iterdir() if p.name.endswith(".json"))


def _read(location):
    path = Path(location)
    if path.is_file():
        return path.read_text(encoding="utf-8")
    name = location if location.endswith(".json") else f"{location}.json"
    bundled = files("data").joinpath(name)
    if bundled.is_file():
        log.debug("using bundled fixture %s", name)
        return bundled.read_text(encoding="utf-8")
    raise ValidationError(
        f"no file or bundled fixture named {location!r} (bundled: {', '.join(bundled_fixtures())})",
        "instance",
    )


def parse_instance(location, box_factor=2):
    """
    Parse and validate an instance file or bundled fixture.

    Semigroup files are compiled immediately, so an unsaturated semigroup is
    reported here.

    Raises:
        ParseError: malformed JSON, with line and column.
        ValidationError: the first violated invariant, with its field path.
        NotSaturated
    """
    text = _read(str(location))
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, position=f"line {exc.lineno}, column {exc.colno}") from None
    if not isinstance(data, dict):
        raise ValidationError("an instance file must contain a JSON object")

    if "generators" in data:
        parsed = ParsedInstance(str(location), semigroup=_semigroup(data), box_factor=box_factor)
    elif "primes" in data:
        parsed = ParsedInstance(str(location), krull_instance=_krull(data), box_factor=box_factor)
    else:
        raise ValidationError("expected 'primes' or 'generators'")

    parsed.elements = _named_elements(parsed, data.get("elements", {}))
    log.info("loaded %s: %d prime slots", location, parsed.krull.size)
    return parsed


def _krull(data):
    group_form = validated(ClassGroupForm, data.get("class_group"), "class_group")
    group = FgAbelianGroup(group_form.rank.data, tuple(group_form.torsion.data))

    primes = data.get("primes")
    if not isinstance(primes, list) or not primes:
        raise ValidationError("at least one prime slot is required", "primes")
    slots = []
    for i, entry in enumerate(primes):
        path = f"primes[{i}]"
        if not isinstance(entry, dict):
            raise ValidationError("expected an object", path)
        cls = entry.get("class", {})
        if not isinstance(cls, dict):
            raise ValidationError("expected an object", f"{path}.class")
        form = validated(
            PrimeSlotForm,
            {"name": entry.get("name"), "free": cls.get("free", []), "torsion": cls.get("torsion", [])},
            path,
        )
        try:
            element = group.element(form.free.data, form.torsion.data)
        except ShapeMismatch as exc:
            raise ValidationError(str(exc), f"{path}.class") from None
        slots.append(PrimeSlot(form.name.data.strip(), element))
    return KrullInstance(group, tuple(slots))


def _semigroup(data):
    form = validated(SemigroupForm, data)
    return AffineSemigroup(
        ambient_dim=form.ambient_dim.data,
        generators=tuple(tuple(g) for g in form.generators.data),
        facets=tuple(tuple(f) for f in form.facets.data),
        facet_names=tuple(n.strip() for n in form.facet_names.data),
    )


def _named_elements(parsed, raw):
    if not isinstance(raw, dict):
        raise ValidationError("expected an object of name: vector pairs", "elements")
    elements = {}
    for name, vector in raw.items():
        path = f"elements.{name}"
        if not _FACTOR.fullmatch(name) or "^" in name:
            raise ValidationError("names must be identifiers", path)
        if not isinstance(vector, list) or not all(isinstance(x, int) for x in vector):
            raise ValidationError("expected a list of integers", path)
        vector = tuple(vector)
        if len(vector) != parsed.native_dim:
            raise ValidationError(f"expected {parsed.native_dim} entries", path)
        if parsed.semigroup is not None:
            if not membership(parsed.semigroup, vector):
                raise ValidationError("not a point of the semigroup", path)
        elif not is_element(parsed.krull, Divisor(vector)):
            raise ValidationError("not an element of the monoid", path)
        elements[name] = vector
    return elements


# -----------------------------------------------------------------------------
# Element expressions
# -----------------------------------------------------------------------------
def parse_native(parsed, text):
    """
    Read an element in the file's own coordinates.

    Accepts a vector literal (``2,0,0,2`` or ``(2,0,0,2)``) or a product of
    named elements with optional powers (``x^2*zy``).
    """
    text = text.strip()
    if _VECTOR.fullmatch(text):
        vector = tuple(int(x) for x in re.findall(r"-?\d+", text))
        if len(vector) != parsed.native_dim:
            raise ShapeMismatch(f"expected {parsed.native_dim} entries, got {len(vector)}")
        return vector

    total = [0] * parsed.native_dim
    column = 1
    for token in text.split("*"):
        match = _FACTOR.fullmatch(token.strip())
        if not match:
            raise ParseError(f"cannot read {token.strip()!r}", position=column)
        name, power = match.group(1), int(match.group(2) or 1)
        if name not in parsed.elements:
            known = ", ".join(parsed.elements) or "none"
            raise ParseError(f"unknown element {name!r} (known: {known})", position=column)
        total = [t + power * v for t, v in zip(total, parsed.elements[name])]
        column += len(token) + 1
    return tuple(total)


def parse_element(parsed, text):
    """Read an element expression and return its divisor."""
    vector = parse_native(parsed, text)
    if parsed.semigroup is not None:
        return parsed.embed(vector)
    return Divisor(vector)
