"""Line based ``key = value`` files with ``[ ... ]`` matrix blocks.

Example::

    # comment
    T = 5000
    rho = 1 1
    reward = [
        1.2 0.8
        1.3 1.1
    ]

Values are kept as raw strings (matrices as lists of float rows) until
``coerce`` converts them according to a JSON schema, which is then used to
validate the result.
"""
import re
from collections import OrderedDict

import jsonschema

from .exceptions import ConfigError

TRUE_VALUES = ("1", "true", "yes", "on")
FALSE_VALUES = ("0", "false", "no", "off")
# a comment starts at "#" on its own or after whitespace; "runs/#1.csv" is a value
COMMENT = re.compile(r"(^|\s)#.*$")


class RawEntry(object):
    """A parsed value together with the line it started on."""

    def __init__(self, value, line):
        self.value = value
        self.line = line

    @property
    def is_matrix(self):
        return isinstance(self.value, list)


def parse(text):
    """Parse ``text`` into an ordered mapping of key -> RawEntry."""
    entries = OrderedDict()
    block_key = None
    block_rows = None
    for number, raw_line in enumerate(text.splitlines(), start=1):
        line = COMMENT.sub("", raw_line).strip()
        if not line:
            continue
        if block_key is not None:
            if line == "]":
                entries[block_key] = RawEntry(block_rows, entries[block_key].line)
                block_key = None
                continue
            try:
                block_rows.append([float(v) for v in line.replace(",", " ").split()])
            except ValueError:
                raise ConfigError("matrix row is not numeric: {!r}".format(line), line=number)
            continue
        if "=" not in line:
            raise ConfigError("expected 'key = value', got {!r}".format(line), line=number)
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError("empty key", line=number)
        if key in entries:
            raise ConfigError("duplicate key {!r}".format(key), line=number)
        if value == "[":
            block_key, block_rows = key, []
            entries[key] = RawEntry(None, number)
            continue
        entries[key] = RawEntry(value, number)
    if block_key is not None:
        raise ConfigError(
            "matrix block {!r} is not closed".format(block_key),
            line=entries[block_key].line,
        )
    return entries


def read(path):
    """Parse a file from disk."""
    try:
        with open(path) as handle:
            return parse(handle.read())
    except OSError as e:
        raise ConfigError("cannot read {}: {}".format(path, e))


def _coerce_scalar(value, kind, key, line):
    try:
        if kind == "integer":
            number = float(value)
            if not number.is_integer():
                raise ValueError(value)
            return int(number)
        if kind == "number":
            return float(value)
        if kind == "boolean":
            lowered = value.lower()
            if lowered in TRUE_VALUES:
                return True
            if lowered in FALSE_VALUES:
                return False
            raise ValueError(value)
    except ValueError:
        raise ConfigError("{} expects {}, got {!r}".format(key, kind, value), line=line)
    return value


def coerce(entries, schema):
    """Convert raw entries to typed values and validate them against ``schema``."""
    properties = schema.get("properties", {})
    unknown = [key for key in entries if key not in properties]
    if unknown:
        raise ConfigError("unknown keys: {}".format(", ".join(unknown)))

    data = {}
    for key, entry in entries.items():
        spec = properties[key]
        kind = spec.get("type")
        if kind == "array":
            item_kind = spec.get("items", {}).get("type", "number")
            if item_kind == "array":
                if not entry.is_matrix:
                    raise ConfigError("{} expects a [ ... ] matrix block".format(key), line=entry.line)
                data[key] = entry.value
            else:
                if entry.is_matrix:
                    raise ConfigError("{} expects a single line".format(key), line=entry.line)
                data[key] = [
                    _coerce_scalar(v, item_kind, key, entry.line)
                    for v in entry.value.replace(",", " ").split()
                ]
        else:
            if entry.is_matrix:
                raise ConfigError("{} expects a single value".format(key), line=entry.line)
            data[key] = _coerce_scalar(entry.value, kind, key, entry.line)

    validate(data, schema)
    return data


def validate(data, schema):
    """Raise ConfigError naming the first invalid field."""
    validator = jsonschema.Draft7Validator(schema)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.path))
    if not errors:
        return
    error = errors[0]
    if error.validator == "required":
        field = error.message.split("'")[1]
        raise ConfigError("missing required value", field=field)
    field = ".".join(str(p) for p in error.path) or "config"
    raise ConfigError(error.message, field=field)


def format_value(value):
    """Render a python value back to the file format."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        if value and isinstance(value[0], (list, tuple)):
            rows = ["    " + " ".join(repr(float(v)) for v in row) for row in value]
            return "[\n" + "\n".join(rows) + "\n]"
        return " ".join(repr(v) for v in value)
    text = str(value)
    if COMMENT.search(text):
        raise ConfigError("{!r} cannot be written: '#' after whitespace starts a comment".format(text))
    return text


def render(data):
    """Render a mapping as ``key = value`` text."""
    return "".join("{} = {}\n".format(key, format_value(value)) for key, value in data.items())
