# -*- coding:utf-8 -*-

"""
Validator module.

Every validator takes either a raw value (`field` is None) or a mapping plus a field name, and raises
`ValidationError` when the value cannot be converted. `name` labels a raw value in error messages.

Date:   2026/10/17
"""

import json

from walkport.utils import exceptions


def _field(data, field, required):
    if field:
        data = data or {}
        if not isinstance(data, dict):
            raise exceptions.ValidationError("field `{field}` lost".format(field=field))
        if required and field not in data:
            raise exceptions.ValidationError("field `{field}` lost".format(field=field))
        return data.get(field)
    else:
        return data


def _label(field, name):
    return field or name or "value"


def int_field(data, field=None, required=True, minimum=None, maximum=None, name=None):
    """ int validator.

    Args:
        data: If `field` is None, `data` is the value, otherwise get `field` from `data`.
        field: Field name.
        required: If `field` must be present, default is True.
        minimum: Smallest accepted value, inclusive.
        maximum: Largest accepted value, inclusive.
        name: Label of a raw value in error messages.

    Returns:
        1. Int field.
        2. If `field` is not present and required is False, return None.

    Raise:
        ValidationError: The type of `field` is not int or out of range.
    """
    label = _label(field, name)
    field_data = _field(data, field, required)
    if field_data is None and not required:
        return None
    if isinstance(field_data, bool):
        raise exceptions.ValidationError("The type of `{}` is not int, got {!r}".format(label, field_data))
    try:
        value = int(str(field_data).strip())
    except (TypeError, ValueError):
        raise exceptions.ValidationError("The type of `{}` is not int, got {!r}".format(label, field_data))
    if minimum is not None and value < minimum:
        raise exceptions.ValidationError("`{}` must be >= {}, got {}".format(label, minimum, value))
    if maximum is not None and value > maximum:
        raise exceptions.ValidationError("`{}` must be <= {}, got {}".format(label, maximum, value))
    return value


def complex_field(data, field=None, required=True, name=None):
    """ complex validator, accepts `RE,IM` strings, [re, im] pairs and numbers.

    Returns:
        Complex value, or None if `field` is not present and required is False.

    Raise:
        ValidationError: The value is not a complex number.
    """
    label = _label(field, name)
    field_data = _field(data, field, required)
    if field_data is None and not required:
        return None
    if isinstance(field_data, (int, float, complex)) and not isinstance(field_data, bool):
        return complex(field_data)
    if isinstance(field_data, str):
        parts = [p.strip() for p in field_data.split(",")]
    elif isinstance(field_data, (list, tuple)):
        parts = list(field_data)
    else:
        parts = None
    if not parts or len(parts) > 2:
        raise exceptions.ValidationError("`{}` must be `RE,IM`, got {!r}".format(label, field_data))
    try:
        re = float(parts[0])
        im = float(parts[1]) if len(parts) == 2 else 0.0
    except (TypeError, ValueError):
        raise exceptions.ValidationError("`{}` must be `RE,IM`, got {!r}".format(label, field_data))
    return complex(re, im)


def list_field(data, field=None, required=True, name=None):
    """ list validator, accepts JSON arrays, comma separated strings and sequences.

    Raise:
        ValidationError: The type of `field` is not list.
    """
    label = _label(field, name)
    field_data = _field(data, field, required)
    if field_data is None and not required:
        return None
    if isinstance(field_data, str):
        text = field_data.strip()
        if text.startswith("["):
            try:
                field_data = json.loads(text)
            except ValueError:
                raise exceptions.ValidationError("The type of `{}` is not list".format(label))
        else:
            field_data = [p.strip() for p in text.split(",") if p.strip()]
    if not isinstance(field_data, (list, set, tuple)):
        raise exceptions.ValidationError("The type of `{}` is not list".format(label))
    return list(field_data)


def int_list_field(data, field=None, required=True, minimum=None, maximum=None, name=None):
    """ list-of-int validator, e.g. `1,3`.
    """
    items = list_field(data, field, required, name=name)
    if items is None:
        return None
    return [int_field(item, minimum=minimum, maximum=maximum, name=_label(field, name)) for item in items]


def choice_field(data, choices, field=None, required=True, name=None):
    """ enumeration validator.

    Raise:
        ValidationError: The value is not one of `choices`.
    """
    field_data = _field(data, field, required)
    if field_data is None and not required:
        return None
    if field_data not in choices:
        raise exceptions.ValidationError("`{}` must be one of {}, got {!r}".format(
            _label(field, name), ", ".join(str(c) for c in choices), field_data))
    return field_data
