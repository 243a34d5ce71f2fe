"""Exact crystallographic subgroup classification and Whitehead group reports.

Thin convenience layer over the compiled module: the *_json entry points are
wrapped so callers get dictionaries instead of JSON strings.
"""

import json

from ._core import (  # noqa: F401
    DimensionError,
    Error,
    Group,
    NotInCatalogError,
    ParseError,
    ValidationError,
    __version__,
    catalog,
    corollary2_text,
    finite_classes,
    load_group,
    parse_group,
    point_group_type,
    vc_classes,
    whitehead_group_text,
)
from ._core import corollary2_json as _corollary2_json
from ._core import whitehead_group_json as _whitehead_group_json


def whitehead_group(group, jobs=1):
    """Whitehead group report for a three-dimensional group, as a dict."""
    return json.loads(_whitehead_group_json(group, jobs))


def corollary2(group, jobs=1):
    """Classwise report for the product of a plane group with Z, as a dict.

    The classwise evaluation is cross-checked internally against the direct
    evaluation of the product group.
    """
    return json.loads(_corollary2_json(group, jobs))
