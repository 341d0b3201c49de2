"""Structured documents for instances, findings, and reports.

Sets travel as sorted integer arrays, spaces as a point count plus a
subbasis, and every emitted document is canonical: sorted keys, two-space
indent, one trailing newline.  Parsers raise InputError naming the offending
field, so the batch front-end can surface field-level diagnostics.
"""

import json

from .classes import SetClass
from .errors import InputError
from .hausdorff import MODES, PREFIX, Base, IndexedFamily
from .maps import PointMap
from .masks import SubsetMask
from .spaces import DEFAULT_MAX_POINTS, generate_topology


def canonical_json(doc):
    """The one serialized form used everywhere: byte-stable for equal docs."""
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _field(doc, name, path, optional=False, default=None):
    if not isinstance(doc, dict):
        raise InputError(f"{path or 'document'} must be an object")
    if name not in doc:
        if optional:
            return default
        raise InputError(f"missing field {path + '.' + name if path else name}")
    return doc[name]


def _int_field(doc, name, path, minimum=0, optional=False, default=None):
    val = _field(doc, name, path, optional, default)
    if optional and val == default and name not in doc:
        return default
    where = path + "." + name if path else name
    if not isinstance(val, int) or isinstance(val, bool) or val < minimum:
        raise InputError(f"{where} must be an integer >= {minimum}")
    return val


def points_doc(mask):
    return sorted(mask.points())


def mask_from_doc(n, val, path):
    if not isinstance(val, list) or not all(
        isinstance(p, int) and not isinstance(p, bool) for p in val
    ):
        raise InputError(f"{path} must be an array of integers")
    for p in val:
        if not 0 <= p < n:
            raise InputError(f"{path} contains point {p}, universe has {n} points")
    return SubsetMask.from_points(n, val)


def space_to_doc(space):
    return {"n": space.n, "subbasis": [points_doc(o) for o in space.opens]}


def space_from_doc(doc, path="space", max_points=DEFAULT_MAX_POINTS):
    n = _int_field(doc, "n", path)
    sub = _field(doc, "subbasis", path, optional=True, default=[])
    if not isinstance(sub, list):
        raise InputError(f"{path}.subbasis must be an array of point arrays")
    masks = [mask_from_doc(n, s, f"{path}.subbasis[{i}]") for i, s in enumerate(sub)]
    return generate_topology(n, masks, max_points=max_points)


def base_to_doc(base):
    return {
        "alphabet": base.alphabet,
        "branches": [list(br) for br in base.branches],
        "mode": base.mode_hint,
    }


def base_from_doc(doc, path="base"):
    alphabet = _int_field(doc, "alphabet", path, minimum=1)
    branches = _field(doc, "branches", path)
    if not isinstance(branches, list):
        raise InputError(f"{path}.branches must be an array of symbol arrays")
    for i, br in enumerate(branches):
        if (
            not isinstance(br, list)
            or not br
            or not all(isinstance(s, int) and not isinstance(s, bool) for s in br)
        ):
            raise InputError(f"{path}.branches[{i}] must be a nonempty array of integers")
    mode = _field(doc, "mode", path, optional=True, default=PREFIX)
    if mode not in MODES:
        raise InputError(f"{path}.mode must be one of {MODES}")
    return Base(alphabet, [tuple(br) for br in branches], mode)


def _index_key(mode, index):
    if mode == PREFIX:
        return ",".join(str(s) for s in index)
    return str(index)


def _index_from_key(mode, key, path):
    if not isinstance(key, str):
        raise InputError(f"{path} keys must be strings")
    if mode == PREFIX:
        if key == "":
            return ()
        parts = key.split(",")
    else:
        parts = [key]
    try:
        nums = tuple(int(p) for p in parts)
    except ValueError:
        raise InputError(f"{path} key {key!r} is not a comma-separated index") from None
    if any(v < 0 for v in nums):
        raise InputError(f"{path} key {key!r} has a negative symbol")
    return nums if mode == PREFIX else nums[0]


def family_to_doc(family):
    assignments = {
        _index_key(family.mode, idx): points_doc(val)
        for idx, val in family.assignments.items()
    }
    return {
        "universe": family.n,
        "mode": family.mode,
        "assignments": assignments,
        "default": None if family.default is None else points_doc(family.default),
    }


def family_from_doc(doc, path="family"):
    n = _int_field(doc, "universe", path)
    mode = _field(doc, "mode", path)
    if mode not in MODES:
        raise InputError(f"{path}.mode must be one of {MODES}")
    raw = _field(doc, "assignments", path)
    if not isinstance(raw, dict):
        raise InputError(f"{path}.assignments must be an object keyed by index")
    where = f"{path}.assignments"
    assignments = {
        _index_from_key(mode, key, where): mask_from_doc(n, val, f"{where}[{key!r}]")
        for key, val in raw.items()
    }
    default = _field(doc, "default", path, optional=True)
    if default is not None:
        default = mask_from_doc(n, default, f"{path}.default")
    return IndexedFamily(n, mode, assignments, default)


def map_to_doc(pm):
    return {
        "dom": space_to_doc(pm.dom),
        "cod": space_to_doc(pm.cod),
        "table": list(pm.table),
    }


def map_from_doc(doc, path="map", max_points=DEFAULT_MAX_POINTS):
    dom = space_from_doc(_field(doc, "dom", path), f"{path}.dom", max_points)
    cod = space_from_doc(_field(doc, "cod", path), f"{path}.cod", max_points)
    table = _field(doc, "table", path)
    if not isinstance(table, list) or not all(
        isinstance(t, int) and not isinstance(t, bool) for t in table
    ):
        raise InputError(f"{path}.table must be an array of integers")
    if len(table) != dom.n:
        raise InputError(f"{path}.table must list {dom.n} codomain points, got {len(table)}")
    for i, t in enumerate(table):
        if not 0 <= t < cod.n:
            raise InputError(f"{path}.table[{i}] = {t} is outside the codomain 0..{cod.n - 1}")
    return PointMap(dom, cod, table)


def class_to_doc(sc):
    return {"universe": sc.n, "members": [points_doc(m) for m in sc.members]}


def class_from_doc(doc, path="class"):
    n = _int_field(doc, "universe", path)
    members = _field(doc, "members", path)
    if not isinstance(members, list):
        raise InputError(f"{path}.members must be an array of point arrays")
    masks = [mask_from_doc(n, m, f"{path}.members[{i}]") for i, m in enumerate(members)]
    return SetClass(n, masks)


def relation_from_doc(val, path="order"):
    if not isinstance(val, list):
        raise InputError(f"{path} must be an array of [i, j] pairs")
    pairs = []
    for i, entry in enumerate(val):
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in entry)
        ):
            raise InputError(f"{path}[{i}] must be a pair of integers")
        pairs.append((entry[0], entry[1]))
    return pairs
