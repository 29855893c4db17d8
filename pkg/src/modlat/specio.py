"""YAML module-spec files.

Two shapes are accepted::

    semisimple:
      - {type: S, mult: 2, q: 2}
      - {type: T, mult: 1, q: 3}

    explicit:
      moduli: [4, 2]
      action: [[[1, 0], [1, 1]]]

Errors carry the 1-based line and column of the offending node.
"""

from __future__ import annotations

import yaml

from .abelian import prime_power
from .field import field_of_size
from .modules import Component, ExplicitSpec, ModuleSpec, SemisimpleSpec


class SpecParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None, column: int | None = None):
        self.msg, self.line, self.column = msg, line, column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + msg)


def _err(node, msg):
    m = node.start_mark
    return SpecParseError(msg, m.line + 1, m.column + 1)


def _mapping(node, what) -> dict:
    if not isinstance(node, yaml.MappingNode):
        raise _err(node, f"{what} must be a mapping")
    out = {}
    for k, v in node.value:
        if not isinstance(k, yaml.ScalarNode):
            raise _err(k, "mapping keys must be scalars")
        if k.value in out:
            raise _err(k, f"duplicate key {k.value!r}")
        out[k.value] = v
    return out


def _seq(node, what) -> list:
    if not isinstance(node, yaml.SequenceNode):
        raise _err(node, f"{what} must be a list")
    return node.value


def _int(node, what) -> int:
    if not isinstance(node, yaml.ScalarNode) or node.tag != "tag:yaml.org,2002:int":
        raise _err(node, f"{what} must be an integer")
    return int(node.value, 0)


def _str(node, what) -> str:
    if not isinstance(node, yaml.ScalarNode):
        raise _err(node, f"{what} must be a string")
    return str(node.value)


def _build(root) -> ModuleSpec:
    top = _mapping(root, "spec")
    if len(top) != 1 or not set(top) <= {"semisimple", "explicit"}:
        raise _err(root, "spec needs exactly one of the keys 'semisimple' or 'explicit'")
    kind, body = next(iter(top.items()))
    if kind == "semisimple":
        comps = []
        for item in _seq(body, "semisimple"):
            m = _mapping(item, "component")
            extra = set(m) - {"type", "mult", "q"}
            if extra or len(m) != 3:
                raise _err(item, "component needs exactly the keys type, mult, q")
            try:
                F = field_of_size(_int(m["q"], "q"))
            except ValueError as e:
                raise _err(m["q"], str(e)) from None
            comps.append(Component(_str(m["type"], "type"), _int(m["mult"], "mult"), F))
        try:
            return SemisimpleSpec(tuple(comps))
        except ValueError as e:
            raise _err(body, str(e)) from None
    m = _mapping(body, "explicit")
    if "moduli" not in m or set(m) - {"moduli", "action"}:
        raise _err(body, "explicit spec needs 'moduli' and optionally 'action'")
    moduli = []
    for x in _seq(m["moduli"], "moduli"):
        v = _int(x, "modulus")
        if prime_power(v) is None:
            raise _err(x, f"modulus {v} is not a prime power >= 2")
        moduli.append(v)
    action = []
    for A in _seq(m["action"], "action") if "action" in m else []:
        action.append([[_int(x, "matrix entry") for x in _seq(r, "matrix row")] for r in _seq(A, "matrix")])
    try:
        return ExplicitSpec.of(moduli, action)
    except ValueError as e:
        raise _err(m.get("action", body) if "action" in str(e) else body, str(e)) from None


def parse_spec(text: str) -> ModuleSpec:
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        if mark is not None:
            raise SpecParseError(getattr(e, "problem", None) or str(e), mark.line + 1, mark.column + 1) from None
        raise SpecParseError(str(e)) from None
    if root is None:
        raise SpecParseError("empty spec file", 1, 1)
    return _build(root)


def load_spec(path) -> ModuleSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())


def spec_to_data(spec: ModuleSpec) -> dict:
    if isinstance(spec, SemisimpleSpec):
        return {"semisimple": [{"type": c.type_id, "mult": c.mult, "q": c.field.q} for c in spec.components]}
    data = {"moduli": list(spec.pres.moduli)}
    if spec.pres.action:
        data["action"] = [[list(r) for r in A] for A in spec.pres.action]
    return {"explicit": data}


def spec_from_data(data) -> ModuleSpec:
    return parse_spec(yaml.safe_dump(data))


def serialize_spec(spec: ModuleSpec) -> str:
    return yaml.safe_dump(spec_to_data(spec), sort_keys=True, default_flow_style=None)
