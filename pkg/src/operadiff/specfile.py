"""TOML spec files for algebras, A•-modules and table operads.

Algebra over Com, Ass or Lie::

    kind = "algebra"
    operad = "com"
    name = "Q[x]/(x^2)"
    basis = ["1", "x"]
    table = [
      { op = "unit", inputs = [], output = "1" },
      { op = "mul", inputs = ["x", "x"], output = "0" },
    ]

Missing table entries are zero.  A Com ``mul`` entry also fills the swapped
inputs and a Lie ``bracket`` entry fills the swapped inputs with the
opposite sign, unless the file lists them itself.  Outputs are linear
combinations such as ``"2*x - 1/3*y"``.

Module (an algebra over A• for a ring given by structure constants)::

    kind = "module"
    basis = ["m"]
    [ring]
    basis = ["1", "t"]
    unit = "1"
    table = [{ inputs = ["t", "t"], output = "0" }, ...]
    [[table]]
    op = "t"
    inputs = ["m"]
    output = "0"

Table operad: ``components`` maps arities (as strings) to basis names,
``unit`` names the identity, ``action`` lists ``{op, perm, output}`` and
``composition`` lists ``{outer, slot, inner, output}``.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, Dict, Mapping, Union

import jsonschema
import tomli

from .algebra import PAlgebra, check_algebra_axioms
from .core import BasedModule, LinComb
from .operads import (AssocAlgebraData, Operad, make_pointed_operad,
                      make_table_operad, operad_by_name)
from .parsing import parse_linear


class SpecError(ValueError):
    """Malformed or schema-invalid input (a usage error)."""


class AxiomError(ValueError):
    """Well-formed input whose tables violate the axioms."""

    def __init__(self, msg: str, report=None):
        super().__init__(msg)
        self.report = report


_entry = {
    "type": "object",
    "required": ["inputs", "output"],
    "properties": {
        "op": {"type": "string"},
        "inputs": {"type": "array", "items": {"type": "string"}},
        "output": {"type": "string"},
    },
    "additionalProperties": False,
}

SPEC_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "required": ["kind"],
    "properties": {
        "kind": {"enum": ["algebra", "module", "operad-table"]},
        "name": {"type": "string"},
        "field": {"const": 0},
        "operad": {"enum": ["com", "ass", "lie"]},
        "basis": {"type": "array", "items": {"type": "string"}, "uniqueItems": True},
        "table": {"type": "array", "items": _entry},
        "ring": {
            "type": "object",
            "required": ["basis", "unit"],
            "properties": {
                "name": {"type": "string"},
                "basis": {"type": "array", "items": {"type": "string"}, "uniqueItems": True, "minItems": 1},
                "unit": {"type": "string"},
                "table": {"type": "array", "items": _entry},
            },
        },
        "max_arity": {"type": "integer", "minimum": 1, "maximum": 6},
        "components": {"type": "object", "additionalProperties": {"type": "array", "items": {"type": "string"}}},
        "unit": {"type": "string"},
        "action": {"type": "array", "items": {
            "type": "object", "required": ["op", "perm", "output"],
            "properties": {"op": {"type": "string"}, "perm": {"type": "array", "items": {"type": "integer"}},
                           "output": {"type": "string"}}}},
        "composition": {"type": "array", "items": {
            "type": "object", "required": ["outer", "slot", "inner", "output"],
            "properties": {"outer": {"type": "string"}, "slot": {"type": "integer", "minimum": 1},
                           "inner": {"type": "string"}, "output": {"type": "string"}}}},
    },
    "allOf": [
        {"if": {"properties": {"kind": {"const": "algebra"}}},
         "then": {"required": ["operad", "basis"]}},
        {"if": {"properties": {"kind": {"const": "module"}}},
         "then": {"required": ["ring", "basis"]}},
        {"if": {"properties": {"kind": {"const": "operad-table"}}},
         "then": {"required": ["components", "unit"]}},
    ],
}


def load_spec(source: Union[str, Path, Mapping], verify: bool = True) -> Union[PAlgebra, Operad]:
    """Read and build the object described by a spec file (path) or an already-parsed mapping."""
    if isinstance(source, Mapping):
        data = dict(source)
    else:
        path = Path(source)
        if not path.exists():
            raise SpecError(f"no such file: {path}")
        try:
            data = tomli.loads(path.read_text())
        except tomli.TOMLDecodeError as err:
            raise SpecError(f"{path}: {err}") from err
    try:
        jsonschema.validate(data, SPEC_SCHEMA)
    except jsonschema.ValidationError as err:
        where = "/".join(map(str, err.absolute_path)) or "top level"
        raise SpecError(f"schema violation at {where}: {err.message}") from err
    kind = data["kind"]
    if kind == "operad-table":
        return _table_operad(data, verify)
    if kind == "module":
        A = _module(data)
    else:
        A = _algebra(data)
    if verify:
        rep = check_algebra_axioms(A)
        if not rep.ok:
            raise AxiomError(f"{A.name} fails: {', '.join(rep.failed())}", rep)
    return A


def _lin(text: str, names, where: str) -> LinComb:
    try:
        return parse_linear(text, names)
    except ValueError as err:
        raise SpecError(f"{where}: {err}") from err


def _check_inputs(inputs, names, where):
    for x in inputs:
        if x not in names:
            raise SpecError(f"{where}: undeclared basis element {x!r}")


def _algebra(data) -> PAlgebra:
    P = operad_by_name(data["operad"])
    basis = tuple(data["basis"])
    ops = {"com": {"unit": 0, "mul": 2}, "ass": {"unit": 0, "mul": 2}, "lie": {"bracket": 2}}[data["operad"]]
    tables: Dict[str, Dict] = {op: {} for op in ops}
    given = set()
    for k, e in enumerate(data.get("table", [])):
        where = f"table[{k}]"
        op = e.get("op")
        if op not in ops:
            raise SpecError(f"{where}: operation {op!r} is not one of {sorted(ops)}")
        if len(e["inputs"]) != ops[op]:
            raise SpecError(f"{where}: {op} takes {ops[op]} inputs")
        _check_inputs(e["inputs"], basis, where)
        key = tuple(e["inputs"])
        tables[op][key] = _lin(e["output"], basis, where)
        given.add((op, key))
    sign = {"com": 1, "lie": -1}.get(data["operad"])
    if sign is not None:
        op = "mul" if data["operad"] == "com" else "bracket"
        for (a, b), v in list(tables[op].items()):
            if (op, (b, a)) not in given:
                tables[op][(b, a)] = v.scale(sign)
    tables = {op: {k: v for k, v in t.items() if v} for op, t in tables.items()}
    return PAlgebra(P, BasedModule(basis), tables, data.get("name", "A"))


def _module(data) -> PAlgebra:
    ring = data["ring"]
    rb = tuple(ring["basis"])
    mult = {}
    for k, e in enumerate(ring.get("table", [])):
        where = f"ring.table[{k}]"
        if len(e["inputs"]) != 2:
            raise SpecError(f"{where}: ring products take 2 inputs")
        _check_inputs(e["inputs"], rb, where)
        mult[tuple(e["inputs"])] = _lin(e["output"], rb, where)
    unit = _lin(ring["unit"], rb, "ring.unit")
    for a in rb:
        # the unit rows are implied when the unit is a basis element
        if len(unit) == 1:
            u = next(iter(unit))
            mult.setdefault((u, a), LinComb.single(a))
            mult.setdefault((a, u), LinComb.single(a))
    R = AssocAlgebraData(rb, unit, {k: v for k, v in mult.items() if v}, ring.get("name", "R"))
    try:
        P = make_pointed_operad(R)
    except ValueError as err:
        raise AxiomError(str(err)) from err
    basis = tuple(data["basis"])
    act = {}
    for k, e in enumerate(data.get("table", [])):
        where = f"table[{k}]"
        r = e.get("op")
        if r not in rb or len(e["inputs"]) != 1:
            raise SpecError(f"{where}: module entries need op in the ring basis and one input")
        _check_inputs(e["inputs"], basis, where)
        act[(r, e["inputs"][0])] = _lin(e["output"], basis, where)
    if len(unit) == 1:
        u = next(iter(unit))
        for m in basis:
            act.setdefault((u, m), LinComb.single(m))
    return PAlgebra(P, BasedModule(basis), {"act": {k: v for k, v in act.items() if v}}, data.get("name", "M"))


def _table_operad(data, verify: bool) -> Operad:
    comps = {int(n): tuple(b) for n, b in data["components"].items()}
    names = [s for b in comps.values() for s in b]
    unit = _lin(data["unit"], names, "unit")
    action = {}
    for k, e in enumerate(data.get("action", [])):
        action[(e["op"], tuple(e["perm"]))] = _lin(e["output"], names, f"action[{k}]")
    comp = {}
    for k, e in enumerate(data.get("composition", [])):
        comp[(e["outer"], e["slot"], e["inner"])] = _lin(e["output"], names, f"composition[{k}]")
    spec = {"name": data.get("name", "table"), "components": comps, "unit": unit, "action": action,
            "composition": comp, "max_arity": data.get("max_arity", max(comps, default=1))}
    try:
        return make_table_operad(spec, verify=verify)
    except ValueError as err:
        raise AxiomError(str(err)) from err
