"""Problem files (JSON) and Graphviz DOT output."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .chartab import ClassFunction, character_table, perm_character
from .decomp import CorrGraph
from .errors import ProblemFormatError
from .exact import CycInt
from .fingroup import DEFAULT_BOUND
from .gactgraph import Cocycle, Graph, GroupAction, trivial_action, validate_action

_TOP_KEYS = {"graph", "action", "cocycle", "representation"}


@dataclass
class Problem:
    graph: Graph
    action_data: dict | None
    cocycle: Cocycle | None
    representation: Any
    source: str = "<memory>"

    def action(self, bound: int = DEFAULT_BOUND) -> GroupAction:
        data = self.action_data
        if not data:
            return trivial_action(self.graph)
        gens = data["generators"]
        maps = [(g.get("vertex_map", {}), g.get("edge_map", {})) for g in gens]
        names = [g.get("name", f"g{i}") for i, g in enumerate(gens)]
        ab = data.get("abstract_group")
        if ab is None:
            return validate_action(self.graph, maps, bound=bound, names=names)
        return validate_action(
            self.graph, maps, abstract_generators=ab["generators"], abstract_degree=ab.get("degree"),
            bound=bound, names=names,
        )

    def character(self, act: GroupAction) -> ClassFunction:
        """The representation as a character of the acting group."""
        rep = self.representation
        if rep is None:
            raise ProblemFormatError("problem has no representation")
        G = act.group
        if rep == "edges":
            return perm_character(G, act.edge_action)
        values = rep["character"]["values_mod_classes"]
        ncls = len(character_table(G).classes)
        if len(values) != ncls:
            raise ProblemFormatError(f"character needs {ncls} class values, got {len(values)}")
        return ClassFunction(G, [_parse_cyc(v) for v in values])


def _fail(msg: str):
    raise ProblemFormatError(msg)


def _check_keys(obj: Any, where: str, allowed: set[str], required: set[str] = frozenset()) -> None:
    if not isinstance(obj, dict):
        _fail(f"{where}: expected an object")
    extra = set(obj) - allowed
    if extra:
        _fail(f"{where}: unknown field(s) {sorted(extra)}")
    missing = set(required) - set(obj)
    if missing:
        _fail(f"{where}: missing field(s) {sorted(missing)}")


def _str_list(x: Any, where: str) -> list[str]:
    if not isinstance(x, list) or not all(isinstance(s, str) for s in x):
        _fail(f"{where}: expected a list of strings")
    return x


def _int_list(x: Any, where: str) -> list[int]:
    if not isinstance(x, list) or not all(isinstance(s, int) and not isinstance(s, bool) for s in x):
        _fail(f"{where}: expected a list of integers")
    return x


def _str_map(x: Any, where: str) -> dict[str, str]:
    if not isinstance(x, dict) or not all(isinstance(v, str) for v in x.values()):
        _fail(f"{where}: expected an object of strings")
    return x


def _parse_cyc(v: Any) -> CycInt:
    if isinstance(v, int) and not isinstance(v, bool):
        return CycInt.from_int(v)
    _check_keys(v, "character value", {"modulus", "coeffs"}, {"modulus", "coeffs"})
    m = v["modulus"]
    if not isinstance(m, int) or m < 1:
        _fail("character value: modulus must be a positive integer")
    return CycInt(m, _int_list(v["coeffs"], "character value coeffs"))


def _parse_graph(g: Any) -> Graph:
    _check_keys(g, "graph", {"vertices", "edges"}, {"vertices", "edges"})
    verts = _str_list(g["vertices"], "graph.vertices")
    if not isinstance(g["edges"], list):
        _fail("graph.edges: expected a list")
    edges = []
    for i, e in enumerate(g["edges"]):
        _check_keys(e, f"graph.edges[{i}]", {"name", "src", "rng"}, {"name", "src", "rng"})
        if not all(isinstance(e[k], str) for k in ("name", "src", "rng")):
            _fail(f"graph.edges[{i}]: fields must be strings")
        edges.append((e["name"], e["src"], e["rng"]))
    try:
        return Graph.from_names(verts, edges)
    except (KeyError, ValueError) as exc:
        _fail(f"graph: {exc}")


def _parse_action(a: Any) -> dict:
    _check_keys(a, "action", {"generators", "abstract_group"}, {"generators"})
    if not isinstance(a["generators"], list):
        _fail("action.generators: expected a list")
    for i, g in enumerate(a["generators"]):
        where = f"action.generators[{i}]"
        _check_keys(g, where, {"name", "vertex_map", "edge_map"})
        if "name" in g and not isinstance(g["name"], str):
            _fail(f"{where}.name: expected a string")
        _str_map(g.get("vertex_map", {}), f"{where}.vertex_map")
        _str_map(g.get("edge_map", {}), f"{where}.edge_map")
    ab = a.get("abstract_group")
    if ab is not None:
        _check_keys(ab, "action.abstract_group", {"degree", "generators"}, {"generators"})
        if not isinstance(ab["generators"], list):
            _fail("action.abstract_group.generators: expected a list")
        for p in ab["generators"]:
            _int_list(p, "action.abstract_group.generators")
        if "degree" in ab and (not isinstance(ab["degree"], int) or ab["degree"] < 1):
            _fail("action.abstract_group.degree: expected a positive integer")
    return a


def _parse_cocycle(c: Any) -> Cocycle:
    _check_keys(c, "cocycle", {"abelian", "assignment"}, {"abelian", "assignment"})
    ab = tuple(_int_list(c["abelian"], "cocycle.abelian"))
    if not isinstance(c["assignment"], dict):
        _fail("cocycle.assignment: expected an object")
    asg = {k: tuple(_int_list(v, f"cocycle.assignment.{k}")) for k, v in c["assignment"].items()}
    try:
        return Cocycle(ab, asg)
    except ValueError as exc:
        _fail(f"cocycle: {exc}")


def _parse_representation(r: Any) -> Any:
    if r == "edges":
        return r
    _check_keys(r, "representation", {"character"}, {"character"})
    _check_keys(r["character"], "representation.character", {"values_mod_classes"}, {"values_mod_classes"})
    vals = r["character"]["values_mod_classes"]
    if not isinstance(vals, list):
        _fail("representation.character.values_mod_classes: expected a list")
    for v in vals:
        _parse_cyc(v)
    return r


def parse_problem(data: Any, source: str = "<memory>") -> Problem:
    _check_keys(data, "problem", _TOP_KEYS, {"graph"})
    graph = _parse_graph(data["graph"])
    action = _parse_action(data["action"]) if "action" in data else None
    cocycle = _parse_cocycle(data["cocycle"]) if "cocycle" in data else None
    if cocycle is not None:
        unknown = set(cocycle.assignment) - {e.name for e in graph.edges}
        if unknown:
            _fail(f"cocycle.assignment: unknown edge(s) {sorted(unknown)}")
    rep = _parse_representation(data["representation"]) if "representation" in data else None
    return Problem(graph, action, cocycle, rep, source)


def load_problem(path: str | Path) -> Problem:
    p = Path(path)
    if p.suffix.lower() in (".yaml", ".yml", ".toml"):
        _fail(f"{p}: only JSON problem files are accepted")
    try:
        text = p.read_text()
    except OSError as exc:
        _fail(f"{p}: {exc.strerror}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        _fail(f"{p}: invalid JSON ({exc.msg} at line {exc.lineno})")
    return parse_problem(data, str(p))


# ---------------------------------------------------------------------------
# DOT


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def block_label(n: int) -> str:
    return "C" if n == 1 else f"M_{n}"


def corr_label(n_src: int, n_tgt: int, mult: int = 1) -> str:
    """Label of ``mult`` copies of the minimal correspondence between M_{n_src} and M_{n_tgt}."""
    if n_src == 1 and n_tgt == 1:
        base = "C"
    elif n_src == 1 or n_tgt == 1:
        base = f"C^{max(n_src, n_tgt)}"
    elif n_src == n_tgt:
        base = f"M_{n_src}"
    else:
        base = f"M_{{{n_src},{n_tgt}}}"
    return base if mult == 1 else f"{base} ×{mult}"


def emit_dot(obj: CorrGraph | Graph, name: str = "G") -> str:
    lines = [f"digraph {_q(name)} {{"]
    if isinstance(obj, CorrGraph):
        sizes = obj.sizes
        for i, b in enumerate(obj.blocks):
            lines.append(f"  b{i} [label={_q(block_label(b.size))}, tooltip={_q(f'{b.vertex_name}.{b.irrep}')}];")
        for ce in sorted(obj.edges, key=lambda c: (c.source, c.target, c.orbit)):
            lab = corr_label(sizes[ce.source], sizes[ce.target], ce.multiplicity)
            lines.append(f"  b{ce.source} -> b{ce.target} [label={_q(lab)}];")
    else:
        for i, v in enumerate(obj.vertices):
            lines.append(f"  n{i} [label={_q(v)}];")
        for e in obj.edges:
            lines.append(f"  n{e.src} -> n{e.rng};")
    lines.append("}")
    return "\n".join(lines) + "\n"
