"""Command-line front end: ``cgk <command> PROBLEM.json [flags]``.

Exit status: 0 on success, 1 on a domain error (one line ``<Code>: <message>``
on stderr), 2 when the problem file or the command line cannot be parsed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable

from .chartab import character_table, dr_matrix
from .decomp import blocks_label, corr_graph, dimension_audit, skeleton, vertex_algebra_summary
from .errors import CgkError, ProblemFormatError
from .exact import CycInt, IntMatrix
from .gactgraph import GroupAction, is_free, quotient_graph, skew_product
from .ktheory import dim_group, dr_graph, graph_algebra_props, graph_k_theory, vertex_matrix
from .oracle import DEFAULT_MAX_DIM, oracle_decomposition
from .problem import Problem, corr_label, emit_dot, load_problem

RULE = "=" * 60


def _cyc_json(c: CycInt):
    return c.to_int() if c.is_rational() else {"modulus": c.m, "coeffs": list(c.coeffs)}


def _matrix_str(M: IntMatrix) -> str:
    return "[" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in M.entries) + "]"


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _write_dot(text: str, dest: str, out) -> None:
    if dest == "-":
        out.write(text)
    else:
        Path(dest).write_text(text)


class Session:
    """One CLI invocation: the parsed problem plus lazily computed results."""

    def __init__(self, problem: Problem, args: argparse.Namespace, out):
        self.problem = problem
        self.args = args
        self.out = out
        self._act: GroupAction | None = None
        self._cg = None

    def print(self, *parts) -> None:
        print(*parts, file=self.out)

    @property
    def act(self) -> GroupAction:
        if self._act is None:
            self._act = self.problem.action(bound=self.args.max_group_order)
        return self._act

    @property
    def cg(self):
        if self._cg is None:
            self._cg = corr_graph(self.act)
        return self._cg


# ---------------------------------------------------------------------------
# commands


def cmd_validate(s: Session) -> None:
    act = s.act
    act.check()
    info = {
        "valid": True,
        "group_order": act.group.order,
        "generators": list(act.generator_names),
        "free": is_free(act),
    }
    if s.args.json:
        s.print(_dump(info))
    else:
        s.print(f"valid action: |G| = {act.group.order}, generators {', '.join(act.generator_names) or '(none)'}"
                f", free = {str(info['free']).lower()}")


def cmd_orbits(s: Session) -> None:
    act, g = s.act, s.act.graph
    vo = [
        {"vertices": [g.vertices[v] for v in orb], "stabilizer_order": act.vertex_stabilizer(orb[0]).order}
        for orb in act.vertex_orbits
    ]
    eo = [
        {"edges": [g.edges[e].name for e in orb], "stabilizer_order": act.edge_stabilizer(orb[0]).order}
        for orb in act.edge_orbits
    ]
    if s.args.json:
        s.print(_dump({"group_order": act.group.order, "vertex_orbits": vo, "edge_orbits": eo}))
        return
    s.print(f"|G| = {act.group.order}")
    for k, o in enumerate(vo):
        s.print(f"vertex orbit {k}: {{{', '.join(o['vertices'])}}}  |stab| = {o['stabilizer_order']}")
    for k, o in enumerate(eo):
        s.print(f"edge orbit {k}: {{{', '.join(o['edges'])}}}  |stab| = {o['stabilizer_order']}")


def _print_graph(s: Session, E, title: str) -> None:
    if s.args.json:
        s.print(_dump({**E.to_json(), "vertex_matrix": vertex_matrix(E).tolist()}))
    else:
        s.print(f"{title}: {E.n_vertices} vertices, {E.n_edges} edges")
        s.print(f"vertex matrix: {_matrix_str(vertex_matrix(E))}")
        for e in E.edges:
            s.print(f"  {e.name}: {E.vertices[e.src]} -> {E.vertices[e.rng]}")
    if s.args.dot:
        _write_dot(emit_dot(E, title), s.args.dot, s.out)


def cmd_quotient(s: Session) -> None:
    _print_graph(s, quotient_graph(s.act), "quotient")


def cmd_skew(s: Session) -> None:
    if s.problem.cocycle is None:
        raise ProblemFormatError("skew requires a cocycle")
    _print_graph(s, skew_product(s.problem.graph, s.problem.cocycle), "skew product")


def cmd_chartable(s: Session) -> None:
    G = s.act.group
    table = character_table(G)
    cl = G.classes
    reps = [G.elements[r] for r in cl.representatives]
    if s.args.json:
        s.print(_dump({
            "group_order": G.order,
            "classes": [
                {"representative": list(p), "size": n, "order": p.order()} for p, n in zip(reps, cl.sizes)
            ],
            "characters": [[_cyc_json(v) for v in chi.values] for chi in table.irreducibles],
        }))
        return
    s.print(f"|G| = {G.order}, {len(cl)} classes")
    s.print("class sizes: " + "  ".join(map(str, cl.sizes)))
    s.print("orders:      " + "  ".join(str(p.order()) for p in reps))
    for i, chi in enumerate(table.irreducibles):
        s.print(f"chi{i}: " + "  ".join(str(v) for v in chi.values))


def cmd_blocks(s: Session) -> None:
    grouped = vertex_algebra_summary(s.act)
    if s.args.json:
        s.print(_dump([[b.to_json() for b in grp] for grp in grouped]))
        return
    for grp in grouped:
        b0 = grp[0]
        s.print(f"orbit {b0.orbit} ({b0.vertex_name}, size {b0.orbit_size}, |stab| {len(b0.stabilizer)}): "
                f"{blocks_label(grp)}")
    s.print("total: " + blocks_label([b for grp in grouped for b in grp]))


def cmd_decompose(s: Session) -> None:
    cg = s.cg
    if s.args.json:
        s.print(_dump(cg.to_json()))
    else:
        _print_decomposition(s, cg)
    if s.args.dot:
        _write_dot(emit_dot(cg, "correspondences"), s.args.dot, s.out)


def _print_decomposition(s: Session, cg) -> None:
    s.print("blocks: " + blocks_label(cg.blocks))
    for i, b in enumerate(cg.blocks):
        s.print(f"  [{i}] {b.vertex_name}.{b.irrep}  size {b.size}")
    s.print(f"matrix: {_matrix_str(cg.A)}")
    sizes = cg.sizes
    for ce in cg.edges:
        lab = corr_label(sizes[ce.source], sizes[ce.target], ce.multiplicity)
        s.print(f"  [{ce.source}] -> [{ce.target}]  {lab}  (edge orbit of {cg.edge_orbits[ce.orbit].representative})")
    audit = dimension_audit(cg)
    s.print(f"audit: {'pass' if audit.ok else 'FAIL'} (vertices {audit.vertex_total[0]} = {audit.vertex_total[1]}, "
            f"edges {audit.edge_total[0]} = {audit.edge_total[1]})")
    for f in audit.failures:
        s.print(f"  {f}")


def _target_graph(s: Session):
    if s.args.dr:
        return dr_graph(s.act.group, s.problem.character(s.act)), "Doplicher-Roberts graph"
    if s.args.skeleton:
        return skeleton(s.cg), "skeleton"
    return s.problem.graph, "input graph"


def cmd_ktheory(s: Session) -> None:
    E, what = _target_graph(s)
    K = graph_k_theory(E)
    if s.args.json:
        s.print(_dump(K.to_json()))
    else:
        s.print(f"{what}: {K}")


def cmd_props(s: Session) -> None:
    E, what = _target_graph(s)
    p = graph_algebra_props(E)
    if s.args.json:
        s.print(_dump({"simple": p.simple, "purely_infinite": p.purely_infinite}))
    else:
        s.print(f"{what}: simple = {str(p.simple).lower()}, purely infinite = {str(p.purely_infinite).lower()}")


def cmd_dimgroup(s: Session) -> None:
    if s.args.matrix:
        try:
            B = IntMatrix(json.loads(s.args.matrix))
        except (json.JSONDecodeError, TypeError, ValueError) as exc:
            raise ProblemFormatError(f"--matrix: {exc}") from None
        what = "supplied matrix"
    elif s.args.dr:
        B, what = dr_matrix(s.act.group, s.problem.character(s.act)), "Doplicher-Roberts matrix"
    else:
        B, what = vertex_matrix(skeleton(s.cg)), "skeleton vertex matrix"
    p = dim_group(B)
    if s.args.json:
        s.print(_dump(p.to_json()))
    else:
        s.print(f"{what}: lim(Z^{p.k}, B), B = {_matrix_str(p.B)}, stable rank {p.stable_rank}")


def cmd_oracle_check(s: Session) -> None:
    r = oracle_decomposition(s.act, max_dim=s.args.max_oracle_dim)
    A = s.cg.A
    s.print(_dump({
        "blocks": r.sizes,
        "corner_dims": r.corner_dims.tolist(),
        "multiplicities": r.multiplicities.tolist(),
        "match": r.multiplicities == A and r.sizes == s.cg.sizes,
    }))


def cmd_report(s: Session) -> None:
    act, cg = s.act, s.cg
    E = s.problem.graph
    sk = skeleton(cg)

    def section(title: str) -> None:
        s.print(RULE)
        s.print(title)
        s.print(RULE)

    section(f"problem: {s.problem.source}")
    s.print(f"graph: {E.n_vertices} vertices, {E.n_edges} edges; |G| = {act.group.order}; free = "
            f"{str(is_free(act)).lower()}")
    section("orbits")
    cmd_orbits(s)
    section("decomposition")
    _print_decomposition(s, cg)
    section("K-theory and structure")
    s.print(f"input graph: {graph_k_theory(E)}")
    s.print(f"skeleton:    {graph_k_theory(sk)}")
    p = graph_algebra_props(sk)
    s.print(f"skeleton simple = {str(p.simple).lower()}, purely infinite = {str(p.purely_infinite).lower()}")
    dg = dim_group(vertex_matrix(sk))
    s.print(f"dimension group: lim(Z^{dg.k}, B), stable rank {dg.stable_rank}")
    if s.problem.representation is not None:
        chi = s.problem.character(act)
        s.print(f"DR matrix: {_matrix_str(dr_matrix(act.group, chi))}")
        s.print(f"DR graph:  {graph_k_theory(dr_graph(act.group, chi))}")
    if s.problem.cocycle is not None:
        Ec = skew_product(E, s.problem.cocycle)
        s.print(f"skew product: {Ec.n_vertices} vertices, {Ec.n_edges} edges")
    section("oracle")
    try:
        r = oracle_decomposition(act, max_dim=s.args.max_oracle_dim)
        ok = r.multiplicities == cg.A and r.sizes == cg.sizes
        s.print(f"corner total {r.total_corner_dim} = {E.n_edges * act.group.order}; match = {str(ok).lower()}")
    except CgkError as exc:
        s.print(f"skipped: {exc.code}: {exc}")
    if s.args.figures:
        from .plotting import plot_corr_graph, plot_graph

        out = Path(s.args.figures)
        out.mkdir(parents=True, exist_ok=True)
        stem = Path(s.problem.source).stem
        files = [
            plot_graph(E, out / f"{stem}_graph.png", "input graph"),
            plot_corr_graph(cg, out / f"{stem}_correspondences.png", "graph of correspondences"),
            plot_graph(sk, out / f"{stem}_skeleton.png", "skeleton"),
        ]
        section("figures")
        for f in files:
            s.print(str(f))
    s.print(RULE)


COMMANDS: dict[str, tuple[Callable[[Session], None], str]] = {
    "validate": (cmd_validate, "check the action"),
    "orbits": (cmd_orbits, "vertex and edge orbits with stabilizer orders"),
    "quotient": (cmd_quotient, "quotient graph E/G"),
    "skew": (cmd_skew, "skew product by the cocycle"),
    "chartable": (cmd_chartable, "character table of the acting group"),
    "blocks": (cmd_blocks, "matrix blocks of the vertex crossed product"),
    "decompose": (cmd_decompose, "graph of minimal correspondences"),
    "ktheory": (cmd_ktheory, "K-theory of a graph algebra"),
    "dimgroup": (cmd_dimgroup, "stationary dimension group presentation"),
    "props": (cmd_props, "simplicity and pure infiniteness"),
    "oracle-check": (cmd_oracle_check, "brute-force crossed-product verification"),
    "report": (cmd_report, "everything, human-readable"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("problem", help="problem file (JSON)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--dot", metavar="PATH", help="write Graphviz DOT ('-' for stdout)")
    common.add_argument("--skeleton", action="store_true", help="use the skeleton graph")
    common.add_argument("--dr", action="store_true", help="use the Doplicher-Roberts graph of the representation")
    common.add_argument("--matrix", metavar="JSON", help="connecting matrix for dimgroup")
    common.add_argument("--figures", metavar="DIR", help="report: render PNG figures into DIR")
    common.add_argument("--max-group-order", type=int, default=20000, metavar="N")
    common.add_argument("--max-oracle-dim", type=int, default=DEFAULT_MAX_DIM, metavar="N")
    parser = argparse.ArgumentParser(prog="cgk", description="Finite group actions on graphs and their crossed products.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text)
    return parser


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        problem = load_problem(args.problem)
        COMMANDS[args.command][0](Session(problem, args, out))
    except ProblemFormatError as exc:
        print(f"{exc.code}: {exc}", file=err)
        return 2
    except CgkError as exc:
        print(f"{exc.code}: {' '.join(str(exc).split())}", file=err)
        return 1
    except ValueError as exc:
        print(f"InvalidInput: {' '.join(str(exc).split())}", file=err)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
