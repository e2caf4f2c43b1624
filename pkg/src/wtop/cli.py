"""Command-line front end.

Every command builds one result dictionary which is printed either as JSON
or as indented text, so both formats always carry the same values.

Exit codes: 0 success, 1 a law or consistency check failed, 2 usage or
input error, 3 a size guard was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import lattice, reflection, topology
from .errors import GuardExceeded, NotApplicable, ParseError, TheoremViolation, WTopError
from .fileformat import load_monoid, load_mset
from .laws import LAW_IDS, run_laws
from .monoid import (
    Monoid,
    center,
    enumerate_left_ideals,
    enumerate_right_ideals,
    enumerate_two_sided_ideals,
)
from .mset import MSet, Omega, SubMSet, omega, regular_act, sub_from_names

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3

COMMANDS = ("ideals", "omega", "topology", "closure", "check", "lattice", "reflect", "sheafify", "laws")

_IDEAL = {"type": "array", "items": {"type": "string"}}

OUTPUT_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["command", "monoid", "result"],
    "additionalProperties": False,
    "properties": {
        "command": {"enum": list(COMMANDS)},
        "monoid": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["elements", "identity"],
                    "properties": {"elements": _IDEAL, "identity": {"type": "string"}},
                },
            ]
        },
        "result": {"type": "object"},
    },
    "$defs": {
        "ideal": _IDEAL,
        "table": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["in", "out"],
                "additionalProperties": False,
                "properties": {"in": _IDEAL, "out": _IDEAL},
            },
        },
        "topology": {
            "type": "object",
            "required": ["name", "productive", "idempotent"],
            "properties": {
                "name": {"type": "string"},
                "productive": {"type": "boolean"},
                "idempotent": {"type": "boolean"},
                "omega_j": {"type": "array", "items": _IDEAL},
                "l_j": {"type": "array", "items": _IDEAL},
                "im_j": {"type": "array", "items": _IDEAL},
                "table": {"$ref": "#/$defs/table"},
            },
        },
    },
    "allOf": [
        {
            "if": {"properties": {"command": {"const": "topology"}}},
            "then": {
                "properties": {
                    "result": {
                        "type": "object",
                        "required": ["topologies"],
                        "properties": {"topologies": {"type": "array", "items": {"$ref": "#/$defs/topology"}}},
                    }
                }
            },
        },
        {
            "if": {"properties": {"command": {"const": "omega"}}},
            "then": {
                "properties": {
                    "result": {
                        "type": "object",
                        "required": ["ideals", "translations", "top", "bottom"],
                        "properties": {"ideals": {"type": "array", "items": _IDEAL}},
                    }
                }
            },
        },
        {
            "if": {"properties": {"command": {"const": "laws"}}},
            "then": {
                "properties": {
                    "result": {
                        "type": "object",
                        "required": ["laws", "passed", "failed"],
                        "properties": {
                            "laws": {
                                "type": "array",
                                "items": {
                                    "type": "object",
                                    "required": ["id", "ok", "detail"],
                                    "properties": {"id": {"type": "string"}, "ok": {"type": "boolean"}},
                                },
                            }
                        },
                    }
                }
            },
        },
    ],
}


class UsageError(WTopError):
    pass


# -- argument parsing --------------------------------------------------------


class _TopologyFlag(argparse.Action):
    """Collect topology flags, in command-line order, into one list."""

    def __call__(self, parser, namespace, values, option_string=None):
        specs = list(getattr(namespace, "topologies", None) or [])
        specs.append((self.const, values))
        namespace.topologies = specs


def _add_topology_flags(p: argparse.ArgumentParser):
    g = p.add_argument_group("topology selection (flags may repeat; order is kept)")
    g.add_argument("--ideal", action=_TopologyFlag, const="ideal", metavar="CSV",
                   help="weak ideal topology of a left ideal, e.g. '0,s'")
    g.add_argument("--central", action=_TopologyFlag, const="central", metavar="NAME",
                   help="topology of a central element")
    g.add_argument("--open", action=_TopologyFlag, const="open", metavar="CSV",
                   help="K -> u or K for a global right ideal u")
    g.add_argument("--closed", action=_TopologyFlag, const="closed", metavar="CSV",
                   help="K -> (u => K) for a global right ideal u")
    g.add_argument("--not-not", action=_TopologyFlag, const="notnot", nargs=0,
                   help="double negation")
    g.add_argument("--identity", action=_TopologyFlag, const="identity", nargs=0,
                   help="identity topology")
    g.add_argument("--top", action=_TopologyFlag, const="top", nargs=0,
                   help="constant top topology")
    g.add_argument("--compose", metavar="A,B",
                   help="use compose(A, B) of the listed topologies (1-based, B applied first)")
    p.set_defaults(topologies=[])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wtop", description="Weak topologies on finite M-sets.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def common(name, help_text, topo=False, mset=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("monoid", help="monoid file")
        p.add_argument("--format", choices=("text", "json"), default="text")
        if mset:
            p.add_argument("--mset", metavar="FILE",
                           help="M-set file (default: the regular act)")
            p.add_argument("--guard-exp", type=int, default=reflection.DEFAULT_MAX_EXP_DOMAIN,
                           metavar="N", help="largest |M|*|E| for exponentials (default %(default)s)")
        if topo:
            _add_topology_flags(p)
        return p

    common("ideals", "right, left and two-sided ideals and the center")
    common("omega", "the subobject classifier and its action")
    p = common("topology", "describe weak topologies", topo=True)
    p.add_argument("--show-table", action="store_true", help="print the endomap table")
    p = common("closure", "closure of a sub-M-set", topo=True, mset=True)
    p.add_argument("--subset", required=True, metavar="CSV", help="carrier elements of the subobject")
    common("check", "separated and sheaf tests", topo=True, mset=True)
    p = common("lattice", "enumerate weak topologies")
    p.add_argument("--productive", action="store_true", help="only productive ones")
    p.add_argument("--lt", action="store_true", help="only idempotent ones")
    p.add_argument("--max-omega", type=int, default=lattice.DEFAULT_MAX_OMEGA, metavar="N",
                   help="largest classifier to enumerate over (default %(default)s)")
    p.add_argument("--show-table", action="store_true")
    common("reflect", "diagonal closures, separated reflection, topological reflection", topo=True, mset=True)
    common("sheafify", "sheaf associated to an object of C_j", topo=True, mset=True)

    p = sub.add_parser("laws", help="run the law suite")
    p.add_argument("--max-order", type=int, metavar="N", help="cap on monoid orders")
    p.add_argument("--only", action="append", choices=LAW_IDS, metavar="LAW-ID",
                   help="run only this law (repeatable)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    return parser


# -- conversions ----------------------------------------------------------------


def _csv(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _subset(M: Monoid, text: str) -> frozenset:
    try:
        return M.subset(_csv(text))
    except KeyError as e:
        raise UsageError(str(e.args[0])) from None


def ideal_names(M: Monoid, ideal) -> list[str]:
    """Names in declared element order."""
    return M.subset_names(ideal)


def _omega_element(Om: Omega, M: Monoid, text: str) -> int:
    ideal = _subset(M, text)
    if ideal not in Om.ideal_index:
        raise UsageError(f"{{{text}}} is not a right ideal")
    return Om.ideal_index[ideal]


def _build_topology(M: Monoid, kind: str, value) -> topology.WeakTopology:
    Om = omega(M)
    if kind == "ideal":
        return topology.weak_ideal_topology(M, _subset(M, value))
    if kind == "central":
        try:
            m = M.index(value)
        except KeyError as e:
            raise UsageError(str(e.args[0])) from None
        return topology.central_element_topology(M, m)
    if kind == "open":
        return topology.open_topology(Om, _omega_element(Om, M, value))
    if kind == "closed":
        return topology.closed_topology(Om, _omega_element(Om, M, value))
    if kind == "notnot":
        return topology.double_negation(Om)
    if kind == "identity":
        return topology.identity_topology(M)
    return topology.top_topology(M)


def _topology_list(M: Monoid, args) -> list[topology.WeakTopology]:
    return [_build_topology(M, kind, value) for kind, value in args.topologies]


def _selected(M: Monoid, args) -> topology.WeakTopology:
    tops = _topology_list(M, args)
    if args.compose:
        return _composite(tops, args.compose)
    if len(tops) != 1:
        raise UsageError("select exactly one topology, or several with --compose")
    return tops[0]


def _composite(tops, text: str) -> topology.WeakTopology:
    parts = _csv(text)
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise UsageError("--compose expects two 1-based positions, e.g. 1,2")
    a, b = (int(p) for p in parts)
    if not (1 <= a <= len(tops) and 1 <= b <= len(tops)):
        raise UsageError(f"--compose positions must lie in 1..{len(tops)}")
    j, k = tops[a - 1], tops[b - 1]
    name = f"({j.name or a}).({k.name or b})"
    return lattice.compose(j, k).rename(name)


def _mset(M: Monoid, args) -> MSet:
    if not args.mset:
        return regular_act(M)
    if args.mset.endswith(".mon"):
        other = load_monoid(args.mset)
        if other != M:
            raise UsageError("the monoid file given as M-set differs from the monoid")
        return regular_act(M)
    return load_mset(args.mset, M)


def _ideal_list(M: Monoid, ideals) -> list[list[str]]:
    return [ideal_names(M, K) for K in ideals]


def _sub_ideals(Om: Omega, sub: SubMSet) -> list[list[str]]:
    return [ideal_names(Om.monoid, Om.ideals[k]) for k in sorted(sub.elements)]


def _table(j: topology.WeakTopology) -> list[dict]:
    Om, M = j.omega, j.monoid
    return [
        {"in": ideal_names(M, Om.ideals[k]), "out": ideal_names(M, Om.ideals[j.table[k]])}
        for k in Om.elements
    ]


def _describe(j: topology.WeakTopology, show_table: bool) -> dict:
    Om = j.omega
    d = {
        "name": j.name or "j",
        "productive": j.productive,
        "idempotent": j.idempotent,
        "omega_j": _sub_ideals(Om, topology.omega_j(j)),
        "l_j": _sub_ideals(Om, topology.l_j(j)),
        "im_j": _sub_ideals(Om, topology.im_j(j)),
    }
    if show_table:
        d["table"] = _table(j)
    return d


def _elems(E: MSet, sub: SubMSet | None) -> list[str] | None:
    return None if sub is None else [E.names[x] for x in sorted(sub.elements)]


def _mset_dict(E: MSet) -> dict:
    return {"carrier": list(E.names), "action": [[E.names[v] for v in row] for row in E.act]}


def _pairs(rep: reflection.DiagonalClosureReport, sub: SubMSet) -> list[list[str]]:
    return [list(p) for p in rep.named_pairs(sub)]


# -- commands -----------------------------------------------------------------


def cmd_ideals(M: Monoid, args) -> tuple[dict, int]:
    return {
        "right_ideals": _ideal_list(M, enumerate_right_ideals(M)),
        "left_ideals": _ideal_list(M, enumerate_left_ideals(M)),
        "two_sided_ideals": _ideal_list(M, enumerate_two_sided_ideals(M)),
        "center": ideal_names(M, center(M)),
    }, EXIT_OK


def cmd_omega(M: Monoid, args) -> tuple[dict, int]:
    Om = omega(M)
    action = []
    for k in Om.elements:
        action.append({
            "ideal": ideal_names(M, Om.ideals[k]),
            "by": {M.names[m]: ideal_names(M, Om.ideals[Om.act[k][m]]) for m in M.elements},
        })
    return {
        "ideals": _ideal_list(M, Om.ideals),
        "translations": action,
        "top": ideal_names(M, Om.ideals[Om.top]),
        "bottom": [],
        "global_elements": [ideal_names(M, Om.ideals[k]) for k in Om.global_elements()],
    }, EXIT_OK


def cmd_topology(M: Monoid, args) -> tuple[dict, int]:
    tops = _topology_list(M, args)
    if not tops:
        raise UsageError("no topology selected")
    chosen = [_composite(tops, args.compose)] if args.compose else tops
    return {"topologies": [_describe(j, args.show_table) for j in chosen]}, EXIT_OK


def cmd_closure(M: Monoid, args) -> tuple[dict, int]:
    j = _selected(M, args)
    E = _mset(M, args)
    try:
        A = sub_from_names(E, _csv(args.subset))
    except KeyError as e:
        raise UsageError(str(e.args[0])) from None
    cl = topology.closure(j, A)
    return {
        "topology": j.name or "j",
        "subset": _elems(E, A),
        "closure": _elems(E, cl),
        "dense": cl.is_full(),
        "closed": cl == A,
        "interior": _elems(E, topology.interior(j, A)),
    }, EXIT_OK


def _witness(E: MSet, v) -> dict | None:
    if v.ok:
        return None
    w = v.witness
    out = {
        "reason": v.reason,
        "domain": _mset_dict(w.domain),
        "dense": [w.domain.names[x] for x in sorted(w.dense.elements)],
        "first": [E.names[y] for y in w.first.table],
    }
    if w.second is not None:
        out["second"] = [E.names[y] for y in w.second.table]
    return out


def cmd_check(M: Monoid, args) -> tuple[dict, int]:
    j = _selected(M, args)
    E = _mset(M, args)
    rep = reflection.diagonal_closure_report(j, E)
    dsep = reflection.definitional_separated_check(j, E)
    dsh = reflection.definitional_sheaf_check(j, E)
    result: dict[str, Any] = {
        "topology": j.name or "j",
        "productive": j.productive,
        "separated": rep.is_separated,
        "in_c_j": rep.in_c_j,
        "separated_definitional": dsep.ok,
        "separated_witness": _witness(E, dsep),
        "sheaf_definitional": dsh.ok,
        "sheaf": None,
    }
    code = EXIT_OK
    if dsep.ok != rep.is_separated:
        code = EXIT_VIOLATION
    if j.productive:
        result["sheaf"] = reflection.is_sheaf(j, E, args.guard_exp)
        if result["sheaf"] != dsh.ok:
            code = EXIT_VIOLATION
    result["consistent"] = code == EXIT_OK
    return result, code


def cmd_lattice(M: Monoid, args) -> tuple[dict, int]:
    tops = lattice.enumerate_weak_topologies(
        M, productive_only=args.productive, lt_only=args.lt, max_omega=args.max_omega
    )
    described = []
    for i, j in enumerate(tops, start=1):
        d = _describe(j.rename(f"w{i}"), args.show_table)
        described.append(d)
    order = [
        [f"w{a}", f"w{b}"]
        for a, ja in enumerate(tops, start=1)
        for b, jb in enumerate(tops, start=1)
        if a != b and lattice.leq(ja, jb)
    ]
    return {"count": len(tops), "topologies": described, "order": order}, EXIT_OK


def cmd_reflect(M: Monoid, args) -> tuple[dict, int]:
    j = _selected(M, args)
    E = _mset(M, args)
    rep = reflection.diagonal_closure_report(j, E)
    result: dict[str, Any] = {
        "topology": j.name or "j",
        "delta_bar": _pairs(rep, rep.delta_bar),
        "delta_bar_bar": _pairs(rep, rep.delta_bar_bar),
        "separated": rep.is_separated,
        "in_c_j": rep.in_c_j,
        "topological_reflection": _table(lattice.topological_reflection(j)),
        "separated_reflection": None,
        "iterative": None,
    }
    if j.productive:
        if rep.in_c_j:
            Ep, theta = reflection.separated_reflection(j, E)
            result["separated_reflection"] = {
                "object": _mset_dict(Ep),
                "map": [Ep.names[y] for y in theta.table],
            }
        trace: list = []
        Eq, q = reflection.sep_reflect_iterative(j, E, trace)
        result["iterative"] = {
            "object": _mset_dict(Eq),
            "map": [Eq.names[y] for y in q.table],
            "rounds": [size for size, _ in trace],
        }
    return result, EXIT_OK


def cmd_sheafify(M: Monoid, args) -> tuple[dict, int]:
    j = _selected(M, args)
    E = _mset(M, args)
    F, i = reflection.sheafify_cj(j, E, args.guard_exp)
    return {
        "topology": j.name or "j",
        "sheaf_size": F.size,
        "sheaf": _mset_dict(F),
        "map": [F.names[y] for y in i.table],
        "kernel_pairs": sorted([E.names[a], E.names[b]] for a, b in reflection.kernel_congruence_pairs(i)),
    }, EXIT_OK


def cmd_laws(args) -> tuple[dict, int]:
    results = run_laws(args.only, args.max_order)
    laws = [{"id": r.law_id, "ok": r.ok, "detail": r.detail, "checked": r.checked} for r in results]
    failed = [r.law_id for r in results if not r.ok]
    return {
        "laws": laws,
        "passed": len(results) - len(failed),
        "failed": failed,
    }, EXIT_VIOLATION if failed else EXIT_OK


HANDLERS = {
    "ideals": cmd_ideals,
    "omega": cmd_omega,
    "topology": cmd_topology,
    "closure": cmd_closure,
    "check": cmd_check,
    "lattice": cmd_lattice,
    "reflect": cmd_reflect,
    "sheafify": cmd_sheafify,
}


# -- rendering ------------------------------------------------------------------


# Keys whose string lists are sequences (rows, carriers, map tables), not sets.
_ROW_KEYS = {"action", "map", "first", "second", "carrier", "failed"}
# Keys holding lists of ordered pairs.
_PAIR_KEYS = {"delta_bar", "delta_bar_bar", "kernel_pairs", "order"}


def _fmt_scalar(v, key=None) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list) and all(isinstance(x, str) for x in v):
        if key in _ROW_KEYS:
            return " ".join(v) if v else "(empty)"
        return "{" + ",".join(v) + "}"
    return str(v)


def _is_flat(v) -> bool:
    return not isinstance(v, (dict, list)) or (isinstance(v, list) and all(isinstance(x, str) for x in v))


def _is_table(v) -> bool:
    return isinstance(v, list) and bool(v) and all(isinstance(x, dict) and set(x) == {"in", "out"} for x in v)


def render_text(doc: dict) -> str:
    lines: list[str] = []

    def emit(key, value, pad):
        if _is_flat(value):
            lines.append(f"{pad}{key}: {_fmt_scalar(value, key)}".rstrip())
        elif _is_table(value):
            lines.append(f"{pad}{key}:")
            for row in value:
                lines.append(f"{pad}  {_fmt_scalar(row['in'])} -> {_fmt_scalar(row['out'])}")
        elif isinstance(value, list) and key in _ROW_KEYS:
            lines.append(f"{pad}{key}:")
            for row in value:
                lines.append(f"{pad}  {_fmt_scalar(row, key)}")
        elif isinstance(value, list) and key in _PAIR_KEYS:
            lines.append(f"{pad}{key}: [" + ", ".join("(" + ",".join(x) + ")" for x in value) + "]")
        elif isinstance(value, list) and all(_is_flat(x) for x in value):
            lines.append(f"{pad}{key}: [" + ", ".join(_fmt_scalar(x) for x in value) + "]")
        elif isinstance(value, list):
            lines.append(f"{pad}{key}:")
            for x in value:
                emit_item(x, pad + "  ")
        else:
            lines.append(f"{pad}{key}:")
            for k, v in value.items():
                emit(k, v, pad + "  ")

    def emit_item(value, pad):
        if isinstance(value, dict) and value:
            first = len(lines)
            for k, v in value.items():
                emit(k, v, pad + "  ")
            lines[first] = pad + "- " + lines[first][len(pad) + 2:]
        else:
            lines.append(f"{pad}- {_fmt_scalar(value)}")

    lines.append(f"command: {doc['command']}")
    if doc["monoid"] is not None:
        M = doc["monoid"]
        lines.append(f"monoid: {_fmt_scalar(M['elements'])} (identity {M['identity']})")
    for k, v in doc["result"].items():
        emit(k, v, "")
    return "\n".join(lines) + "\n"


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    return render_text(doc)


def run_command(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    try:
        if args.command == "laws":
            result, code = cmd_laws(args)
            doc = {"command": "laws", "monoid": None, "result": result}
        else:
            M = load_monoid(args.monoid)
            result, code = HANDLERS[args.command](M, args)
            doc = {
                "command": args.command,
                "monoid": {"elements": list(M.names), "identity": M.names[M.identity]},
                "result": result,
            }
    except GuardExceeded as e:
        print(f"wtop: guard exceeded: {e}", file=err)
        return EXIT_GUARD
    except TheoremViolation as e:
        print(f"wtop: violation: {e}", file=err)
        return EXIT_VIOLATION
    except (ParseError, UsageError, NotApplicable, WTopError) as e:
        print(f"wtop: error: {e}", file=err)
        return EXIT_USAGE
    except OSError as e:
        print(f"wtop: error: {e}", file=err)
        return EXIT_USAGE
    out.write(render(doc, args.format))
    return code


def main(argv: Sequence[str] | None = None) -> int:
    return run_command(argv)


if __name__ == "__main__":
    sys.exit(main())
