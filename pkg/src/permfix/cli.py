"""Command-line front end.

    permfix enumerate --group L2(5) --k 2 [--json]
    permfix fixity    --group sz8 --action natural
    permfix fixity    --group psl3_4 --stab-order 5
    permfix audit     --group g96_70 --lemma l216 --stab-order 3
    permfix tom       --group L2(7) > l27.tom.json
    permfix enumerate --group l27.tom.json --k 2

Exit codes: 0 ok, 2 resource bound exceeded, 3 malformed input, 4 unfaithful
action, 5 audit check failed, 6 precondition not met.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .audit import LEMMAS, run_audit
from .catalog import resolve_group, source_kind
from .core.action import Action, coset_action, natural_action
from .core.group import DEFAULT_SEED, PermGroup, set_default_seed
from .core.permutation import PermutationError
from .errors import (
    DomainError,
    FixtureIntegrityError,
    KernelError,
    MembershipError,
    PreconditionError,
    ResourceError,
    ValidationError,
)
from .fixity import fixity, fixity_k_actions, fixity_k_actions_from_tom
from .structure import sub
from .subgroups import DEFAULT_ORDER_BOUND, TableOfMarks, subgroup_classes, table_of_marks

EXIT_OK, EXIT_RESOURCE, EXIT_INPUT, EXIT_KERNEL, EXIT_AUDIT, EXIT_PRECONDITION = 0, 2, 3, 4, 5, 6


class CliError(Exception):
    def __init__(self, code: int, message: str, payload: dict | None = None):
        super().__init__(message)
        self.code = code
        self.payload = payload or {}


# --- sources and action selection -----------------------------------------------


def load_source(source: str):
    """A PermGroup, or a TableOfMarks when the file carries a marks matrix."""
    if source_kind(source) == "file":
        try:
            d = json.loads(Path(source).read_text())
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            raise ValidationError(f"{source}: invalid JSON: {exc}") from None
        if isinstance(d, dict) and "marks" in d:
            return TableOfMarks.from_dict(d)
        from .interchange import group_from_dict

        G = group_from_dict(d)
        G.name = G.name or Path(source).stem
        return G
    return resolve_group(source)


def _cyclic_stabilizer(G: PermGroup, order: int):
    T = G.table
    for rep in T.class_reps:
        if int(T.element_orders[rep]) == order:
            return sub(G, T.closure([int(rep)]))
    return None


def select_action(G: PermGroup, args) -> tuple[Action, dict]:
    """Natural action, or the coset action on a subgroup picked by order or class index."""
    if args.stab_index is not None:
        classes = subgroup_classes(G, extended=args.extended, threads=args.threads).classes
        if not 0 <= args.stab_index < len(classes):
            raise ValidationError(f"--stab-index out of range 0..{len(classes) - 1}")
        c = classes[args.stab_index]
        return coset_action(G, c.representative), {"stabilizer_class": args.stab_index,
                                                   "stabilizer_order": c.order, "stabilizer": c.name}
    if args.stab_order is not None:
        n = args.stab_order
        if n < 1 or G.order % n:
            raise ValidationError(f"no subgroup of order {n}: it does not divide |G| = {G.order}")
        if G.order <= DEFAULT_ORDER_BOUND or args.extended:
            classes = subgroup_classes(G, extended=args.extended, threads=args.threads).classes
            hits = [j for j, c in enumerate(classes) if c.order == n]
            if not hits:
                raise ValidationError(f"no subgroup of order {n}")
            c = classes[hits[0]]
            return coset_action(G, c.representative), {"stabilizer_class": hits[0], "stabilizer_order": n,
                                                       "stabilizer": c.name, "classes_of_this_order": len(hits)}
        H = _cyclic_stabilizer(G, n)
        if H is None:
            raise ResourceError(f"|G| = {G.order} exceeds {DEFAULT_ORDER_BOUND} and no element has order {n}; "
                                "pass --extended to enumerate subgroup classes")
        return coset_action(G, H), {"stabilizer_order": n, "stabilizer": f"C{n}", "selection": "cyclic"}
    if args.action not in (None, "natural"):
        raise ValidationError(f"unknown action spec {args.action!r}")
    return natural_action(G), {"action": "natural"}


# --- commands -------------------------------------------------------------------


def _document(command: str, args, subject: str, parameters: dict, results) -> dict:
    return {
        "engine": f"permfix {__version__}",
        "seed": args.seed,
        "command": command,
        "subject": subject,
        "parameters": parameters,
        "results": results,
    }


def run_enumerate(args) -> tuple[dict, int]:
    src = load_source(args.group)
    if isinstance(src, TableOfMarks):
        records = fixity_k_actions_from_tom(src, args.k)
        subject = src.group_name or args.group
    else:
        records = fixity_k_actions(src, args.k, extended=args.extended, threads=args.threads)
        subject = src.name or args.group
    results = [r.to_dict() for r in records]
    return _document("enumerate", args, subject, {"k": args.k}, results), EXIT_OK


def run_fixity(args) -> tuple[dict, int]:
    G = load_source(args.group)
    if isinstance(G, TableOfMarks):
        raise ValidationError("fixity needs a group, not a table of marks")
    A, sel = select_action(G, args)
    try:
        rep = fixity(A)
    except KernelError as exc:
        K = exc.kernel
        raise CliError(EXIT_KERNEL, "action is not faithful", {
            "kernel_order": K.order,
            "kernel_generators": [g.cycle_string() for g in K.generators],
        }) from None
    return _document("fixity", args, G.name or args.group, {**sel, "degree": A.domain_size},
                     rep.to_dict()), EXIT_OK


def run_audit_cmd(args) -> tuple[dict, int]:
    G = load_source(args.group)
    if isinstance(G, TableOfMarks):
        raise ValidationError("audit needs a group, not a table of marks")
    if args.lemma not in LEMMAS:
        raise ValidationError(f"unknown lemma {args.lemma!r}; choose from {', '.join(LEMMAS)}")
    A, sel = select_action(G, args)
    report = run_audit(A, args.lemma)
    doc = _document("audit", args, report.subject, {**sel, "lemma": args.lemma, "degree": A.domain_size},
                    report.to_dict())
    return doc, EXIT_OK if report.passed else EXIT_AUDIT


def run_tom(args) -> tuple[dict, int]:
    G = load_source(args.group)
    if isinstance(G, TableOfMarks):
        raise ValidationError("tom needs a group")
    tom = table_of_marks(G, extended=args.extended, threads=args.threads)
    tom.group_name = G.name or args.group
    return tom.to_dict(), EXIT_OK


COMMANDS = {"enumerate": run_enumerate, "fixity": run_fixity, "audit": run_audit_cmd, "tom": run_tom}


# --- output ----------------------------------------------------------------------


def _human(command: str, doc: dict) -> str:
    if command == "tom":
        lines = [f"table of marks of {doc['group']}: {len(doc['classes'])} classes"]
        for c, row in zip(doc["classes"], doc["marks"]):
            lines.append(f"  {c['name']:<16} order {c['order']:>6}  {[v for v in row if v]}")
        return "\n".join(lines)
    head = f"{doc['command']} {doc['subject']}  {json.dumps(doc['parameters'])}"
    res = doc["results"]
    lines = [head]
    if command == "enumerate":
        if not res:
            lines.append("  no actions")
        for r in res:
            lines.append(f"  {r['stabilizer']:<16} |H| = {r['stabilizer_order']:<6} degree {r['degree']:<7} "
                         f"marks {r['marks_row']}")
    elif command == "fixity":
        lines.append(f"  k = {res['k']}  witness {res['witness']}  fixes {res['witness_fixed_set']}")
    else:
        for c in res["checks"]:
            lines.append(f"  [{c['status']:>10}] {c['claim']}")
    return "\n".join(lines)


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2, default=_json_default)


def _json_default(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="permfix", description="Fixity of permutation group actions.")
    p.add_argument("--version", action="version", version=f"permfix {__version__}")
    subs = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = subs.add_parser(name)
        sp.add_argument("--group", required=True, help="catalog name, fixture name or JSON file")
        sp.add_argument("--json", action="store_true", help="emit JSON")
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
        sp.add_argument("--threads", type=int, default=os.cpu_count() or 1)
        sp.add_argument("--extended", action="store_true", help=f"lift the |G| <= {DEFAULT_ORDER_BOUND} bound")
        if name == "enumerate":
            sp.add_argument("--k", type=int, required=True)
        if name in ("fixity", "audit"):
            sp.add_argument("--action", default=None, help="natural (default)")
            sp.add_argument("--stab-order", type=int, default=None)
            sp.add_argument("--stab-index", type=int, default=None)
        if name == "audit":
            sp.add_argument("--lemma", required=True, help=", ".join(LEMMAS))
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    set_default_seed(args.seed)
    try:
        try:
            doc, code = COMMANDS[args.command](args)
        except CliError:
            raise
        except ResourceError as exc:
            raise CliError(EXIT_RESOURCE, str(exc)) from None
        except KernelError as exc:
            K = exc.kernel
            raise CliError(EXIT_KERNEL, str(exc), {"kernel_order": K.order if K is not None else None}) from None
        except PreconditionError as exc:
            raise CliError(EXIT_PRECONDITION, str(exc)) from None
        except (ValidationError, FixtureIntegrityError, MembershipError, DomainError, PermutationError,
                ValueError) as exc:
            raise CliError(EXIT_INPUT, str(exc)) from None
    except CliError as exc:
        err = {"engine": f"permfix {__version__}", "seed": args.seed, "command": args.command,
               "error": str(exc), "exit_code": exc.code, **exc.payload}
        if args.json:
            print(_dump(err))
        else:
            print(f"error: {exc}", file=sys.stderr)
            for key, val in exc.payload.items():
                print(f"  {key}: {val}", file=sys.stderr)
        return exc.code
    print(_dump(doc) if args.json else _human(args.command, doc))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
