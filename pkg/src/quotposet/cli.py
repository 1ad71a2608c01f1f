"""Command-line interface.

Exit codes: 0 on success, 1 on invalid input or a failed precondition, 2
when a cross-check between congruence kinds breaks (a fixture is written).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path
from typing import Any, Callable, Sequence

from . import congruences, experiment, families, invariants, io, lattices, quotients
from .errors import ImplicationViolation, NotGraded, NoUniqueMin, PreconditionFailed, QuotposetError
from .partition import Partition
from .poset import Poset

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_VIOLATION = 2


class _Violation(Exception):
    def __init__(self, message: str, fixture: dict, path: Path):
        self.fixture = fixture
        self.path = path
        super().__init__(message)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise QuotposetError(f"cannot read {path}: {exc.strerror}") from exc


def _poset(path: str) -> Poset:
    return io.parse_poset(_read(path), path)


def _partition(path: str, p: Poset) -> Partition:
    return io.parse_partition(_read(path), p.n, path)


def _poset_and_partition(args: argparse.Namespace) -> tuple[Poset, Partition]:
    if getattr(args, "fixture", None):
        return io.fixture_from_json(json.loads(_read(args.fixture)))
    if args.poset is None or args.partition is None:
        raise QuotposetError("need POSET and PARTITION files, or --fixture")
    p = _poset(args.poset)
    return p, _partition(args.partition, p)


def _emit(doc: Any, out: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=False) + "\n"
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _quotient_json(res: quotients.QuotientResult) -> dict:
    return {
        "quotient": io.poset_to_json(res.quotient),
        "class_map": list(res.class_map),
        "needed_transitive_closure": res.needed_transitive_closure,
        "needed_collapse": res.needed_collapse,
    }


def _completion_json(c: lattices.Completion) -> dict:
    from .poset import bits

    return {
        "lattice": io.poset_to_json(c.lattice),
        "embed": list(c.embed),
        "closed_sets": [list(bits(s)) for s in c.closed_sets],
    }


# ------------------------------------------------------------- commands


def cmd_classify(args: argparse.Namespace) -> int:
    p, t = _poset_and_partition(args)
    kinds = tuple(args.kinds.split(",")) if args.kinds else congruences.KINDS
    unknown = [k for k in kinds if k not in congruences.CHECKERS]
    if unknown:
        raise QuotposetError(f"unknown kind(s): {', '.join(unknown)}")
    try:
        report = congruences.classify(p, t, strict=True, kinds=kinds)
    except ImplicationViolation as exc:
        report = congruences.classify(p, t, strict=False, kinds=kinds)
        fixture = io.fixture_to_json(
            p, t, violations=[str(a) for a in exc.violations], report=report.to_json()
        )
        raise _Violation(str(exc), fixture, Path(args.fixture_out)) from exc
    _emit(report.to_json(), args.output)
    return EXIT_OK


def cmd_quotient(args: argparse.Namespace) -> int:
    p, t = _poset_and_partition(args)
    _emit(_quotient_json(quotients.quotient_poset(p, t, args.mode)), args.output)
    return EXIT_OK


def cmd_universal(args: argparse.Namespace) -> int:
    p, t = _poset_and_partition(args)
    _emit(_quotient_json(quotients.universal_quotient(p, t)), args.output)
    return EXIT_OK


def cmd_orbit(args: argparse.Namespace) -> int:
    p = _poset(args.poset)
    doc = json.loads(_read(args.group))
    gens = doc.get("generators") if isinstance(doc, dict) else None
    if not isinstance(gens, list):
        raise io.FormatError('expected {"generators": [[...], ...]}', args.group)
    try:
        group = quotients.PermutationGroup(p.n, tuple(tuple(g) for g in gens))
    except (TypeError, ValueError) as exc:
        raise io.FormatError(str(exc), f"{args.group}.generators") from exc
    part = quotients.orbit_partition(p, group)
    res = quotients.quotient_poset(p, part, "strict")
    _emit({"partition": io.partition_to_json(part), **_quotient_json(res)}, args.output)
    return EXIT_OK


def cmd_complete(args: argparse.Namespace) -> int:
    p = _poset(args.poset)
    _emit(
        {
            "dm": _completion_json(lattices.dm_completion(p)),
            "m0": _completion_json(lattices.m0_sublattice(p)),
        },
        args.output,
    )
    return EXIT_OK


def cmd_lattice_congruences(args: argparse.Namespace) -> int:
    p = _poset(args.poset)
    cl = lattices.enumerate_lattice_congruences(p, cap=args.cap)
    _emit(
        {
            "count": len(cl),
            "congruences": [io.partition_to_json(c)["blocks"] for c in cl.congruences],
            "refinement": [[j for j, x in enumerate(row) if x] for row in cl.leq],
        },
        args.output,
    )
    return EXIT_OK


def cmd_invariants(args: argparse.Namespace) -> int:
    p = _poset(args.poset)
    g = p.grading_info
    doc: dict[str, Any] = {
        "n": p.n,
        "structure": asdict(p.structural_predicates()),
        "graded": g.is_graded,
        "rank_sizes": list(g.rank_sizes) if g.is_graded else None,
    }
    try:
        doc["mobius"] = list(invariants.mobius(p))
    except NoUniqueMin as exc:
        doc["mobius"] = None
        doc["mobius_error"] = str(exc)
    try:
        chi = invariants.char_poly(p)
        doc["char_poly"] = {"coefficients": list(chi.coefficients), "text": str(chi)}
    except (NoUniqueMin, NotGraded) as exc:
        doc["char_poly"] = None
        doc["char_poly_error"] = str(exc)
    try:
        doc["peck"] = invariants.peck_report(p).to_json()
    except (NotGraded, PreconditionFailed) as exc:
        doc["peck"] = None
        doc["peck_error"] = str(exc)
    _emit(doc, args.output)
    return EXIT_OK


def _int_set(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()] if text not in ("", "-") else []


def _family(name: str, params: Sequence[str]) -> tuple[Poset, Partition | None]:
    def need(k: int) -> list[str]:
        if len(params) != k:
            raise QuotposetError(f"family {name!r} takes {k} parameter(s)")
        return list(params)

    def ints(k: int) -> list[int]:
        try:
            return [int(x) for x in need(k)]
        except ValueError as exc:
            raise QuotposetError(f"family {name!r} takes integer parameters") from exc

    simple: dict[str, Callable[..., Poset]] = {
        "boolean": families.boolean_lattice,
        "chain": families.chain,
        "antichain": families.antichain,
        "weak-a": families.weak_bruhat_A,
        "weak-b": families.weak_bruhat_B,
        "strong-a": families.strong_bruhat_A,
        "tamari": families.tamari,
    }
    if name in simple:
        return simple[name](*ints(1)), None
    if name == "young":
        return families.young_lattice(*ints(2)), None
    if name == "pentagon":
        need(0)
        return families.pentagon(), None
    if name == "crown4":
        need(0)
        return families.crown4(), None
    if name == "two-diamonds":
        need(0)
        return families.two_diamond_lattice()
    if name == "graph":
        return families.graph_poset(*ints(1))[0], None
    if name == "graph-orbits":
        (m,) = ints(1)
        part = families.graph_poset(m)[1]
        return families.boolean_lattice(m * (m - 1) // 2), part
    if name == "psi":
        (n,) = ints(1)
        return families.weak_bruhat_A(n), families.psi_partition(n)[0]
    if name == "cambrian":
        if len(params) == 1:
            n, orient = int(params[0]), ">" * max(int(params[0]) - 2, 0)
        else:
            n, orient = int(need(2)[0]), params[1]
        return families.weak_bruhat_A(n), families.cambrian_partition(n, orient)
    if name == "cambrian-b":
        (n,) = ints(1)
        return families.weak_bruhat_B(n), families.cambrian_partition_B(n)
    if name == "simion":
        (n,) = ints(1)
        return families.weak_bruhat_B(n), families.simion_partition(n)
    if name == "double-coset":
        n, J, K = need(3)
        return families.strong_bruhat_A(int(n)), families.double_coset_partition(
            int(n), _int_set(J), _int_set(K)
        )
    raise QuotposetError(f"unknown family {name!r}; choose from: {', '.join(FAMILIES)}")


FAMILIES = (
    "boolean N", "chain N", "antichain N", "young M N", "weak-a N", "weak-b N",
    "strong-a N", "tamari N", "pentagon", "crown4", "two-diamonds", "graph M", "graph-orbits M", "psi N",
    "cambrian N [ORIENT]", "cambrian-b N", "simion N", "double-coset N J K",
)


def cmd_generate(args: argparse.Namespace) -> int:
    p, part = _family(args.family, args.params)
    _emit(io.poset_to_json(p), args.output)
    if part is not None:
        if args.partition_out:
            _emit(io.partition_to_json(part), args.partition_out)
        else:
            print(f"note: {args.family} has a canonical partition; use --partition-out", file=sys.stderr)
    return EXIT_OK


def cmd_verify_matrix(args: argparse.Namespace) -> int:
    result = experiment.verify_matrix(
        args.n, seed=args.seed, workers=args.workers, extras=not args.no_extras
    )
    doc = result.to_json()
    _emit(doc, args.output)
    if result.total_violations:
        bad = [a for a in result.arrows_checked if a.violations]
        fixture = {"violations": [a.to_json() for a in bad]}
        raise _Violation(f"{len(bad)} implication(s) violated", fixture, Path(args.fixture_out))
    return EXIT_OK


def cmd_table_checks(args: argparse.Namespace) -> int:
    report = experiment.table_checks(args.n, extras=not args.no_extras)
    _emit(report.to_json(), args.output)
    contradicted = [c for c in report.cells if c.status == "contradicted"]
    for c in report.cells:
        print(f"{c.kind:18} {c.column:20} {c.status}", file=sys.stderr)
    return EXIT_OK if not contradicted else EXIT_VIOLATION


def cmd_dot(args: argparse.Namespace) -> int:
    p = _poset(args.poset)
    part = _partition(args.partition, p) if args.partition else None
    text = io.to_dot(p, part, args.name)
    if args.output and args.output != "-":
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# --------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quotposet", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def pair(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("poset", nargs="?", help="poset JSON file ('-' for stdin)")
        sp.add_argument("partition", nargs="?", help="partition JSON file")
        sp.add_argument("--fixture", help="a single file holding both poset and partition")

    def out(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("-o", "--output", help="write JSON here instead of stdout")

    sp = sub.add_parser("classify", help="run every congruence checker")
    pair(sp)
    out(sp)
    sp.add_argument("--kinds", help="comma-separated subset of kinds")
    sp.add_argument("--fixture-out", default="violation_fixture.json")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("quotient", help="quotient poset by a partition")
    pair(sp)
    out(sp)
    sp.add_argument("--mode", choices=("strict", "closure"), default="strict")
    sp.set_defaults(func=cmd_quotient)

    sp = sub.add_parser("universal-quotient", help="quotient after collapsing cycles")
    pair(sp)
    out(sp)
    sp.set_defaults(func=cmd_universal)

    sp = sub.add_parser("orbit", help="orbit partition of a group of automorphisms")
    sp.add_argument("poset")
    sp.add_argument("group", help='JSON {"generators": [[...], ...]}')
    out(sp)
    sp.set_defaults(func=cmd_orbit)

    sp = sub.add_parser("complete", help="Dedekind-MacNeille completion and principal-ideal sublattice")
    sp.add_argument("poset")
    out(sp)
    sp.set_defaults(func=cmd_complete)

    sp = sub.add_parser("lattice-congruences", help="all congruences of a small lattice")
    sp.add_argument("poset")
    sp.add_argument("--cap", type=int, default=lattices.CONGRUENCE_CAP)
    out(sp)
    sp.set_defaults(func=cmd_lattice_congruences)

    sp = sub.add_parser("invariants", help="Mobius function, characteristic polynomial, Peck report")
    sp.add_argument("poset")
    out(sp)
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("generate", help="emit a family poset", epilog="families: " + "; ".join(FAMILIES))
    sp.add_argument("family")
    sp.add_argument("params", nargs="*")
    sp.add_argument("--partition-out", help="write the family's canonical partition here")
    out(sp)
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("verify-matrix", help="exhaustive implication check")
    sp.add_argument("--n", type=int, default=experiment.DEFAULT_N)
    sp.add_argument("--seed", type=int, default=None, help="reorders which fixtures are reported")
    sp.add_argument("--workers", type=int, default=None, help=f"default from ${experiment.WORKERS_ENV}")
    sp.add_argument("--fixture-out", default="violation_fixture.json")
    sp.add_argument("--no-extras", action="store_true", help="skip the named six-element posets")
    out(sp)
    sp.set_defaults(func=cmd_verify_matrix)

    sp = sub.add_parser("table-checks", help="exhaustive check of the comparison table")
    sp.add_argument("--n", type=int, default=experiment.DEFAULT_N)
    sp.add_argument("--no-extras", action="store_true", help="skip the named six-element posets")
    out(sp)
    sp.set_defaults(func=cmd_table_checks)

    sp = sub.add_parser("dot", help="Hasse diagram in Graphviz format")
    sp.add_argument("poset")
    sp.add_argument("--partition")
    sp.add_argument("--name", default="P")
    out(sp)
    sp.set_defaults(func=cmd_dot)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Violation as exc:
        exc.path.write_text(json.dumps(exc.fixture, indent=2) + "\n")
        print(f"error: {exc}; fixture written to {exc.path}", file=sys.stderr)
        return EXIT_VIOLATION
    except QuotposetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        witness = getattr(exc, "witness", None)
        if witness is not None and hasattr(witness, "to_json"):
            print(json.dumps({"witness": witness.to_json()}), file=sys.stderr)
        return EXIT_INVALID
    except json.JSONDecodeError as exc:
        print(f"error: line {exc.lineno}, column {exc.colno}: {exc.msg}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
