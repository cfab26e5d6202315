"""Command-line interface.

Every run ends with one tail line on stdout::

    # exit=<code> status=<ok|usage|invalid|breach> [error=<Name>] [message="..."]

With ``--format machine`` the body is a sequence of records, one per line,
``<kind> key=value ...`` with keys in a fixed order and no free-form spacing,
so two runs with the same seed and tolerance are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Sequence

import numpy as np

from . import __version__
from .center import center, central_extensions, central_quotient
from .errors import FCError, InvariantBreach, PreconditionError
from .fcset import FCSet, blocks, classes, closure, dual, orthogonality_report, overlap_matrix
from .lattice import check_modularity, enumerate_fcsets
from .local import is_local, is_twister, locality_profile, verify_character_properties
from .modelfile import load_model
from .ring import DEFAULT_TOL, FusionRing, verlinde_consistency

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_BREACH = 0, 1, 2, 3
STATUS = {EXIT_OK: "ok", EXIT_USAGE: "usage", EXIT_INVALID: "invalid", EXIT_BREACH: "breach"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -- formatting ------------------------------------------------------------------

def fmt_float(x: float) -> str:
    x = float(x)
    if abs(x) < 5e-13:
        x = 0.0
    return f"{x:.10g}"


def fmt_complex(z: complex, tol: float = 1e-12) -> str:
    re, im = float(np.real(z)), float(np.imag(z))
    if abs(im) <= tol:
        return fmt_float(re)
    if abs(re) <= tol:
        return f"{fmt_float(im)}i"
    return f"{fmt_float(re)}{'+' if im >= 0 else '-'}{fmt_float(abs(im))}i"


def _value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "-"
    if isinstance(v, (float, np.floating)):
        return fmt_float(v)
    if isinstance(v, (complex, np.complexfloating)):
        return fmt_complex(v)
    if isinstance(v, (list, tuple)):
        return ",".join(_value(x) for x in v) if v else "-"
    s = str(v)
    return json.dumps(s) if (" " in s or "=" in s or not s) else s


class Output:
    def __init__(self, machine: bool, quiet: bool, stream=None):
        self.machine = machine
        self.quiet = quiet
        self.stream = stream or sys.stdout

    def text(self, line: str = "") -> None:
        if not self.machine and not self.quiet:
            print(line, file=self.stream)

    def record(self, kind: str, **fields) -> None:
        if self.machine and not self.quiet:
            body = " ".join(f"{k}={_value(v)}" for k, v in fields.items())
            print(f"{kind} {body}".rstrip(), file=self.stream)

    def tail(self, code: int, error: BaseException | None = None) -> None:
        parts = [f"# exit={code}", f"status={STATUS[code]}"]
        if error is not None:
            parts.append(f"error={type(error).__name__}")
            parts.append(f"message={json.dumps(str(error).splitlines()[0] if str(error) else '')}")
        print(" ".join(parts), file=self.stream)


def setlabel(g: FCSet) -> str:
    return "{" + ",".join(g.ring.label(p) for p in g.elements) + "}"


def labels(ring: FusionRing, members) -> str:
    return "{" + ",".join(ring.label(p) for p in members) + "}"


# -- argument helpers ---------------------------------------------------------------

def _primary(ring: FusionRing, token: str) -> int:
    token = token.strip()
    if token.lstrip("-").isdigit():
        p = int(token)
        if not 0 <= p < ring.n:
            raise PreconditionError(f"primary index {p} out of range 0..{ring.n - 1}")
        return p
    if token in ring.labels:
        return ring.labels.index(token)
    raise PreconditionError(f"unknown primary {token!r}")


def parse_fcset(ring: FusionRing, spec: str, out: Output) -> FCSet:
    seed = {_primary(ring, t) for t in spec.split(",") if t.strip()}
    g = closure(ring, seed)
    if g.members != frozenset(seed) | {0}:
        out.text(f"note: closure enlarged {labels(ring, sorted(seed))} to {setlabel(g)}")
        out.record("note", closure_of=sorted(seed), closure=g.elements)
    return g


def parse_orders(spec: str) -> list[int]:
    try:
        orders = [int(t) for t in spec.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"--group expects comma-separated integers, got {spec!r}") from None
    if not orders or any(m < 1 for m in orders):
        raise UsageError(f"--group expects positive cyclic orders, got {spec!r}")
    return orders


# -- commands ---------------------------------------------------------------------

def cmd_validate(ring: FusionRing, args, out: Output) -> int:
    out.text(f"model {ring.name}: n={ring.n}, modular={'yes' if ring.modular else 'no'}")
    out.text(f"  dims: {' '.join(f'{ring.label(p)}={fmt_float(d)}' for p, d in enumerate(ring.dims))}")
    out.text(f"  total dimension squared: {fmt_float(ring.total_dim_sq)}")
    out.record("model", name=ring.name, n=ring.n, modular=ring.modular,
               total_dim_sq=ring.total_dim_sq, weights=ring.weights is not None)
    for p, d in enumerate(ring.dims):
        out.record("primary", index=p, label=ring.label(p), dim=d, conj=ring.conj[p],
                   weight=None if ring.weights is None else str(ring.weights[p]))
    if ring.smatrix is not None:
        rep = verlinde_consistency(ring, ring.smatrix)
        out.text(f"  Verlinde deviation: {rep.max_deviation:.3e}")
        out.record("verlinde", max_deviation=f"{rep.max_deviation:.3e}")
    for w in ring.warnings:
        out.text(f"  warning: {w}")
        out.record("warning", message=w)
    out.text("valid")
    return EXIT_OK


def _flags(g: FCSet) -> tuple:
    local = twister = None
    if g.ring.modular:
        local = is_local(g)
        if g.ring.weights is not None and local:
            twister = is_twister(g)
        elif g.ring.weights is not None:
            twister = False
    return local, twister


def _yn(v) -> str:
    return "-" if v is None else ("yes" if v else "no")


def cmd_fcsets(ring: FusionRing, args, out: Output) -> int:
    lat = enumerate_fcsets(ring)
    out.text(f"{len(lat)} FC sets of {ring.name}")
    out.text(f"{'#':>3}  {'|g|':>3}  {'[[dual]]':>10}  {'local':>5}  {'twister':>7}  members  (dual)")
    for i, g in enumerate(lat.elements):
        spread = classes(g).trivial_extent
        d = dual(g) if ring.modular else None
        local, twister = _flags(g)
        out.text(f"{i:>3}  {len(g):>3}  {fmt_float(spread):>10}  {_yn(local):>5}  {_yn(twister):>7}  "
                 f"{setlabel(g)}" + (f"  ({setlabel(d)})" if d is not None else ""))
        out.record("fcset", index=i, size=len(g), members=g.elements,
                   dual=None if d is None else d.elements, dual_extent=spread,
                   local=local, twister=twister)
    return EXIT_OK


def cmd_lattice(ring: FusionRing, args, out: Output) -> int:
    lat = enumerate_fcsets(ring)
    L = len(lat)
    out.text(f"lattice of {ring.name}: {L} elements")
    for j in range(L):
        covers = [i for i in range(L) if i != j and lat.leq[i, j]
                  and not any(k not in (i, j) and lat.leq[i, k] and lat.leq[k, j] for k in range(L))]
        out.text(f"  {j:>3} {setlabel(lat.elements[j])}  covers {covers or '-'}")
        out.record("element", index=j, members=lat.elements[j].elements, covers=covers,
                   dual=None if lat.dual_map is None else lat.dual_map[j])
    if not args.check_modular:
        return EXIT_OK
    rep = check_modularity(lat)
    out.text(f"modular: {_yn(rep.modular)}  distributive: {_yn(rep.distributive)}  "
             f"complemented: {_yn(rep.complemented)}  height: {rep.height}  width: {rep.width}")
    out.record("modularity", modular=rep.modular, violations=len(rep.violations),
               distributive=rep.distributive, complemented=rep.complemented,
               height=rep.height, width=rep.width)
    if not rep.modular:
        a, b, x = rep.violations[0]
        raise InvariantBreach(f"modular law fails for a={a}, b={b}, x={x}")
    return EXIT_OK


def cmd_classes(ring: FusionRing, args, out: Output) -> int:
    g = parse_fcset(ring, args.fcset, out)
    part = classes(g)
    orth = orthogonality_report(g, part)
    out.text(f"classes of {setlabel(g)}: {len(part)}")
    for c, members in enumerate(part.classes):
        out.text(f"  C{c} {labels(ring, members)}  extent {fmt_float(part.extents[c])}")
        out.record("class", index=c, members=members, extent=part.extents[c])
    out.text("character table (rows: elements of g, columns: classes)")
    for i, a in enumerate(g.elements):
        row = [fmt_complex(v) for v in part.char_table[i]]
        out.text(f"  {ring.label(a):>8}  " + "  ".join(f"{v:>14}" for v in row))
        out.record("character", element=a, values=row)
    out.text(f"orthogonality residuals: rows {orth.row_residual:.3e}, columns {orth.column_residual:.3e}")
    out.record("orthogonality", rows=f"{orth.row_residual:.3e}", columns=f"{orth.column_residual:.3e}")
    return EXIT_OK


def cmd_blocks(ring: FusionRing, args, out: Output) -> int:
    g = parse_fcset(ring, args.fcset, out)
    bl = blocks(g)
    out.text(f"blocks of {setlabel(g)}: {len(bl)}")
    for i, b in enumerate(bl.blocks):
        out.text(f"  B{i} {labels(ring, b)}")
        out.record("block", index=i, members=b)
    return EXIT_OK


def cmd_overlaps(ring: FusionRing, args, out: Output) -> int:
    g = parse_fcset(ring, args.fcset, out)
    part, bl = classes(g), blocks(g)
    M = overlap_matrix(g)
    out.text(f"overlaps <b,C> for {setlabel(g)} (rows: blocks, columns: classes)")
    out.text("          " + "  ".join(f"C{c:<3}" for c in range(len(part))))
    for i, b in enumerate(bl.blocks):
        out.text(f"  B{i:<6} " + "  ".join(f"{int(m):<4}" for m in M[i]))
        out.record("overlap_row", block=i, members=b, values=[int(m) for m in M[i]])
    zeros = [(i, c) for i in range(M.shape[0]) for c in range(M.shape[1]) if M[i, c] == 0]
    for i, c in zeros:
        out.text(f"  zero block of S: B{i} {labels(ring, bl.blocks[i])} x C{c} "
                 f"{labels(ring, part.classes[c])}")
        out.record("zero", block=i, cls=c)
    return EXIT_OK


def cmd_center(ring: FusionRing, args, out: Output) -> int:
    g = parse_fcset(ring, args.fcset, out)
    cg = center(g)
    part = cg.partition
    factors = cg.invariant_factors()
    out.text(f"center of {setlabel(g)}: order {cg.order}, invariant factors {list(factors) or '(trivial)'}")
    out.record("center", order=cg.order, invariant_factors=list(factors), central=cg.central)
    for z in cg.central:
        row = [cg.action[z, c] for c in range(len(part))]
        out.text(f"  C{z} {labels(ring, part.classes[z])}  inverse C{cg.inverse[z]}  "
                 f"action {' '.join(f'C{c}' for c in row)}")
        out.record("central", cls=z, members=part.classes[z], inverse=cg.inverse[z], action=row)
    return EXIT_OK


def _subgroup(cg, ring: FusionRing, spec: str) -> frozenset:
    gens = []
    for token in (t.strip() for t in spec.split(",")):
        if not token:
            continue
        if token.isdigit():
            gens.append(int(token))
        else:
            gens.append(cg.partition.class_of[_primary(ring, token)])
    return cg.generate(gens)


def cmd_quotient(ring: FusionRing, args, out: Output) -> int:
    g = parse_fcset(ring, args.fcset, out)
    cg = center(g)
    Z = _subgroup(cg, ring, args.subgroup)
    q = central_quotient(g, Z, cg)
    covered = sorted(p for z in Z for p in cg.partition.classes[z])
    checked = ring.modular
    out.text(f"quotient of {setlabel(g)} by classes {sorted(Z)}: {setlabel(q)}")
    if checked:
        out.text(f"  dual of quotient {setlabel(dual(q))} = union of the subgroup classes "
                 f"{labels(ring, covered)}")
    out.record("quotient", subgroup=sorted(Z), members=q.elements, union=covered,
               dual_check="ok" if checked else None)
    return EXIT_OK


def cmd_extend(ring: FusionRing, args, out: Output) -> int:
    g = parse_fcset(ring, args.fcset, out)
    orders = parse_orders(args.group)
    exts = central_extensions(g, orders)
    out.text(f"{len(exts)} extension(s) of {setlabel(g)} by cyclic orders {orders}")
    for i, h in enumerate(exts):
        out.text(f"  {setlabel(h)}")
        out.record("extension", index=i, members=h.elements)
    return EXIT_OK


def cmd_local(ring: FusionRing, args, out: Output) -> int:
    lat = enumerate_fcsets(ring)
    for i, g in enumerate(lat.elements):
        prof = locality_profile(g)
        part = classes(g)
        ramond = None if prof.ramond_class is None else part.classes[prof.ramond_class]
        chain = [setlabel(h) for h in prof.nilpotency_chain]
        out.text(f"{setlabel(g)}: local {_yn(prof.is_local)}, twister {_yn(prof.is_twister)}, "
                 f"Ramond {labels(ring, ramond) if ramond else '-'}, "
                 f"nilpotent {_yn(prof.is_nilpotent)}"
                 + (f" ({' > '.join(chain)})" if len(chain) > 1 else "")
                 + f", integral {_yn(prof.is_integral)}")
        out.record("profile", index=i, members=g.elements, local=prof.is_local,
                   twister=prof.is_twister, ramond=prof.ramond_class, ramond_members=ramond,
                   nilpotent=prof.is_nilpotent,
                   chain=">".join(",".join(map(str, h.elements)) for h in prof.nilpotency_chain) or None,
                   integral=prof.is_integral)
    return EXIT_OK


def cmd_verify(ring: FusionRing, args, out: Output) -> int:
    lat = enumerate_fcsets(ring)
    hard = []
    for i, g in enumerate(lat.elements):
        rep = verify_character_properties(g)
        if not rep.integral:
            out.text(f"{setlabel(g)}: not integral, skipped")
            out.record("verify", index=i, members=g.elements, mode=rep.mode)
            continue
        statuses = [rep.status(k) for k in (1, 2, 3, 4)]
        out.text(f"{setlabel(g)}: " + "  ".join(f"P{k} {s}" for k, s in zip((1, 2, 3, 4), statuses)))
        out.record("verify", index=i, members=g.elements, mode=rep.mode,
                   p1=statuses[0], p2=statuses[1], p3=statuses[2], p4=statuses[3])
        for chk in rep.hard_failures:
            out.text(f"  FAIL property {chk.prop} at {chk.subject}: {chk.detail}")
            out.record("failure", index=i, prop=chk.prop, subject=chk.subject)
        hard.extend(rep.hard_failures)
    if hard:
        raise InvariantBreach(f"{len(hard)} hard failure(s) of the character-ring properties")
    return EXIT_OK


COMMANDS: dict[str, tuple[Callable, str]] = {
    "validate": (cmd_validate, "check the fusion-ring axioms and print a summary"),
    "fcsets": (cmd_fcsets, "list all FC sets with duals and locality flags"),
    "lattice": (cmd_lattice, "Hasse diagram of the FC-set lattice"),
    "classes": (cmd_classes, "class partition, characters, extents of an FC set"),
    "blocks": (cmd_blocks, "block partition of an FC set"),
    "overlaps": (cmd_overlaps, "block/class overlap matrix"),
    "center": (cmd_center, "central classes and their group structure"),
    "quotient": (cmd_quotient, "central quotient by a subgroup of the center"),
    "extend": (cmd_extend, "central extensions by a finite abelian group"),
    "local": (cmd_local, "locality profile of every FC set"),
    "verify": (cmd_verify, "character-ring properties on all integral FC sets"),
}

NEEDS_FCSET = {"classes", "blocks", "overlaps", "center", "quotient", "extend"}


def _add_globals(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--tolerance", type=float, default=d(DEFAULT_TOL),
                   help="numerical tolerance (default 1e-9)")
    p.add_argument("--seed", type=int, default=d(0), help="seed for joint diagonalization")
    p.add_argument("--format", choices=("text", "machine"), default=d("text"))
    p.add_argument("--quiet", action="store_true", default=d(False),
                   help="print only the tail line")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fcsets", description="Fusion-closed sets of primaries.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("model", help="bundled model name or path to a model file")
        _add_globals(p, suppress=True)
        if name in NEEDS_FCSET:
            p.add_argument("--fcset", required=True,
                           help="comma list of primary indices or labels (closure is taken)")
        if name == "lattice":
            p.add_argument("--check-modular", action="store_true")
        if name == "quotient":
            p.add_argument("--subgroup", required=True,
                           help="comma list of generating central classes (indices or primary labels)")
        if name == "extend":
            p.add_argument("--group", required=True, help="cyclic orders, e.g. 2 or 2,2")
    return parser


def _exit_code(exc: BaseException) -> int:
    # bad input, missing data and unmet preconditions are all "validation" failures
    return EXIT_BREACH if isinstance(exc, InvariantBreach) else EXIT_INVALID


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    machine = "machine" in argv and "--format" in argv
    out = Output(machine=machine, quiet=False)
    try:
        args = build_parser().parse_args(argv)
        out = Output(machine=args.format == "machine", quiet=args.quiet)
        if not args.command:
            raise UsageError("fcsets: a command is required (try --help)")
        ring = load_model(args.model).to_ring(tol=args.tolerance, seed=args.seed)
        code = COMMANDS[args.command][0](ring, args, out)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        out.tail(EXIT_USAGE, exc)
        return EXIT_USAGE
    except (FCError, OSError) as exc:
        code = _exit_code(exc)
        print(f"error: {exc}", file=sys.stderr)
        out.tail(code, exc)
        return code
    out.tail(code)
    return code


if __name__ == "__main__":
    sys.exit(main())
