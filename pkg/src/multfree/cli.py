"""Command-line front end.

Exit codes: 0 positive verdict or success, 1 negative verdict, 2 input or
usage error, 3 undecided (a local model is missing from the tables).
"""

from __future__ import annotations

import argparse
import sys
import warnings

from . import io
from .cech import reduce_to_phi0, sections_kplus, transform_polytope, vanishing_check
from .classify import (
    MomentumData,
    Verdict,
    classify_su2,
    delzant_check,
    mf_check,
)
from .errors import (
    InconsistentHalving,
    InputError,
    InvalidPair,
    MultfreeError,
    NonNegativePairing,
    RecoveryFailure,
)
from .glue import check_coherence, construct_phi_M, glue_weyl, local_weyl_report
from .linalg import Sublattice
from .polytope import cut_corner
from .rank_one import fiber_decompose, symplectic_identity_check
from .roots import fiber_structure, global_sections

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_UNDECIDED = 0, 1, 2, 3
NEGATIVE = (InvalidPair, NonNegativePairing, RecoveryFailure, InconsistentHalving)


class Report:
    def __init__(self, command: str):
        self.command = command
        self.records = [io.header(command)]
        self.lines = []

    def add(self, kind: str, **fields):
        self.records.append({"record": kind, **fields})

    def say(self, line: str = ""):
        self.lines.append(line)

    def render(self, fmt: str) -> str:
        if fmt == "structured":
            return "".join(io.encode_record(r) + "\n" for r in self.records)
        return "".join(line + "\n" for line in self.lines)


def _fmt(v) -> str:
    if isinstance(v, (list, tuple)):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    return str(v)


def _rationals(values, field):
    return [io.parse_rational(v, field) for v in values]


def _datum(args):
    return io.load_datum(io.read_json(args.datum))


def _lattice(path, n):
    if path is None:
        return Sublattice.full(n)
    return io.load_lattice(io.read_json(path), n)


# ---------------------------------------------------------------------------
# subcommands

def cmd_delzant(args, rep):
    Q = io.load_polytope(io.read_json(args.polytope))
    ok, certs = delzant_check(Q, _lattice(args.lattice, Q.dim))
    for c in certs:
        rep.add("vertex", vertex=c.vertex, edges=c.edges, simple=c.simple, det=c.det, ok=c.ok)
        rep.say(f"vertex {_fmt(c.vertex)}: edges {_fmt(c.edges)} det {c.det} {'ok' if c.ok else 'FAIL'}")
    rep.add("verdict", delzant=ok)
    rep.say(f"Delzant: {'yes' if ok else 'no'}")
    return EXIT_OK if ok else EXIT_NO


def cmd_su2(args, rep):
    if (args.point is None) == (args.interval is None):
        raise InputError("give exactly one of --point and --interval")
    P = _rationals([args.point] if args.point is not None else args.interval, "interval")
    try:
        c = classify_su2(P, args.d)
    except InvalidPair as e:
        rep.add("verdict", admissible=False, reason=str(e))
        rep.say(f"rejected: {e}")
        return EXIT_NO
    rep.add("verdict", admissible=True, case=c.case, x=c.x, y=c.y, d=c.d, name=c.name)
    rep.say(f"{c.case}: [{c.x}, {c.y}], d = {c.d}: {c.name}")
    return EXIT_OK


def cmd_mf(args, rep):
    Q = io.load_polytope(io.read_json(args.polytope))
    Phi = _datum(args)
    L0 = io.load_lattice(io.read_json(args.lattice), Q.dim)
    oracle = io.load_oracle(io.read_json(args.oracle)) if args.oracle else None
    overall, reports = mf_check(MomentumData(Q, L0), Phi, oracle, faces=args.faces)
    for r in reports:
        rep.add("point", point=r.point, local_type=r.local_type, rays=r.cone.rays,
                lineality=r.cone.lineality, verdict=r.verdict, rule=r.rule, detail=r.detail)
        rep.say(f"{_fmt(r.point)} [{r.local_type or 'trivial'}] {r.verdict.value} ({r.rule}: {r.detail})")
    rep.add("verdict", multiplicity_free=overall)
    rep.say(f"multiplicity free: {overall.value}")
    return {Verdict.YES: EXIT_OK, Verdict.NO: EXIT_NO, Verdict.UNDECIDED: EXIT_UNDECIDED}[overall]


def _assignment(args):
    P = io.load_polytope(io.read_json(args.polytope))
    Phi = _datum(args) if args.datum else None
    return P, io.load_assignment(io.read_json(args.assignment), P, Phi)


def cmd_glue(args, rep):
    P, L = _assignment(args)
    bad = check_coherence(L, P)
    for v in bad:
        rep.add("incoherent", face=v.face, larger=v.larger, expected=v.expected, found=v.found)
        rep.say(f"incoherent: face {list(v.face)} inside {list(v.larger)} expects {_fmt(v.expected)}, found {_fmt(v.found)}")
    if bad:
        rep.add("verdict", glued=False)
        return EXIT_NO
    G = glue_weyl(L, P)
    rep.add("weyl", type=str(G.dynkin_type), order=G.weyl.order, simple_roots=G.simple_roots,
            simple_coroots=G.simple_coroots)
    rep.say(f"W_M: type {G.dynkin_type or 'trivial'}, order {G.weyl.order}")
    rep.say(f"simple roots {_fmt(G.simple_roots)}")
    ok = True
    for tight, stab, sub, eq in local_weyl_report(G, P):
        ok = ok and eq
        rep.add("face", tight=tight, stabilizer=stab, generated=sub, equal=eq)
        rep.say(f"face {list(tight)}: |stabilizer| {stab}, |local group| {sub} {'ok' if eq else 'MISMATCH'}")
    rep.add("verdict", glued=ok)
    return EXIT_OK if ok else EXIT_NO


def cmd_phi_m(args, rep):
    P, L = _assignment(args)
    G = glue_weyl(L, P)
    lattice = _lattice(args.lattice, P.dim)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        res = construct_phi_M(lattice, G.weyl, L, P)
    d = res.datum
    rep.add("phi_m", basis=res.basis, type=str(d.dynkin_type()), simple_roots=d.simple_roots,
            simple_coroots=d.simple_coroots, halving=res.halving, warnings=res.warnings)
    rep.say(f"Phi_M: type {d.dynkin_type() or 'empty'} in lattice basis {_fmt(res.basis)}")
    rep.say(f"simple roots {_fmt(d.simple_roots)}, coroots {_fmt(d.simple_coroots)}")
    for a, nval in res.halving:
        rep.say(f"  {_fmt(a)}: n = {nval}")
    for w in res.warnings:
        rep.say(f"warning: {w}")
    return EXIT_OK


def cmd_fibers(args, rep):
    Phi = _datum(args)
    pts = [_rationals(p.split(","), "point") for p in args.point] or [[0] * Phi.rank]
    for p in pts:
        if len(p) != Phi.rank:
            raise InputError(f"point {_fmt(p)} must have {Phi.rank} coordinates")
        fs = fiber_structure(Phi, p)
        ss = fs.semisimple
        rep.add("fiber", point=p, torus_rank=ss.torus_rank, torsion=ss.torsion,
                unipotent_rank=fs.unipotent_rank, local_roots=fs.local_roots)
        rep.say(f"{_fmt(p)}: torus rank {ss.torus_rank}, torsion {_fmt(ss.torsion)}, "
                f"unipotent rank {fs.unipotent_rank}")
    gs = global_sections(Phi)
    rep.add("global", torus_rank=gs.torus_rank, torsion=gs.torsion)
    rep.say(f"global sections: torus rank {gs.torus_rank}, torsion {_fmt(gs.torsion)}")
    return EXIT_OK


def cmd_sections(args, rep):
    Phi = _datum(args)
    P = io.load_polytope(io.read_json(args.polytope))
    red = reduce_to_phi0(Phi)
    P0 = transform_polytope(P, red.basis)
    U = transform_polytope(io.load_polytope(io.read_json(args.piece), "piece"), red.basis) if args.piece else None
    sg = sections_kplus(red.datum, P0, U)
    rep.add("sections", basis=red.basis, lattice=sg.lattice, active_roots=sg.active_roots,
            rational_rank=sg.rational_rank)
    rep.say(f"Phi_0 basis {_fmt(red.basis)}")
    rep.say(f"walls meeting the domain: {_fmt(sg.active_roots)}")
    rep.say(f"K+ sections: lattice part {_fmt(sg.lattice.basis)} (rank {sg.lattice.rank}), "
            f"constants of rank {sg.rational_rank}")
    return EXIT_OK


def cmd_cech(args, rep):
    bundle = io.read_json(args.bundle)
    if not isinstance(bundle, dict):
        raise InputError("bundle: expected an object")
    Phi = io.load_datum(bundle.get("datum"))
    P = io.load_polytope(bundle.get("polytope"))
    pieces = io.load_cover(bundle.get("cover"))
    eps = io.parse_rational(args.strict_open, "--strict-open") if args.strict_open is not None else None
    _, res = vanishing_check(Phi, P, pieces, strict_open=eps)
    rep.say("degree  free  torsion  rational")
    for d in res.degrees:
        rep.add("degree", degree=d.degree, free_rank=d.free_rank, torsion=d.torsion,
                rational_betti=d.rational_betti)
        rep.say(f"H^{d.degree}     {d.free_rank:<5} {_fmt(d.torsion):<8} {d.rational_betti}")
    rep.add("summary", nerve=sorted(res.nerve), h0_matches_global=res.h0_matches_global,
            surjectivity_divisors=res.surjectivity_divisors, walls=res.walls_meeting,
            higher_vanish=res.higher_vanish)
    rep.say(f"H^0 equals global sections: {res.h0_matches_global}")
    rep.say(f"surjectivity divisors {_fmt(res.surjectivity_divisors)}")
    ok = res.higher_vanish and res.h0_matches_global and res.surjective
    rep.say(f"vanishing: {'yes' if ok else 'no'}")
    return EXIT_OK if ok else EXIT_NO


def cmd_rank1(args, rep):
    values = _rationals(args.s or ["-1", "0", "1", "4"], "--s")
    rep.say("s       fiber                     real form")
    for s in values:
        f = fiber_decompose(s)
        ss = f.structure.semisimple
        rep.add("fiber", s=s, torus_rank=ss.torus_rank, torsion=ss.torsion,
                unipotent_rank=f.structure.unipotent_rank, real_form=f.real_form)
        desc = "{+-1} x additive line" if s == 0 else "multiplicative group"
        rep.say(f"{str(s):<7} {desc:<25} {f.real_form}")
    chk = symplectic_identity_check()
    rep.add("identity", ok=chk.ok, cancellation=chk.cancellation_ok)
    rep.say(f"symplectic identity: {chk.ok}, cancellation: {chk.cancellation_ok}")
    return EXIT_OK if chk.ok and chk.cancellation_ok else EXIT_NO


def cmd_cut(args, rep):
    P = io.load_polytope(io.read_json(args.polytope))
    v = _rationals(args.vertex.split(","), "--vertex")
    eps = io.parse_rational(args.eps, "--eps")
    Q = cut_corner(P, v, eps)
    rep.add("polytope", **io.dump_polytope(Q))
    rep.say(f"cut at {_fmt(v)} by {eps}: vertices {_fmt(Q.vertices)}")
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="multfree", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("human", "structured"), default="human")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("delzant-check", help="smoothness of a polytope")
    s.add_argument("polytope")
    s.add_argument("--lattice")
    s.set_defaults(func=cmd_delzant)

    s = sub.add_parser("su2-classify", help="SU(2) table lookup")
    s.add_argument("--point")
    s.add_argument("--interval", nargs=2, metavar=("X", "Y"))
    s.add_argument("--d", type=int, default=0)
    s.set_defaults(func=cmd_su2)

    s = sub.add_parser("mf-check", help="face-by-face multiplicity-free check")
    s.add_argument("polytope")
    s.add_argument("--datum", required=True)
    s.add_argument("--lattice", required=True)
    s.add_argument("--oracle")
    s.add_argument("--faces", choices=("vertices", "all"), default="vertices")
    s.set_defaults(func=cmd_mf)

    for name, func, help_ in (("glue-weyl", cmd_glue, "glue local Weyl groups"),
                              ("phi-m", cmd_phi_m, "construct the root system Phi_M")):
        s = sub.add_parser(name, help=help_)
        s.add_argument("polytope")
        s.add_argument("assignment")
        s.add_argument("--datum")
        if name == "phi-m":
            s.add_argument("--lattice")
        s.set_defaults(func=func)

    s = sub.add_parser("fibers", help="group-scheme fibers at points")
    s.add_argument("datum")
    s.add_argument("--point", action="append", default=[], help="comma separated coordinates")
    s.set_defaults(func=cmd_fibers)

    s = sub.add_parser("sections", help="sections of K+ over a polytope or piece")
    s.add_argument("datum")
    s.add_argument("polytope")
    s.add_argument("--piece")
    s.set_defaults(func=cmd_sections)

    s = sub.add_parser("cech-vanish", help="Cech cohomology of K+ for a cover")
    s.add_argument("bundle")
    s.add_argument("--strict-open", dest="strict_open")
    s.set_defaults(func=cmd_cech)

    s = sub.add_parser("rank1-demo", help="fiber table of the rank-one model")
    s.add_argument("--s", action="append")
    s.set_defaults(func=cmd_rank1)

    s = sub.add_parser("cut-corner", help="cut a vertex off a polytope")
    s.add_argument("polytope")
    s.add_argument("--vertex", required=True)
    s.add_argument("--eps", required=True)
    s.set_defaults(func=cmd_cut)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    rep = Report(args.command)
    try:
        code = args.func(args, rep)
    except NEGATIVE as e:
        rep.add("error", kind=type(e).__name__, message=str(e))
        rep.say(f"{type(e).__name__}: {e}")
        code = EXIT_NO
    except InputError as e:
        print(f"error: {type(e).__name__}: {e}", file=err)
        if args.format == "structured":
            rep.add("error", kind=type(e).__name__, message=str(e))
            out.write(rep.render("structured"))
        return EXIT_INPUT
    except MultfreeError as e:
        rep.add("error", kind=type(e).__name__, message=str(e))
        rep.say(f"{type(e).__name__}: {e}")
        code = EXIT_NO
    rep.add("exit", code=code)
    out.write(rep.render(args.format))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
