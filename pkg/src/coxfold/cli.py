"""``coxfold`` command-line front end.

Reports are JSON on stdout (``"schema": "coxfold/1"``, exact numbers as
strings); logs go to stderr.  Exit status: 0 success, 2 a verification
failed, 1 usage error.  ``COXFOLD_CAP`` bounds group and orbit
enumeration.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import affine, folding, group, lattice, project, rootsys
from .exactnum import format_golden, parse_golden

SCHEMA = "coxfold/1"
VERBS = ("info", "fold", "verify", "orbit", "cells", "project", "render")
log = logging.getLogger("coxfold")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{message}\nverbs: {', '.join(VERBS)}\n{self.format_usage()}")


def _cap(default: int) -> int:
    raw = os.environ.get("COXFOLD_CAP")
    if raw is None:
        return default
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError(f"COXFOLD_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise UsageError("COXFOLD_CAP must be positive")
    return cap


def _system(text: str) -> rootsys.RootSystem:
    try:
        return rootsys.build_root_system(text)
    except rootsys.UnsupportedType as e:
        raise UsageError(str(e)) from None


def _vec(v) -> list[str]:
    return [format_golden(x) for x in v]


def _matrix(M) -> list[list[str]]:
    return [[format_golden(x) for x in row] for row in M]


def _out(payload: dict) -> None:
    sys.stdout.write(json.dumps({"schema": SCHEMA, **payload}, indent=2) + "\n")


# ------------------------------------------------------------------- verbs


def cmd_info(args) -> int:
    s = _system(args.type)
    out = {
        "type": str(s.diagram),
        "rank": s.rank,
        "coxeter_number": s.coxeter_number,
        "group_order": s.group_order,
        "crystallographic": s.diagram.crystallographic,
        "ambient_dim": s.ambient_dim,
        "simple_roots": [_vec(r) for r in s.simple_roots],
        "cartan": _matrix(s.cartan),
    }
    if s.gram is not None:
        out["gram"] = _matrix(s.gram.rows())
    try:
        first, second = group.two_coloring(s)
        out["coloring"] = [sorted(first), sorted(second)]
    except group.NonBipartite:
        out["coloring"] = None
    try:
        out["extended_root"] = _vec(rootsys.extend(s).extended_root)
    except rootsys.UnsupportedType:
        out["extended_root"] = None
    _out(out)
    return 0


def _fold_payload(fm: folding.FoldingMap, group_order: bool) -> tuple[dict, bool]:
    cap = _cap(2_000_000)
    rep = fm.verify(group_order=group_order, cap=cap)
    return {**fm.as_dict(), "report": rep.as_dict()}, rep.passed


def cmd_fold(args) -> int:
    try:
        fm = folding.get_fold(args.source, args.target)
    except (ValueError, rootsys.UnsupportedType) as e:
        raise UsageError(str(e)) from None
    payload, ok = _fold_payload(fm, args.group_order)
    _out(payload)
    return 0 if ok else 2


def _point_relations(s: rootsys.RootSystem) -> tuple[dict, bool]:
    gens = group.simple_reflections(s)
    M = rootsys.canonical_cartan(s.diagram)
    rel = [((i,), 2) for i in range(1, s.rank + 1)]
    for i in range(s.rank):
        for j in range(i + 1, s.rank):
            rel.append(((i + 1, j + 1), folding.coxeter_exponent(M[i][j] * M[j][i])))
    report = group.verify_relations(gens, rel)
    cartan_ok = s.cartan == M
    cox = group.element_order(group.word_matrix(gens, range(1, s.rank + 1)), cap=4 * s.coxeter_number)
    out = {
        "cartan_matches": cartan_ok,
        "relations": report.as_dict(),
        "coxeter_element_order": cox,
        "coxeter_number": s.coxeter_number,
    }
    ok = report.passed and cartan_ok and cox == s.coxeter_number
    try:
        R1, R2, h = group.dihedral_generators(s)
        out["dihedral_order"] = h
    except (group.NonBipartite, AssertionError) as e:
        out["dihedral_order"] = None
        out["dihedral_error"] = str(e)
        ok = ok and isinstance(e, group.NonBipartite)
    return out, ok


def _affine_payload(s: rootsys.RootSystem) -> tuple[dict, bool]:
    t = s.diagram
    if t.family == "H" and t.rank in (3, 4):
        fm = folding.fold_d6_to_h3() if t.rank == 3 else folding.fold_e8_to_h4()
        rep = affine.affine_h_relations(fm)
        d = rep.as_dict()
        return d, rep.passed and rep.in_candidates
    if not t.crystallographic or t.family in ("I2",):
        raise UsageError(f"--affine is not available for {t}")
    try:
        rep = affine.affine_dihedral_label(s)
    except group.NonBipartite as e:
        raise UsageError(f"--affine needs a bipartite diagram: {e}") from None
    d = rep.as_dict()
    ok = rep.passed
    if t.family == "D" or str(t) == "E6":
        ident = affine.word_identity_report(s)
        d["word_identity"] = ident
        ok = ok and ident["passed"]
    return d, ok


def cmd_verify(args) -> int:
    s = _system(args.type)
    payload, ok = _point_relations(s)
    payload = {"type": str(s.diagram), **payload}
    if args.group_order:
        cap = _cap(group.DEFAULT_GROUP_CAP)
        try:
            n = group.enumerate_group(group.simple_reflections(s), cap=cap)
        except group.CapExceeded:
            n = None
        payload["group_order"] = {"measured": n, "expected": s.group_order}
        ok = ok and n == s.group_order
    if args.fold:
        try:
            fm = folding.get_fold(str(s.diagram), args.fold)
        except (ValueError, rootsys.UnsupportedType) as e:
            raise UsageError(str(e)) from None
        fp, fok = _fold_payload(fm, group_order=True)
        payload["fold"] = fp
        ok = ok and fok
    if args.affine:
        ap, aok = _affine_payload(s)
        payload["affine"] = ap
        ok = ok and aok
    payload["passed"] = ok
    _out(payload)
    return 0 if ok else 2


def _parse_vector(text: str, dim: int):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != dim:
        raise UsageError(f"seed needs {dim} comma-separated coordinates")
    try:
        return tuple(parse_golden(p) for p in parts)
    except ValueError as e:
        raise UsageError(str(e)) from None


def cmd_orbit(args) -> int:
    s = _system(args.type)
    if args.seed.strip().isdigit():
        i = int(args.seed)
        if not 1 <= i <= s.rank:
            raise UsageError(f"weight index must be in 1..{s.rank}")
        seed = rootsys.fundamental_weights(s).weights[i - 1]
    else:
        seed = _parse_vector(args.seed, s.ambient_dim)
    cap = args.cap if args.cap is not None else _cap(1_000_000)
    try:
        o = group.orbit(group.simple_reflections(s), seed, cap=cap)
    except group.CapExceeded as e:
        log.error("%s", e)
        return 2
    _out({"type": str(s.diagram), "seed": _vec(seed), "size": len(o), "points": [_vec(p) for p in o.points]})
    return 0


_CELLS = ("root-polytope", "voronoi", "delone", "permutohedron", "diplo", "ball")


def cmd_cells(args) -> int:
    try:
        spec = lattice.parse_lattice(args.lattice)
    except ValueError as e:
        raise UsageError(str(e)) from None
    n = spec.rank
    what = args.what
    if what != "ball" and spec.kind != "A_root" and spec.kind != "A_weight":
        raise UsageError(f"--what {what} is defined for A_n / A_n* only")
    try:
        if what == "ball":
            if args.radius2 is None:
                raise UsageError("--what ball needs --radius2")
            sets = {"ball": lattice.lattice_ball(spec, args.radius2, cap=_cap(lattice.BALL_CAP))}
        elif what == "root-polytope":
            sets = {"root-polytope": lattice.root_polytope_an(n)}
        elif what == "voronoi":
            sets = {"voronoi": lattice.voronoi_vertices_an(n)}
        elif what == "permutohedron":
            sets = {"permutohedron": lattice.permutohedron(n)}
        elif what == "diplo":
            sets = {"diplo": lattice.diplo_simplex(n)}
        else:
            sets = {}
            for a, b in lattice.delone_paired_simplices(n):
                sets[a.label] = a
                sets[b.label] = b
    except group.CapExceeded as e:
        log.error("%s", e)
        return 2
    if args.format == "csv":
        dim = n + 1 if spec.kind.startswith("A") else n
        lines = ["set," + ",".join(f"x{i}" for i in range(1, dim + 1))]
        for name, ps in sets.items():
            lines += [name + "," + ",".join(_vec(p)) for p in ps.points]
        sys.stdout.write("\n".join(lines) + "\n")
        return 0
    _out(
        {
            "lattice": str(spec),
            "what": what,
            "sets": {k: {"size": len(v), "points": [_vec(p) for p in v.points]} for k, v in sets.items()},
        }
    )
    return 0


def _projection_source(args):
    if args.plane == "coxeter":
        s = _system(args.type)
        basis = project.coxeter_plane_basis(s)
    else:
        rank = 3 if args.plane == "h3" else 4
        parent = "D6" if rank == 3 else "E8"
        if str(rootsys.parse_type(args.type)) != parent:
            raise UsageError(f"--plane {args.plane} projects the {parent} lattice")
        s = _system(parent)
        fm = folding.fold_d6_to_h3() if rank == 3 else folding.fold_e8_to_h4()
        basis = project.h_parallel_basis(fm)
    if not s.diagram.crystallographic:
        pts = rootsys.all_roots(s)
        label = f"roots of {s.diagram}"
    else:
        ps = lattice.root_lattice_ball(s, args.radius2, cap=_cap(lattice.BALL_CAP))
        pts, label = ps.points, ps.label
    return s, pts, basis, label


def cmd_project(args) -> int:
    try:
        s, pts, basis, label = _projection_source(args)
    except group.CapExceeded as e:
        log.error("%s", e)
        return 2
    fps = project.project(pts, basis, tol=args.tol, source=label)
    if args.format == "svg" and fps.dim != 2:
        raise UsageError("svg needs a planar projection; use --format csv")
    project.emit(fps, args.format, args.out)
    checks = {}
    ok = True
    if args.check_rotation:
        if fps.dim != 2:
            raise UsageError("--check-rotation needs a planar projection")
        r = project.rotation_invariance_check(fps, args.check_rotation, args.tol)
        checks["rotation"] = {"m": args.check_rotation, "passed": r}
        ok = ok and r
    if args.check_square_lattice:
        resid, B = project.square_lattice_fit(fps)
        r = resid < 1e-9
        checks["square_lattice"] = {"residual": resid, "basis": B.tolist(), "passed": r}
        ok = ok and r
    if args.check_shells:
        checks["shells"] = [{"norm2": v, "count": c} for v, c in project.shell_classify(fps, args.tol)]
    _out(
        {
            "type": str(s.diagram),
            "plane": args.plane,
            "source": label,
            "points": len(fps),
            "out": str(args.out),
            "format": args.format,
            "checks": checks,
            "passed": ok,
        }
    )
    return 0 if ok else 2


def cmd_render(args) -> int:
    try:
        fps = project.read_csv(args.csv)
    except (OSError, ValueError) as e:
        raise UsageError(f"cannot read {args.csv}: {e}") from None
    if fps.dim != 2:
        raise UsageError("render needs a two-column csv")
    project.emit(fps, "svg", args.out, radius=args.radius)
    _out({"in": str(args.csv), "out": str(args.out), "points": len(fps)})
    return 0


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="coxfold", description="Coxeter foldings, affine labels and projections.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="verb", parser_class=_Parser)

    q = sub.add_parser("info", help="root system summary")
    q.add_argument("type")
    q.set_defaults(func=cmd_info)

    q = sub.add_parser("fold", help="folding map and its verification")
    q.add_argument("source")
    q.add_argument("target")
    q.add_argument("--group-order", action="store_true", help="also enumerate the folded group")
    q.set_defaults(func=cmd_fold)

    q = sub.add_parser("verify", help="exact relation checks")
    q.add_argument("type")
    q.add_argument("--fold", metavar="TARGET")
    q.add_argument("--affine", action="store_true")
    q.add_argument("--group-order", action="store_true")
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("orbit", help="orbit of a weight or vector")
    q.add_argument("type")
    q.add_argument("--seed", required=True, help="fundamental weight index or comma-separated vector")
    q.add_argument("--cap", type=int)
    q.set_defaults(func=cmd_orbit)

    q = sub.add_parser("cells", help="lattice balls and A_n polytopes")
    q.add_argument("lattice", help="An, An*, Dn or Zn")
    q.add_argument("--what", choices=_CELLS, required=True)
    q.add_argument("--radius2", type=Fraction)
    q.add_argument("--format", choices=("json", "csv"), default="json")
    q.set_defaults(func=cmd_cells)

    q = sub.add_parser("project", help="project a lattice ball")
    q.add_argument("type")
    q.add_argument("--radius2", type=Fraction, default=Fraction(2))
    q.add_argument("--plane", choices=("coxeter", "h3", "h4"), default="coxeter")
    q.add_argument("--out", type=Path, required=True)
    q.add_argument("--format", choices=("csv", "svg"), default="csv")
    q.add_argument("--tol", type=float, default=project.DEFAULT_TOL)
    q.add_argument("--check-rotation", type=int, metavar="M")
    q.add_argument("--check-square-lattice", action="store_true")
    q.add_argument("--check-shells", action="store_true")
    q.set_defaults(func=cmd_project)

    q = sub.add_parser("render", help="csv point file to svg")
    q.add_argument("csv", type=Path)
    q.add_argument("--out", type=Path, required=True)
    q.add_argument("--radius", type=float)
    q.set_defaults(func=cmd_render)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(
            level=logging.INFO if args.verbose else logging.WARNING,
            stream=sys.stderr,
            format="coxfold: %(message)s",
        )
        if args.verb is None:
            raise UsageError(f"missing verb; choose one of {', '.join(VERBS)}")
        return args.func(args)
    except UsageError as e:
        sys.stderr.write(f"coxfold: {e}\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
