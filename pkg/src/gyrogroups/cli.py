"""Command-line front end.

Every command reads a Cayley table (a file in the text table format, or the
built-in K16 via ``--k16``), runs one analysis and prints either plain text
or, with ``--json``, a JSON document carrying ``"schema": 1``, the command
name, the SHA-256 digest of the input, the seed (if any) and the result.

Exit codes: 0 when the command succeeded and the property it reports holds,
1 when the property is false, 2 on usage, I/O or format errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
from pathlib import Path
from typing import Callable

import numpy as np

from . import cayley, finite, models, morphisms, structure
from .errors import GyroError, NotAGyrogroupError
from .finite import FiniteGyrogroup

SCHEMA = 1
EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class Outcome:
    """What a command produced: a JSON payload, its text rendering and the exit code."""

    def __init__(self, result: dict, lines: list[str], ok: bool = True):
        self.result = result
        self.lines = lines
        self.ok = ok


# -- input handling --------------------------------------------------------


def _read_input(args) -> tuple[str, str]:
    """Return ``(table text, sha256 hex digest of the input bytes)``."""
    if args.k16 and args.input:
        raise UsageError("give either a table file or --k16, not both")
    if args.k16:
        data = finite.save_table(finite.K16_TABLE).encode()
    elif args.input:
        try:
            data = Path(args.input).read_bytes()
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc.strerror or exc}") from exc
    else:
        raise UsageError("no input: give a table file or --k16")
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise UsageError(f"{args.input} is not UTF-8 text") from exc
    return text, hashlib.sha256(data).hexdigest()


def _load_gyrogroup(text: str, normalize: bool) -> FiniteGyrogroup:
    table = finite.load_table(text, normalize=normalize)
    try:
        return FiniteGyrogroup(table)
    except NotAGyrogroupError as exc:
        raise UsageError(f"input is not a gyrogroup ({exc}); run 'verify' for all witnesses") from exc


def parse_set(text: str, order: int | None = None) -> frozenset[int]:
    """Parse ``"0,1,8"``; ``"a..b"`` tokens stand for inclusive ranges."""
    out: set[int] = set()
    for token in text.replace(" ", "").split(","):
        if not token:
            continue
        try:
            if ".." in token:
                lo, hi = token.split("..", 1)
                out.update(range(int(lo), int(hi) + 1))
            else:
                out.add(int(token))
        except ValueError as exc:
            raise UsageError(f"bad element {token!r} in --set") from exc
    if not out:
        raise UsageError("--set is empty")
    if order is not None and not all(0 <= x < order for x in out):
        raise UsageError(f"--set elements must lie in 0..{order - 1}")
    return frozenset(out)


def parse_point(text: str) -> np.ndarray:
    try:
        coords = [float(t) for t in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad point {text!r}: expected comma-separated decimals") from exc
    return np.asarray(coords)


def fmt_set(members) -> str:
    return "{" + ",".join(str(x) for x in sorted(members)) + "}"


def fmt_float(x: float) -> str:
    # shortest decimal that round-trips to the same double
    return np.format_float_positional(float(x), unique=True, trim="-")


def fmt_point(coords) -> str:
    return ",".join(fmt_float(x) for x in np.ravel(coords))


def gyration_names(G: FiniteGyrogroup) -> tuple[list[list[str]], list[tuple[str, str]]]:
    """Name distinct gyrations I, A, B, ... in row-major first-occurrence order."""
    letters = [c for c in "ABCDEFGHJKLMNOPQRSTUVWXYZ"]
    names: dict = {}
    legend = []
    grid = []
    for row in finite.gyration_table(G):
        out = []
        for g in row:
            if g not in names:
                if g.is_identity():
                    name = "I"
                else:
                    k = len([n for n in names.values() if n != "I"])
                    name = letters[k % len(letters)] + (str(k // len(letters)) if k >= len(letters) else "")
                names[g] = name
                legend.append((name, g.cycle_notation()))
            out.append(names[g])
        grid.append(out)
    return grid, legend


# -- table commands ------------------------------------------------------------


def cmd_verify(args, text: str) -> Outcome:
    table = finite.load_table(text, normalize=args.normalize, strict=False)
    report = finite.verify_axioms(table)
    lines = [f"order {report.order}", f"checked: {' '.join(report.checked)}"]
    if report.passed:
        lines.append("result: PASS")
    else:
        lines.append(f"result: FAIL ({', '.join(report.failed_axioms())})")
        lines.extend(f"  {axiom} witness {' '.join(map(str, w))}" for axiom, w in report.violations)
    return Outcome(report.to_dict(), lines, report.passed)


def cmd_gyrtable(args, text: str) -> Outcome:
    G = _load_gyrogroup(text, args.normalize)
    grid, legend = gyration_names(G)
    width = max(len(str(G.order - 1)), max(len(n) for n, _ in legend), 3)
    cell = lambda s: str(s).rjust(width)  # noqa: E731
    lines = [" ".join([cell("gyr")] + [cell(b) for b in G.elements()])]
    lines.extend(" ".join([cell(a)] + [cell(n) for n in row]) for a, row in enumerate(grid))
    lines.append("")
    lines.extend(f"{name} = {cycles}" for name, cycles in legend)
    result = {"order": G.order, "names": grid, "legend": [{"name": n, "cycles": c} for n, c in legend],
              "distinct": len(legend)}
    return Outcome(result, lines)


def _sub_record(G: FiniteGyrogroup, H) -> dict:
    w = structure.l_witness(G, H)
    rec = {"members": sorted(H), "order": len(H), "L": w is None, "normal": morphisms.is_normal(G, H)}
    if w is not None:
        rec["l_witness"] = {"a": w[0], "h": w[1], "image": sorted(w[2])}
    return rec


def _sub_line(rec: dict) -> str:
    line = f"{fmt_set(rec['members'])}  order {rec['order']}  L {'yes' if rec['L'] else 'no'}" \
           f"  normal {'yes' if rec['normal'] else 'no'}"
    if "l_witness" in rec:
        w = rec["l_witness"]
        line += f"  (gyr[{w['a']},{w['h']}] maps it to {fmt_set(w['image'])})"
    return line


def _check_set(G: FiniteGyrogroup, H: frozenset[int]) -> Outcome | None:
    if structure.is_subgyrogroup(G, H):
        return None
    return Outcome({"members": sorted(H), "subgyrogroup": False},
                   [f"{fmt_set(H)} is not a subgyrogroup"], False)


def cmd_subs(args, text: str) -> Outcome:
    G = _load_gyrogroup(text, args.normalize)
    if args.set:
        H = parse_set(args.set, G.order)
        bad = _check_set(G, H)
        if bad:
            return bad
        rec = _sub_record(G, H)
        return Outcome({"subgyrogroup": True, **rec}, [_sub_line(rec)])
    recs = [_sub_record(G, H.members) for H in structure.enumerate_subgyrogroups(G)]
    lines = [_sub_line(r) for r in recs] + [f"{len(recs)} subgyrogroups"]
    return Outcome({"count": len(recs), "subgyrogroups": recs}, lines)


def cmd_lsubs(args, text: str) -> Outcome:
    G = _load_gyrogroup(text, args.normalize)
    if args.set:
        H = parse_set(args.set, G.order)
        bad = _check_set(G, H)
        if bad:
            return bad
        rec = _sub_record(G, H)
        return Outcome({"subgyrogroup": True, **rec}, [_sub_line(rec)], rec["L"])
    recs = [_sub_record(G, H.members) for H in structure.enumerate_subgyrogroups(G)]
    keep = [r for r in recs if r["L"]]
    lines = [_sub_line(r) for r in keep] + [f"{len(keep)} of {len(recs)} subgyrogroups are L-subgyrogroups"]
    return Outcome({"count": len(keep), "total": len(recs), "l_subgyrogroups": keep}, lines)


def cmd_cosets(args, text: str) -> Outcome:
    G = _load_gyrogroup(text, args.normalize)
    if not args.set:
        raise UsageError("cosets needs --set")
    H = parse_set(args.set, G.order)
    bad = _check_set(G, H)
    if bad:
        return bad
    dec = structure.cosets_partition(G, H)
    classes = structure.equivalence_classes(G, H)
    is_L = structure.is_L_subgyrogroup(G, H)
    result = {"cosets": dec.to_dict(), "sim_classes": classes.to_dict(), "L": is_L}
    lines = [f"H = {fmt_set(H)}  order {len(H)}  L {'yes' if is_L else 'no'}", "left cosets:"]
    lines.extend(f"  {r} + H = {fmt_set(c)}" for r, c in zip(dec.representatives, dec.classes))
    lines.append(f"partition: {'yes' if dec.is_partition else 'no'} ({dec.index} distinct cosets)")
    if dec.overlaps:
        lines.append("overlapping cosets: " + " ".join(f"{a}+H/{b}+H" for a, b in dec.overlaps))
    lines.append(f"~H classes: {' '.join(fmt_set(c) for c in classes.classes)}")
    if is_L:
        rec = structure.lagrange_check(G, H)
        result["lagrange"] = {"index": rec.index, "divides": rec.divides, "product_ok": rec.product_ok,
                              "holds": rec.holds}
        lines.append(f"Lagrange: {G.order} = {rec.index} * {len(H)}  {'holds' if rec.holds else 'FAILS'}")
    return Outcome(result, lines, dec.is_partition)


def cmd_normal(args, text: str) -> Outcome:
    G = _load_gyrogroup(text, args.normalize)
    if args.set:
        H = parse_set(args.set, G.order)
        bad = _check_set(G, H)
        if bad:
            return bad
        rep = morphisms.normality_report(G, H)
        result = {"members": sorted(H), "normal": rep.normal, "failed_stage": rep.failed_stage,
                  "witness": None if rep.witness is None else list(rep.witness)}
        line = f"{fmt_set(H)} normal: {'yes' if rep.normal else 'no'}"
        if not rep.normal:
            line += f" (fails at {rep.failed_stage}"
            line += f", witness {rep.witness})" if rep.witness is not None else ")"
        return Outcome(result, [line], rep.normal)
    found = morphisms.normal_subgyrogroups(G)
    lines = [f"{fmt_set(N.members)}  order {N.order}" for N in found]
    lines.append(f"{len(found)} normal subgyrogroups")
    return Outcome({"count": len(found), "normal": [N.sorted() for N in found]}, lines)


def cmd_quotient(args, text: str) -> Outcome:
    G = _load_gyrogroup(text, args.normalize)
    if not args.set:
        raise UsageError("quotient needs --set")
    N = parse_set(args.set, G.order)
    bad = _check_set(G, N)
    if bad:
        return bad
    rep = morphisms.normality_report(G, N)
    if not rep.normal:
        return Outcome({"members": sorted(N), "normal": False, "failed_stage": rep.failed_stage},
                       [f"{fmt_set(N)} is not normal (fails at {rep.failed_stage})"], False)
    Q = morphisms.quotient(G, N)
    verdict = finite.verify_axioms(Q.table)
    lines = [f"G/N with N = {fmt_set(N)}: order {Q.order}", "cosets:"]
    lines.extend(f"  [{i}] = {fmt_set(c)}" for i, c in enumerate(Q.cosets.classes))
    lines.append("table:")
    lines.extend("  " + " ".join(str(x) for x in row) for row in Q.table.rows())
    lines.append(f"axioms: {'PASS' if verdict.passed else 'FAIL'}")
    result = {"members": sorted(N), "normal": True, "order": Q.order,
              "cosets": [sorted(c) for c in Q.cosets.classes],
              "table": [list(r) for r in Q.table.rows()], "projection": list(Q.projection.images),
              "axioms": verdict.to_dict()}
    return Outcome(result, lines, verdict.passed)


def cmd_iso(args, text: str) -> Outcome:
    G = _load_gyrogroup(text, args.normalize)
    if args.other:
        try:
            other_text = Path(args.other).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {args.other}: {exc.strerror or exc}") from exc
        H = _load_gyrogroup(other_text, args.normalize)
        f = morphisms.find_isomorphism(G, H)
        if f is None:
            return Outcome({"isomorphic": False, "mapping": None}, ["not isomorphic"], False)
        return Outcome({"isomorphic": True, "mapping": list(f.images)},
                       ["isomorphic", "mapping: " + " ".join(map(str, f.images))])
    return _iso_battery(G)


def _iso_battery(G: FiniteGyrogroup) -> Outcome:
    subs = [H.members for H in structure.enumerate_subgyrogroups(G)]
    normals = [N for N in subs if morphisms.is_normal(G, N)]
    records = {"first": [], "second": [], "third": [], "lattice": []}
    for N in normals:
        rep = morphisms.first_iso_check(morphisms.quotient(G, N).projection)
        records["first"].append({"N": sorted(N), "ok": rep.ok, "path": rep.path})
        records["lattice"].append({"N": sorted(N), "ok": morphisms.lattice_check(G, N).ok})
    for A in subs:
        for B in normals:
            rep = morphisms.second_iso_check(G, A, B)
            records["second"].append({"A": sorted(A), "B": sorted(B), "ok": rep.ok, "path": rep.path})
    for H in normals:
        for K in normals:
            if H <= K:
                rep = morphisms.third_iso_check(G, H, K)
                records["third"].append({"H": sorted(H), "K": sorted(K), "ok": rep.ok, "path": rep.path})
    lines = [f"{len(normals)} normal subgyrogroups: {' '.join(fmt_set(N) for N in normals)}"]
    ok = True
    for name, recs in records.items():
        passed = sum(r["ok"] for r in recs)
        ok &= passed == len(recs)
        lines.append(f"{name}: {passed}/{len(recs)} pass")
        lines.extend(f"  FAIL {r}" for r in recs if not r["ok"])
    return Outcome({"normal": [sorted(N) for N in normals], "checks": records, "ok": ok}, lines, ok)


def cmd_cayley(args, text: str) -> Outcome:
    G = _load_gyrogroup(text, args.normalize)
    mode = args.mode
    if mode == "auto":
        mode = "exhaustive" if G.order <= cayley.EXHAUSTIVE_LIMIT else "sampled"
    if mode == "sampled" and args.seed is None:
        raise UsageError("sampled verification needs --seed")
    report = cayley.verify_sym_gyrogroup(G, mode=mode, samples=args.samples,
                                         seed=0 if args.seed is None else args.seed)
    gyrations = sorted({g for row in finite.gyration_table(G) for g in row}, key=lambda p: p.images)
    laws = {
        "composition": cayley.composition_law_check(G),
        "translation_form": cayley.translation_form_check(G),
        "embedding": cayley.embedding_check(G),
        "commutation": all(cayley.commutation_check(G, g) for g in gyrations),
    }
    ok = report.passed and all(laws.values())
    lines = [f"Sym(G) for |G| = {G.order}, mode {mode}, {report.samples} triples"
             + (f", seed {report.seed}" if mode == "sampled" else ""),
             f"axioms: {'PASS' if report.passed else 'FAIL'}"]
    lines.extend(f"  {a} witness {' '.join(map(str, w))}" for a, w in report.violations)
    lines.extend(f"{name}: {'PASS' if v else 'FAIL'}" for name, v in laws.items())
    return Outcome({"mode": mode, "axioms": report.to_dict(), "laws": laws, "ok": ok}, lines, ok)


# -- continuous models -----------------------------------------------------------


def _make_model(args, dimension: int | None):
    if args.disk:
        return models.MobiusDisk()
    if args.ball:
        return models.MobiusBall(dimension=dimension or args.dim)
    return models.EinsteinBall(dimension=dimension or args.dim, c=args.c)


def _model_point(model, coords: np.ndarray):
    if isinstance(model, models.MobiusDisk):
        if coords.shape != (2,):
            raise UsageError("disk points have two coordinates: re,im")
        return complex(coords[0], coords[1])
    return coords


def _point_coords(model, p) -> np.ndarray:
    return models.disk_to_plane(p) if isinstance(model, models.MobiusDisk) else np.asarray(p)


def cmd_models(args) -> Outcome:
    actions = [a for a in ("add", "gyr", "gamma") if getattr(args, a) is not None] + (["suite"] if args.suite else [])
    if len(actions) != 1:
        raise UsageError("models needs exactly one of --add, --gyr, --gamma, --suite")
    action = actions[0]
    if action == "suite":
        if args.seed is None:
            raise UsageError("--suite is sampled and needs --seed")
        model = _make_model(args, None)
        rep = models.axiom_suite(model, samples=args.samples, seed=args.seed, fraction=args.fraction)
        lines = [f"{rep.model}: {rep.samples} samples, seed {rep.seed}, norm <= {rep.sample_fraction} * radius,"
                 f" tolerance {rep.tolerance:g}"]
        lines.extend(f"  {law}: {dev:.3e}" for law, dev in rep.max_deviation.items())
        lines.append(f"  closure margin: {rep.closure_margin:.3e}")
        lines.append(f"  gyration norm drift: {rep.gyration_norm_drift:.3e}")
        lines.append(f"result: {'PASS' if rep.passed else 'FAIL'}")
        return Outcome(rep.to_dict(), lines, rep.passed)

    raw = {"add": args.add, "gyr": args.gyr, "gamma": args.gamma}[action]
    raw = raw if isinstance(raw, list) else [raw]
    coords = [parse_point(p) for p in raw]
    if len({c.shape for c in coords}) != 1:
        raise UsageError("all points must have the same number of coordinates")
    if action == "gamma":
        if args.disk or args.ball:
            raise UsageError("--gamma applies to the Einstein model")
        value = float(models.gamma_factor(coords[0], args.c))
        return Outcome({"model": "einstein", "gamma": value}, [fmt_float(value)])
    model = _make_model(args, coords[0].shape[0])
    pts = [_model_point(model, c) for c in coords]
    value = model.add(*pts) if action == "add" else models.model_gyr(model, *pts)
    out = _point_coords(model, value)
    result = {"model": model.name, "operation": action, "inputs": [c.tolist() for c in coords],
              "result": [float(x) for x in np.ravel(out)], "text": fmt_point(out)}
    if action == "gyr" and isinstance(model, models.MobiusDisk):
        closed = _point_coords(model, model.closed_form_gyr(*pts))
        result["closed_form"] = [float(x) for x in np.ravel(closed)]
    return Outcome(result, [fmt_point(out)])


# -- wiring ------------------------------------------------------------------------


TABLE_COMMANDS: dict[str, tuple[Callable, str]] = {
    "verify": (cmd_verify, "check the gyrogroup axioms of a table and list witnesses"),
    "gyrtable": (cmd_gyrtable, "print the gyration table with named gyrations"),
    "subs": (cmd_subs, "list subgyrogroups, or test one given by --set"),
    "lsubs": (cmd_lsubs, "list L-subgyrogroups, or test one given by --set"),
    "cosets": (cmd_cosets, "left cosets of --set, partition verdict and Lagrange count"),
    "normal": (cmd_normal, "list normal subgyrogroups, or test one given by --set"),
    "quotient": (cmd_quotient, "quotient by the normal subgyrogroup --set"),
    "iso": (cmd_iso, "isomorphism-theorem battery, or isomorphism test against --other"),
    "cayley": (cmd_cayley, "verify the gyrogroup structure on Sym(G)"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--seed", type=int, default=None, help="seed for sampled checks (unsigned 64-bit)")

    table = argparse.ArgumentParser(add_help=False)
    table.add_argument("input", nargs="?", help="table file")
    table.add_argument("--k16", action="store_true", help="use the built-in 16-element gyrogroup")
    table.add_argument("--normalize", action="store_true",
                       help="relabel so that the identity becomes element 0")

    parser = argparse.ArgumentParser(prog="gyro", description="Construct and analyse gyrogroups.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in TABLE_COMMANDS.items():
        p = sub.add_parser(name, parents=[common, table], help=help_text, description=help_text)
        if name in ("subs", "lsubs", "cosets", "normal", "quotient"):
            p.add_argument("--set", help="subset as a,b,c (a..b for ranges)")
        if name == "iso":
            p.add_argument("--other", help="second table file to test for isomorphism")
        if name == "cayley":
            p.add_argument("--mode", choices=("auto", "exhaustive", "sampled"), default="auto")
            p.add_argument("--samples", type=int, default=10_000)

    m = sub.add_parser("models", parents=[common], help="evaluate Möbius and Einstein gyrogroups")
    kind = m.add_mutually_exclusive_group(required=True)
    kind.add_argument("--disk", action="store_true", help="Möbius addition on the complex unit disk")
    kind.add_argument("--ball", action="store_true", help="Möbius addition on the unit ball")
    kind.add_argument("--einstein", action="store_true", help="Einstein addition on the c-ball")
    m.add_argument("--add", nargs=2, metavar="POINT", help="sum of two points given as x,y,...")
    m.add_argument("--gyr", nargs=3, metavar="POINT", help="gyr[a,b]z through the gyrator identity")
    m.add_argument("--gamma", metavar="POINT", help="Lorentz factor of a velocity")
    m.add_argument("--suite", action="store_true", help="sampled axiom suite")
    m.add_argument("--samples", type=int, default=10_000)
    m.add_argument("--fraction", type=float, default=None, help="sampling radius as a fraction of the carrier")
    m.add_argument("--dim", type=int, default=3, help="dimension for --suite on the ball models")
    m.add_argument("-c", type=float, default=1.0, help="speed of light for the Einstein model")
    return parser


def _render(args, digest: str, outcome: Outcome) -> str:
    if args.json:
        doc = {"schema": SCHEMA, "command": args.command, "input_sha256": digest, "seed": args.seed,
               "ok": outcome.ok, "result": outcome.result}
        return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False, allow_nan=False) + "\n"
    return "\n".join(outcome.lines) + "\n"


def _models_digest(argv: list[str]) -> str:
    return hashlib.sha256("\0".join(argv).encode()).hexdigest()


_NEGATIVE_POINT = re.compile(r"^-[\d.]")


def _protect_negative_points(argv: list[str]) -> list[str]:
    # argparse would read "-0.5,0" as an option; a leading space keeps it an operand
    return [" " + a if _NEGATIVE_POINT.match(a) and "," in a else a for a in argv]


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_protect_negative_points(argv))
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if args.seed is not None and not 0 <= args.seed < 2**64:
            raise UsageError("--seed must be an unsigned 64-bit integer")
        if args.command == "models":
            digest = _models_digest(argv)
            outcome = cmd_models(args)
        else:
            text, digest = _read_input(args)
            outcome = TABLE_COMMANDS[args.command][0](args, text)
    except (UsageError, GyroError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(_render(args, digest, outcome))
    return EXIT_OK if outcome.ok else EXIT_FALSE


if __name__ == "__main__":
    sys.exit(main())
