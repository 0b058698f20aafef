"""Command-line entry point: ``torelli-res <command> ...``.

Exit codes: 0 success or expected verdict, 1 usage, 2 input parse error,
3 resource guard hit (a partial report is still written), 4 a computed
verdict that contradicts the expected theorem outcome.
"""

from __future__ import annotations

import argparse
import os
import random
import re
import sys
import time

from .alexander_infinitesimal import (
    ResourceGuardExceeded,
    chen_rank_free,
    graded_dims,
    random_crosscheck,
    resource_guard,
)
from .reports import (
    EXIT_GUARD,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_USAGE,
    InputError,
    VerificationReport,
    load_algebra,
    write_atomic,
)
from .resonance_engine import (
    FULL,
    TRIVIAL,
    free_group_data,
    free_product_square_data,
    heisenberg_data,
    surface_data,
    torelli_data,
    two_form_data,
    verify_torelli_resonance,
)
from .torus_dynamics import (
    TorsionPoint,
    full_torsion_invariant,
    induced_action,
    invariant_set_check,
    orbit,
    random_torsion_point,
    transport,
)

MAX_GENUS_ENV = "TORELLI_RES_MAX_GENUS"
DEFAULT_MAX_GENUS = 5
PRESETS = "free:N, surface:G, heisenberg, f2xf2, two-form"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def max_genus() -> int:
    value = os.environ.get(MAX_GENUS_ENV)
    return int(value) if value else DEFAULT_MAX_GENUS


def _genus(value: str) -> int:
    g = int(value)
    top = max_genus()
    if not 3 <= g <= top:
        raise argparse.ArgumentTypeError(f"genus must lie in 3..{top}, got {g}")
    return g


def _positive(value: str) -> int:
    v = int(value)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonneg(value: str) -> int:
    v = int(value)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def preset_data(spec: str):
    name, _, arg = spec.partition(":")
    try:
        if name == "free" and arg:
            return free_group_data(int(arg))
        if name == "surface" and arg:
            return surface_data(int(arg))
    except ValueError as exc:
        raise UsageError(f"bad preset {spec!r}: {exc}") from None
    fixed = {"heisenberg": heisenberg_data, "f2xf2": free_product_square_data, "two-form": two_form_data}
    if name in fixed and not arg:
        return fixed[name]()
    raise UsageError(f"unknown preset {spec!r}; choose from {PRESETS}")


# ---------------------------------------------------------------------------
# commands; each returns (report, exit code)


def cmd_verify_resonance(args) -> tuple[VerificationReport, int]:
    rep = verify_torelli_resonance(args.genus, seed=args.seed, samples=args.samples)
    expected = FULL if args.genus == 3 else TRIVIAL
    evidence = dict(rep.evidence, expected_verdict=expected)
    params = {"genus": args.genus, "samples": args.samples}
    code = EXIT_OK if rep.verdict == expected else EXIT_MISMATCH
    return VerificationReport("verify-resonance", params, rep.verdict, evidence, seed=args.seed), code


def cmd_alexander(args) -> tuple[VerificationReport, int]:
    sources = [args.input is not None, args.preset is not None, args.torelli is not None]
    if sum(sources) != 1:
        raise UsageError("give exactly one of an input file, --preset or --torelli")
    if args.input is not None:
        data = load_algebra(args.input)
        params = {"input": os.path.basename(args.input)}
    elif args.preset is not None:
        data = preset_data(args.preset)
        params = {"preset": args.preset}
    else:
        data = torelli_data(args.torelli)
        params = {"torelli": args.torelli}
    params.update(qmax=args.qmax, label=data.label)
    guard = args.guard if args.guard is not None else resource_guard()
    prof = graded_dims(data, args.qmax, guard=guard)
    evidence = {
        "n": data.n,
        "h2": data.m,
        "dims": prof.values,
        "degrees": [q for q, _ in prof.dims],
        "finite": prof.finite,
        "vanishing_degree": prof.vanishing_degree,
        "truncated_at": prof.truncated_at,
        "guard": guard,
        "grading": prof.grading,
    }
    code = EXIT_OK
    m = re.fullmatch(r"free:(\d+)", args.preset or "")
    if m:
        n = int(m.group(1))
        oracle = [chen_rank_free(n, q + 2) for q, _ in prof.dims]
        evidence["chen_oracle"] = oracle
        if oracle != prof.values:
            code = EXIT_MISMATCH
    if prof.truncated_at is not None:
        code = EXIT_GUARD
    verdict = "finite" if prof.finite else "unknown"
    return VerificationReport("alexander", params, verdict, evidence, seed=None), code


def _orbit_point(args, rank: int) -> TorsionPoint:
    if args.point:
        vals = [v for v in args.point.split(",")]
        if len(vals) != rank:
            raise UsageError(f"--point needs {rank} coordinates, got {len(vals)}")
        try:
            return TorsionPoint(vals)
        except ValueError as exc:
            raise UsageError(f"bad --point: {exc}") from None
    return random_torsion_point(random.Random(args.seed), rank, args.torsion)


def cmd_orbit(args) -> tuple[VerificationReport, int]:
    action = induced_action(args.genus)
    if args.transpose:
        action = action.transposed()
    t = _orbit_point(args, action.rank)
    orb = orbit(action, t, cap=args.cap)
    closed = not orb.truncated and invariant_set_check(action, orb.points)
    evidence = {
        "rank": action.rank,
        "generators": len(action.matrices),
        "point": t,
        "order": t.order,
        "orbit_size": len(orb),
        "truncated": orb.truncated,
        "closed": closed,
        "orders_in_orbit": sorted({p.order for p in orb.points}),
    }
    params = {"genus": args.genus, "torsion": args.torsion, "cap": args.cap, "transpose": args.transpose,
              "point": args.point}
    if orb.truncated:
        verdict, code = "truncated", EXIT_GUARD
    elif closed:
        verdict, code = "finite-closed", EXIT_OK
    else:
        verdict, code = "not-closed", EXIT_MISMATCH
    return VerificationReport("orbit", params, verdict, evidence, seed=args.seed), code


_SET_RE = re.compile(r"zero|full-(\d+)-torsion(-sample)?|orbit-(\d+)")


def cmd_invariance(args) -> tuple[VerificationReport, int]:
    m = _SET_RE.fullmatch(args.set)
    if not m:
        raise UsageError(f"unknown set {args.set!r}; use zero, full-M-torsion, full-M-torsion-sample or orbit-M")
    action = induced_action(args.genus)
    r = action.rank
    evidence: dict = {"rank": r, "generators": len(action.matrices)}
    if args.set == "zero":
        result = invariant_set_check(action, [TorsionPoint([0] * r)])
        evidence["set_size"] = 1
    elif m.group(1) and not m.group(2):
        mod = int(m.group(1))
        if mod < 2:
            raise UsageError("torsion order must be >= 2")
        try:
            result = full_torsion_invariant(action, mod)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        evidence["set_size"] = mod ** r
    elif m.group(1):
        mod = int(m.group(1))
        if mod < 2:
            raise UsageError("torsion order must be >= 2")
        # torsion preservation on a seeded sample: images stay m-torsion and
        # the inverse generator brings them back
        rng = random.Random(args.seed)
        pts = [random_torsion_point(rng, r, mod) for _ in range(args.samples)]
        inverse = type(action)(r, action.inverses, action.matrices)
        result = True
        for t in pts:
            for i in range(len(action.matrices)):
                s = transport(action, i, t)
                if mod % s.order or transport(inverse, i, s) != t:
                    result = False
        evidence["set_size"] = len(pts)
        evidence["checked_images"] = len(pts) * len(action.matrices)
    else:
        mod = int(m.group(3))
        if mod < 2:
            raise UsageError("torsion order must be >= 2")
        t = random_torsion_point(random.Random(args.seed), r, mod)
        orb = orbit(action, t, cap=args.cap)
        if orb.truncated:
            raise ResourceGuardExceeded(f"orbit exceeded the cap {args.cap}")
        result = invariant_set_check(action, orb.points)
        evidence.update(point=t, set_size=len(orb))
    params = {"genus": args.genus, "set": args.set, "samples": args.samples, "cap": args.cap}
    return VerificationReport("invariance", params, result, evidence, seed=args.seed), (
        EXIT_OK if result is True else EXIT_MISMATCH)


def cmd_crosscheck(args) -> tuple[VerificationReport, int]:
    res = random_crosscheck(args.random, args.seed, points=args.points, kmax=args.kmax, nmax=args.nmax)
    verdict = "agree" if not res["discrepancies"] else "disagree"
    params = {"random": args.random, "points": args.points, "kmax": args.kmax, "nmax": args.nmax}
    evidence = dict(res, discrepancy_count=len(res["discrepancies"]))
    return VerificationReport("crosscheck", params, verdict, evidence, seed=args.seed), (
        EXIT_OK if verdict == "agree" else EXIT_MISMATCH)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="torelli-res", description="Exact checks of Torelli resonance and torsion-point dynamics.")
    sub = p.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def common(sp):
        sp.add_argument("-o", "--output", help="write the JSON report here (atomically) instead of stdout")

    sp = sub.add_parser("verify-resonance", help="decide R(T_g) for one genus")
    sp.add_argument("--genus", type=_genus, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=_positive, default=50)
    common(sp)
    sp.set_defaults(func=cmd_verify_resonance)

    sp = sub.add_parser("alexander", help="graded dimensions of the infinitesimal Alexander invariant")
    sp.add_argument("input", nargs="?", help="AlgebraInputFile (JSON)")
    sp.add_argument("--preset", help=f"built-in dataset: {PRESETS}")
    sp.add_argument("--torelli", type=_genus, help="use the Torelli data of this genus")
    sp.add_argument("--qmax", type=_nonneg, default=3)
    sp.add_argument("--guard", type=_positive, help="max nonzeros per degree block")
    common(sp)
    sp.set_defaults(func=cmd_alexander)

    sp = sub.add_parser("orbit", help="orbit of a torsion point on the character torus")
    sp.add_argument("--genus", type=_genus, required=True)
    sp.add_argument("--torsion", type=_positive, default=2, help="torsion order of the random point")
    sp.add_argument("--point", help="explicit point as comma-separated p/q exponents")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--cap", type=_positive, default=100_000)
    sp.add_argument("--transpose", action="store_true", help="use the transposed action")
    common(sp)
    sp.set_defaults(func=cmd_orbit)

    sp = sub.add_parser("invariance", help="invariance of a torsion subset under the unipotents")
    sp.add_argument("--genus", type=_genus, required=True)
    sp.add_argument("--set", required=True, help="zero | full-M-torsion | full-M-torsion-sample | orbit-M")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=_positive, default=200)
    sp.add_argument("--cap", type=_positive, default=100_000)
    common(sp)
    sp.set_defaults(func=cmd_invariance)

    sp = sub.add_parser("crosscheck", help="compare W_k and R_k membership on random algebras")
    sp.add_argument("--random", type=_positive, required=True, help="number of random datasets")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--points", type=_positive, default=20)
    sp.add_argument("--kmax", type=_positive, default=3)
    sp.add_argument("--nmax", type=_positive, default=5)
    common(sp)
    sp.set_defaults(func=cmd_crosscheck)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        start = time.perf_counter()
        report, code = args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceGuardExceeded as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    report.wall_time = time.perf_counter() - start
    text = report.to_json()
    if args.output:
        write_atomic(args.output, text)
    else:
        sys.stdout.write(text)
    if code == EXIT_GUARD:
        print("resource guard hit: partial result reported", file=sys.stderr)
    elif code == EXIT_MISMATCH:
        print(f"verdict {report.verdict!r} contradicts the expected outcome", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
