"""Command-line front end; every subcommand prints one JSON report on stdout.

Exit status: 0 success or feasible, 1 infeasible or failed check,
2 input error, 3 internal verification failure.
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import serialize as ser
from .algebra import Field
from .canonical import jordan_data, rcf_transform, smith_invariant_factors
from .errors import BudgetExceeded, InfeasibleError, InputError, VerificationError
from .oracle import (
    EnumerationBudget,
    identity_battery,
    minor_battery,
    sampled_matrices,
    theorem_check,
    theorem_sweep,
)
from .perturb import check_feasible, construct, verify

log = logging.getLogger("rankpert")

EXIT_OK, EXIT_INFEASIBLE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3

COMMANDS = ("invariants", "rcf", "jordan", "feasible", "construct", "verify", "enumerate", "selftest")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rankpert", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--matrix", help="matrix JSON file")
    ap.add_argument("--poly", help="target polynomial JSON file")
    ap.add_argument("--perturbation", help="matrix JSON file holding B (verify)")
    ap.add_argument("--rank", type=int, help="rank bound m")
    ap.add_argument("--field", help='field override, "Q" or "GF(p)"')
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--n", type=int, help="matrix size (enumerate)")
    ap.add_argument("--samples", type=int, help="enumerate: number of seeded random matrices instead of all")
    ap.add_argument("--count", type=int, default=200, help="selftest: instances per battery")
    ap.add_argument("--max-candidates", type=int, default=EnumerationBudget().max_candidates)
    ap.add_argument("--out", help="write the report here instead of stdout")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


class _ArgError(InputError):
    pass


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise _ArgError(f"{args.command} needs --{name.replace('_', '-')}")


def _load_matrix(path, override):
    return ser.matrix_from_doc(ser.load_json(path), override)


def _rank_arg(args) -> int:
    _need(args, "rank")
    if args.rank < 0:
        raise _ArgError("--rank must be nonnegative")
    return args.rank


def _run(args) -> tuple[dict, int]:
    cmd = args.command
    override = Field.parse(args.field) if args.field else None

    if cmd == "selftest":
        tele = identity_battery(args.count, args.seed)
        minors = minor_battery(args.count, args.seed)
        ok = not (tele["telescoping"]["failures"] or tele["rank_bound"]["failures"] or minors["failures"])
        rep = ser.header(cmd, None, None)
        rep.update(seed=args.seed, telescoping=tele["telescoping"], rank_bound=tele["rank_bound"], minor_crosscheck=minors, passed=ok)
        return rep, EXIT_OK if ok else EXIT_INTERNAL

    if cmd == "enumerate" and args.matrix is None:
        return _enumerate_many(args, override)

    _need(args, "matrix")
    A = _load_matrix(args.matrix, override)
    if not A.is_square:
        raise InputError(f"matrix must be square, got {A.nrows}x{A.ncols}")
    F, n = A.field, A.nrows
    rep = ser.header(cmd, F, n)

    if cmd == "invariants":
        rep["invariant_factors"] = ser.invariants_payload(smith_invariant_factors(A))
        return rep, EXIT_OK
    if cmd == "rcf":
        dec = rcf_transform(A)
        rep.update(R=dec.R.to_strings(), S=dec.S.to_strings(), invariant_factors=ser.invariants_payload(dec.inv))
        return rep, EXIT_OK
    if cmd == "jordan":
        rep["jordan"] = ser.jordan_payload(jordan_data(A, seed=args.seed))
        return rep, EXIT_OK
    if cmd == "enumerate":
        m = _rank_arg(args)
        tr = theorem_check(A, m, EnumerationBudget(args.max_candidates, args.seed), seed=args.seed)
        rep.update(tr.to_dict())
        return rep, EXIT_OK if tr.equal else EXIT_INTERNAL

    _need(args, "poly")
    m = _rank_arg(args)
    q = ser.poly_from_doc(ser.load_json(args.poly), F, override)

    if cmd == "feasible":
        cert = check_feasible(A, q, m)
        rep.update(ser.certificate_payload(cert, q))
        return rep, EXIT_OK if cert.feasible else EXIT_INFEASIBLE
    if cmd == "construct":
        try:
            pert = construct(A, q, m)
        except InfeasibleError as exc:
            rep.update(ser.certificate_payload(exc.certificate, q))
            return rep, EXIT_INFEASIBLE
        check = verify(A, pert.B, q, m)
        rep.update(ser.certificate_payload(pert.certificate, q))
        rep.update(
            B=pert.B.to_strings(),
            rank_B=pert.rank_B,
            altered_columns_rcf=list(pert.altered_columns_rcf),
            achieved_charpoly=pert.achieved_charpoly.to_strings(),
            verification=ser.verify_payload(check),
        )
        return rep, EXIT_OK if check.passed else EXIT_INTERNAL
    if cmd == "verify":
        _need(args, "perturbation")
        B = _load_matrix(args.perturbation, override)
        if B.field != F:
            raise InputError(f"B is over {B.field}, A over {F}")
        check = verify(A, B, q, m)
        rep.update(m=m, target=q.to_strings(), **ser.verify_payload(check))
        return rep, EXIT_OK if check.passed else EXIT_INFEASIBLE
    raise _ArgError(f"unhandled command {cmd}")  # pragma: no cover


def _enumerate_many(args, override):
    if override is None or not override.is_prime_field:
        raise _ArgError('enumerate without --matrix needs --field "GF(p)"')
    _need(args, "n")
    if args.n < 1:
        raise _ArgError("--n must be positive")
    ms = [args.rank] if args.rank is not None else list(range(args.n + 1))
    if any(m < 0 for m in ms):
        raise _ArgError("--rank must be nonnegative")
    budget = EnumerationBudget(args.max_candidates, args.seed)
    matrices = None
    seed = None
    if args.samples is not None:
        matrices = sampled_matrices(override, args.n, args.samples, args.seed)
        seed = args.seed
    sweep = theorem_sweep(override, args.n, ms, matrices=matrices, budget=budget, seed=seed)
    rep = ser.header("enumerate", override, args.n)
    rep.update(sweep.to_dict())
    ok = sweep.all_equal and sweep.necessity_failures == 0
    return rep, EXIT_OK if ok else EXIT_INTERNAL


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr, format="%(levelname)s %(message)s")
    try:
        rep, code = _run(args)
    except ValueError as exc:
        log.error("%s", exc)
        rep, code = ser.header(args.command, None, None), EXIT_INPUT
        rep["error"] = {"kind": "input", "message": str(exc)}
    except BudgetExceeded as exc:
        log.error("%s", exc)
        rep, code = ser.header(args.command, None, None), EXIT_INPUT
        rep["error"] = {"kind": "budget", "message": str(exc)}
    except VerificationError as exc:
        log.error("internal verification failure: %s", exc)
        rep, code = ser.header(args.command, None, None), EXIT_INTERNAL
        rep["error"] = {"kind": "internal", "message": str(exc)}
    text = ser.dumps(rep)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        log.info("report written to %s", args.out)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
