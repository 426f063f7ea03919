"""Command-line entry point.

Every subcommand prints a JSON envelope::

    {"command": ..., "params": ..., "result": ..., "budget_report": ..., "version": ...}

except the raw data exports (``coeffs`` without ``--out``, ``sparse dump``).
Exit codes: 0 ok, 2 domain error, 3 resource or search cap, 4 I/O, 1 internal.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import __version__, config
from .constructions import (
    explore_M,
    jump_probe,
    jump_sequence,
    lemma1_triple,
    lemma2_range,
    lemma4_triple,
    prime_chain,
    scan_b2_cases,
    theorem1_witness,
)
from .cyclo import height, inclusion_exclusion_coeffs, phi_coeffs, reduce_to_core
from .errors import ConsistencyError, DomainError, ResourceError, SearchExhaustedError
from .oracle import IE_LIMIT, PHI_LIMIT, oracle_inclusion_exclusion, oracle_phi
from .sparse import (
    build_sparse_set,
    check_P_properties,
    check_bound_everywhere,
    count_P,
    family_threshold,
    trim_small,
)

EXIT_OK, EXIT_INTERNAL, EXIT_DOMAIN, EXIT_RESOURCE, EXIT_IO = 0, 1, 2, 3, 4


def _oracle_poly(subject):
    """Oracle polynomial for an n or a triple, or None when beyond the oracle's caps."""
    if isinstance(subject, int):
        return oracle_phi(subject) if subject <= PHI_LIMIT else None
    p, q, r = subject
    if min(subject) <= 2 or p * q * r > IE_LIMIT:
        return None
    return oracle_inclusion_exclusion(subject)


def _oracle_check(subject, value):
    poly = _oracle_poly(subject)
    if poly is None:
        return {"oracle": "skipped: beyond oracle size caps"}
    if poly.height != value:
        raise ConsistencyError(f"oracle height {poly.height} disagrees with {value} for {subject}")
    return {"oracle": "agrees", "oracle_height": poly.height}


def _subject(args):
    if args.triple:
        return tuple(args.triple)
    if args.n is None:
        raise DomainError("give either n or --triple p q r")
    return args.n


def _emit(args, result, out=None):
    env = {
        "command": args.command,
        "params": {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "command")},
        "result": result,
        "budget_report": config.get_config().as_dict(),
        "version": __version__,
    }
    text = json.dumps(env, indent=2, sort_keys=True)
    (out or sys.stdout).write(text + "\n")


# -- subcommands -----------------------------------------------------------


def cmd_height(args):
    subj = _subject(args)
    if args.use_oracle:
        poly = _oracle_poly(subj)
        if poly is None:
            raise ResourceError("subject is beyond the oracle's size caps")
        result = {"subject": subj, "height": poly.height, "degree": poly.degree, "method": "oracle"}
    else:
        result = height(subj, method=args.method).as_dict()
        if args.verify_oracle:
            result.update(_oracle_check(subj if isinstance(subj, int) else tuple(subj), result["height"]))
    _emit(args, result)


def _coeff_list(subj, use_oracle):
    if use_oracle:
        poly = _oracle_poly(subj)
        if poly is None:
            raise ResourceError("subject is beyond the oracle's size caps")
        return poly.tolist()
    if isinstance(subj, int):
        return phi_coeffs(subj).tolist()
    return inclusion_exclusion_coeffs(subj).tolist()


def _format_coeffs(coeffs, fmt, header):
    if fmt == "json":
        return json.dumps(coeffs) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow(["index", "value"])
    w.writerows(enumerate(coeffs))
    return buf.getvalue()


def cmd_coeffs(args):
    subj = _subject(args)
    coeffs = _coeff_list(subj, args.use_oracle)
    if args.verify_oracle and not args.use_oracle:
        poly = _oracle_poly(subj)
        if poly is not None and poly.tolist() != coeffs:
            raise ConsistencyError("oracle coefficients disagree")
    text = _format_coeffs(coeffs, args.format, args.header)
    if args.out is None:
        sys.stdout.write(text)
        return
    with open(args.out, "w") as fh:
        fh.write(text)
    _emit(args, {"path": args.out, "length": len(coeffs), "format": args.format})


def cmd_witness(args):
    caps = {"q_cap": args.q_cap, "r_cap": args.r_cap, "p_cap": args.p_cap}
    if args.scan:
        rows = scan_b2_cases(args.h, n_q=args.scan_q, n_r=args.scan_r, n_p=args.scan_p)
        _emit(args, {"scan": rows})
        return
    cert = theorem1_witness(args.h, args.strict_larger_p, method=args.method, **caps)
    result = cert.to_json()
    if args.verify_oracle:
        result.update(_oracle_check(cert.triple, cert.computed_height))
    _emit(args, result)


def _sequence_out(args, rows, fieldnames, payload):
    if args.format == "csv":
        w = csv.DictWriter(sys.stdout, fieldnames=fieldnames, lineterminator="\n")
        if args.header:
            w.writeheader()
        w.writerows(rows)
    else:
        _emit(args, payload)


def cmd_jumpseq(args):
    seq = jump_sequence(tuple(args.triple), args.steps, method=args.method)
    payload = seq.to_json()
    if args.verify_oracle:
        payload["oracle"] = [
            _oracle_check(t.as_tuple(), h) for t, h in [(seq.start, seq.start_height)] + [(s.after, s.height_after) for s in seq.steps]
        ]
    rows = [{"step": 0, "p": seq.start.p, "q": seq.start.q, "r": seq.start.r, "height": seq.start_height, "jumped": ""}]
    for i, s in enumerate(seq.steps, 1):
        rows.append({"step": i, "p": s.after.p, "q": s.after.q, "r": s.after.r, "height": s.height_after, "jumped": int(s.jumped)})
    _sequence_out(args, rows, ["step", "p", "q", "r", "height", "jumped"], payload)


def cmd_chain(args):
    res = prime_chain(tuple(args.triple), args.steps, method=args.method)
    payload = res.to_json()
    if args.verify_oracle:
        payload["oracle"] = [_oracle_check(t.as_tuple(), h) for t, h in res.links]
    rows = [{"step": i, "p": t.p, "q": t.q, "r": t.r, "height": h} for i, (t, h) in enumerate(res.links)]
    _sequence_out(args, rows, ["step", "p", "q", "r", "height"], payload)


def cmd_probe(args):
    res = jump_probe(args.q, args.r, args.s, method=args.method)
    _emit(args, res._asdict())


def cmd_explore(args):
    res = explore_M(args.p, args.q_max, args.r_max, workers=args.workers)
    payload = res.to_json()
    if args.verify_oracle:
        payload["oracle"] = {str(h): _oracle_check(t, h) for h, t in res.witnesses.items()}
    _emit(args, payload)


def _construction_json(c, verify):
    rec = height(c.triple)
    out = {
        "triple": list(c.triple),
        "predicted_height": c.predicted_height,
        "computed_height": rec.height,
        "degree": rec.degree,
        **c.detail,
    }
    if verify:
        out.update(_oracle_check(c.triple.as_tuple(), rec.height))
    return out


def cmd_lemma1(args):
    _emit(args, _construction_json(lemma1_triple(args.p, args.q_cap, args.r_cap), args.verify_oracle))


def cmd_lemma2(args):
    rng = lemma2_range(args.p)
    _emit(args, {"h_min": rng.h_min, "h_max": rng.h_max, "heights": rng.heights})


def cmd_lemma4(args):
    _emit(args, _construction_json(lemma4_triple(args.p, args.k, args.l), args.verify_oracle))


def cmd_core(args):
    red = reduce_to_core(args.n)
    _emit(args, {"n": red.n, "core": red.core, "height_n": red.height_n, "height_core": red.height_core, "same_height": red.same_height})


def cmd_sparse(args):
    s = build_sparse_set(args.xmax)
    if args.trim:
        s = trim_small(s)
    if args.sparse_cmd == "dump":
        for e in s.dump(args.xmax):
            sys.stdout.write(json.dumps(e.to_json(), sort_keys=True) + "\n")
        return
    if args.sparse_cmd == "count":
        x = args.x
        rep = count_P(x, s)
        _emit(args, {
            "x": x,
            "count": rep.count,
            "log_x": rep.log_x,
            "bound_ok": rep.bound_ok,
            "count_qr": rep.count_qr,
            "count_p": rep.count_p,
            "half_log_x": rep.half_log_x,
            "removed": s.removed,
            "covered_to": s.covered_to,
            "failures_up_to_x": check_bound_everywhere(s, x)[:20] if x >= 3 else [],
            "x0_qr": family_threshold(s, "qr", s.covered_to),
            "x0_p": family_threshold(s, "p", s.covered_to),
        })
        return
    rep = check_P_properties(args.m, args.a, s)
    _emit(args, rep.to_json())


# -- parser ----------------------------------------------------------------


def _add_common(p, oracle=True):
    p.add_argument("--verify-oracle", action="store_true", help="cross-check against the slow oracle where sizes allow")
    p.add_argument("--method", choices=["auto", "dense", "stream"], default="auto", help="height evaluation strategy")
    if oracle:
        p.add_argument("--use-oracle", action="store_true", help=argparse.SUPPRESS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cycloheights", description="Heights of cyclotomic and ternary inclusion-exclusion polynomials")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--config", help="JSON file with buffer_budget / ap_cap / sieve_limit / stream_block")
    parser.add_argument("--budget", type=int, help="coefficient buffer budget (overrides config and environment)")
    parser.add_argument("--ap-cap", type=int, help="default cap for prime searches")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, func, helptext in (("height", cmd_height, "height of Phi_n or Q_{p,q,r}"), ("coeffs", cmd_coeffs, "export coefficients")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("n", type=int, nargs="?")
        p.add_argument("--triple", type=int, nargs=3, metavar=("P", "Q", "R"))
        _add_common(p)
        if name == "coeffs":
            p.add_argument("--format", choices=["csv", "json"], default="csv")
            p.add_argument("--out")
            p.add_argument("--header", action="store_true")
        p.set_defaults(func=func)

    p = sub.add_parser("witness", help="prime triple with height h or h+1")
    p.add_argument("h", type=int)
    p.add_argument("--strict-larger-p", action="store_true")
    for cap in ("q", "r", "p"):
        p.add_argument(f"--{cap}-cap", type=int)
    p.add_argument("--scan", action="store_true", help="search for instances of both outcomes instead")
    p.add_argument("--scan-q", type=int, default=2)
    p.add_argument("--scan-r", type=int, default=2)
    p.add_argument("--scan-p", type=int, default=2)
    _add_common(p, oracle=False)
    p.set_defaults(func=cmd_witness)

    for name, func in (("jumpseq", cmd_jumpseq), ("chain", cmd_chain)):
        p = sub.add_parser(name, help=f"{name} from a starting triple")
        p.add_argument("triple", type=int, nargs=3)
        p.add_argument("--steps", type=int, default=3)
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--header", action="store_true")
        _add_common(p, oracle=False)
        p.set_defaults(func=func)

    p = sub.add_parser("probe", help="compare A(q,r,s) with A(q,r,s+qr)")
    for a in ("q", "r", "s"):
        p.add_argument(a, type=int)
    _add_common(p, oracle=False)
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("explore-m", help="all heights A(pqr) over a box of primes")
    p.add_argument("p", type=int)
    p.add_argument("--q-max", type=int, default=60)
    p.add_argument("--r-max", type=int, default=60)
    p.add_argument("--workers", type=int, default=1)
    _add_common(p, oracle=False)
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("lemma1", help="smallest triple q = 2 (mod p), r = (pq+-1)/2 (mod pq)")
    p.add_argument("p", type=int)
    p.add_argument("--q-cap", type=int)
    p.add_argument("--r-cap", type=int)
    _add_common(p, oracle=False)
    p.set_defaults(func=cmd_lemma1)

    p = sub.add_parser("lemma2", help="height range reachable from p")
    p.add_argument("p", type=int)
    p.set_defaults(func=cmd_lemma2)

    p = sub.add_parser("lemma4", help="triple q = 2+(2k+1)p, r = (pq+1)/2 + l*pq")
    for a in ("p", "k", "l"):
        p.add_argument(a, type=int)
    _add_common(p, oracle=False)
    p.set_defaults(func=cmd_lemma4)

    p = sub.add_parser("core", help="odd squarefree core of n with both heights")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_core)

    p = sub.add_parser("sparse", help="sparse prime set")
    ssub = p.add_subparsers(dest="sparse_cmd", required=True)
    d = ssub.add_parser("dump", help="JSON lines of elements up to --xmax")
    d.add_argument("--xmax", type=int, required=True)
    c = ssub.add_parser("count", help="counting function against log x")
    c.add_argument("--x", type=int, required=True)
    k = ssub.add_parser("check", help="check the q, r and p family properties at the generated depth")
    k.add_argument("--m", type=int, required=True)
    k.add_argument("--a", type=int, default=1)
    k.add_argument("--xmax", type=int, default=10**6)
    for s_ in (d, c, k):
        s_.add_argument("--trim", action="store_true", help="apply trim_small first")
    p.set_defaults(func=cmd_sparse)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "sparse_cmd", None) == "count":
        args.xmax = args.x
    try:
        if args.config:
            config.load_config(args.config)
        if args.budget is not None:
            config.set_config(buffer_budget=args.budget)
        if args.ap_cap is not None:
            config.set_config(ap_cap=args.ap_cap)
        args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ResourceError, SearchExhaustedError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ConsistencyError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
