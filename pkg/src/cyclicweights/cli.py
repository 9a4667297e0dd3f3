"""Command-line front end: one subcommand per capability.

Exit codes: 0 success, 1 usage error, 2 failed precondition or cap,
3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import logging
import math
import os
import sys

from .bounds import METHODS, BugTrap, bound_report
from .codes import (
    CapExceeded,
    build_code,
    make_spec,
    num_nonzero_weights,
    weight_distribution,
)
from .orbits import GROUP_NAMES, burnside_count, orbit_count, parse_group
from .search import SearchConfig, audit_spec, run_search, write_csv, write_jsonl
from .zn import cyclotomic_cosets

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_BUG = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _int_range(text: str) -> list[int]:
    """``5``, ``3-31`` or mixtures like ``3-9,15,21``."""
    out = []
    for part in text.replace(" ", "").split(","):
        if not part:
            continue
        try:
            if "-" in part[1:]:
                a, b = part.split("-", 1)
                out.extend(range(int(a), int(b) + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad range {part!r}") from None
    return out


def _tau(text: str) -> float:
    if text.lower() in ("inf", "infinity"):
        return math.inf
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad threshold {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common.add_argument("--cap", type=int, help="enumeration cap in codewords (default: CWB_CAP or built-in)")
    common.add_argument("-v", "--verbose", action="store_true")

    one = _Parser(add_help=False)
    one.add_argument("--q", type=int, required=True)
    one.add_argument("--n", type=int, required=True)

    code = _Parser(add_help=False, parents=[one])
    code.add_argument("--cosets", type=_int_list, required=True, help="comma-separated coset members")

    p = _Parser(prog="cyclicweights", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    sub.add_parser("cosets", parents=[common, one], help="q-cyclotomic cosets mod n")
    sub.add_parser("code-info", parents=[common, code], help="generator/check polynomials and matrix")
    sub.add_parser("weights", parents=[common, code], help="exact weight distribution")
    sub.add_parser("bound", parents=[common, code], help="every closed-form bound")
    g = sub.add_parser("orbits", parents=[common, code], help="orbit partition of the nonzero codewords")
    g.add_argument("--group", default="auto", help=f"auto, {', '.join(GROUP_NAMES)} or a list like rho,sigma,mu_-2")
    g.add_argument("--burnside", action="store_true", help="also count orbits by Burnside")
    sub.add_parser("compare", parents=[common, code], help="bounds against both oracles")
    s = sub.add_parser("search", parents=[common], help="sweep (q, n, cosets) and stream records")
    s.add_argument("--q", type=_int_list, required=True, help="comma-separated field sizes")
    s.add_argument("--n", type=_int_range, required=True, help="lengths, e.g. 3-31 or 7,9,15")
    s.add_argument("--odd-only", action="store_true", help="drop even lengths")
    s.add_argument("--max-cosets", type=int, choices=(1, 2), default=1)
    s.add_argument("--tau", type=_tau, default=math.inf, help="keep codes whose best bound is at most this")
    s.add_argument("--verify", action="store_true", help="enumerate weights and orbits when within the cap")
    s.add_argument("--orbit-check", action="store_true", help="with --verify, cross-check orbits by Burnside")
    return p


# -- subcommands ---------------------------------------------------------------


def _spec(args):
    return make_spec(args.q, args.n, args.cosets)


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def cmd_cosets(args) -> str:
    cs = cyclotomic_cosets(args.n, args.q)
    if args.format == "json":
        return _dump({"q": args.q, "n": args.n, "cosets": [{"rep": c.rep, "size": c.size, "elements": list(c.elements)} for c in cs]})
    if args.format == "csv":
        return _csv([("rep", "size", "elements")] + [(c.rep, c.size, " ".join(map(str, c.elements))) for c in cs])
    lines = [f"{len(cs)} cyclotomic cosets of {args.q} mod {args.n}"]
    lines += [f"  {c.rep:>4}  k={c.size:<3} {c}" for c in cs]
    return "\n".join(lines) + "\n"


def cmd_code_info(args) -> str:
    spec = _spec(args)
    code = build_code(spec)
    info = {
        "spec": spec.to_json(),
        "dimension": code.k,
        "coset_sizes": [c.size for c in spec.coset_objects],
        "construction_field": f"GF({code.big.p}^{code.big.degree})",
        "generator_poly": list(code.generator_poly),
        "check_poly": list(code.check_poly),
        "generator_matrix": code.generator_matrix.tolist(),
    }
    if args.format == "json":
        return _dump(info)
    if args.format == "csv":
        return _csv(code.generator_matrix.tolist())
    lines = [
        f"{spec}: [{code.n},{code.k}] code over GF({code.q})",
        f"  cosets     {', '.join(str(c) for c in spec.coset_objects)}",
        f"  built in   {info['construction_field']}",
        f"  g(x)       {' '.join(map(str, code.generator_poly))}  (low degree first)",
        f"  h(x)       {' '.join(map(str, code.check_poly))}",
        "  generator matrix:",
    ]
    lines += ["    " + " ".join(map(str, row)) for row in code.generator_matrix.tolist()]
    return "\n".join(lines) + "\n"


def cmd_weights(args) -> str:
    code = build_code(_spec(args))
    dist = weight_distribution(code, threads=args.threads, cap=args.cap)
    if args.format == "json":
        return _dump(dist.to_json())
    if args.format == "csv":
        return dist.to_csv()
    lines = [f"{code.spec}: {num_nonzero_weights(dist)} nonzero weights", f"  {dist.polynomial()}", "  weight  count"]
    lines += [f"  {w:>6}  {c}" for w, c in sorted(dist.as_dict().items())]
    return "\n".join(lines) + "\n"


def cmd_bound(args) -> str:
    rep = bound_report(_spec(args))
    if args.format == "json":
        return _dump(rep.to_json())
    if args.format == "csv":
        rows = [("method", "applicable", "value", "reason")]
        rows += [(m, str(r.applicable).lower(), "" if r.value is None else r.value, r.reason or "") for m, r in rep.entries.items()]
        return _csv(rows)
    name, val = rep.best
    lines = [f"{rep.spec}"]
    for m in METHODS:
        r = rep.entries[m]
        if r.applicable:
            extra = "  " + " ".join(f"{k}={v}" for k, v in sorted(r.params.items())) if r.params else ""
            lines.append(f"  {m:<22} {r.value}{extra}")
        else:
            lines.append(f"  {m:<22} n/a ({r.reason})")
    lines.append(f"  best: {name} = {val}")
    return "\n".join(lines) + "\n"


def cmd_orbits(args) -> str:
    spec = _spec(args)
    group = bound_report(spec).strongest_group() if args.group == "auto" else args.group
    gens = parse_group(group, spec.q.q, spec.n)
    code = build_code(spec)
    part = orbit_count(code, gens, cap=args.cap)
    burn = burnside_count(code, gens) if args.burnside else None
    if burn is not None and burn != part.count:
        raise AssertionError(f"Burnside count {burn} differs from enumeration {part.count}")
    if args.format == "json":
        out = part.to_json()
        if burn is not None:
            out["burnside"] = burn
        return _dump(out)
    if args.format == "csv":
        return _csv([("weight", "size", "representative")] + [(o.weight, o.size, o.rep_hex()) for o in part.orbits])
    lines = [f"{spec}: {part.count} orbits under <{', '.join(part.group)}> (order {part.group_order})"]
    if burn is not None:
        lines.append(f"  Burnside count {burn}")
    lines += [f"  weight {o.weight:>3}  size {o.size:>6}  rep {o.rep_hex()}" for o in part.orbits]
    return "\n".join(lines) + "\n"


def cmd_compare(args) -> str:
    audit = audit_spec(_spec(args), threads=args.threads, cap=args.cap)
    tight = audit.l == audit.best_bound
    if args.format == "json":
        out = audit.to_json()
        out["tight"] = tight
        return _dump(out)
    if args.format == "csv":
        rows = [("method", "group", "formula", "enumerated", "burnside")]
        rows += [(m.method, m.group, m.formula, m.enumerated, m.burnside) for m in audit.methods]
        return _csv(rows)
    chain = " <= ".join([f"l={audit.l}"] + [f"{m.method}={m.formula}" for m in sorted(audit.methods, key=lambda m: m.formula)])
    verdict = "TIGHT" if tight else "NOT TIGHT"
    text = audit.summary() + f"  {chain}\n  {verdict} (best {audit.best_method}={audit.best_bound})\n"
    if not audit.ok:
        raise AssertionError("formula and oracle disagree:\n" + text)
    return text


def cmd_search(args, out) -> None:
    ns = [n for n in args.n if n % 2] if args.odd_only else args.n
    cfg = SearchConfig(
        q_values=tuple(args.q),
        n_values=tuple(ns),
        max_cosets=args.max_cosets,
        tau=args.tau,
        verify=args.verify,
        orbit_check=args.orbit_check,
        threads=args.threads,
        cap=args.cap,
    )
    records = run_search(cfg)
    if args.format == "json":
        write_jsonl(records, out)
    elif args.format == "csv":
        write_csv(records, out)
    else:
        out.write(f"{'q':>3} {'n':>3}  {'cosets':<10} {'dim':>3}  {'best':>5} {'method':<22} {'l':>3}  tight\n")
        for r in records:
            ell = "" if r.l is None else r.l
            tight = "" if r.tight is None else ("yes" if r.tight else "no")
            cos = ",".join(map(str, r.cosets))
            out.write(f"{r.q:>3} {r.n:>3}  {cos:<10} {r.dim:>3}  {r.best_bound:>5} {r.method:<22} {ell:>3}  {tight}\n")
            out.flush()


COMMANDS = {
    "cosets": cmd_cosets,
    "code-info": cmd_code_info,
    "weights": cmd_weights,
    "bound": cmd_bound,
    "orbits": cmd_orbits,
    "compare": cmd_compare,
}


@contextlib.contextmanager
def _sink(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.cmd == "search":
            with _sink(args.out) as out:
                cmd_search(args, out)
        else:
            text = COMMANDS[args.cmd](args)
            with _sink(args.out) as out:
                out.write(text)
    except BrokenPipeError:
        # reader went away (e.g. piped into head)
        sys.stderr.close()
        return EXIT_OK
    except CapExceeded as exc:
        print(f"error: {exc}; try the bound subcommand instead", file=sys.stderr)
        return EXIT_PRECONDITION
    except (BugTrap, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_BUG
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
