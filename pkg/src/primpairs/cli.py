"""Command-line front end.

    primpairs count  --p 5 --alpha 0 --poly "x+1"
    primpairs verify --p 7 --alpha 0 --poly "x+1"
    primpairs sweep  --p-range 5..200 --alpha 0 --poly "x+1" --format csv
    primpairs weil   --p 31 --poly "x^3+x+1"
    primpairs exists --p 7 --poly "x+1"

Exit status: 0 everything held, 1 usage error, 2 hypothesis violation,
3 a verification failed (a bug signal).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field as dc_field
from typing import Any, Optional, Sequence

from . import bounds
from .counting import (
    DECOMPOSITION_MAX_P,
    HypothesisError,
    VerificationError,
    count_bruteforce,
    count_decomposition,
    make_instance,
    search_existence,
)
from .field import MAX_FIELD_PRIME, build_field, PrimeField
from .numtheory import primes_between
from .poly import MAX_DEGREE, Polynomial

log = logging.getLogger("primpairs")

EXIT_OK, EXIT_USAGE, EXIT_HYPOTHESIS, EXIT_VERIFY = 0, 1, 2, 3

THEOREM_HEADER = [
    "p", "alpha", "poly", "k", "r_f", "omega", "phi",
    "exact", "main_term", "error_bound", "theta", "holds",
]


class PolySyntaxError(ValueError):
    def __init__(self, message: str, spec: str, position: int):
        super().__init__(f"{message} at position {position}: {spec!r}")
        self.position = position


class UsageError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<x>x)|(?P<op>[-+*^]))")


def parse_poly_terms(spec: str) -> dict[int, int]:
    """Parse ``c``, ``x``, ``c*x``, ``x^e``, ``c*x^e`` terms joined by ``+``/``-``.

    Returns integer coefficients by exponent, like terms combined, unreduced.
    """
    tokens = []
    pos = 0
    while pos < len(spec):
        if not spec[pos:].strip():
            break
        m = _TOKEN.match(spec, pos)
        if not m:
            bad = len(spec) - len(spec[pos:].lstrip())
            raise PolySyntaxError(f"unexpected character {spec[bad]!r}", spec, bad)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    if not tokens:
        raise PolySyntaxError("empty polynomial", spec, 0)

    terms: dict[int, int] = {}
    i = 0

    def peek(kind: str, value: Optional[str] = None) -> bool:
        return i < len(tokens) and tokens[i][0] == kind and (value is None or tokens[i][1] == value)

    def where() -> int:
        return tokens[i][2] if i < len(tokens) else len(spec)

    first = True
    while i < len(tokens):
        sign = 1
        if peek("op", "+") or peek("op", "-"):
            sign = -1 if tokens[i][1] == "-" else 1
            i += 1
        elif not first:
            raise PolySyntaxError("expected '+' or '-'", spec, where())
        first = False
        coef, exp = 1, 0
        if peek("int"):
            coef = int(tokens[i][1])
            i += 1
            if peek("op", "*"):
                i += 1
                if not peek("x"):
                    raise PolySyntaxError("expected 'x' after '*'", spec, where())
            elif not peek("x"):
                terms[0] = terms.get(0, 0) + sign * coef
                continue
            else:
                raise PolySyntaxError("expected '*' between coefficient and x", spec, where())
        if peek("x"):
            i += 1
            exp = 1
            if peek("op", "^"):
                i += 1
                if not peek("int"):
                    raise PolySyntaxError("expected exponent after '^'", spec, where())
                exp = int(tokens[i][1])
                i += 1
        else:
            raise PolySyntaxError("expected a term", spec, where())
        terms[exp] = terms.get(exp, 0) + sign * coef
    if any(e > MAX_DEGREE for e, c in terms.items() if c):
        raise UsageError(f"degree exceeds the cap of {MAX_DEGREE}: {spec!r}")
    return terms


def reduce_terms(terms: dict[int, int], p: int) -> Polynomial:
    coeffs = [0] * (max(terms, default=0) + 1)
    for e, c in terms.items():
        coeffs[e] += c
    return Polynomial.from_ints(coeffs, p)


def parse_poly(spec: str, field: PrimeField) -> Polynomial:
    """Parse a polynomial and reduce it mod p; constants are rejected."""
    f = reduce_terms(parse_poly_terms(spec), field.p)
    if f.degree < 1:
        raise UsageError(f"{spec!r} reduces to a constant mod {field.p}")
    return f


def parse_range(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(\d+)\s*\.\.\s*(\d+)\s*", text)
    if not m:
        raise UsageError(f"bad range {text!r}; expected LO..HI")
    lo, hi = int(m.group(1)), int(m.group(2))
    if not 3 <= lo <= hi <= MAX_FIELD_PRIME:
        raise UsageError(f"range must satisfy 3 <= lo <= hi <= {MAX_FIELD_PRIME}")
    return lo, hi


@dataclass
class RunConfig:
    command: str
    p: Optional[int] = None
    p_range: Optional[tuple[int, int]] = None
    alphas: list[int] = dc_field(default_factory=lambda: [0])
    poly_specs: list[str] = dc_field(default_factory=lambda: ["x+1"])
    output_format: str = "json"
    output_path: Optional[str] = None
    parallelism: int = 1
    allow_inadmissible: bool = False


@dataclass
class Report:
    command: str
    rows: list[dict[str, Any]]
    header: list[str]
    extra: dict[str, Any] = dc_field(default_factory=dict)
    status: int = EXIT_OK


def _num(x: float) -> float:
    return float(f"{x:.12g}")


def _clean(row: dict[str, Any]) -> dict[str, Any]:
    out = {}
    for key, val in row.items():
        if isinstance(val, complex):
            out[f"{key}_re"] = _num(val.real)
            out[f"{key}_im"] = _num(val.imag)
        elif isinstance(val, float):
            out[key] = _num(val)
        elif hasattr(val, "item"):
            out[key] = val.item()
        else:
            out[key] = val
    return out


def theorem_row(rep: bounds.TheoremReport) -> dict[str, Any]:
    return _clean({
        "p": rep.p, "alpha": rep.alpha, "poly": rep.f_description, "k": rep.k, "r_f": rep.r_f,
        "omega": rep.omega_pm1, "phi": rep.phi_pm1, "exact": rep.exact_count,
        "main_term": rep.main_term, "error_bound": rep.error_bound, "theta": rep.theta,
        "holds": rep.theorem_holds,
    })


def record_row(rec: bounds.BoundCheckRecord) -> dict[str, Any]:
    row = asdict(rec)
    row["strict_holds"] = rec.strict_holds
    return _clean(row)


def _prime(p: int) -> PrimeField:
    try:
        return build_field(p)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _instance(field: PrimeField, alpha: int, spec: str, allow: bool):
    return make_instance(field, alpha, parse_poly(spec, field), allow_inadmissible=allow)


def run_count(cfg: RunConfig) -> Report:
    field = _prime(cfg.p)
    rows, status = [], EXIT_OK
    header = ["p", "alpha", "poly", "k", "r_f", "exact", "main_term", "decomposition_total",
              "term_s1_re", "term_s1_im", "term_zero_correction_re", "term_zero_correction_im",
              "term_s2_re", "term_s2_im", "term_s12_re", "term_s12_im", "match"]
    for alpha in cfg.alphas:
        for spec in cfg.poly_specs:
            inst = _instance(field, alpha, spec, cfg.allow_inadmissible)
            exact = count_bruteforce(inst)
            row: dict[str, Any] = {"p": field.p, "alpha": alpha, "poly": str(inst.f), "k": inst.k,
                                   "r_f": inst.r_f, "exact": exact, "main_term": bounds.main_term(inst)}
            if field.p <= DECOMPOSITION_MAX_P:
                d = count_decomposition(inst)
                ok = bounds.decomposition_matches(exact, d)
                row.update(decomposition_total=d.total, term_s1=d.term_s1,
                           term_zero_correction=d.term_zero_correction,
                           term_s2=d.term_s2, term_s12=d.term_s12, match=ok)
                if not ok:
                    log.error("decomposition %.9f != exact %d for %s", d.total, exact, row)
                    status = EXIT_VERIFY
            else:
                log.warning("p > %d: decomposition skipped", DECOMPOSITION_MAX_P)
            if not inst.admissibility.admissible:
                status = max(status, EXIT_HYPOTHESIS)
            rows.append(_clean(row))
    return Report("count", rows, header, status=status)


def run_verify(cfg: RunConfig) -> Report:
    field = _prime(cfg.p)
    rows, records, status = [], [], EXIT_OK
    for alpha in cfg.alphas:
        for spec in cfg.poly_specs:
            inst = _instance(field, alpha, spec, cfg.allow_inadmissible)
            exact = count_bruteforce(inst)
            rep = bounds.verify_theorem(inst, exact)
            rows.append(theorem_row(rep))
            if rep.near_boundary:
                log.warning("theta within tolerance of 1 for %s; not decided", rep)
            ok = rep.theorem_holds
            if inst.admissibility.admissible and field.p <= DECOMPOSITION_MAX_P:
                d = count_decomposition(inst)
                ok &= bounds.decomposition_matches(exact, d)
                recs = bounds.verify_claims(inst, d) + bounds.verify_chain(inst, exact, d)
                for r in recs:
                    if r.holds and not r.strict_holds:
                        log.info("finding: %s within +1 slack but over the strict bound", r.lemma_id)
                ok &= all(r.holds for r in recs)
                records.extend({"p": field.p, "alpha": alpha, "poly": str(inst.f), **record_row(r)} for r in recs)
            if not ok:
                status = EXIT_VERIFY
            elif not inst.admissibility.admissible:
                status = max(status, EXIT_HYPOTHESIS)
    return Report("verify", rows, THEOREM_HEADER, extra={"claims": records}, status=status)


def _sweep_prime(args: tuple[int, list[int], list[str]]) -> tuple[list[dict[str, Any]], list[str]]:
    p, alphas, specs = args
    field = build_field(p)
    rows, skipped = [], []
    for alpha in alphas:
        for spec in specs:
            try:
                f = reduce_terms(parse_poly_terms(spec), p)
                if f.degree < 1:
                    raise HypothesisError("reduces to a constant")
                if f.degree >= p:
                    raise HypothesisError(f"degree {f.degree} >= p")
                inst = make_instance(field, alpha, f)
            except HypothesisError as exc:
                skipped.append(f"p={p} alpha={alpha} poly={spec}: {exc}")
                continue
            rows.append(theorem_row(bounds.verify_theorem(inst)))
    return rows, skipped


def run_sweep(cfg: RunConfig) -> Report:
    lo, hi = cfg.p_range
    for spec in cfg.poly_specs:
        parse_poly_terms(spec)
    tasks = [(p, cfg.alphas, cfg.poly_specs) for p in primes_between(max(lo, 3), hi)]
    if cfg.parallelism > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.parallelism) as pool:
            results = list(pool.map(_sweep_prime, tasks, chunksize=max(1, len(tasks) // (8 * cfg.parallelism))))
    else:
        results = [_sweep_prime(t) for t in tasks]
    rows = [r for rs, _ in results for r in rs]
    skipped = [s for _, ss in results for s in ss]
    for s in skipped:
        log.warning("skipped %s", s)
    rows.sort(key=lambda r: (r["p"], r["alpha"], r["poly"]))
    status = EXIT_OK if all(r["holds"] for r in rows) else EXIT_VERIFY
    return Report("sweep", rows, THEOREM_HEADER, extra={"skipped": skipped}, status=status)


def run_weil(cfg: RunConfig) -> Report:
    field = _prime(cfg.p)
    fs = [parse_poly(spec, field) for spec in cfg.poly_specs]
    grid, skipped = bounds.weil_grid(field, fs)
    rows = []
    for chi, f, rec in grid:
        rows.append({"p": field.p, "chi": chi.a, "order": chi.order, "poly": str(f), "k": int(f.degree),
                     **record_row(rec)})
        if rec.holds and not rec.strict_holds:
            log.info("finding: chi_%d on %s exceeds the strict Weil bound over F_p^*", chi.a, f)
    for s in skipped:
        log.info("skipped %s", s)
    header = ["p", "chi", "order", "poly", "k", "lemma_id", "branch", "lhs", "rhs", "strict_rhs",
              "slack", "holds", "strict_holds"]
    status = EXIT_OK if all(r["holds"] for r in rows) else EXIT_VERIFY
    return Report("weil", rows, header, extra={"skipped": skipped}, status=status)


def run_exists(cfg: RunConfig) -> Report:
    field = _prime(cfg.p)
    rows = []
    for spec in cfg.poly_specs:
        f = parse_poly(spec, field)
        xi = search_existence(field, f)
        rows.append({"p": field.p, "poly": str(f), "xi": xi, "found": xi is not None})
    return Report("exists", rows, ["p", "poly", "xi", "found"])


COMMANDS = {"count": run_count, "verify": run_verify, "sweep": run_sweep, "weil": run_weil, "exists": run_exists}


def run(cfg: RunConfig) -> Report:
    return COMMANDS[cfg.command](cfg)


def _csv_cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        doc = {"command": report.command, "rows": report.rows, **report.extra, "exit_status": report.status}
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(report.header)
        for row in report.rows:
            w.writerow([_csv_cell(row.get(h)) for h in report.header])
        return buf.getvalue()
    cols = [h for h in report.header if any(h in r for r in report.rows)] or report.header
    cells = [[_csv_cell(r.get(h)) for h in cols] for r in report.rows]
    widths = [max([len(h)] + [len(c[i]) for c in cells]) for i, h in enumerate(cols)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(cols, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells]
    for rec in report.extra.get("claims", []):
        lines.append(f"  {rec['lemma_id']:<7} lhs={rec['lhs']:<14.6g} rhs={rec['rhs']:<14.6g} "
                     f"{'ok' if rec['holds'] else 'FAIL'}  {rec.get('detail') or rec.get('branch') or ''}")
    return "\n".join(lines) + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha", type=int, action="append", help="exponent alpha (repeatable; default 0)")
    common.add_argument("--poly", action="append", help='polynomial such as "x^2+1" (repeatable; default x+1)')
    common.add_argument("--format", choices=["json", "csv", "table"], default="json")
    common.add_argument("--output", help="write the report to this file instead of stdout")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = _Parser(prog="primpairs", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, helptext in [
        ("count", "exact and character-sum counts"),
        ("verify", "theorem report plus claim checks"),
        ("weil", "Weil bound records for every non-principal character"),
        ("exists", "smallest xi with xi and f(xi) both primitive roots"),
    ]:
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("--p", type=int, required=True)
        if name in ("count", "verify"):
            sp.add_argument("--allow-inadmissible", action="store_true",
                            help="report even when f violates the hypotheses (exit status 2)")
    sp = sub.add_parser("sweep", parents=[common], help="theorem report for every prime in a range")
    sp.add_argument("--p-range", required=True, help="inclusive range LO..HI")
    sp.add_argument("--parallelism", "-j", type=int, default=1)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s: %(message)s")
    try:
        cfg = RunConfig(
            command=args.command,
            p=getattr(args, "p", None),
            p_range=parse_range(args.p_range) if args.command == "sweep" else None,
            alphas=args.alpha or [0],
            poly_specs=args.poly or ["x+1"],
            output_format=args.format,
            output_path=args.output,
            parallelism=max(1, getattr(args, "parallelism", 1)),
            allow_inadmissible=getattr(args, "allow_inadmissible", False),
        )
        report = run(cfg)
    except HypothesisError as exc:
        print(f"hypothesis violation: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (UsageError, PolySyntaxError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    text = render(report, cfg.output_format)
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return report.status


if __name__ == "__main__":
    sys.exit(main())
