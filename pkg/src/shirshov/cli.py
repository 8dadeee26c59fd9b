"""Command-line entry point.

Every subcommand builds a plain dict report; the renderer turns it into JSON
(default), CSV or text.  Exit codes: 0 success, 1 usage error, 2 a checker
found a counterexample, 3 a search or enumeration refused its budget.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from shirshov import bounds, reports
from shirshov.chains import (
    b_set_trace,
    build_tail_poset,
    chain_cover,
    check_basic_lemma_psi,
    max_antichain,
    phi_measure,
    psi_measure,
    tail_chain_cover,
)
from shirshov.divisibility import (
    LemmaStatus,
    check_lemma_2_10,
    is_n_cancellable,
    max_ordinary_divisibility,
    max_tail_divisibility,
    p_nd,
)
from shirshov.enumeration import latyshev_check, longest_avoider, verify_finiteness, xi
from shirshov.errors import BudgetExceeded, UsageError
from shirshov.height import essential_height, height_decompose, run_algorithm_5_1
from shirshov.periodicity import check_lemma_2_6, check_lemma_2_7, extract_division_from_copies, find_power
from shirshov.process import max_process_length, process_bound
from shirshov.words import Word

EXIT_OK, EXIT_USAGE, EXIT_COUNTEREXAMPLE, EXIT_BUDGET = 0, 1, 2, 3
LEMMAS = ("2-6", "2-7", "2-9", "2-10", "3-4", "4-8", "4-10", "5-3")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _n_or_none(text: str) -> int | None:
    if text.lower() in ("none", "inf", "off"):
        return None
    return _positive(text)


def _common(p: argparse.ArgumentParser, word: bool = False) -> None:
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--out", type=Path, help="write the report here instead of stdout")
    if word:
        p.add_argument("--word", help="letters a..z, or [i,j,...] for larger alphabets")
        p.add_argument("--word-file", type=Path, help="read the word from a file")
        p.add_argument("--alphabet", type=_positive, help="alphabet size (default: 26, or enough for the letters)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="shirshov", description="Divisibility, periodicity and height experiments on words.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("divide", help="maximal n-division with witness")
    _common(p, word=True)
    p.add_argument("--sense", choices=("ordinary", "tail"), default="ordinary")

    p = sub.add_parser("power", help="shortest-period d-th power")
    _common(p, word=True)
    p.add_argument("--d", type=int, required=True)

    p = sub.add_parser("cancel", help="n-cancellability verdict")
    _common(p, word=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--d", type=int, required=True)

    p = sub.add_parser("lemma", help="run one lemma checker on a word or a seeded random sweep")
    _common(p, word=True)
    p.add_argument("which", choices=LEMMAS)
    for name in ("n", "d", "k", "t", "a"):
        p.add_argument(f"--{name}", type=_positive)
    p.add_argument("--u", help="repeated block for 2-9")
    p.add_argument("--random", type=_positive, metavar="COUNT", help="check COUNT random words instead")
    p.add_argument("--length", type=_positive, help="length of random words")
    p.add_argument("--letters", type=_positive, default=2, help="alphabet size of random words")
    p.add_argument("--seed", type=int, help="required with --random")
    p.add_argument("--threads", type=_positive, default=1)

    p = sub.add_parser("chains", help="tail poset, minimum chain cover and maximum antichain")
    _common(p, word=True)
    p.add_argument("--d", type=_positive, default=1)

    p = sub.add_parser("trace-b", help="colour trace B^p and its longest constant run")
    _common(p, word=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--d", type=_positive, required=True)
    p.add_argument("--p", type=_positive, required=True)

    p = sub.add_parser("process", help="longest one-hot process sequence")
    _common(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("bounds", help="evaluate a closed-form bound, or compare them")
    _common(p)
    p.add_argument("--which", choices=tuple(bounds.EVALUATORS) + ("compare",), required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--d", type=_positive)
    p.add_argument("--l", type=_positive, default=1)
    p.add_argument("--precision-bits", type=_positive)

    p = sub.add_parser("height", help="fewest-factor decomposition into powers of short words")
    _common(p, word=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("essential", help="essential height")
    _common(p, word=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("algorithm51", help="repeated removal of periodic fragments")
    _common(p, word=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-steps", type=_nonnegative, default=10 ** 6)
    p.add_argument("--min-length", type=_nonnegative, default=0)

    p = sub.add_parser("xi", help="permutations avoiding a decreasing subsequence of length n")
    _common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    for name, helptext in (("search", "longest avoider by exhaustive search"),
                           ("verify", "exhaustive maximum against the power bound")):
        p = sub.add_parser(name, help=helptext)
        _common(p)
        p.add_argument("--l", type=_positive, required=True)
        p.add_argument("--n", type=_n_or_none, default=None, help="divisibility threshold, or none")
        p.add_argument("--d", type=int, required=True)
        p.add_argument("--sense", choices=("ordinary", "tail"), default="ordinary")
        p.add_argument("--cap", type=_positive, default=64)
        p.add_argument("--max-nodes", type=_positive, default=10 ** 7)
        if name == "search":
            p.add_argument("--checkpoint", type=Path, help="resume from this checkpoint file")
    return parser


# --- helpers ---------------------------------------------------------------


def _read_word(args) -> Word:
    if args.word is not None and args.word_file is not None:
        raise UsageError("give either --word or --word-file, not both")
    if args.word_file is not None:
        try:
            text = args.word_file.read_text().strip()
        except OSError as exc:
            raise UsageError(f"cannot read {args.word_file}: {exc}") from None
    elif args.word is not None:
        text = args.word
    else:
        raise UsageError("a word is required (--word or --word-file)")
    return Word.parse(text, args.alphabet)


def _need(args, *names: str) -> None:
    missing = [f"--{x}" for x in names if getattr(args, x, None) is None]
    if missing:
        raise UsageError(f"{args.command} {getattr(args, 'which', '')} needs {', '.join(missing)}".replace("  ", " "))


def _word_header(w: Word) -> dict:
    return {"word": reports.word_out(w), "alphabet": w.alphabet.size, "length": len(w)}


# --- subcommands ---------------------------------------------------------


def cmd_divide(args) -> tuple[dict, int]:
    w = _read_word(args)
    if not len(w):
        raise UsageError("the word must be nonempty")
    out = _word_header(w) | {"sense": args.sense}
    if args.sense == "ordinary":
        n, div = max_ordinary_divisibility(w)
        out |= {"n_max": n} | reports.division_out(div, w)
    else:
        n, div = max_tail_divisibility(w)
        out |= {"n_max": n} | reports.tail_division_out(div, w)
    return out, EXIT_OK


def cmd_power(args) -> tuple[dict, int]:
    w = _read_word(args)
    found = find_power(w, args.d)
    return _word_header(w) | {"d": args.d, "found": found is not None, "power": reports.power_out(found)}, EXIT_OK


def cmd_cancel(args) -> tuple[dict, int]:
    w = _read_word(args)
    v = is_n_cancellable(w, args.n, args.d)
    return _word_header(w) | {"n": args.n, "d": args.d} | reports.verdict_out(v, w), EXIT_OK


def _lemma_row(which: str, w: Word, params: dict) -> tuple[dict, bool]:
    """Check one word; return the report row and whether it is a counterexample."""
    n, d, k, t, a = (params.get(x) for x in "ndkta")
    row = _word_header(w)
    if which == "2-6":
        r = check_lemma_2_6(w, d)
        bad = not r.holds or (r.power is not None and not r.power.validate(w))
        row |= {"comparable": r.comparable, "power": reports.power_out(r.power),
                "incomparable_pair": list(r.incomparable_pair) if r.incomparable_pair else None}
    elif which == "2-7":
        distinct = len({w.letters[i:i + k] for i in range(len(w) - k + 1)})
        r = check_lemma_2_7(w, k, t)
        applies = distinct <= k and t >= 2
        bad = applies and (r is None or not r.validate(w) or r.exponent < t)
        row |= {"k": k, "t": t, "distinct_factors": distinct, "applies": applies, "power": reports.power_out(r)}
    elif which == "2-9":
        u = Word.parse(params["u"], w.alphabet.size)
        v = extract_division_from_copies(w, u, n, d)
        bad = not v.validate(w, n=n if v.division else None)
        row |= {"u": reports.word_out(u), "n": n, "d": d} | reports.verdict_out(v, w)
    elif which == "2-10":
        r = check_lemma_2_10(w, n, d)
        bad = r.status is LemmaStatus.COUNTEREXAMPLE
        row |= {"n": n, "d": d, "status": r.status.value, "tail_divisibility": r.tail_divisibility,
                "threshold": r.threshold}
        if r.verdict is not None:
            row |= reports.verdict_out(r.verdict, w)
    elif which == "3-4":
        r = check_basic_lemma_psi(w, n, d, a, k)
        bad = not r.satisfied and r.within_hypotheses
        row |= {"n": n, "d": d, "a": a, "k": k, "psi_a": r.psi_a, "psi_ka": r.psi_ka, "bound": r.bound,
                "satisfied": r.satisfied, "within_hypotheses": r.within_hypotheses}
    elif which in ("4-8", "4-10"):
        r = phi_measure(w, n, d=d)
        if r is None:
            row |= {"n": n, "status": "vacuous"}
            return row, False
        if which == "4-8":
            ok = r.lemma_4_8
        else:
            ok = all(r.lemma_4_10.values())
        bad = not ok and r.within_hypotheses
        row |= {"n": n, "m": r.m, "representatives": [reports.word_out(x) for x in r.representatives],
                "phi": {str(x): y for x, y in r.phi.items()}, "holds": ok,
                "within_hypotheses": r.within_hypotheses}
        if which == "4-10":
            row["checks"] = {f"{x}x{y}": v for (x, y), v in r.lemma_4_10.items()}
            if r.lemma_4_10_pnd is not None:
                row["checks_with_pnd"] = {f"{x}x{y}": v for (x, y), v in r.lemma_4_10_pnd.items()}
    else:  # 5-3
        tr = run_algorithm_5_1(w, n)
        reinserted = tr.reinsert() == w
        bad = not (reinserted and tr.piece_bound_holds() and tr.weighted_bound_holds())
        row |= {"n": n, "steps": len(tr.steps), "t": tr.t,
                "s_counts": {str(x): y for x, y in sorted(tr.s_counts().items())},
                "reinserted": reinserted, "piece_bound_holds": tr.piece_bound_holds(),
                "weighted_bound_holds": tr.weighted_bound_holds()}
    row["status"] = "COUNTEREXAMPLE" if bad else "ok"
    return row, bad


_REQUIRED = {
    "2-6": ("d",), "2-7": ("k", "t"), "2-9": ("n", "d", "u"), "2-10": ("n", "d"),
    "3-4": ("n", "d", "a", "k"), "4-8": ("n",), "4-10": ("n",), "5-3": ("n",),
}


def _lemma_task(item):
    which, letters, size, params = item
    return _lemma_row(which, Word.of(letters, size), params)


def cmd_lemma(args) -> tuple[dict, int]:
    _need(args, *_REQUIRED[args.which])
    params = {x: getattr(args, x) for x in ("n", "d", "k", "t", "a", "u")}
    if args.which == "2-6" and args.d < 2:
        raise UsageError("2-6 needs d >= 2")
    if args.random is None:
        row, bad = _lemma_row(args.which, _read_word(args), params)
        return {"lemma": args.which} | row, EXIT_COUNTEREXAMPLE if bad else EXIT_OK

    if args.seed is None:
        raise UsageError("--seed is mandatory for random sweeps")
    if args.which == "2-9":
        raise UsageError("2-9 needs a chosen block u; random sweeps are not supported")
    length = args.k * args.t if args.which == "2-7" else args.length
    if length is None:
        raise UsageError("--length is required with --random")
    rng = random.Random(args.seed)
    tasks = [
        (args.which, tuple(rng.randrange(args.letters) for _ in range(length)), args.letters, params)
        for _ in range(args.random)
    ]
    if args.threads > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            results = list(pool.map(_lemma_task, tasks, chunksize=max(1, len(tasks) // (4 * args.threads))))
    else:
        results = [_lemma_task(x) for x in tasks]
    statuses: dict[str, int] = {}
    for row, _ in results:
        statuses[row["status"]] = statuses.get(row["status"], 0) + 1
    bad = [row for row, flag in results if flag]
    report = {
        "lemma": args.which, "seed": args.seed, "count": args.random, "length": length,
        "letters": args.letters, "statuses": statuses, "counterexamples": bad,
    }
    return report, EXIT_COUNTEREXAMPLE if bad else EXIT_OK


def cmd_chains(args) -> tuple[dict, int]:
    w = _read_word(args)
    tp = build_tail_poset(w, args.d)
    cover = chain_cover(tp.poset)
    anti = max_antichain(tp.poset)
    return _word_header(w) | {
        "d": args.d,
        "omega": len(tp.positions),
        "relations": [list(x) for x in tp.poset.pairs()],
        "cover": reports.cover_out(cover),
        "antichain": list(anti),
        "dilworth_equal": cover.count == len(anti),
    }, EXIT_OK


def cmd_trace_b(args) -> tuple[dict, int]:
    w = _read_word(args)
    cover = tail_chain_cover(w, args.d)
    trace = b_set_trace(w, args.n, args.d, args.p, cover)
    return _word_header(w) | {
        "colours_allowed": p_nd(args.n, args.d),
        "trace": reports.trace_out(trace),
        "psi": psi_measure(trace) if trace.entries else None,
    }, EXIT_OK


def cmd_process(args) -> tuple[dict, int]:
    bound = process_bound(args.p, args.k)
    L, witness = max_process_length(args.p, args.k)
    return {"p": args.p, "k": args.k, "max_length": L, "bound": bound, "gap": bound - L,
            "witness": reports.process_out(witness)}, EXIT_OK


def cmd_bounds(args) -> tuple[dict, int]:
    if args.which == "compare":
        r = bounds.compare_bounds(args.n, args.l, bits=args.precision_bits)
        return {
            "n": args.n, "l": args.l, "precision_bits": r.bits,
            "values": {k: reports.bound_out(v) for k, v in r.values.items()},
            "orders": {f"{a} vs {b}": v for (a, b), v in r.orders.items()},
        }, EXIT_OK
    value = bounds.evaluate(args.which, args.n, args.l, args.d, bits=args.precision_bits)
    return {"which": args.which, "n": args.n, "d": args.d, "l": args.l, "exact": value.is_exact,
            "value": reports.bound_out(value), "text": str(value)}, EXIT_OK


def cmd_height(args) -> tuple[dict, int]:
    w = _read_word(args)
    return _word_header(w) | reports.height_out(height_decompose(w, args.n)), EXIT_OK


def cmd_essential(args) -> tuple[dict, int]:
    w = _read_word(args)
    return _word_header(w) | {"n": args.n, "essential_height": essential_height(w, args.n)}, EXIT_OK


def cmd_algorithm51(args) -> tuple[dict, int]:
    w = _read_word(args)
    tr = run_algorithm_5_1(w, args.n, args.max_steps, args.min_length)
    return _word_header(w) | reports.removal_out(tr) | {"reinserted": tr.reinsert() == w}, EXIT_OK


def cmd_xi(args) -> tuple[dict, int]:
    return {"k": args.k, "n": args.n, "xi": xi(args.k, args.n), "latyshev": latyshev_check(args.k, args.n),
            "text": str(xi(args.k, args.n))}, EXIT_OK


def cmd_search(args) -> tuple[dict, int]:
    checkpoint = None
    if args.checkpoint is not None:
        try:
            data = json.loads(args.checkpoint.read_text())
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot load checkpoint {args.checkpoint}: {exc}") from None
        checkpoint = reports.checkpoint_in(data.get("checkpoint", data))
    r = longest_avoider(args.l, args.n, args.d, args.sense, args.cap, args.max_nodes, checkpoint=checkpoint)
    return {"l": args.l, "n": args.n, "d": args.d, "sense": args.sense, "alphabet": args.l,
            "cap": args.cap} | reports.search_out(r), EXIT_OK


def cmd_verify(args) -> tuple[dict, int]:
    r = verify_finiteness(args.l, args.n, args.d, args.sense, args.cap, args.max_nodes)
    return {
        "l": args.l, "n": args.n, "d": args.d, "sense": args.sense, "alphabet": args.l,
        "max_length": r.max_length, "witness": reports.word_out(r.witness),
        "psi_arguments": list(r.psi_arguments),
        "psi_log3": reports.bound_out(r.psi_log3), "psi_log2": reports.bound_out(r.psi_log2),
        "holds": r.holds, "gap_ratio": r.gap_ratio(),
    }, EXIT_OK if r.holds else EXIT_COUNTEREXAMPLE


COMMANDS = {
    "divide": cmd_divide, "power": cmd_power, "cancel": cmd_cancel, "lemma": cmd_lemma,
    "chains": cmd_chains, "trace-b": cmd_trace_b, "process": cmd_process, "bounds": cmd_bounds,
    "height": cmd_height, "essential": cmd_essential, "algorithm51": cmd_algorithm51, "xi": cmd_xi,
    "search": cmd_search, "verify": cmd_verify,
}


# --- rendering -------------------------------------------------------------


def _cell(value) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, separators=(",", ":"))
    if value is None:
        return ""
    return str(value)


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    if fmt == "csv":
        # a sweep lists its counterexamples; a clean sweep falls back to its summary row
        rows = report.get("counterexamples") or [report]
        buf = io.StringIO()
        keys = list(rows[0])
        writer = csv.DictWriter(buf, fieldnames=keys, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _cell(row.get(k)) for k in keys})
        return buf.getvalue()
    if "text" in report:
        return report["text"] + "\n"
    return "".join(f"{k}: {_cell(v)}\n" for k, v in report.items())


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    started = time.perf_counter()
    try:
        body, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"shirshov {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"shirshov {args.command}: refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    report = {"schema": reports.SCHEMA, "command": args.command} | body
    report["elapsed_seconds"] = round(time.perf_counter() - started, 6)
    text = render(report, args.format)
    if args.out is not None:
        try:
            args.out.write_text(text)
        except OSError as exc:
            print(f"shirshov: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
