"""Command-line front end.

Every command prints a deterministic ``key = value`` report.  Exit codes:
0 success, 1 parse/IO error, 2 precondition violated, 3 enumeration bound
exceeded under ``--require-finite``.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .abelian import generator_orders, invariant_factors
from .adjan_rabin import build_Pw
from .enumeration import DEFAULT_MAX_COSETS, enumerate_cosets
from .errors import (
    AdjanRabinError,
    BadExponent,
    Condition21NotSatisfied,
    EmptyTuple,
    GcdNotOne,
    IllegalMove,
    InconsistentVerdict,
    InvalidCertificate,
    NotSolvable,
    ParseError,
)
from .freebasis import nielsen_reduce
from .handles import (
    Verdict,
    build_markov_complex,
    orient,
    predict_boundary,
    replay_slides,
    slide_reduce,
    slide_tuple,
)
from .presentations import (
    Presentation,
    check_condition_21,
    collapse_certificate,
    parse_presentation,
    render_presentation,
)
from .quotients import Free, CyclicFreeProduct, hom_count, wp_cyclic_free_product
from .words import Word, parse_word, render

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_BOUND = 0, 1, 2, 3

PRECONDITION_ERRORS = (
    Condition21NotSatisfied,
    GcdNotOne,
    EmptyTuple,
    BadExponent,
    InvalidCertificate,
    InconsistentVerdict,
    IllegalMove,
    NotSolvable,
)


class Report:
    def __init__(self):
        self.sections: list[list[str]] = [[]]
        self.exit_code = EXIT_OK

    def add(self, key: str, value) -> None:
        self.sections[-1].append(f"{key} = {value}")

    def raw(self, line: str) -> None:
        self.sections[-1].append(line)

    def section(self) -> None:
        if self.sections[-1]:
            self.sections.append([])

    def text(self) -> str:
        blocks = ["\n".join(s) for s in self.sections if s]
        return "\n\n".join(blocks) + "\n" if blocks else ""


def _read_presentation(path: str) -> Presentation:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_presentation(text)


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ParseError(f"expected comma-separated integers, got {text!r}") from None


def _cyclic_orders(text: str) -> list[int]:
    out = []
    for x in text.split(","):
        x = x.strip().lower()
        if x in ("inf", "free", "0"):
            out.append(Free)
        else:
            try:
                out.append(int(x))
            except ValueError:
                raise ParseError(f"bad cyclic order {x!r}") from None
    return out


def _fmt_orders(orders) -> str:
    return " ".join(str(q) for q in orders)


def _h1(P: Presentation) -> str:
    f = invariant_factors(P)
    return " ".join(map(str, f)) if f else "trivial"


def detect_cyclic_product(P: Presentation) -> CyclicFreeProduct | None:
    """Recognise ``<x_1..x_n | x_i^q_i ...>`` with at most one power relator per generator."""
    orders = {g: Free for g in P.generators}
    for r in P.relators:
        gens = r.generators()
        if len(gens) != 1:
            return None
        (g,) = gens
        if orders[g] != Free:
            return None
        q = abs(len(r))
        if q < 2:
            return None
        orders[g] = q
    return CyclicFreeProduct(tuple(orders[g] for g in P.generators), P.generators)


# -- commands -----------------------------------------------------------------


def cmd_check21(args, rep: Report) -> None:
    P = _read_presentation(args.file)
    orders = generator_orders(P)
    rep.add("gens", " ".join(P.generators))
    rep.add("orders", _fmt_orders(orders))
    cert = check_condition_21(P)
    if cert is None:
        rep.add("condition21", "not-satisfied")
        rep.exit_code = EXIT_PRECONDITION
        return
    _certificate_lines(rep, P, cert)


def _certificate_lines(rep: Report, P: Presentation, cert) -> None:
    rep.add("condition21", "satisfied")
    rep.add("cert.generators", " ".join(P.generators[i] for i in cert.indices))
    rep.add("cert.orders", _fmt_orders(cert.orders))
    rep.add("cert.q", cert.q_max)
    rep.add("cert.bezout", _fmt_orders(cert.bezout))
    col = collapse_certificate(cert)
    rep.add("collapse.squares", _fmt_orders(col.squared_orders))
    rep.add("collapse.bezout", _fmt_orders(col.bezout_sq))


def _word(args, P: Presentation) -> Word:
    return parse_word(args.word or "", P.generators)


def cmd_build_qw(args, rep: Report) -> None:
    P = _read_presentation(args.file)
    out = build_Pw(P, _word(args, P))
    for line in out.reindexing.lines():
        rep.raw(f"# {line}")
    rep.raw(render_presentation(out.Q_w).rstrip("\n"))


def cmd_build_pw(args, rep: Report) -> None:
    P = _read_presentation(args.file)
    out = build_Pw(P, _word(args, P))
    for line in out.reindexing.lines():
        rep.raw(f"# {line}")
    for step in out.elimination_log:
        rep.raw(f"# {step.line()}")
    rep.raw(render_presentation(out.P_w).rstrip("\n"))


def cmd_enumerate(args, rep: Report) -> None:
    P = _read_presentation(args.file)
    res = enumerate_cosets(P, args.max_cosets, args.strategy)
    rep.raw(str(res.outcome))
    rep.add("cosets.defined", res.stats.defined)
    rep.add("coincidences", res.stats.coincidences)
    if args.require_finite and not res.finite:
        rep.exit_code = EXIT_BOUND


def cmd_homcount(args, rep: Report) -> None:
    P = _read_presentation(args.file)
    for t in args.target or ["s3"]:
        rep.add(f"homcount.{t}", hom_count(P, t, jobs=args.jobs))


def cmd_wp_oracle(args, rep: Report) -> None:
    if not args.cyclic:
        raise ParseError("--cyclic is required")
    prod = CyclicFreeProduct(tuple(_cyclic_orders(args.cyclic)))
    w = parse_word(args.word or "", prod.generators)
    v = wp_cyclic_free_product(prod, w)
    rep.add("wp.oracle", v)
    rep.add("wp.normal_form", render(v.normal_form) or "1")


def cmd_slides(args, rep: Report) -> None:
    if args.tuple:
        values = _ints(args.tuple)
    elif args.file:
        values = list(slide_tuple(_read_presentation(args.file)))
    else:
        raise ParseError("give --tuple or a presentation file")
    oriented, flipped = orient(values)
    rep.add("tuple", ",".join(map(str, oriented)))
    if flipped:
        rep.add("reoriented", " ".join(map(str, flipped)))
    seq = slide_reduce(oriented)
    final = replay_slides(seq)
    rep.add("subtractions", seq.subtract_count)
    rep.add("final", ",".join(map(str, final)))
    rep.section()
    rep.raw(seq.serialize().rstrip("\n"))


def cmd_markov(args, rep: Report) -> None:
    P = _read_presentation(args.file)
    cx = build_markov_complex(P, args.reduced)
    rep.raw(cx.report())
    verdict = _verdict_by_enumeration(args, P, rep) if args.enumerate else Verdict.UNKNOWN
    rep.section()
    rep.add("verdict", verdict.value)
    rep.raw(predict_boundary(cx, verdict).report())


def _verdict_by_enumeration(args, P: Presentation, rep: Report) -> Verdict:
    res = enumerate_cosets(P, args.max_cosets, args.strategy)
    rep.add("enumerate", res.outcome)
    if args.require_finite and not res.finite:
        rep.exit_code = EXIT_BOUND
    if res.finite:
        return Verdict.PROVED_TRIVIAL if res.outcome.order == 1 else Verdict.PROVED_NONTRIVIAL
    return Verdict.UNKNOWN


def cmd_pipeline(args, rep: Report) -> None:
    P = _read_presentation(args.file)
    w = _word(args, P)
    rep.add("seed.gens", P.n)
    rep.add("seed.rels", P.m)
    rep.add("word", render(w) or "1")
    rep.section()
    cert = check_condition_21(P)
    if cert is None:
        rep.add("condition21", "not-satisfied")
        rep.exit_code = EXIT_PRECONDITION
        return
    _certificate_lines(rep, P, cert)
    out = build_Pw(P, w, cert)
    rep.section()
    rep.add("qw.gens", out.Q_w.n)
    rep.add("qw.rels", out.Q_w.m)
    rep.add("qw.length", out.Q_w.total_length())
    rep.add("pw.gens", out.P_w.n)
    rep.add("pw.rels", out.P_w.m)
    rep.add("pw.length", out.P_w.total_length())
    nr = nielsen_reduce(list(out.U))
    rep.add("u.size", len(out.U))
    rep.add("u.basis", "yes" if nr.is_basis else "no")
    rep.add("u.rank", nr.rank)
    rep.add("pw.abelianization", _h1(out.P_w))
    rep.section()
    nontrivial_quotient = False
    for t in args.target or ["s3"]:
        cq = hom_count(out.Q_w, t, jobs=args.jobs)
        cp = hom_count(out.P_w, t, jobs=args.jobs)
        rep.add(f"homcount.{t}.qw", cq)
        rep.add(f"homcount.{t}.pw", cp)
        nontrivial_quotient |= cp > 1
    prod = None
    if args.cyclic:
        prod = CyclicFreeProduct(tuple(_cyclic_orders(args.cyclic)), P.generators)
    else:
        prod = detect_cyclic_product(P)
    wp = None
    if prod is not None:
        wp = wp_cyclic_free_product(prod, w)
        rep.add("wp.oracle", wp)
    else:
        rep.add("wp.oracle", "unavailable")
    verdict = Verdict.UNKNOWN
    if wp is not None:
        # P_w presents the trivial group exactly when w = 1 in the seed
        verdict = Verdict.PROVED_TRIVIAL if wp.trivial else Verdict.PROVED_NONTRIVIAL
    elif nontrivial_quotient:
        verdict = Verdict.PROVED_NONTRIVIAL
    if args.enumerate:
        rep.section()
        ev = _verdict_by_enumeration(args, out.P_w, rep)
        if ev != Verdict.UNKNOWN:
            if verdict != Verdict.UNKNOWN and ev != verdict:
                raise InconsistentVerdict(f"enumeration says {ev.value}, oracle says {verdict.value}")
            verdict = ev
    if args.markov:
        rep.section()
        cx = build_markov_complex(out.P_w, reduced=True)
        rep.raw(cx.report().splitlines()[0])
        rep.raw(cx.report().splitlines()[1])
        rep.add("verdict", verdict.value)
        rep.raw(predict_boundary(cx, verdict).report())
        values, _ = orient(slide_tuple(out.P_w))
        rep.add("slides.tuple", ",".join(map(str, values)))
        if verdict == Verdict.PROVED_TRIVIAL:
            seq = slide_reduce(values)
            rep.add("slides.subtractions", seq.subtract_count)
            rep.add("slides.final", ",".join(map(str, replay_slides(seq))))


COMMANDS = {
    "check21": cmd_check21,
    "build-qw": cmd_build_qw,
    "build-pw": cmd_build_pw,
    "enumerate": cmd_enumerate,
    "homcount": cmd_homcount,
    "slides": cmd_slides,
    "wp-oracle": cmd_wp_oracle,
    "markov": cmd_markov,
    "pipeline": cmd_pipeline,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="adjanrabin", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report to this path as well")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for hom-counting")

    enum_opts = argparse.ArgumentParser(add_help=False)
    enum_opts.add_argument("--max-cosets", type=int, default=DEFAULT_MAX_COSETS)
    enum_opts.add_argument("--strategy", choices=["hlt", "felsch"], default="hlt")
    enum_opts.add_argument("--require-finite", action="store_true")

    targets = argparse.ArgumentParser(add_help=False)
    targets.add_argument("--target", action="append", choices=["s3", "a4", "s4", "s5"], help="repeatable")

    def add(name, parents, help, file=True, file_optional=False):
        p = sub.add_parser(name, parents=[common, *parents], help=help)
        if file:
            p.add_argument("file", nargs="?" if file_optional else None)
        return p

    add("check21", [], "check the coprime-orders condition and print its certificate")
    add("build-qw", [], "print Q_w").add_argument("--word", default="")
    add("build-pw", [], "print P_w with its elimination log").add_argument("--word", default="")
    add("enumerate", [enum_opts], "Todd-Coxeter enumeration over the trivial subgroup")
    add("homcount", [targets], "count homomorphisms into small permutation groups")
    p = add("slides", [], "reduce a tuple to (1,0,...,0) by handle slides", file_optional=True)
    p.add_argument("--tuple")
    p = add("wp-oracle", [], "word problem in a free product of cyclic groups", file=False)
    p.add_argument("--cyclic", required=True)
    p.add_argument("--word", default="")
    p = add("markov", [enum_opts], "handle complex for W_P (or W'_P with --reduced)")
    p.add_argument("--reduced", action="store_true")
    p.add_argument("--enumerate", action="store_true", help="decide triviality by coset enumeration")
    p = add("pipeline", [enum_opts, targets], "seed + word -> P_w with every check")
    p.add_argument("--word", default="")
    p.add_argument("--cyclic", help="seed orders for the word-problem oracle (auto-detected otherwise)")
    p.add_argument("--enumerate", action="store_true")
    p.add_argument("--markov", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    rep = Report()
    try:
        COMMANDS[args.command](args, rep)
    except PRECONDITION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (AdjanRabinError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    text = rep.text()
    sys.stdout.write(text)
    if getattr(args, "out", None):
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
            return EXIT_PARSE
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
