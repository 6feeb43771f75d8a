"""Command line interface.

Every subcommand prints a flat, deterministic text record ("key: value" lines)
on standard output.  Exit codes: 0 for a positive verdict, 1 for a negative
verdict, 2 for usage errors or malformed inputs.
"""

from __future__ import annotations

import argparse
import sys

from . import grading, interleave, monalg, rowen, words


def emit_report(record: dict[str, str]) -> str:
    """Canonical text record: stable field order, one `key: value` line each."""
    return "\n".join(f"{k}: {v}" for k, v in record.items())


def _parse_csv_ints(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.split(",") if t.strip() != "")


def _load_morphism(args) -> tuple[words.Morphism, tuple[int, ...] | None]:
    if not args.spec:
        raise ValueError("--spec is required for this subcommand")
    morphism, file_weights = words.load_morphism_file(args.spec)
    weights = _parse_csv_ints(args.weights) if getattr(args, "weights", None) else file_weights
    return morphism, weights


def _pick_start(morphism: words.Morphism, start: str | None) -> str:
    if start:
        return start
    for c in morphism.alphabet.letters:
        if words.is_prolongable(morphism, c):
            return c
    raise ValueError("morphism is not prolongable on any letter; give --start")


PRIME_MARK = "'"


def _decode_primed(word: str) -> str:
    """CLI spelling x' for the primed companion of x (internally uppercase)."""
    out = []
    for ch in word:
        if ch == PRIME_MARK:
            if not out:
                raise ValueError(f"dangling prime mark in {word!r}")
            out[-1] = interleave.primed_companion(out[-1])
        else:
            out.append(ch)
    return "".join(out)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_analyze(args) -> tuple[int, str]:
    morphism, _ = _load_morphism(args)
    report = words.analyze_morphism(morphism)
    record = {
        "alphabet": ",".join(morphism.alphabet.letters),
        "mortal": ",".join(sorted(report.mortal)),
        "prolongable": ",".join(report.prolongable),
        "primitive": "true" if report.primitive else "false",
        "matrix": ";".join(",".join(str(e) for e in row) for row in report.matrix),
        "det": str(report.det),
    }
    return 0, emit_report(record)


def _cmd_certify(args) -> tuple[int, str]:
    morphism, weights = _load_morphism(args)
    if weights is None:
        raise ValueError("weights required (either in the spec file or via --weights)")
    start = _pick_start(morphism, args.start)
    cert = grading.certify_graded_nilpotence(
        morphism, start, weights, gcd_terms=args.jmax, horizon=args.horizon, u=args.u
    )
    return (0 if cert.certified else 1), emit_report(cert.to_record())


def _cmd_scan(args) -> tuple[int, str]:
    morphism, weights = _load_morphism(args)
    if weights is None:
        raise ValueError("weights required (either in the spec file or via --weights)")
    start = _pick_start(morphism, args.start)
    stream = words.MorphicStream(morphism, start)
    horizons = _parse_csv_ints(args.horizons)
    report = grading.graded_nilpotence_scan(stream, weights, args.dmax, horizons)
    return (1 if report.flagged else 0), emit_report(report.to_record())


def _cmd_word(args) -> tuple[int, str]:
    morphism, _ = _load_morphism(args)
    start = _pick_start(morphism, args.start)
    return 0, words.fixed_point_prefix(morphism, start, args.length)


def _make_view(args) -> monalg.AlgebraView:
    kind = args.view
    if kind == "word":
        morphism, _ = _load_morphism(args)
        start = _pick_start(morphism, args.start)
        return monalg.WordFactorView(words.MorphicStream(morphism, start), args.horizon)
    if kind == "tilde":
        spec = interleave.InterleaveSpec(
            words.MorphicStream(interleave.base_morphism(), interleave.BASE_START),
            interleave.UniversalSequence(),
        )
        return monalg.WordFactorView(interleave.InterleaveStream(spec), args.horizon)
    if kind == "cubes":
        if not args.letters:
            raise ValueError("--letters is required for the cubes view")
        return monalg.cube_ideal_view(tuple(args.letters))
    if kind == "free":
        if not args.letters:
            raise ValueError("--letters is required for the free view")
        return monalg.FreeView(tuple(args.letters))
    raise ValueError(f"unknown view {kind!r}")


def _cmd_free(args) -> tuple[int, str]:
    view = _make_view(args)
    if not args.gens:
        raise ValueError("--gens is required: semicolon-separated polynomial literals")
    gens = []
    for literal in args.gens.split(";"):
        decoded = []
        compact = "".join(literal.split())
        for term in compact.split("+"):
            if "*" not in term:
                raise ValueError(f"bad term {term!r}")
            coeff, word = term.split("*", 1)
            decoded.append(f"{coeff}*{_decode_primed(word)}")
        gens.append(monalg.parse_poly_literal(view, " + ".join(decoded)))
    report = monalg.freeness_check(view, gens, args.Lfree)
    return (0 if report.independent else 1), emit_report(report.to_record())


def _cmd_theorem32(args) -> tuple[int, str]:
    report = interleave.construction_pipeline(
        horizon=args.horizon, free_pattern_length=args.Lfree, d_max=args.dmax
    )
    return (0 if report.all_clear else 1), emit_report(report.to_record())


def _cmd_rowen(args) -> tuple[int, str]:
    tm = rowen.ThueMorseSequence()
    record: dict[str, str] = {
        "truncation": str(args.N),
        "horizon": str(args.horizon),
        "margin": str(args.margin),
    }
    ok = True

    substitution_prefix = rowen.tm_word_stream().prefix(args.horizon)
    bits_prefix = tm.word_prefix(args.horizon)
    bits_ok = substitution_prefix == bits_prefix
    record["bits_match_substitution"] = "true" if bits_ok else "false"
    record["word_prefix_16"] = tm.word_prefix(16)
    ok &= bits_ok

    for side in ("a", "b"):
        result = rowen.nilpotency_index(1, side, args.N, margin=args.margin)
        record[f"nilpotency_index_{side}"] = str(result.index)
        record[f"nilpotency_stable_{side}"] = "true" if result.stable else "false"
        ok &= result.stable

    if args.word:
        letters = args.word.translate(str.maketrans("ab", "yx"))
        mat = rowen.evaluate_word(letters, args.N, margin=args.margin)
        record["word"] = args.word
        record["word_zero"] = "true" if mat.is_zero() else "false"
        record["word_band"] = str(len(letters))
        record["word_nonzero_entries"] = str(mat.nnz())
        agree = rowen.vanishing_matches_factor(letters, args.N, args.horizon, margin=args.margin)
        record["word_matches_factor_rule"] = "true" if agree else "false"
        ok &= agree
    else:
        scan = rowen.correspondence_scan(args.maxlen, args.N, args.horizon, margin=args.margin)
        record["correspondence_max_len"] = str(scan.max_len)
        record["correspondence_checked"] = str(scan.checked)
        record["correspondence_mismatches"] = str(len(scan.mismatches))
        ok &= scan.all_agree

    return (0 if ok else 1), emit_report(record)


def _cmd_growth(args) -> tuple[int, str]:
    stream = words.PeriodicStream(args.periodic) if args.periodic else None
    profile = rowen.growth_profile(_parse_csv_ints(args.nvalues), args.horizon, stream=stream)
    return (0 if profile.quadratic else 1), emit_report(profile.to_record())


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wordalg",
        description="Graded nilpotence certificates, freeness checks and growth profiles "
        "for monomial algebras built from infinite words.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_spec(p, weights=True):
        p.add_argument("--spec", help="morphism spec file")
        p.add_argument("--start", help="start letter (defaults to the first prolongable letter)")
        if weights:
            p.add_argument("--weights", help="comma-separated positive letter weights")

    p = sub.add_parser("analyze", help="morphism report: mortality, prolongability, primitivity, matrix, det")
    add_spec(p, weights=False)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("certify", help="graded-nilpotence certificate for a weighted morphic word")
    add_spec(p)
    p.add_argument("--u", help="explicit decomposition prefix (defaults to the shortest one found)")
    p.add_argument("--jmax", type=int, default=grading.DEFAULT_GCD_TERMS, help="gcd sequence length cap")
    p.add_argument("--horizon", type=int, default=grading.DEFAULT_DECOMPOSITION_HORIZON)
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("scan", help="longest-AP table of the weight-sum set per difference and horizon")
    add_spec(p)
    p.add_argument("--dmax", type=int, default=6)
    p.add_argument("--horizons", default="10000,100000", help="comma-separated increasing horizons")
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("word", help="print a prefix of the fixed point")
    add_spec(p, weights=False)
    p.add_argument("--length", type=int, required=True)
    p.set_defaults(func=_cmd_word)

    p = sub.add_parser("free", help="freeness check of generator polynomials in a monomial algebra view")
    add_spec(p, weights=False)
    p.add_argument("--view", choices=("word", "tilde", "cubes", "free"), default="word")
    p.add_argument("--letters", help="alphabet letters for the cubes/free views")
    p.add_argument("--gens", help="semicolon-separated polynomial literals, e.g. \"1*x + 1*y;1*x' + 1*y'\"")
    p.add_argument("--Lfree", type=int, default=4, help="maximum pattern length")
    p.add_argument("--horizon", type=int, default=100_000)
    p.set_defaults(func=_cmd_free)

    p = sub.add_parser("theorem32", help="full pipeline: certify the base word, interleave, scan, freeness")
    p.add_argument("--horizon", type=int, default=1_000_000)
    p.add_argument("--Lfree", type=int, default=5)
    p.add_argument("--dmax", type=int, default=6)
    p.set_defaults(func=_cmd_theorem32)

    p = sub.add_parser("rowen", help="Thue-Morse operator checks: identities, nilpotency, vanishing")
    p.add_argument("--N", type=int, default=4096, help="truncation size")
    p.add_argument("--horizon", type=int, default=100_000)
    p.add_argument("--maxlen", type=int, default=8, help="word length cap for the correspondence scan")
    p.add_argument("--margin", type=int, default=rowen.DEFAULT_MARGIN)
    p.add_argument("--word", help="single word over {a,b} to evaluate instead of the full scan")
    p.set_defaults(func=_cmd_rowen)

    p = sub.add_parser("growth", help="cumulative factor counts with the quadratic-band check")
    p.add_argument("--nvalues", default="64,128,256")
    p.add_argument("--horizon", type=int, default=100_000)
    p.add_argument("--periodic", help="use this periodic word instead of the Thue-Morse word")
    p.set_defaults(func=_cmd_growth)

    return parser


def run(argv=None) -> int:
    """Parse arguments, execute, print the report; return the exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code, text = args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
