"""Command-line surface tying the library together.

Every command prints deterministic text (fractional bits to three decimals,
halves away from zero).  Exit codes: 0 success, 2 input or parse error,
3 domain error (the error class name goes to stderr).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import alignment as al
from . import codecs, hierarchy, machines, setnum
from .errors import DomainError, IcmupError, InputFormatError
from .patterns import (PatternKind, SPPattern, SPSymbol, load_grammar,
                       raw_cost, render, tokenize)
from .reporting import RunReport, file_digest, format_bits


def _read_text(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _mode(args) -> str:
    return "chars" if getattr(args, "chars", False) else "whitespace"


def _corpus_alphabet(symbols) -> int:
    return len({s.text for s in symbols})


def cmd_compress(args) -> int:
    text = _read_text(args.corpus)
    symbols = tokenize(text, _mode(args))
    report = RunReport("compress", {args.corpus: file_digest(args.corpus)})
    if not symbols:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(codecs.stream_to_json(codecs.EncodedStream(
                codecs.ChunkDictionary(), ())))
        unit = "chunks" if args.mode == "chunk" else "runs"
        print(f"mode={args.mode} symbols=0 alphabet=0 {unit}=0")
        print("raw_bits=0.000 encoded_bits=0.000 ratio=1.000")
        if args.report:
            report.write(args.report)
        return 0
    alphabet = _corpus_alphabet(symbols)
    raw = raw_cost(symbols, alphabet)
    if args.mode == "chunk":
        dictionary = codecs.discover_chunks(symbols, args.min_len, args.min_count)
        stream = codecs.chunk_encode(symbols, dictionary)
        encoded = codecs.encoded_cost_bits(stream, alphabet)
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(codecs.stream_to_json(stream))
        print(f"mode=chunk symbols={len(symbols)} alphabet={alphabet} "
              f"chunks={len(dictionary)}")
        for entry in dictionary:
            print(f"{entry.code} count={entry.count} len={len(entry.chunk)}")
        report.details = {"mode": "chunk",
                          "chunks": [{"code": e.code, "count": e.count,
                                      "len": len(e.chunk)} for e in dictionary]}
    else:
        runs = codecs.rle_encode(symbols)
        encoded = codecs.rle_cost_bits(runs, alphabet)
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(codecs.runs_to_json(runs))
        print(f"mode=rle symbols={len(symbols)} alphabet={alphabet} "
              f"runs={len(runs)}")
        for run in runs:
            print(f"{run.pattern.id} count={run.count} len={len(run.pattern)}")
        report.details = {"mode": "rle", "runs": len(runs)}
    report.raw_bits = raw
    report.encoded_bits = encoded
    ratio = encoded / raw if raw > 0 else 1.0
    print(f"raw_bits={format_bits(raw)} encoded_bits={format_bits(encoded)} "
          f"ratio={format_bits(ratio)}")
    if args.report:
        report.write(args.report)
    return 0


def cmd_decompress(args) -> int:
    text = _read_text(args.stream)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"stream file is not valid JSON: {exc}") from None
    if isinstance(doc, dict) and "runs" in doc:
        symbols = codecs.rle_decode(codecs.runs_from_json(text))
    else:
        symbols = codecs.chunk_decode(codecs.stream_from_json(text))
    rendered = ("".join(s.text for s in symbols) if args.chars
                else render(symbols))
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(rendered + ("\n" if rendered else ""))
    print(f"symbols={len(symbols)}")
    return 0


def _new_pattern(args, field: str) -> SPPattern:
    raw = getattr(args, field)
    symbols = tokenize(raw, _mode(args))
    if not symbols:
        raise InputFormatError(f"--{field} needs at least one symbol")
    return SPPattern(field, tuple(symbols), kind=PatternKind.NEW)


def _print_alignment(index: int, alignm, prob: float) -> None:
    rows = ",".join(r.id for r in alignm.old_rows) or "(none)"
    print(f"alignment={index} cd={format_bits(alignm.compression_difference)} "
          f"p={format_bits(prob)} rows={rows} hits={alignm.hit_count()}")
    print(al.dump_columns(alignm))
    print(f"parse: {al.parse_render(alignm)}")


def cmd_align(args) -> int:
    store = load_grammar(args.grammar)
    new = _new_pattern(args, "new")
    ranking = al.build_alignments(new, store, beam=args.beam,
                                  max_old_rows=args.max_rows)
    top = list(ranking.alignments[:args.top])
    probs = al.alignment_probabilities(top)
    for i, (alignm, p) in enumerate(zip(top, probs), start=1):
        if i > 1:
            print()
        _print_alignment(i, alignm, p)
    if args.report:
        best = top[0]
        report = RunReport("align", {args.grammar: file_digest(args.grammar)},
                           raw_bits=raw_cost(new, al.default_alphabet(new, store)),
                           encoded_bits=best.encoding_cost,
                           details={"top": [
                               {"rows": [r.id for r in a.old_rows],
                                "cd": a.compression_difference,
                                "p": p}
                               for a, p in zip(top, probs)]})
        report.write(args.report)
    return 0


def cmd_parse(args) -> int:
    store = load_grammar(args.grammar)
    new = _new_pattern(args, "new")
    ranking = al.build_alignments(new, store, beam=args.beam,
                                  max_old_rows=args.max_rows)
    print(al.parse_render(ranking.best))
    return 0


def cmd_retrieve(args) -> int:
    store = load_grammar(args.grammar)
    query = _new_pattern(args, "query")
    for pid, cd in al.retrieve(query, store, args.top):
        print(f"{pid}\t{format_bits(cd)}")
    return 0


def cmd_table(args) -> int:
    table = machines.load_table(args.table, name=args.table)
    inputs = [SPSymbol(v) for v in args.inputs.split(",") if v]
    if args.diag:
        selection = machines.score_rows(table, inputs)
        counts = ",".join(str(c) for c in selection.match_counts)
        selected = selection.best_row + 1 if selection.full_match else "-"
        print(f"selected_row={selected} matches={counts}")
    outputs = machines.eval_table(table, inputs)
    print(" ".join(f"{col}={sym.text}"
                   for col, sym in zip(table.output_cols, outputs)))
    return 0


def cmd_circuit(args) -> int:
    circuit = machines.load_circuit(args.circuit)
    if args.compile:
        table = machines.compile_truth_table(circuit)
        print("\t".join([f"in:{c}" for c in table.input_cols]
                        + [f"out:{c}" for c in table.output_cols]))
        for row_in, row_out in table.rows:
            print("\t".join(s.text for s in row_in + row_out))
        return 0
    if not args.inputs:
        raise InputFormatError("need --in name=value,... or --compile")
    assignment = {}
    for item in args.inputs.split(","):
        name, eq, value = item.partition("=")
        if not eq:
            raise InputFormatError(f"bad assignment {item!r}")
        assignment[name] = value
    result = machines.eval_circuit(circuit, assignment)
    print(" ".join(f"{k}={v}" for k, v in result.items()))
    return 0


def cmd_tm(args) -> int:
    machine = machines.load_tm(args.machine)
    cells = {}
    for i, ch in enumerate(args.tape):
        if ch not in "01":
            raise InputFormatError("tape must be a string of 0s and 1s")
        cells[i] = int(ch)
    result = machines.tm_run(machine, cells, args.head, args.state,
                             args.max_steps)
    state = result.state
    positions = set(state.cells) | {state.head}
    lo, hi = min(positions), max(positions)
    tape = "".join(str(state.read(p)) for p in range(lo, hi + 1))
    print(f"halted={'true' if result.halted else 'false'} state={state.state} "
          f"steps={state.steps} attempts={result.attempts} head={state.head}")
    print(f"tape[{lo}..{hi}]={tape}")
    return 0


def _set_arg(text: str) -> list[SPSymbol]:
    return tokenize(text, "whitespace")


def _render_set(symbols) -> str:
    return "{" + ", ".join(s.text for s in symbols) + "}"


def cmd_sets(args) -> int:
    if args.op == "toset":
        print(_render_set(setnum.multiset_to_set(_set_arg(args.a))))
        return 0
    a, b = _set_arg(args.a), _set_arg(args.b or "")
    if args.op == "union":
        print(_render_set(setnum.set_union(a, b)))
    else:
        print(_render_set(setnum.set_intersection(a, b)))
    return 0


def cmd_unary(args) -> int:
    op = args.op
    if op in ("add", "sub", "mul"):
        a = setnum.UnaryNumber(args.a)
        b = setnum.UnaryNumber(args.b)
        fn = {"add": setnum.unary_add, "sub": setnum.unary_subtract,
              "mul": setnum.unary_multiply}[op]
        result, trace = fn(a, b)
        label = {"add": "transfers", "sub": "removals",
                 "mul": "add_iterations"}[op]
        print(f"result={result.count} {label}={trace.step_count}")
        print(f"unary={result.render()}")
    elif op == "div":
        q, r, trace = setnum.unary_divide(setnum.UnaryNumber(args.a),
                                          setnum.UnaryNumber(args.b))
        print(f"quotient={q.count} remainder={r.count} "
              f"subtract_iterations={trace.step_count}")
        print(f"unary={q.render()}")
    elif op == "pow":
        result, trace = setnum.unary_power(setnum.UnaryNumber(args.a), args.b)
        print(f"result={result.count} multiply_iterations={trace.step_count}")
        print(f"unary={result.render()}")
    elif op == "fact":
        result, trace = setnum.unary_factorial(args.a)
        print(f"result={result.count} steps={trace.step_count}")
        print(f"unary={result.render()}")
    elif op in ("sum", "prod"):
        values = [int(v) for v in args.terms.split(",")]
        terms = {i: v for i, v in zip(range(args.lo, args.hi + 1), values)}
        fn = setnum.bounded_sum if op == "sum" else setnum.bounded_product
        result, trace = fn(terms, args.lo, args.hi)
        print(f"result={result.count} iterations={trace.step_count}")
        print(f"unary={result.render()}")
    else:  # pragma: no cover - argparse restricts choices
        raise InputFormatError(f"unknown unary op {op!r}")
    if args.trace:
        print(trace.dump())
    return 0


def cmd_peano(args) -> int:
    p = setnum.to_peano(args.n)
    print(p.render())
    if args.m is not None:
        q = setnum.to_peano(args.m)
        print(q.render())
        print(f"shared_depth={setnum.peano_shared_depth(p, q)}")
    return 0


def cmd_base(args) -> int:
    if args.decode:
        u = setnum.positional_to_unary(args.value, args.base)
        print(f"count={u.count}")
        return 0
    u = setnum.UnaryNumber(int(args.value))
    rep = setnum.base_report(u, args.base)
    print(f"digits={rep.digits} unary_symbols={rep.unary_symbols} "
          f"positional_symbols={rep.positional_symbols} "
          f"ratio={format_bits(rep.ratio)}")
    return 0


def cmd_newton(args) -> int:
    rep = setnum.newton_table(args.g, args.tmax)
    for row in rep.rows:
        print(f"{row.t}\t{row.s:.1f}")
    print(f"formula_bits={format_bits(rep.formula_bits)} "
          f"table_bits={format_bits(rep.table_bits)}")
    if args.report:
        doc = {"g": rep.g,
               "rows": [{"t": r.t, "s": r.s} for r in rep.rows],
               "formula_bits": rep.formula_bits,
               "table_bits": rep.table_bits}
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(doc, indent=2) + "\n")
    return 0


def cmd_hierarchy(args) -> int:
    h = hierarchy.load_hierarchy(args.hierarchy)
    did = False
    if args.resolve:
        attrs = sorted(a.text for a in hierarchy.resolve_attributes(h, args.resolve))
        print(f"{args.resolve}: {' '.join(attrs)}")
        did = True
    if args.context:
        chain = hierarchy.part_context(h, args.context)
        print(f"{args.context}: {' '.join(chain)}")
        did = True
    if args.dl:
        size = args.alphabet or len(hierarchy.required_alphabet(h))
        flat = hierarchy.description_length(h, "flat", size)
        hier = hierarchy.description_length(h, "hierarchical", size)
        print(f"alphabet={size} flat_bits={format_bits(flat)} "
              f"hierarchical_bits={format_bits(hier)} "
              f"savings={format_bits(flat - hier)}")
        did = True
    if not did:
        raise InputFormatError("need --resolve, --context, or --dl")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="icmup",
        description="Pattern codecs, hierarchies, table machines, and a "
                    "multiple-alignment engine with bit accounting.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compress", help="discover chunks or runs and encode a corpus")
    p.add_argument("corpus")
    p.add_argument("--mode", choices=("chunk", "rle"), default="chunk")
    p.add_argument("--min-len", type=int, default=2)
    p.add_argument("--min-count", type=int, default=2)
    p.add_argument("--out", required=True)
    p.add_argument("--chars", action="store_true",
                   help="one symbol per character instead of whitespace tokens")
    p.add_argument("--report")
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("decompress", help="reconstruct a corpus from a stream file")
    p.add_argument("stream")
    p.add_argument("--out", required=True)
    p.add_argument("--chars", action="store_true")
    p.set_defaults(func=cmd_decompress)

    p = sub.add_parser("align", help="rank alignments of a new pattern against a grammar")
    p.add_argument("grammar")
    p.add_argument("--new", required=True)
    p.add_argument("--chars", action="store_true")
    p.add_argument("--beam", type=int, default=50)
    p.add_argument("--max-rows", type=int, default=12)
    p.add_argument("--top", type=int, default=3)
    p.add_argument("--report")
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("parse", help="print the best alignment as a bracketing")
    p.add_argument("grammar")
    p.add_argument("--new", required=True)
    p.add_argument("--chars", action="store_true")
    p.add_argument("--beam", type=int, default=50)
    p.add_argument("--max-rows", type=int, default=12)
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("retrieve", help="rank stored patterns against a query")
    p.add_argument("grammar")
    p.add_argument("--query", required=True)
    p.add_argument("--chars", action="store_true")
    p.add_argument("--top", type=int, default=5)
    p.set_defaults(func=cmd_retrieve)

    p = sub.add_parser("table", help="evaluate a function table by row matching")
    p.add_argument("table")
    p.add_argument("--in", dest="inputs", required=True,
                   help="comma-separated input symbols")
    p.add_argument("--diag", action="store_true",
                   help="show per-row match counts and the selected row")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("circuit", help="evaluate or compile a NAND circuit")
    p.add_argument("circuit")
    p.add_argument("--in", dest="inputs", help="name=value,... assignments")
    p.add_argument("--compile", action="store_true",
                   help="print the exhaustive truth table")
    p.set_defaults(func=cmd_circuit)

    p = sub.add_parser("tm", help="run a transition-table tape machine")
    p.add_argument("machine")
    p.add_argument("--tape", required=True)
    p.add_argument("--head", type=int, default=0)
    p.add_argument("--state", required=True)
    p.add_argument("--max-steps", type=int, default=10000)
    p.set_defaults(func=cmd_tm)

    p = sub.add_parser("sets", help="multiset/set operations by unification")
    p.add_argument("op", choices=("toset", "union", "intersection"))
    p.add_argument("a")
    p.add_argument("b", nargs="?")
    p.set_defaults(func=cmd_sets)

    p = sub.add_parser("unary", help="unary arithmetic with repetition traces")
    usub = p.add_subparsers(dest="op", required=True)
    for op, na in (("add", 2), ("sub", 2), ("mul", 2), ("div", 2),
                   ("pow", 2), ("fact", 1)):
        q = usub.add_parser(op)
        q.add_argument("a", type=int)
        if na == 2:
            q.add_argument("b", type=int)
        q.add_argument("--trace", action="store_true")
        q.set_defaults(func=cmd_unary)
    for op in ("sum", "prod"):
        q = usub.add_parser(op)
        q.add_argument("--lo", type=int, required=True)
        q.add_argument("--hi", type=int, required=True)
        q.add_argument("--terms", required=True,
                       help="comma-separated term values for lo..hi")
        q.add_argument("--trace", action="store_true")
        q.set_defaults(func=cmd_unary)

    p = sub.add_parser("peano", help="render naturals as successor numerals")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int, nargs="?")
    p.set_defaults(func=cmd_peano)

    p = sub.add_parser("base", help="unary to positional conversion report")
    p.add_argument("value")
    p.add_argument("base", type=int)
    p.add_argument("--decode", action="store_true",
                   help="treat value as a digit string and print the count")
    p.set_defaults(func=cmd_base)

    p = sub.add_parser("newton", help="falling-body table with cost comparison")
    p.add_argument("--g", type=float, default=9.80665)
    p.add_argument("--tmax", type=int, default=16)
    p.add_argument("--report")
    p.set_defaults(func=cmd_newton)

    p = sub.add_parser("hierarchy", help="attribute resolution and description lengths")
    p.add_argument("hierarchy")
    p.add_argument("--resolve", metavar="CLASS")
    p.add_argument("--context", metavar="PART")
    p.add_argument("--dl", action="store_true")
    p.add_argument("--alphabet", type=int)
    p.set_defaults(func=cmd_hierarchy)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InputFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except IcmupError as exc:  # pragma: no cover - safety net
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
