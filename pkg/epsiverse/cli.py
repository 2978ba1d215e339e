import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Callable, List, Optional, Sequence, Tuple

from .config import RESIDUAL_POLICIES, EliminationConfig, ResourceLimits, applied, create_config_from_env
from .eliminate import MODES, Eliminator, corpus
from .errors import ArityError, BoundViolation, ParseError, PreconditionError, ProofCheckError, ResourceLimitError
from .kernel import Formula, Term, degree, fresh_names, match, parse_formula
from .lowerbound import BENCHMARKS
from .proofsys import (
    EC_EPS_EQ,
    Proof,
    System,
    analyze,
    check_proof,
    format_proof,
    read_proof,
    system_by_name,
    write_proof,
)
from .translate import prenex_witnesses, translate_proof

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK = 1
EXIT_RESOURCE = 2
EXIT_USAGE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> Any:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _system(name: str) -> System:
    try:
        return system_by_name(name)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _emit(data: Any) -> None:
    print(json.dumps(data, indent=2, ensure_ascii=False, sort_keys=False))


def _config(args: argparse.Namespace) -> EliminationConfig:
    config = create_config_from_env()
    limits = ResourceLimits(
        max_lines=args.max_lines if args.max_lines is not None else config.limits.max_lines,
        max_nodes=args.max_nodes if args.max_nodes is not None else config.limits.max_nodes,
    )
    config = replace(config, limits=limits, trace_path=args.trace, workers=args.workers)
    if getattr(args, "dedup", False):
        config.dedup = True
    if args.residuals is not None:
        config.residuals = args.residuals
    return config


def cmd_check(args: argparse.Namespace, config: EliminationConfig) -> int:
    proof = read_proof(args.proof)
    with applied(config):
        result = check_proof(args.system, proof)
    if not result.ok:
        for d in result.diagnostics:
            print(f"{args.proof}: {d}")
        return EXIT_CHECK
    assert result.report is not None
    print(f"{args.proof}: ok under {args.system.name}, {len(proof)} lines, cc {result.report.cc}")
    return EXIT_OK


def cmd_measure(args: argparse.Namespace, config: EliminationConfig) -> int:
    proof = read_proof(args.proof)
    with applied(config):
        report = analyze(args.system, proof).report
    data = report.to_dict()
    data["system"] = args.system.name
    data["max_formula_degree"] = max((degree(f) for f in proof.formulas()), default=0)
    _emit(data)
    return EXIT_OK


def cmd_translate(args: argparse.Namespace, config: EliminationConfig) -> int:
    proof = read_proof(args.proof)
    with applied(config):
        translated = translate_proof(proof)
    _write(translated, args.output, f"ε-translation of {Path(args.proof).name}")
    return EXIT_OK


def _write(proof: Proof, output: Optional[Path], comment: str) -> None:
    if output is None:
        sys.stdout.write(format_proof(proof, comment))
    else:
        write_proof(proof, output, comment)
        logger.info(f"Wrote {len(proof)} lines to {output}")


def cmd_eliminate(args: argparse.Namespace, config: EliminationConfig) -> int:
    proof = read_proof(args.proof)
    eliminator = Eliminator(config)
    final = eliminator.first_epsilon_theorem(args.system, proof)
    _write(final, args.output, f"elementary proof of {Path(args.proof).name}")
    return EXIT_OK


def _decompose(matrix: Formula, conclusion: Formula) -> Tuple[Tuple[str, ...], Tuple[Term, ...]]:
    holes = tuple(sorted(matrix.free_vars - conclusion.free_vars))
    binding = match(matrix, conclusion, holes)
    if binding is None:
        raise PreconditionError("The end formula is not an instance of the given matrix")
    missing = [h for h in holes if h not in binding]
    if missing:
        raise PreconditionError(f"Placeholders {missing} do not occur in the matrix")
    return holes, tuple(binding[h] for h in holes)


def cmd_herbrand(args: argparse.Namespace, config: EliminationConfig) -> int:
    proof = read_proof(args.proof)
    system = args.system
    matrix: Optional[Formula] = parse_formula(args.matrix) if args.matrix else None
    holes: Tuple[str, ...] = ()
    terms: Tuple[Term, ...] = ()
    source_cc = None
    with applied(config):
        if system.quantifiers:
            source_cc = analyze(system, proof).report.cc
            original = proof.conclusion
            proof = translate_proof(proof)
            system = EC_EPS_EQ
            if matrix is None:
                try:
                    matrix, holes, terms = prenex_witnesses(original)
                except PreconditionError as e:
                    logger.info(f"Falling back to the default matrix: {e}")
    if matrix is not None and not terms:
        holes, terms = _decompose(matrix, proof.conclusion)
    system = system.with_mode(MODES[args.mode])
    eliminator = Eliminator(config)
    result = eliminator.extended_first_epsilon_theorem(system, proof, matrix, holes, terms, source_cc)
    data = result.to_dict()
    data["trace"] = result.trace.to_records()
    _emit(data)
    return EXIT_OK


def cmd_bench_lower(args: argparse.Namespace, config: EliminationConfig) -> int:
    bench = BENCHMARKS[args.family]
    with applied(config):
        rows = bench(range(1, args.n + 1))
    print("n,cc,lines")
    for n, cc, lines in rows:
        print(f"{n},{cc},{lines}")
    return EXIT_OK


def cmd_generate(args: argparse.Namespace, config: EliminationConfig) -> int:
    out: Path = args.directory
    out.mkdir(parents=True, exist_ok=True)
    with applied(config):
        generated = corpus(args.count, seed=args.seed, goal=args.goal, mode=MODES[args.mode])
    for i, g in enumerate(generated):
        write_proof(g.proof, out / f"generated-{args.seed + i:04d}.eproof", f"seed {args.seed + i}")
    logger.info(f"Wrote {len(generated)} generated proof(s) to {out}")
    return EXIT_OK


Command = Callable[[argparse.Namespace, EliminationConfig], int]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="epsiverse", description="Epsilon calculus proofs: checking, translation and elimination")
    parser.add_argument("--max-lines", type=int, default=None, help="Cap on the lines of a constructed proof")
    parser.add_argument("--max-nodes", type=int, default=None, help="Cap on the size of a single formula")
    parser.add_argument("--trace", type=Path, default=None, help="Directory for trace.jsonl and summary.csv")
    parser.add_argument("--seed", type=int, default=0, help="Seed for generated corpora")
    parser.add_argument("--workers", type=int, default=1, help="Threads for case-branch construction")
    parser.add_argument("--residuals", choices=sorted(RESIDUAL_POLICIES), default=None)
    parser.add_argument("--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="Check a proof")
    check.add_argument("proof", type=Path)
    check.add_argument("--system", type=_system, default=EC_EPS_EQ)
    check.set_defaults(func=cmd_check)

    measure = sub.add_parser("measure", help="Print the measures of a proof as JSON")
    measure.add_argument("proof", type=Path)
    measure.add_argument("--system", type=_system, default=EC_EPS_EQ)
    measure.set_defaults(func=cmd_measure)

    translate = sub.add_parser("translate", help="ε-translate a PC+EQ proof")
    translate.add_argument("proof", type=Path)
    translate.add_argument("-o", "--output", type=Path, default=None)
    translate.set_defaults(func=cmd_translate)

    eliminate = sub.add_parser("eliminate", help="First epsilon theorem")
    eliminate.add_argument("proof", type=Path)
    eliminate.add_argument("--system", type=_system, default=EC_EPS_EQ)
    eliminate.add_argument("-o", "--output", type=Path, default=None)
    eliminate.set_defaults(func=cmd_eliminate)

    herbrand = sub.add_parser("herbrand", help="Extended first epsilon theorem: a Herbrand disjunction")
    herbrand.add_argument("proof", type=Path)
    herbrand.add_argument("--system", type=_system, default=EC_EPS_EQ)
    herbrand.add_argument("--matrix", default=None, help="ε-free matrix; its extra free variables are the placeholders")
    herbrand.add_argument("--mode", choices=sorted(MODES), default="matrix")
    herbrand.add_argument("--dedup", action="store_true", help="Merge α-equal tuples")
    herbrand.set_defaults(func=cmd_herbrand)

    bench = sub.add_parser("bench-lower", help="Critical counts of the lower-bound families")
    bench.add_argument("family", choices=sorted(BENCHMARKS))
    bench.add_argument("--n", type=int, default=3)
    bench.set_defaults(func=cmd_bench_lower)

    generate = sub.add_parser("generate", help="Write a seeded corpus of generated proofs")
    generate.add_argument("directory", type=Path)
    generate.add_argument("--count", type=int, default=10)
    generate.add_argument("--goal", choices=["eps-free", "herbrand"], default="eps-free")
    generate.add_argument("--mode", choices=sorted(MODES), default="matrix")
    generate.set_defaults(func=cmd_generate)
    return parser


_EXIT_CODES: List[Tuple[type, int]] = [
    (ProofCheckError, EXIT_CHECK),
    (BoundViolation, EXIT_CHECK),
    (ResourceLimitError, EXIT_RESOURCE),
    (ParseError, EXIT_USAGE),
    (ArityError, EXIT_USAGE),
    (PreconditionError, EXIT_USAGE),
]


def exit_code(error: BaseException) -> Optional[int]:
    for kind, code in _EXIT_CODES:
        if isinstance(error, kind):
            return code
    return None


_logging_configured = False


def run(argv: Optional[Sequence[str]] = None) -> int:
    global _logging_configured
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE

    if not _logging_configured:
        logging.basicConfig(
            level=args.log_level,
            format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
        )
        _logging_configured = True
    logging.getLogger("epsiverse").setLevel(args.log_level)

    fresh_names.reset()
    try:
        config = _config(args)
        func: Command = args.func
        return func(args, config)
    except (ValueError, OSError) as e:
        code = exit_code(e)
        if code is None:
            code = EXIT_USAGE
        print(f"epsiverse: {e}", file=sys.stderr)
        return code
    except Exception as e:
        code = exit_code(e)
        if code is None:
            raise
        print(f"epsiverse: {e}", file=sys.stderr)
        if isinstance(e, ProofCheckError):
            for d in e.diagnostics:
                print(f"  {d}", file=sys.stderr)
        return code


def main() -> None:
    sys.exit(run())


__all__ = ["build_parser", "exit_code", "main", "run"]