"""Command-line entry point: synthesize a regular invariant for a CHC file"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from pydantic import ValidationError

from src.core.config import RunConfig, setup_logging
from src.core.learning_config import LEARNERS, TEACHERS, LearningConfig
from src.core.pipeline import CegisPipeline
from src.core.verdict import Safe, Unsafe, emit, write_dot
from src.frontend.parser import parse_file
from src.frontend.sexpr import FrontendError

EXIT_SAFE, EXIT_UNSAFE, EXIT_UNKNOWN, EXIT_INPUT_ERROR = 0, 1, 2, 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="strchc",
        description="Learn a regular inductive invariant for CHCs over strings",
    )
    parser.add_argument("file", help="SMT-LIB 2.6 file with the Horn clauses")
    parser.add_argument("--learner", choices=LEARNERS)
    parser.add_argument("--teacher", choices=TEACHERS)
    parser.add_argument("--solver-config", help="key=value file describing the external solver")
    parser.add_argument("--timeout", type=float, help="wall-clock budget in seconds")
    parser.add_argument("--max-states", type=int, help="largest automaton the SAT learner tries")
    parser.add_argument("--length-slack", type=int, help="extra letters allowed during reachability")
    parser.add_argument("--iteration-cap", type=int)
    parser.add_argument("--dump-queries", metavar="DIR", help="write every query as a .smt2 file")
    parser.add_argument("--dot", metavar="FILE", help="write the invariant automaton in DOT")
    parser.add_argument("--transcript", metavar="FILE", help="JSON lines record of every round")
    parser.add_argument("--no-incremental", action="store_true",
                        help="run every solver query as a standalone script")
    parser.add_argument("--single-session", action="store_true",
                        help="share one solver session between all clauses")
    parser.add_argument("--symmetry-breaking", action="store_true")
    parser.add_argument("--sat-backend", help="pysat solver name or dimacs:<command>")
    parser.add_argument("--max-workers", type=int)
    parser.add_argument("--config", default="config/learning.yaml", help="YAML run defaults")
    parser.add_argument("--log-level", choices=("DEBUG", "INFO", "WARNING", "ERROR"))
    return parser


def run_config_from_args(args: argparse.Namespace, settings: LearningConfig) -> RunConfig:
    return RunConfig.from_sources(settings, {
        "learner": args.learner,
        "teacher": args.teacher,
        "solver_config": args.solver_config,
        "timeout": args.timeout,
        "max_states": args.max_states,
        "length_slack": args.length_slack,
        "iteration_cap": args.iteration_cap,
        "dump_dir": args.dump_queries,
        "transcript": args.transcript,
        "incremental": False if args.no_incremental else None,
        "single_session": True if args.single_session else None,
        "symmetry_breaking": True if args.symmetry_breaking else None,
        "sat_backend": args.sat_backend,
        "max_workers": args.max_workers,
    })


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    settings = LearningConfig(args.config)
    logger = setup_logging(args.log_level, settings.log_file)

    print("String CHC Invariant Learner", file=sys.stderr)
    print("=" * 50, file=sys.stderr)

    try:
        config = run_config_from_args(args, settings)
        system = parse_file(args.file)
    except (FrontendError, OSError) as e:
        print(f"Input error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except ValidationError as e:
        print(f"Configuration error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    print(f"Target: {system.name} ({len(system.all_clauses())} clauses, "
          f"learner={config.learner}, teacher={config.teacher})", file=sys.stderr)

    pipeline = CegisPipeline(system, config)
    verdict = pipeline.run()
    sys.stdout.write(emit(verdict, system.predicate_name, system.alphabet))

    if isinstance(verdict, Safe):
        logger.info(f"Invariant: {verdict.learner_size} learned states, "
                    f"{verdict.minimized_size} after minimization")
        if args.dot:
            write_dot(verdict, args.dot, system.predicate_name)
            logger.info(f"Invariant automaton written to {args.dot}")
        return EXIT_SAFE
    if isinstance(verdict, Unsafe):
        return EXIT_UNSAFE
    return EXIT_UNKNOWN


if __name__ == "__main__":
    sys.exit(main())
