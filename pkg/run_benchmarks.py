"""Run the shipped benchmark corpus with every learner and tabulate the results"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import pandas as pd

from src.core.config import APP_CONFIG, RunConfig, setup_logging
from src.core.learning_config import LEARNERS, LearningConfig
from src.core.pipeline import CegisPipeline
from src.core.progress import track_progress
from src.core.verdict import Safe, Unsafe
from src.frontend.parser import parse_file
from src.frontend.sexpr import FrontendError

BENCHMARK_DIR = Path(__file__).parent / "benchmarks"


def run_one(path: Path, learner: str, settings: LearningConfig, timeout: float) -> dict:
    row = {"benchmark": path.stem, "learner": learner, "status": "error", "size": None,
           "minimized_size": None, "rounds": 0, "seconds": 0.0, "detail": ""}
    start = time.perf_counter()
    try:
        system = parse_file(path)
    except FrontendError as e:
        row["detail"] = str(e)
        return row

    config = RunConfig.from_sources(settings, {"learner": learner, "timeout": timeout})
    pipeline = CegisPipeline(system, config)
    verdict = pipeline.run()
    row.update(status=verdict.status, rounds=pipeline.rounds,
               seconds=round(time.perf_counter() - start, 3))
    if isinstance(verdict, Safe):
        row.update(size=verdict.learner_size, minimized_size=verdict.minimized_size)
    elif isinstance(verdict, Unsafe):
        row["detail"] = f"trace of {len(verdict.trace) - 1} steps"
    else:
        row["detail"] = verdict.reason
    return row


def run_corpus(paths, learners, settings: LearningConfig, timeout: float) -> pd.DataFrame:
    jobs = [(p, l) for p in paths for l in learners]
    rows = [run_one(p, l, settings, timeout) for p, l in track_progress(jobs, "Benchmarks")]
    return pd.DataFrame(rows)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="Benchmark both learners on the shipped corpus")
    parser.add_argument("files", nargs="*", help="benchmark files (default: benchmarks/*.smt2)")
    parser.add_argument("--learner", choices=LEARNERS, action="append",
                        help="restrict to a learner; may be repeated")
    parser.add_argument("--timeout", type=float, default=60.0)
    parser.add_argument("--config", default="config/learning.yaml")
    parser.add_argument("--log-level", default="WARNING")
    args = parser.parse_args(argv)

    setup_logging(args.log_level)
    settings = LearningConfig(args.config)
    paths = [Path(f) for f in args.files] or sorted(BENCHMARK_DIR.glob("*.smt2"))
    if not paths:
        print("No benchmark files found")
        return 1

    print("Benchmark Corpus")
    print("=" * 50)
    results = run_corpus(paths, args.learner or list(LEARNERS), settings, args.timeout)

    output_file = APP_CONFIG.get_output_path(APP_CONFIG.get_timestamped_filename("benchmarks", "csv"))
    results.to_csv(output_file, index=False)

    table = results.pivot_table(index="benchmark", columns="learner",
                                values=["size", "seconds"], aggfunc="first")
    print(table.to_string())
    print(f"\nResults saved to {output_file}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
