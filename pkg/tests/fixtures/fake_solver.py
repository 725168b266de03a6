"""Stand-in SMT-LIB solver for the solver client tests.

Keeps a push/pop stack of declarations and assertions. check-sat searches a
bounded model with the project's word-equation matcher.

Modes:
  normal   answer every query
  unknown  answer unknown to check-sat
  crash    exit on check-sat
  silent   never answer check-sat
  garbage  return a non-string value from get-value
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[2]))

from src.frontend.sexpr import encode_string_literal, parse_sexprs  # noqa: E402
from src.oracles.matcher import evaluate_script  # noqa: E402


def reply(text: str) -> None:
    sys.stdout.write(text + "\n")
    sys.stdout.flush()


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--mode", default="normal")
    parser.add_argument("--max-len", type=int, default=4)
    args = parser.parse_args()

    frames = [[]]
    model = None
    for line in sys.stdin:
        line = line.strip()
        if not line:
            continue
        (command,) = parse_sexprs(line)
        head = str(command[0])
        if head in ("declare-const", "assert"):
            frames[-1].append(line)
        elif head == "push":
            frames.append([])
        elif head == "pop":
            frames.pop()
        elif head == "echo":
            reply(encode_string_literal(command[1].value))
        elif head == "check-sat":
            if args.mode == "crash":
                return 1
            if args.mode == "silent":
                continue
            if args.mode == "unknown":
                reply("unknown")
                continue
            script = "\n".join(cmd for frame in frames for cmd in frame)
            model = evaluate_script(script, args.max_len)
            reply("sat" if model is not None else "unsat")
        elif head == "get-value":
            names = [str(name) for name in command[1]]
            if args.mode == "garbage" or model is None:
                reply("(" + " ".join(f"({name} 42)" for name in names) + ")")
                continue
            reply("(" + " ".join(f"({name} {encode_string_literal(model[name])})" for name in names) + ")")
        elif head == "exit":
            return 0
        # set-logic and set-option succeed silently
    return 0


if __name__ == "__main__":
    sys.exit(main())
