"""Command-line entry point: run a script against a fresh runtime."""

import argparse
import sys

from .kernel import BOOTSTRAP_CLASSES, BOOTSTRAP_OBJECTS
from .runtime import Runtime
from .script import run_path


def bootstrap_stats():
    rt = Runtime()
    space = rt.space
    classes = space.classes()
    metas = sum(1 for c in classes if c.is_meta)
    virtual = sum(1 for c in classes if c.is_virtual)
    mods = sum(1 for c in classes if c.is_module)
    lines = [
        f"objects={space.object_count} (documented {BOOTSTRAP_OBJECTS})",
        f"classes={len(classes)} (documented {BOOTSTRAP_CLASSES})",
        f"meta={metas} virtual={virtual} modules={mods} plain={len(classes) - metas - virtual - mods}",
    ]
    return "\n".join(lines)


def build_parser():
    p = argparse.ArgumentParser(prog="dualrt", description="Run a dualrt script and print its transcript.")
    p.add_argument("--script", default=None, help="script file (default: stdin)")
    p.add_argument("--dump-final", action="store_true", help="append a dump of every class at the end")
    p.add_argument("--bootstrap-stats", action="store_true", help="print bootstrap object and class counts")
    p.add_argument("--seed", type=int, default=0, help="seed for the `property` command")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.bootstrap_stats:
        print(bootstrap_stats())
        if args.script is None and sys.stdin.isatty():
            return 0
    report = run_path(args.script, seed=args.seed, dump_final=args.dump_final)
    sys.stdout.write(report.transcript)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
