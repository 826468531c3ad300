#!/usr/bin/env python3
"""Dump every named polynomial to a directory, one canonical text file each."""

import argparse
import sys
from pathlib import Path

from semiinv import cli, conjinv


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path("emitted"))
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    for name, provider in sorted(cli._emissions().items()):
        (args.out / f"{name}.txt").write_text(provider().text() + "\n")
    gens = conjinv.trace_generators()
    lines = [f"{n} = {gens[n].text()}" for n in conjinv.TRACE_NAMES]
    (args.out / "tracegens.txt").write_text("\n".join(lines) + "\n")
    print(f"wrote {len(cli._emissions()) + 1} files to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
