#!/usr/bin/env python3
"""Run the table diff and every verification suite in one pass.

Equivalent to ``quadchar tables`` followed by ``quadchar verify all``;
exits nonzero if either step reports a failure.  Pass ``--json DIR`` to
also write the two machine-readable reports into ``DIR``.
"""

from __future__ import annotations

import argparse
import pathlib
import sys

from quadchar.cli import main as cli_main


def run(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--json",
        metavar="DIR",
        default=None,
        help="directory to write tables.json and verify-all.json reports into",
    )
    args = parser.parse_args(argv)

    tables_args = ["tables"]
    verify_args = ["verify", "all"]
    if args.json:
        out_dir = pathlib.Path(args.json)
        out_dir.mkdir(parents=True, exist_ok=True)
        tables_args += ["--json", str(out_dir / "tables.json")]
        verify_args += ["--json", str(out_dir / "verify-all.json")]

    print("== tables ==")
    rc_tables = cli_main(tables_args)
    print("\n== verify all ==")
    rc_verify = cli_main(verify_args)
    worst = max(rc_tables, rc_verify)
    print(f"\noverall: {'ok' if worst == 0 else 'FAILED'}")
    return worst


if __name__ == "__main__":
    sys.exit(run())
