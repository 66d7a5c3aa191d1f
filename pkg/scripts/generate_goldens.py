#!/usr/bin/env python3
"""
Regenerate the CLI golden files under tests/golden.
Each golden is the exact output of one CLI invocation.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

from cli.commands import main as cli_main  # noqa: E402

GOLDENS = {
    "corners_d2_diff.json": ["corners", "--d", "2", "--kind", "diff"],
    "corners_d1_diff.json": ["corners", "--d", "1", "--kind", "diff"],
    "decompose_a13_n5.json": ["decompose", "--d", "2", "--n", "5", "--elements", "1,3"],
}


def generate_goldens(golden_dir: Path, only: list[str] | None = None) -> int:
    """Write every golden (or the selected ones) and return the number of failures."""
    golden_dir.mkdir(parents=True, exist_ok=True)
    failures = 0
    for name, argv in GOLDENS.items():
        if only and name not in only:
            continue
        target = golden_dir / name
        code = cli_main(argv + ["--out", str(target)])
        if code != 0:
            print(f"  {name}: exit code {code}")
            failures += 1
        else:
            print(f"  {name} → {target}")
    return failures


def main():
    parser = argparse.ArgumentParser(description="Regenerate CLI golden files")
    parser.add_argument(
        "--golden-dir",
        default=str(Path(__file__).parent.parent / "tests" / "golden"),
        help="Directory for golden files (default: tests/golden)",
    )
    parser.add_argument("names", nargs="*", help="Golden file names to regenerate (default: all)")
    args = parser.parse_args()

    print(f"Regenerating goldens in {args.golden_dir}")
    failures = generate_goldens(Path(args.golden_dir), args.names or None)
    sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()
