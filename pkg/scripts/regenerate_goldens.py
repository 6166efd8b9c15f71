"""Rewrite fixtures/*.golden.json from the current code, or check them with --check."""

from __future__ import annotations

import argparse
import sys

from partial_gma.fixtures import builtin_fixtures, golden_text


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--check", action="store_true", help="compare instead of writing; exit 1 on drift")
    args = ap.parse_args(argv)
    drift = 0
    for fx in builtin_fixtures():
        text = golden_text(fx)
        if args.check:
            same = fx.golden_path.exists() and fx.golden_path.read_text(encoding="utf-8") == text
            print(f"{fx.name}: {'same' if same else 'DIFFERS'}")
            drift += not same
        else:
            fx.golden_path.write_text(text, encoding="utf-8")
            print(f"wrote {fx.golden_path.name}")
    return 1 if drift else 0


if __name__ == "__main__":
    sys.exit(main())
