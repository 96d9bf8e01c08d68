"""Download the roller surface-height series into the local data directory.

Usage: python scripts/fetch_roller.py [--url URL] [--dest DIR]

The StatLib file is plain text. Every line made only of numbers contributes
its values in order; other lines (headers, notes) are skipped. The script
refuses to write anything unless exactly 1150 values are found.
"""

import argparse
import sys
import urllib.request
from pathlib import Path

from ebxii.data import DATASETS, ROLLER_URL, data_dir


def numeric_tokens(text):
    out = []
    for line in text.splitlines():
        toks = line.replace(",", " ").split()
        if not toks:
            continue
        try:
            vals = [float(t) for t in toks]
        except ValueError:
            continue
        out.extend(vals)
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--url", default=ROLLER_URL)
    ap.add_argument("--dest", type=Path, default=None, help="default: the library data directory")
    args = ap.parse_args(argv)

    try:
        with urllib.request.urlopen(args.url, timeout=60) as resp:
            text = resp.read().decode("utf-8", errors="replace")
    except OSError as exc:
        print(f"cannot download {args.url}: {exc}", file=sys.stderr)
        return 1
    values = numeric_tokens(text)
    want = DATASETS["roller"].expected_length
    if len(values) != want:
        print(f"expected {want} values from {args.url}, found {len(values)}; nothing written", file=sys.stderr)
        return 1
    dest = args.dest or data_dir()
    dest.mkdir(parents=True, exist_ok=True)
    path = dest / "roller.txt"
    body = "".join(f"{v!r}\n" for v in values)
    path.write_text(f"# roller surface heights, {want} values\n# source: {args.url}\n{body}", encoding="utf-8")
    print(f"wrote {len(values)} values to {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
