#!/usr/bin/env python3
"""Golden-file checks for the command-line tool.

Usage: cli_golden_test.py <cli-binary> <tests-dir> [--regen]

Every subcommand is run with fixed inputs; payloads must match the stored
golden files byte for byte. Exit-code conventions are checked as well.
"""

import subprocess
import sys
import tempfile
from pathlib import Path

CASES = [
    ("validate.json", 0, ["validate", "{fix}/spec_d1.json"]),
    ("cf.csv", 0, ["cf", "{fix}/spec_d1.json", "--grid", "{fix}/grid.json"]),
    ("transform_tempering.json", 0,
     ["transform", "--from", "tempering", "--to", "rosinski", "{fix}/tempering.json",
      "--alpha", "1.2", "--p", "2"]),
    ("transform_extended.json", 0,
     ["transform", "--from", "extended", "--to", "rosinski",
      "{fix}/spec_nu.json", "--alpha", "0.5"]),
    ("approximate.json", 0,
     ["approximate", "{fix}/spec_d1.json", "--n", "3", "--grid", "{fix}/grid.json"]),
    ("simulate.csv", 0,
     ["simulate", "{fix}/spec_d1.json", "--paths", "8", "--seed", "42",
      "--grid", "{fix}/grid.json"]),
    ("check_limit.json", 0,
     ["check-limit", "--sequence", "{fix}/seq", "--target", "{fix}/target.json"]),
    ("demo_gaussian.csv", 0,
     ["demo", "gaussian-limit", "--alpha", "0.5", "--p", "1", "--A", "{fix}/A.json",
      "--n-list", "2,4", "--m-nodes", "8"]),
    ("demo_stable.csv", 0,
     ["demo", "stable-limit", "--alpha", "1.5", "--p", "1", "--sigma", "{fix}/sigma.json",
      "--n-list", "2,4", "--m-nodes", "8"]),
]


def main() -> int:
    cli = Path(sys.argv[1]).resolve()
    tests_dir = Path(sys.argv[2]).resolve()
    regen = "--regen" in sys.argv[3:]
    fixtures = tests_dir / "fixtures"
    golden_dir = tests_dir / "golden"
    golden_dir.mkdir(exist_ok=True)

    # derived fixture: the nu measure of spec_d1 as a standalone file
    import json
    spec = json.load(open(fixtures / "spec_d1.json"))
    nu_path = fixtures / "spec_nu.json"
    nu_path.write_text(json.dumps(spec["nu"]))

    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        for golden_name, want_code, argv in CASES:
            out_path = Path(tmp) / golden_name
            cmd = [str(cli)] + [a.format(fix=fixtures) for a in argv]
            cmd += ["--out", str(out_path), "--quiet"]
            proc = subprocess.run(cmd, capture_output=True, text=True)
            if proc.returncode != want_code:
                print(f"FAIL {golden_name}: exit {proc.returncode} != {want_code}\n{proc.stderr}")
                failures += 1
                continue
            got = out_path.read_bytes() if out_path.exists() else b""
            golden_path = golden_dir / golden_name
            if regen:
                golden_path.write_bytes(got)
                print(f"regenerated {golden_name} ({len(got)} bytes)")
                continue
            want = golden_path.read_bytes() if golden_path.exists() else None
            if got != want:
                print(f"FAIL {golden_name}: payload differs from golden file")
                failures += 1
            else:
                print(f"ok {golden_name}")

    if not regen:
        # exit-code conventions
        checks = [
            (["validate", str(fixtures / "spec_bad_psd.json"), "--quiet"], 1),
            (["validate", str(fixtures / "no_such_file.json"), "--quiet"], 2),
            (["cf", str(fixtures / "spec_bad_psd.json"), "--quiet"], 2),
        ]
        for argv, want_code in checks:
            proc = subprocess.run([str(cli)] + argv, capture_output=True)
            if proc.returncode != want_code:
                print(f"FAIL exit-code check {argv}: {proc.returncode} != {want_code}")
                failures += 1
            else:
                print(f"ok exit {want_code} for {argv[0]} {Path(argv[1]).name}")

    print("golden checks:", "FAIL" if failures else "PASS")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
