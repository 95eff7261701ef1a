#!/usr/bin/env python3
"""Help-contract and golden-output checks for the oppenheim binary.

  run_cli.py BINARY help NAME
  run_cli.py BINARY golden NAME [--update]

Timing is stripped before comparing: the "timing" object in JSON, "timing." lines in text.
"""
import json
import subprocess
import sys
import tempfile
from pathlib import Path

HERE = Path(__file__).resolve().parent
CASES = json.loads((HERE / "cases.json").read_text())


def run(binary, args):
    return subprocess.run([binary, *args], capture_output=True, text=True, timeout=600)


def strip_timing(text, ext):
    if ext == "json":
        doc = json.loads(text)
        doc.pop("timing", None)
        return json.dumps(doc, indent=2) + "\n"
    if ext == "txt":
        return "".join(line for line in text.splitlines(keepends=True) if not line.startswith("timing."))
    return text


def check_help(binary, name):
    options = CASES["help"][name]
    res = run(binary, [name, "--help"])
    if res.returncode != 0:
        return f"exit {res.returncode}, expected 0"
    if f"oppenheim {name}" not in res.stdout or "Usage:" not in res.stdout:
        return "usage line missing"
    missing = [o for o in options if o not in res.stdout]
    return f"options missing from help: {missing}" if missing else None


def check_golden(binary, name, update):
    case = next(c for c in CASES["golden"] if c["name"] == name)
    ext = case.get("ext", "json")
    with tempfile.TemporaryDirectory() as tmp:
        args = [a.replace("{data}", str(HERE / "data")).replace("{tmp}", tmp) for a in case["args"]]
        res = run(binary, args)
    want_exit = case.get("exit", 0)
    if res.returncode != want_exit:
        return f"exit {res.returncode}, expected {want_exit}; stderr: {res.stderr.strip()}"
    if not case.get("stdout", True):
        return None if res.stderr.strip() else "expected a message on stderr"
    got = strip_timing(res.stdout, ext)
    golden = HERE / "golden" / f"{name}.{ext}"
    if update:
        golden.write_text(got)
        return None
    if not golden.exists():
        return f"missing golden file {golden}"
    want = golden.read_text()
    if got != want:
        return f"output differs from {golden.name}:\n--- got\n{got}\n--- want\n{want}"
    return None


def main():
    binary, kind, name = sys.argv[1:4]
    update = "--update" in sys.argv[4:]
    error = check_help(binary, name) if kind == "help" else check_golden(binary, name, update)
    if error:
        print(f"FAIL {kind} {name}: {error}")
        return 1
    print(f"ok {kind} {name}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
