#!/usr/bin/env python3
"""End-to-end smoke test for the annpick CLI. Usage: cli_smoke.py <binary>."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

BIN = sys.argv[1]


def run(*args, **kwargs):
    return subprocess.run([BIN, *args], capture_output=True, text=True, **kwargs)


def stderr_error(proc):
    payload = json.loads(proc.stderr)
    assert set(payload) == {"error"}, payload
    return payload["error"]


def main():
    tmp = Path(tempfile.mkdtemp(prefix="annpick_smoke_"))

    zinv = tmp / "zinv.json"
    zinv.write_text(json.dumps({"coeffs": [{"n": -1, "re": 1.0, "im": 0.0}]}))
    zpoly = tmp / "z.json"
    zpoly.write_text(json.dumps({"coeffs": [{"n": 1, "re": 1.0, "im": 0.0}]}))

    proc = run("--help")
    assert proc.returncode == 0, proc.stderr
    assert "mult-norm" in proc.stdout

    proc = run()
    assert proc.returncode == 2, proc.returncode
    assert stderr_error(proc)["type"] == "ParseError"

    proc = run("norm", "--input", str(zinv))
    assert proc.returncode == 0, proc.stderr
    report = json.loads(proc.stdout)
    assert report["command"] == "norm"
    assert report["context"]["r"] == 0.5
    assert abs(report["results"]["norm_sq"] - 4.0) < 1e-12
    assert report["certified"] is True
    assert "wall_time_ms" in report

    # identical requests give identical results (wall time may differ)
    again = json.loads(run("norm", "--input", str(zinv)).stdout)
    assert json.dumps(report["results"]) == json.dumps(again["results"])

    out = tmp / "report.json"
    proc = run("norm", "--input", str(zinv), "--out", str(out))
    assert proc.returncode == 0
    assert json.loads(out.read_text()) == json.loads(proc.stdout)

    bogus = tmp / "bogus.json"
    bogus.write_text(json.dumps({"coeffs": [], "bogus": 1}))
    proc = run("norm", "--input", str(bogus))
    assert proc.returncode == 2, proc.returncode
    assert stderr_error(proc)["type"] == "ParseError"

    proc = run("norm")
    assert proc.returncode == 2
    assert stderr_error(proc)["type"] == "ValidationError"

    proc = run("norm", "--input", str(zinv), "--r", "1.5")
    assert proc.returncode == 2
    assert stderr_error(proc)["type"] == "ValidationError"

    proc = run("kernel", "--re", "0.2", "--im", "0.0", "--re2", "0.2", "--im2", "0.0")
    assert proc.returncode == 3, proc.returncode
    err = stderr_error(proc)
    assert err["type"] == "OpError"
    assert "kind" in err and "op" in err

    proc = run("mult-norm", "--input", str(zpoly), "--grid", "8")
    assert proc.returncode == 0, proc.stderr
    report = json.loads(proc.stdout)
    assert report["results"]["norm_exact"] is True
    assert report["results"]["upper"] == 1.0
    assert report["certificates"], "expected a Pick certificate"
    assert report["certificates"][0]["grid_size"] == 8

    proc = run("eval", "--input", str(zinv), "--re", "0.0", "--im", "0.0")
    assert proc.returncode == 3
    assert stderr_error(proc)["type"] == "OpError"

    print("cli smoke: ok")


if __name__ == "__main__":
    main()
