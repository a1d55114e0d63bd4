#!/usr/bin/env python3
# CLI checks: exit codes, row counts, determinism, config round trip, schemas.
# usage: cli_test.py <abvac executable> <schemas dir> <scratch dir>

import csv
import io
import json
import math
import os
import subprocess
import sys
import unittest

EXE, SCHEMAS, OUT = sys.argv[1:4]
del sys.argv[1:4]
os.makedirs(OUT, exist_ok=True)

try:
    import jsonschema
except ImportError:
    jsonschema = None


def run(*args, env=None):
    e = dict(os.environ)
    e.pop("ABVAC_TOL_TIER", None)
    if env:
        e.update(env)
    return subprocess.run([EXE, *args], capture_output=True, text=True, env=e)


def rows(text):
    body = [l for l in text.splitlines() if l and not l.startswith("#")]
    out = []
    for r in csv.DictReader(io.StringIO("\n".join(body))):
        out.append({k: float(v) for k, v in r.items()})
    return out


def path(name):
    return os.path.join(OUT, name)


def validate(doc, schema):
    if jsonschema is None:
        raise unittest.SkipTest("jsonschema not installed")
    with open(os.path.join(SCHEMAS, schema)) as f:
        jsonschema.validate(doc, json.load(f))


class ExitCodes(unittest.TestCase):
    def test_success(self):
        self.assertEqual(run("spectrum").returncode, 0)

    def test_usage_errors(self):
        for args in (["spectrum", "--grid", ""], ["spectrum", "--grid", "1:0:3"], ["spectrum", "--format", "xml"],
                     ["profile", "--beta", "1.5"], ["spectrum", "--beta", "0.3", "--mu", "1.3"],
                     ["spectrum", "--bogus"], ["profile", "--config", path("missing.cfg")]):
            p = run(*args)
            self.assertEqual(p.returncode, 2, args)
            self.assertTrue(p.stderr.strip(), args)

    def test_unknown_config_key(self):
        with open(path("bad.cfg"), "w") as f:
            f.write("mass = 1\ncolour = blue\n")
        p = run("spectrum", "--config", path("bad.cfg"))
        self.assertEqual(p.returncode, 2)
        self.assertIn("colour", p.stderr)

    def test_convergence_failure(self):
        p = run("profile", "--beta", "0.3", "--mass", "1", "--tol", "1e-16", "--grid", "1:1:1")
        self.assertEqual(p.returncode, 3)
        self.assertIn("achieved error", p.stderr)
        self.assertEqual(p.stderr.count("achieved error"), 1)

    def test_selfcheck_failure(self):
        p = run("selfcheck", "--only", "sae", "--tol", "1e-16")
        self.assertEqual(p.returncode, 1)
        self.assertIn("FAIL 3 sae-roundtrip", p.stdout)
        ok = run("selfcheck", "--only", "sae")
        self.assertEqual(ok.returncode, 0)
        self.assertIn("ALL PASS", ok.stdout)


class Spectrum(unittest.TestCase):
    def test_default_sweep(self):
        p = run("spectrum", "--mass", "2")
        self.assertEqual(p.returncode, 0)
        rs = rows(p.stdout)
        self.assertEqual(len(rs), 19)
        half = [r for r in rs if r["beta"] == 0.5]
        self.assertEqual(len(half), 1)
        # lambda R = 1 at beta = 1/2
        self.assertAlmostEqual(half[0]["E_particle"], math.sqrt(3.0), places=14)
        self.assertAlmostEqual(half[0]["E_antiparticle"], -math.sqrt(3.0), places=14)
        for r in rs:
            self.assertEqual(math.isnan(r["xi"]), r["beta"] <= 0.5)

    def test_mu_selects_fractional_part(self):
        a = run("spectrum", "--mu", "2.25").stdout
        b = run("spectrum", "--beta", "0.25").stdout
        strip = lambda t: [l for l in t.splitlines() if not l.startswith("# config:")]
        self.assertEqual(strip(a), strip(b))

    def test_beyond_continuum(self):
        rs = rows(run("spectrum", "--mass", "0.5", "--grid", "0.6:0.9:4").stdout)
        for r in rs:
            self.assertEqual(r["beyond_continuum"], 1.0)
            self.assertTrue(math.isnan(r["E_particle"]))


class Profile(unittest.TestCase):
    def test_massless_matches_closed_form(self):
        p = run("profile", "--beta", "0.3", "--grid", "0.5:20:6:log")
        self.assertEqual(p.returncode, 0)
        rs = rows(p.stdout)
        self.assertEqual(len(rs), 6)
        for r in rs:
            self.assertAlmostEqual(r["ratio"], 1.0, delta=1e-4)
            self.assertGreater(r["jphi_v"], 0.0)
        # 1/r^2
        self.assertAlmostEqual(rs[0]["jphi_v"] * 0.25 / (rs[-1]["jphi_v"] * 400), 1.0, delta=1e-6)

    def test_half_flux_vanishes(self):
        for r in rows(run("profile", "--beta", "0.5", "--grid", "1:3:3").stdout):
            self.assertLess(abs(r["jphi_v"]), 1e-14)

    def test_massive_below_massless(self):
        a = rows(run("profile", "--beta", "0.3", "--mass", "1", "--grid", "1:3:3").stdout)
        b = rows(run("profile", "--beta", "0.3", "--grid", "1:3:3").stdout)
        for x, y in zip(a, b):
            self.assertLess(abs(x["jphi_v"]), abs(y["jphi_v"]))

    def test_deterministic_and_thread_independent(self):
        args = ["profile", "--beta", "0.3", "--mass", "1", "--grid", "0.5:4:5"]
        a = run(*args, "--threads", "1").stdout
        b = run(*args, "--threads", "4").stdout
        c = run(*args, "--threads", "4").stdout
        self.assertTrue(a)
        self.assertEqual(a.replace("threads", ""), b.replace("threads", ""))
        self.assertEqual(b, c)


class ConfigRoundTrip(unittest.TestCase):
    def roundtrip(self, cmd, fmt, *args):
        first = path(f"{cmd}.{fmt}")
        second = path(f"{cmd}.again.{fmt}")
        self.assertEqual(run(cmd, *args, "--format", fmt, "--out", first).returncode, 0)
        self.assertEqual(run(cmd, "--config", first, "--out", second).returncode, 0)
        with open(first, "rb") as f, open(second, "rb") as g:
            self.assertEqual(f.read(), g.read())

    def test_csv(self):
        self.roundtrip("spectrum", "csv", "--mass", "1.5", "--radius", "0.7", "--grid", "0.1:0.9:5")
        self.roundtrip("profile", "csv", "--mu", "-1.7", "--mass", "0.5", "--grid", "1:2:2")

    def test_json(self):
        self.roundtrip("spectrum", "json", "--beta", "0.8", "--mass", "3")
        self.roundtrip("profile", "json", "--beta", "0.2", "--grid", "1:10:3:log")

    def test_cli_overrides_config(self):
        with open(path("m.cfg"), "w") as f:
            f.write("mass = 1\nbeta = 0.5\n")
        rs = rows(run("spectrum", "--config", path("m.cfg"), "--mass", "2").stdout)
        self.assertAlmostEqual(rs[0]["E_particle"], math.sqrt(3.0), places=14)

    def test_tier_env(self):
        p = run("spectrum", "--beta", "0.3", env={"ABVAC_TOL_TIER": "strict"})
        self.assertIn("# config: tier = strict", p.stdout)
        self.assertEqual(run("spectrum", env={"ABVAC_TOL_TIER": "sloppy"}).returncode, 2)


class Schemas(unittest.TestCase):
    def test_spectrum(self):
        validate(json.loads(run("spectrum", "--format", "json").stdout), "spectrum.schema.json")

    def test_profile(self):
        validate(json.loads(run("profile", "--format", "json", "--grid", "1:20:3").stdout), "profile.schema.json")
        validate(json.loads(run("profile", "--format", "json", "--beta", "0.7", "--mass", "2", "--grid", "0.5:12:3").stdout),
                 "profile.schema.json")

    def test_selfcheck(self):
        p = run("selfcheck", "--format", "json", "--only", "specfun")
        validate(json.loads(p.stdout), "selfcheck.schema.json")


if __name__ == "__main__":
    unittest.main(verbosity=2)
