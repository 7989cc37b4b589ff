#!/usr/bin/env python3
# Copyright 2026 The Reachbench Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Independent transcription of the estimator formulas.

Writes tests/fixtures/estimator_formulas.json, or with --check compares a
freshly computed document against the checked-in one. Uses exact rational
arithmetic wherever the formula allows it.
"""

import argparse
import json
import math
import pathlib
import sys
from fractions import Fraction as F

HERE = pathlib.Path(__file__).resolve().parent
FIXTURE = HERE.parent / "fixtures" / "estimator_formulas.json"


def counts(t, f):
    """f maps k -> f_k."""
    s_obs = sum(f.values())
    return {"t": t, "f": {k: v for k, v in f.items() if v}, "s_obs": s_obs}


def fk(c, k):
    return c["f"].get(k, 0)


def chao2(c):
    t, f1, f2 = c["t"], fk(c, 1), fk(c, 2)
    a = F(t - 1, t)
    if f2 > 0:
        return c["s_obs"] + a * F(f1 * f1, 2 * f2)
    return c["s_obs"] + a * F(f1 * (f1 - 1), 2)


def chao2_bc(c):
    t, f1, f2 = c["t"], fk(c, 1), fk(c, 2)
    return c["s_obs"] + F(t - 1, t) * F(f1 * (f1 - 1), 2 * (f2 + 1))


def ichao2(c):
    t, f1, f2, f3, f4 = c["t"], fk(c, 1), fk(c, 2), fk(c, 3), fk(c, 4)
    f4 = f4 if f4 > 0 else 1
    inner = max(f1 - F(t - 3, 2 * (t - 1)) * F(f2 * f3, f4), 0)
    return chao2(c) + F(t - 3, 4 * t) * F(f3, f4) * inner


def jk1(c):
    t = c["t"]
    return c["s_obs"] + fk(c, 1) * F(t - 1, t)


def jk2(c):
    t = c["t"]
    return (c["s_obs"] + fk(c, 1) * F(2 * t - 3, t)
            - fk(c, 2) * F((t - 2) ** 2, t * (t - 1)))


def ice(c, variant, cutoff=10):
    t = c["t"]
    infreq = {k: v for k, v in c["f"].items() if k <= cutoff}
    s_inf = sum(infreq.values())
    n_inf = sum(k * v for k, v in infreq.items())
    pairs = sum(k * (k - 1) * v for k, v in infreq.items())
    s_freq = c["s_obs"] - s_inf
    cov = 1 - F(fk(c, 1), n_inf)
    ratio = F(t, t - 1)
    g2 = max(F(s_inf) / cov * ratio * F(pairs, n_inf * n_inf) - 1, 0)
    if variant == "ICE1":
        g2 = max(g2 * (1 + (1 - cov) / cov * ratio * F(pairs, n_inf)), 0)
    return s_freq + F(s_inf) / cov + F(fk(c, 1)) / cov * g2


def zelterman(c):
    lam = 2.0 * fk(c, 2) / fk(c, 1)
    return c["s_obs"] / (1.0 - math.exp(-lam))


def bootstrap_y(t, ys):
    return len(ys) + sum(F(t - y, t) ** t for y in ys)


def chao_bunge(c):
    first = sum(k * v for k, v in c["f"].items())
    second = sum(k * k * v for k, v in c["f"].items())
    theta = F(fk(c, 1) * second, first * first)
    return F(c["s_obs"] - fk(c, 1)) / (1 - theta)


def chao2_variance(c):
    t, f1, f2 = c["t"], fk(c, 1), fk(c, 2)
    a = F(t - 1, t)
    r = F(f1, f2)
    return f2 * (a / 2 * r ** 2 + a * a * r ** 3 + a * a / 4 * r ** 4)


def log_ci(s_obs, point, var, z):
    t0 = point - s_obs
    k = math.exp(z * math.sqrt(math.log(1 + var / t0 ** 2)))
    return s_obs + t0 / k, s_obs + t0 * k


# Two-sided 90% normal quantile, from scipy.stats.norm.ppf(0.95).
Z90 = 1.6448536269514722


def as_float(x):
    return float(x)


def document():
    base = counts(20, {1: 10, 2: 5, 20: 85})
    bs = {"t": 2, "y": [1, 2]}
    cases = [
        counts(20, {1: 10, 2: 5, 20: 85}),
        counts(12, {1: 7, 2: 3, 3: 2, 4: 0, 6: 5, 12: 4}),
        counts(30, {1: 15, 2: 8, 3: 6, 4: 2, 5: 3, 9: 4, 11: 6, 25: 10}),
        counts(8, {1: 5, 2: 1, 3: 2, 4: 1, 7: 2}),
        counts(50, {1: 40, 2: 12, 3: 9, 4: 7, 8: 5, 10: 3, 15: 2, 40: 30}),
    ]
    out_cases = []
    for c in cases:
        out_cases.append({
            "t": c["t"],
            "f": {str(k): v for k, v in sorted(c["f"].items())},
            "Chao2": as_float(chao2(c)),
            "Chao2_bc": as_float(chao2_bc(c)),
            "iChao2": as_float(ichao2(c)),
            "JK1": as_float(jk1(c)),
            "JK2": as_float(jk2(c)),
            "ICE": as_float(ice(c, "ICE")),
            "ICE1": as_float(ice(c, "ICE1")),
            "Zelterman": zelterman(c),
            "Chao-Bunge": as_float(chao_bunge(c)),
        })
    var = chao2_variance(base)
    low, high = log_ci(base["s_obs"], float(chao2(base)), float(var), Z90)
    return {
        "format": "reachbench-estimator-oracle",
        "worked": {
            "t": 20,
            "f": {"1": 10, "2": 5, "20": 85},
            "Chao2": as_float(chao2(base)),
            "Chao2_bc": as_float(chao2_bc(base)),
            "JK1": as_float(jk1(base)),
            "JK2": as_float(jk2(base)),
            "Zelterman": zelterman(base),
        },
        "bootstrap": {"t": bs["t"], "y": bs["y"],
                      "Bootstrap": as_float(bootstrap_y(bs["t"], bs["y"]))},
        "chao2_log_ci_90": {"variance": as_float(var), "low": low, "high": high},
        "cases": out_cases,
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--check", action="store_true",
                        help="compare against the checked-in fixture")
    args = parser.parse_args()
    doc = document()
    text = json.dumps(doc, indent=2) + "\n"
    if args.check:
        stored = json.loads(FIXTURE.read_text())
        if stored != json.loads(text):
            print("fixture out of date: rerun without --check", file=sys.stderr)
            return 1
        print("estimator fixture matches")
        return 0
    FIXTURE.write_text(text)
    print(f"wrote {FIXTURE}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
