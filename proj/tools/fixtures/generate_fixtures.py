#!/usr/bin/env python3
# Copyright 2026 The xzp Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the checked-in basis fixtures and elliptic-curve data.

Needs cypari2 (e.g. `pip install passagemath-pari`). The C++ library never
calls PARI; this script only documents where data/ comes from.

    python3 tools/fixtures/generate_fixtures.py --out data --precision 6000
"""
import argparse
import json
import os

import cypari2

LEVELS = [163, 193, 197, 211, 223, 229, 233, 241, 257, 269, 271, 281, 359]

# Optimal curves of prime conductor whose newform has w_p = +1.
CURVES = {
    163: ("163a1", [0, 0, 1, -2, 1], ["1", "0"]),
    197: ("197a1", [0, 0, 1, -5, 4], ["1", "0"]),
    229: ("229a1", [1, 0, 0, -2, -1], ["-1", "1"]),
    269: ("269a1", [0, 0, 1, -2, -1], ["-1", "0"]),
    359: ("359b1", [1, -1, 1, -7, 8], ["2", "-1"]),
}


def primes_below(n):
    return [q for q in range(2, n) if all(q % d for d in range(2, int(q ** 0.5) + 1))]


def provenance(pari):
    v = ".".join(str(int(x)) for x in pari("version()")[:3])
    return ("PARI/GP %s via cypari2: mfinit([p,2],0), mfeigenbasis, "
            "mfatkineigenvalues(.,p)=+1 orbits; coordinates on nfinit(field).zk" % v)


def level_fixture(pari, p, m):
    mf = pari.mfinit([p, 2], 0)
    basis = pari.mfeigenbasis(mf)
    fields = pari.mffields(mf)
    signs = pari.mfatkineigenvalues(mf, p)
    orbits = []
    for i in range(len(basis)):
        if int(signs[i][0]) != 1:
            continue
        pol = fields[i]
        deg = int(pari.poldegree(pol))
        coeffs = pari.mfcoefs(basis[i], m)
        flat = []
        if deg == 1:
            for n in range(1, m + 1):
                flat.append(int(coeffs[n]))
            zk = ["1"]
        else:
            nf = pari.nfinit(pol)
            zk = [str(w) for w in nf[6]]
            for n in range(1, m + 1):
                a = pari.lift(coeffs[n])
                col = pari.nfalgtobasis(nf, a)
                for k in range(deg):
                    flat.append(int(col[k]))
        traces = {}
        for q in primes_below(200):
            if q == p:
                continue
            a = coeffs[q]
            traces[str(q)] = int(pari.trace(a)) if deg > 1 else int(a)
        orbits.append({
            "degree": deg,
            "field_polynomial": str(pol),
            "integral_basis": zk,
            "forms": [{"coefficients": flat}],
            "trace_a_ell": traces,
        })
    genus = sum(o["degree"] * len(o["forms"]) for o in orbits)
    return {
        "level": p,
        "genus": genus,
        "precision": m,
        "provenance": provenance(pari),
        "orbits": orbits,
    }


def curve_data(pari, p, m):
    label, ainv, gen = CURVES[p]
    e = pari.ellinit(ainv)
    an = [int(x) for x in pari.ellan(e, m)]
    return {
        "label": label,
        "a_invariants": ainv,
        "generator": gen,
        "modular_degree": int(pari.ellmoddegree(e)),
        "an": an,
        "provenance": "PARI/GP ellan/ellmoddegree; curve and generator from Cremona's tables",
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="data")
    ap.add_argument("--precision", type=int, default=6000)
    ap.add_argument("--an-length", type=int, default=2000)
    args = ap.parse_args()
    pari = cypari2.Pari()
    pari.allocatemem(4 * 10**9)
    os.makedirs(os.path.join(args.out, "fixtures"), exist_ok=True)
    os.makedirs(os.path.join(args.out, "curves"), exist_ok=True)
    for p in LEVELS:
        fx = level_fixture(pari, p, args.precision)
        with open(os.path.join(args.out, "fixtures", "X0plus_%d.json" % p), "w") as fh:
            json.dump(fx, fh, separators=(",", ":"))
            fh.write("\n")
        print("level", p, "genus", fx["genus"], flush=True)
    for p in CURVES:
        cd = curve_data(pari, p, args.an_length)
        with open(os.path.join(args.out, "curves", "E_%d.json" % p), "w") as fh:
            json.dump(cd, fh, separators=(",", ":"))
            fh.write("\n")


if __name__ == "__main__":
    main()
